"""Bargmann invariants Tr(rho_1 ... rho_n) by independent routes.

Three evaluation paths are provided and are expected to agree:

* ``delta_trace``: trace of the ordered product of density matrices,
* ``delta_pure``: cyclic product of neighbouring overlaps of pure states,
* ``delta_qubit_bloch``: the Pauli-algebra recursion on qubit Bloch vectors,

plus the explicit real/imaginary closed forms for n = 3, 4, 5 in
``closed_form_xy``.  Batched versions operate on stacked numpy arrays and
are what the sampling campaigns use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .states import DensityMatrix, DimensionMismatchError, PureState, StateTuple, as_tuple

MODULUS_TOL = 1e-10
UNIT_TOL = 1e-12

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


class NonUnitBlochVectorError(ValueError):
    pass


@dataclass(frozen=True)
class InvariantValue:
    order: int
    value: complex

    def __post_init__(self):
        if self.order < 2:
            raise ValueError(f"order must be >= 2, got {self.order}")
        z = complex(self.value)
        if abs(z) > 1 + MODULUS_TOL:
            raise ValueError(f"|Delta_{self.order}| = {abs(z)!r} exceeds 1")
        object.__setattr__(self, "value", z)

    @property
    def x(self) -> float:
        return self.value.real

    @property
    def y(self) -> float:
        return self.value.imag

    @property
    def modulus(self) -> float:
        return abs(self.value)

    @property
    def argument(self) -> float:
        """Phase in [0, 2pi); 0 for the origin."""
        return float(np.mod(np.angle(self.value), 2 * np.pi))

    def __complex__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class BlochVector:
    r: np.ndarray

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        if r.shape != (3,):
            raise ValueError(f"Bloch vector must have 3 components, got shape {r.shape}")
        if np.linalg.norm(r) > 1 + UNIT_TOL:
            raise ValueError(f"|r| = {np.linalg.norm(r)!r} exceeds 1")
        r.setflags(write=False)
        object.__setattr__(self, "r", r)

    @property
    def is_pure(self) -> bool:
        return abs(np.linalg.norm(self.r) - 1) <= UNIT_TOL

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.r, dtype=dtype)


@dataclass(frozen=True, eq=False)
class BlochAccumulator:
    """Running (p0, p) with rho_1...rho_k = 2^-k (p0 I + p . sigma)."""

    p0: complex
    p: np.ndarray

    @classmethod
    def start(cls, r1) -> "BlochAccumulator":
        return cls(1.0 + 0j, np.asarray(r1, dtype=complex))

    def delta(self, k: int) -> complex:
        """Invariant of the k states accumulated so far."""
        return 2.0 ** (1 - k) * self.p0


# -- batched kernels ---------------------------------------------------------

def neighbour_overlaps(psis: np.ndarray) -> np.ndarray:
    """<psi_k|psi_{k+1}> cyclically, for psis of shape (..., n, d).

    Written in explicit real arithmetic so that the reversed tuple yields
    bitwise-exact conjugates.
    """
    a = psis
    b = np.roll(psis, -1, axis=-2)
    ar, ai, br, bi = a.real, a.imag, b.real, b.imag
    re = np.sum(ar * br + ai * bi, axis=-1)
    im = np.sum(ar * bi - ai * br, axis=-1)
    return re + 1j * im


def cyclic_product(factors: np.ndarray) -> np.ndarray:
    """Product over the last axis in a canonical, conjugation-symmetric order."""
    order = np.lexsort((np.abs(factors.imag), factors.real), axis=-1)
    f = np.take_along_axis(factors, order, axis=-1)
    re, im = f[..., 0].real, f[..., 0].imag
    for k in range(1, f.shape[-1]):
        br, bi = f[..., k].real, f[..., k].imag
        re, im = re * br - im * bi, re * bi + im * br
    return re + 1j * im


def delta_pure_batch(psis: np.ndarray) -> np.ndarray:
    """Invariants of stacked pure tuples, psis of shape (..., n, d)."""
    return cyclic_product(neighbour_overlaps(np.asarray(psis, dtype=complex)))


def delta_trace_batch(rhos: np.ndarray) -> np.ndarray:
    """Invariants of stacked tuples of matrices, rhos of shape (..., n, d, d)."""
    rhos = np.asarray(rhos, dtype=complex)
    prod = rhos[..., 0, :, :]
    for k in range(1, rhos.shape[-3]):
        prod = prod @ rhos[..., k, :, :]
    return np.trace(prod, axis1=-2, axis2=-1)


def bloch_density_batch(rs: np.ndarray) -> np.ndarray:
    """(1 + r . sigma)/2 for rs of shape (..., 3)."""
    rs = np.asarray(rs, dtype=float)
    return 0.5 * (np.eye(2) + np.einsum("...i,ijk->...jk", rs, PAULI))


def bloch_kets_batch(rs: np.ndarray) -> np.ndarray:
    """Kets with the given unit Bloch vectors, shape (..., 3) -> (..., 2)."""
    rs = np.asarray(rs, dtype=float)
    theta = np.arccos(np.clip(rs[..., 2], -1.0, 1.0))
    phi = np.arctan2(rs[..., 1], rs[..., 0])
    return np.stack([np.cos(theta / 2) + 0j, np.exp(1j * phi) * np.sin(theta / 2)], axis=-1)


def delta_bloch_batch(rs: np.ndarray) -> np.ndarray:
    """Recursion route for stacked unit Bloch tuples, rs of shape (..., n, 3)."""
    rs = np.asarray(rs, dtype=float)
    n = rs.shape[-2]
    p0 = np.ones(rs.shape[:-2], dtype=complex)
    p = rs[..., 0, :].astype(complex)
    for k in range(1, n):
        r = rs[..., k, :]
        p0, p = p0 + np.sum(p * r, axis=-1), p0[..., None] * r + p + 1j * np.cross(p, r)
    return 2.0 ** (1 - n) * p0


# -- single-tuple operations -------------------------------------------------

def delta_trace(states) -> InvariantValue:
    """Tr(rho_1 ... rho_n) for a tuple of density matrices (or pure states)."""
    tup = as_tuple(states)
    return InvariantValue(tup.n, complex(delta_trace_batch(tup.matrices())))


def delta_pure(states) -> InvariantValue:
    """<psi_1|psi_2><psi_2|psi_3> ... <psi_n|psi_1>."""
    tup = as_tuple(states)
    if not tup.is_pure:
        raise TypeError("delta_pure needs pure states; use delta_trace for mixed tuples")
    return InvariantValue(tup.n, complex(delta_pure_batch(tup.vectors())))


def bloch_accumulate(acc: BlochAccumulator, r) -> BlochAccumulator:
    """One step of the product recursion.

    Dot and cross products are bilinear (no conjugation) even though ``p``
    is complex.
    """
    r = np.asarray(r, dtype=float)
    p0 = acc.p0 + complex(np.sum(acc.p * r))
    p = acc.p0 * r + acc.p + 1j * np.cross(acc.p, r)
    return BlochAccumulator(p0, p)


def _unit_vectors(rs: Sequence) -> list:
    out = []
    for r in rs:
        r = np.asarray(r, dtype=float)
        if r.shape != (3,):
            raise ValueError(f"Bloch vector must have 3 components, got shape {r.shape}")
        if abs(np.linalg.norm(r) - 1) > UNIT_TOL:
            raise NonUnitBlochVectorError(
                f"|r| = {np.linalg.norm(r)!r}; the Bloch route covers pure qubits only"
            )
        out.append(r)
    return out


def delta_qubit_bloch(rs: Sequence) -> InvariantValue:
    rs = _unit_vectors(rs)
    if len(rs) < 2:
        raise ValueError("need n >= 2 Bloch vectors")
    acc = BlochAccumulator.start(rs[0])
    for r in rs[1:]:
        acc = bloch_accumulate(acc, r)
    return InvariantValue(len(rs), acc.delta(len(rs)))


def closed_form_xy(n: int, rs: Sequence) -> tuple[float, float]:
    """Explicit (Re, Im) of the qubit invariant for n in {3, 4, 5}."""
    if n not in (3, 4, 5):
        raise ValueError(f"closed forms exist only for n in {{3, 4, 5}}, got {n}")
    rs = _unit_vectors(rs)
    if len(rs) != n:
        raise ValueError(f"expected {n} Bloch vectors, got {len(rs)}")
    r = [None] + rs  # 1-based

    def dot(i, j):
        return float(np.dot(r[i], r[j]))

    def triple(i, j, k):
        return float(np.dot(np.cross(r[i], r[j]), r[k]))

    if n == 3:
        x = 0.25 * (1 + dot(1, 2) + dot(1, 3) + dot(2, 3))
        y = 0.25 * triple(1, 2, 3)
        return x, y

    if n == 4:
        t1, t2, t3 = dot(2, 3), dot(1, 3), dot(1, 2)
        t4, t5, t6 = dot(3, 4), dot(2, 4), dot(1, 4)
        x = ((1 + t3) * (1 + t4) - (1 - t2) * (1 - t5) + (1 + t6) * (1 + t1)) / 8
        y = float(np.linalg.det(np.column_stack([r[1] + r[2], r[2] + r[3], r[3] + r[4]]))) / 8
        return x, y

    pairs = sum(dot(i, j) for i, j in itertools.combinations(range(1, 6), 2))
    x = (
        1
        + pairs
        + dot(1, 2) * dot(3, 4)
        - dot(1, 3) * dot(2, 4)
        + dot(1, 4) * dot(2, 3)
        + (dot(2, 3) + dot(2, 4) + dot(3, 4)) * dot(1, 5)
        + (-dot(1, 3) - dot(1, 4) + dot(3, 4)) * dot(2, 5)
        + (dot(1, 2) - dot(1, 4) - dot(2, 4)) * dot(3, 5)
        + (dot(1, 2) + dot(1, 3) + dot(2, 3)) * dot(4, 5)
    ) / 16
    triples = sum(triple(i, j, k) for i, j, k in itertools.combinations(range(1, 6), 3))
    y = (
        triples
        + dot(2, 3) * triple(1, 4, 5)
        - dot(1, 3) * triple(2, 4, 5)
        + dot(1, 2) * triple(3, 4, 5)
        + dot(4, 5) * triple(1, 2, 3)
    ) / 16
    return x, y


# -- qubit conversions -------------------------------------------------------

def bloch_vector(state) -> BlochVector:
    """Bloch vector of a qubit PureState or DensityMatrix."""
    if isinstance(state, PureState):
        m = np.outer(state.amplitudes, state.amplitudes.conj())
    elif isinstance(state, DensityMatrix):
        m = state.entries
    else:
        m = np.asarray(state, dtype=complex)
    if m.shape != (2, 2):
        raise DimensionMismatchError(f"Bloch vectors need a qubit, got shape {m.shape}")
    r = np.real(np.einsum("ijk,kj->i", PAULI, m))
    norm = np.linalg.norm(r)
    if norm > 1:  # rounding only
        r = r / norm
    return BlochVector(r)


def qubit_density(r) -> DensityMatrix:
    return DensityMatrix(bloch_density_batch(np.asarray(r, dtype=float)))


def qubit_state(r) -> PureState:
    """A ket whose Bloch vector is the unit vector ``r`` (global phase fixed)."""
    (r,) = _unit_vectors([r])
    return PureState(bloch_kets_batch(r))


def qubit_tuple(rs: Sequence, pure: bool = True) -> StateTuple:
    if pure:
        return StateTuple(tuple(qubit_state(r) for r in rs))
    return StateTuple(tuple(qubit_density(r) for r in rs))
