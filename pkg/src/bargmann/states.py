"""Pure states, density matrices and reproducible random sampling over C^d."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

NORM_TOL = 1e-12
PSD_TOL = 1e-10
MAX_CLI_DIM = 64


class InvalidDimensionError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


class InvalidStateError(ValueError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    """A unit vector in C^d."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amplitudes)
        if amps.ndim != 1 or amps.size == 0:
            raise InvalidDimensionError(f"amplitudes must be a non-empty vector, got shape {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state norm is {norm!r}, expected 1")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_vector(cls, v: Sequence[complex]) -> "PureState":
        """Normalize an arbitrary non-zero vector."""
        v = np.asarray(v, dtype=complex)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise InvalidStateError("cannot normalize the zero vector")
        return cls(v / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace d x d matrix."""

    entries: np.ndarray

    def __post_init__(self):
        m = _frozen(self.entries)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise InvalidDimensionError(f"density matrix must be square, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > NORM_TOL:
            raise InvalidStateError("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > NORM_TOL:
            raise InvalidStateError(f"trace is {tr!r}, expected 1")
        lo = np.linalg.eigvalsh(m).min()
        if lo < -PSD_TOL:
            raise InvalidStateError(f"minimum eigenvalue {lo!r} is negative")
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


State = Union[PureState, DensityMatrix]


@dataclass(frozen=True, eq=False)
class StateTuple:
    """An ordered n-tuple of states of one kind sharing one dimension."""

    states: tuple

    def __post_init__(self):
        states = tuple(self.states)
        if len(states) < 2:
            raise ValueError(f"a state tuple needs n >= 2 states, got {len(states)}")
        kinds = {type(s) for s in states}
        if len(kinds) != 1 or not kinds <= {PureState, DensityMatrix}:
            raise TypeError("states must be all PureState or all DensityMatrix")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise DimensionMismatchError(f"states have differing dimensions {sorted(dims)}")
        object.__setattr__(self, "states", states)

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    @property
    def is_pure(self) -> bool:
        return isinstance(self.states[0], PureState)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, k):
        return self.states[k]

    def reversed(self) -> "StateTuple":
        return StateTuple(self.states[::-1])

    def rotated(self, k: int = 1) -> "StateTuple":
        k %= self.n
        return StateTuple(self.states[k:] + self.states[:k])

    def vectors(self) -> np.ndarray:
        """Amplitudes stacked as an (n, d) array (pure tuples only)."""
        if not self.is_pure:
            raise TypeError("vectors() needs a tuple of pure states")
        return np.stack([s.amplitudes for s in self.states])

    def matrices(self) -> np.ndarray:
        """Density matrices stacked as an (n, d, d) array."""
        if self.is_pure:
            return np.stack([projector(s).entries for s in self.states])
        return np.stack([s.entries for s in self.states])


def as_tuple(states) -> StateTuple:
    return states if isinstance(states, StateTuple) else StateTuple(tuple(states))


# -- seeding ----------------------------------------------------------------

def _check_dim(d: int) -> int:
    d = int(d)
    if d < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {d}")
    return d


def derived_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Generator for draw/chunk ``index`` under master ``seed``.

    Counter-based: the stream depends only on the pair, never on the
    order in which indices are consumed.
    """
    return np.random.default_rng(np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, int(index)]))


def _shape(shape) -> tuple:
    return (int(shape),) if np.isscalar(shape) else tuple(shape)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def haar_vectors(rng: np.random.Generator, shape, d: int) -> np.ndarray:
    """Haar-random unit vectors of length d, stacked with leading ``shape``."""
    shape = _shape(shape)
    g = complex_gaussian(rng, shape + (d,))
    return g / np.linalg.norm(g, axis=-1, keepdims=True)


def ginibre_matrices(rng: np.random.Generator, shape, d: int) -> np.ndarray:
    """Hilbert-Schmidt random density matrices G G^dag / Tr, stacked."""
    shape = _shape(shape)
    g = complex_gaussian(rng, shape + (d, d))
    rho = g @ np.conj(np.swapaxes(g, -1, -2))
    tr = np.real(np.trace(rho, axis1=-2, axis2=-1))
    rho = rho / tr[..., None, None]
    # exact Hermiticity
    return 0.5 * (rho + np.conj(np.swapaxes(rho, -1, -2)))


# -- public operations ------------------------------------------------------

def haar_random_pure(d: int, seed: int = 0) -> PureState:
    d = _check_dim(d)
    return PureState(haar_vectors(derived_rng(seed), (), d))


def ginibre_density(d: int, seed: int = 0) -> DensityMatrix:
    d = _check_dim(d)
    return DensityMatrix(ginibre_matrices(derived_rng(seed), (), d))


def haar_unitary(d: int, seed: int = 0) -> np.ndarray:
    """Haar-random d x d unitary (QR of a Ginibre matrix with phase fix)."""
    d = _check_dim(d)
    z = complex_gaussian(derived_rng(seed), (d, d))
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph[None, :]


def basis_state(d: int, k: int) -> PureState:
    v = np.zeros(_check_dim(d), dtype=complex)
    v[k] = 1.0
    return PureState(v)


def overlap(a: PureState, b: PureState) -> complex:
    """<a|b>."""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"cannot take overlap of dims {a.dim} and {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def projector(a: PureState) -> DensityMatrix:
    v = a.amplitudes
    return DensityMatrix(np.outer(v, v.conj()))


def apply_unitary(u: np.ndarray, state: State) -> State:
    if isinstance(state, PureState):
        return PureState(u @ state.amplitudes)
    m = u @ state.entries @ u.conj().T
    return DensityMatrix(0.5 * (m + m.conj().T))
