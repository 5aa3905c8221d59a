"""Sets of Bargmann invariants: sampling, boundaries and verification."""

__version__ = "0.1.0"

from .boundary import RegionSpec, boundary_radius, region_contains, tau, theta_star  # noqa: E402
from .invariants import delta_pure, delta_qubit_bloch, delta_trace  # noqa: E402
from .states import PureState, DensityMatrix, StateTuple  # noqa: E402

__all__ = [
    "DensityMatrix",
    "PureState",
    "RegionSpec",
    "StateTuple",
    "boundary_radius",
    "delta_pure",
    "delta_qubit_bloch",
    "delta_trace",
    "region_contains",
    "tau",
    "theta_star",
]
