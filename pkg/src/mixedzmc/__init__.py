"""Triply periodic zero mean curvature surfaces of mixed causal type in
Lorentz-Minkowski 3-space: construction, assembly and verification."""

from .errors import MixedZMCError
from .minkowski import CausalType, Isometry, causal_type, minkowski_dot
from .riemann import SurfaceParams, make_params

__all__ = [
    "CausalType",
    "Isometry",
    "MixedZMCError",
    "SurfaceParams",
    "causal_type",
    "make_params",
    "minkowski_dot",
]
__version__ = "0.1.0"
