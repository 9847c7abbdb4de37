"""Arithmetic in Lorentz-Minkowski 3-space and the isometries used for tiling.

Points and vectors are plain ``numpy`` arrays whose last axis has length 3
and holds ``(x0, x1, x2)``; ``x0`` is the timelike coordinate, so the metric
is ``diag(-1, 1, 1)``.  All functions broadcast over leading axes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import NullAxis, NullNormal

ETA = np.diag([-1.0, 1.0, 1.0])
EPS_CAUSAL = 1e-9


class CausalType(enum.IntEnum):
    """Causal character of a vector or surface element.

    The integer values are the ones written to mesh files.
    """

    SPACELIKE = 0
    TIMELIKE = 1
    LIGHTLIKE = 2


def as_vec(v: ArrayLike) -> NDArray[np.float64]:
    """Convert input to a float array with a trailing axis of length 3."""
    arr = np.asarray(v, dtype=float)
    if arr.shape[-1] != 3:
        raise ValueError(f"expected trailing dimension 3, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector components must be finite")
    return arr


def minkowski_dot(u: ArrayLike, v: ArrayLike) -> NDArray[np.float64] | float:
    """Lorentzian inner product ``-u0 v0 + u1 v1 + u2 v2``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return -u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] + u[..., 2] * v[..., 2]


def minkowski_norm2(v: ArrayLike):
    """Squared Lorentzian length ``<v, v>`` (may be negative)."""
    return minkowski_dot(v, v)


def lorentz_cross(u: ArrayLike, v: ArrayLike) -> NDArray[np.float64]:
    """Lorentzian cross product, Minkowski-orthogonal to both arguments."""
    return np.cross(u, v) * np.array([-1.0, 1.0, 1.0])


def causal_type(v: ArrayLike, eps: float = EPS_CAUSAL) -> CausalType:
    """Classify a single vector by the sign of its Minkowski norm.

    Parameters
    ----------
    v : array_like, shape (3,)
    eps : float
        Absolute band around zero treated as lightlike.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = float(minkowski_norm2(as_vec(v)))
    if abs(n) <= eps:
        return CausalType.LIGHTLIKE
    return CausalType.SPACELIKE if n > 0 else CausalType.TIMELIKE


def plane_causal_type(e1: ArrayLike, e2: ArrayLike, eps: float = 1e-12) -> NDArray[np.int8]:
    """Causal type of the plane(s) spanned by ``e1`` and ``e2``.

    The induced Gram determinant is positive for spacelike planes, negative
    for timelike ones.  ``eps`` is relative to the product of squared
    Euclidean edge lengths.
    """
    e1 = np.asarray(e1, dtype=float)
    e2 = np.asarray(e2, dtype=float)
    g11 = minkowski_dot(e1, e1)
    g22 = minkowski_dot(e2, e2)
    g12 = minkowski_dot(e1, e2)
    det = g11 * g22 - g12 * g12
    scale = np.sum(e1 * e1, axis=-1) * np.sum(e2 * e2, axis=-1)
    out = np.full(np.shape(det), CausalType.LIGHTLIKE, dtype=np.int8)
    out[det > eps * scale] = CausalType.SPACELIKE
    out[det < -eps * scale] = CausalType.TIMELIKE
    return out


@dataclass(frozen=True)
class Isometry:
    """Affine isometry ``p -> linear @ p + translation`` of Minkowski space."""

    linear: NDArray[np.float64]
    translation: NDArray[np.float64] = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        lin = np.array(self.linear, dtype=float).reshape(3, 3)
        tr = np.array(self.translation, dtype=float).reshape(3)
        if not np.allclose(lin.T @ ETA @ lin, ETA, atol=1e-12, rtol=0):
            raise ValueError("linear part does not preserve the Minkowski form")
        lin.setflags(write=False)
        tr.setflags(write=False)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", tr)

    def __call__(self, p: ArrayLike) -> NDArray[np.float64]:
        p = np.asarray(p, dtype=float)
        return p @ self.linear.T + self.translation

    def compose(self, other: "Isometry") -> "Isometry":
        """Return ``self o other`` (apply ``other`` first)."""
        return Isometry(self.linear @ other.linear, self.linear @ other.translation + self.translation)

    def inverse(self) -> "Isometry":
        inv = np.linalg.inv(self.linear)
        return Isometry(inv, -inv @ self.translation)

    @property
    def orientation(self) -> int:
        """Sign of the determinant of the linear part."""
        return int(np.sign(np.linalg.det(self.linear)))

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(np.eye(3))


def line_reflection(point: ArrayLike, direction: ArrayLike, eps: float = EPS_CAUSAL) -> Isometry:
    """Rotation by pi about the line through ``point`` along ``direction``.

    The decomposition into the line direction and its Minkowski-orthogonal
    complement keeps the map an isometry for spacelike and timelike axes.
    """
    d = as_vec(direction)
    nd = float(minkowski_norm2(d))
    if abs(nd) <= eps * max(1.0, float(d @ d)):
        raise NullAxis("reflection axis is lightlike")
    lin = 2.0 * np.outer(d, d) @ ETA / nd - np.eye(3)
    p0 = as_vec(point)
    return Isometry(lin, p0 - lin @ p0)


def plane_reflection(point: ArrayLike, normal: ArrayLike, eps: float = EPS_CAUSAL) -> Isometry:
    """Mirror in the plane through ``point`` with Minkowski normal ``normal``."""
    n = as_vec(normal)
    nn = float(minkowski_norm2(n))
    if abs(nn) <= eps * max(1.0, float(n @ n)):
        raise NullNormal("plane normal is lightlike")
    lin = np.eye(3) - 2.0 * np.outer(n, n) @ ETA / nn
    p0 = as_vec(point)
    return Isometry(lin, p0 - lin @ p0)


def x0_rotation(angle: float) -> Isometry:
    """Euclidean rotation of the x1x2-plane, fixing x0."""
    c, s = np.cos(angle), np.sin(angle)
    return Isometry(np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]))


def reflect_about_line(point: ArrayLike, direction: ArrayLike, p: ArrayLike) -> NDArray[np.float64]:
    """Image of ``p`` under the pi-rotation about a non-null line."""
    return line_reflection(point, direction)(p)


def reflect_about_plane(point: ArrayLike, normal: ArrayLike, p: ArrayLike) -> NDArray[np.float64]:
    """Image of ``p`` under the mirror in a plane with non-null normal."""
    return plane_reflection(point, normal)(p)


def rotate_x0(angle: float, p: ArrayLike) -> NDArray[np.float64]:
    """Rotate ``p`` by ``angle`` about the x0-axis."""
    return x0_rotation(angle)(p)
