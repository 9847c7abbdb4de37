"""The hyperelliptic curve ``w^2 = z^8 + b z^4 + 1`` and paths on it.

The curve depends on one parameter ``a`` in (0, 1) through
``b = a^4 + a^-4``.  Its eight branch points are the roots of
``z^4 = -a^4`` and ``z^4 = -a^-4``.

Besides point evaluation this module provides the four arcs ``C1..C4``, the
loops ``Gamma1 = C1 * C2`` and ``Gamma2 = C3 * C4`` together with their images
under the order-four automorphism ``(z, w) -> (iz, w)``, and nearest-root
continuation of ``w`` along sampled ``z``-paths.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BranchPointProximity, OutOfRange, PoleInput

DELTA_BP = 1e-6
CHART_SWITCH = 2.0


@dataclass(frozen=True)
class SurfaceParams:
    """Parameter of the curve; ``b`` is always derived from ``a``."""

    a: float

    def __post_init__(self):
        a = float(self.a)
        if not (0.0 < a < 1.0) or not np.isfinite(a):
            raise OutOfRange(f"a must lie in (0, 1), got {self.a!r}")
        object.__setattr__(self, "a", a)

    @property
    def b(self) -> float:
        a4 = self.a**4
        return a4 + 1.0 / a4

    def poly(self, z):
        """Right-hand side ``z^8 + b z^4 + 1``."""
        z4 = np.asarray(z) ** 4
        return z4 * z4 + self.b * z4 + 1.0

    def branch_points(self) -> np.ndarray:
        """The eight zeros of the right-hand side, sorted by modulus then angle."""
        k = np.arange(4)
        unit = np.exp(1j * (np.pi / 4 + k * np.pi / 2))
        return np.concatenate([self.a * unit, unit / self.a])


def make_params(a: float) -> SurfaceParams:
    """Validate ``a`` and return the curve parameters."""
    return SurfaceParams(a)


@dataclass(frozen=True)
class SurfacePoint:
    """A point of the curve in one of two affine charts.

    In the finite chart the fields are ``(z, w)``.  In the chart at infinity
    they are ``(zeta, omega) = (1/z, w/z^4)``, which satisfy the same
    equation ``omega^2 = zeta^8 + b zeta^4 + 1``.
    """

    z: complex
    w: complex
    at_infinity: bool = False

    def residual(self, params: SurfaceParams) -> float:
        """Relative defect ``|w^2 - P(z)| / (1 + |z|^8)`` in the stored chart."""
        z, w = complex(self.z), complex(self.w)
        return abs(w * w - complex(params.poly(z))) / (1.0 + abs(z) ** 8)

    def to_finite(self) -> "SurfacePoint":
        if not self.at_infinity:
            return self
        if self.z == 0:
            raise PoleInput("the points over z = infinity have no finite chart")
        zeta = complex(self.z)
        return SurfacePoint(1.0 / zeta, complex(self.w) / zeta**4, False)

    def to_infinite(self) -> "SurfacePoint":
        if self.at_infinity:
            return self
        if self.z == 0:
            raise PoleInput("the points over z = 0 have no chart at infinity")
        z = complex(self.z)
        return SurfacePoint(1.0 / z, complex(self.w) / z**4, True)

    def normalized(self) -> "SurfacePoint":
        """Switch to the chart at infinity exactly when ``|z| > 2``."""
        if self.at_infinity:
            if self.z != 0 and abs(1.0 / complex(self.z)) <= CHART_SWITCH:
                return self.to_finite()
            return self
        if abs(complex(self.z)) > CHART_SWITCH:
            return self.to_infinite()
        return self

    def close_to(self, other: "SurfacePoint", tol: float = 1e-9) -> bool:
        """Whether two points coincide on the curve (same ``z`` and same ``w``)."""
        p, q = self.normalized(), other.normalized()
        if p.at_infinity != q.at_infinity:
            return False
        return abs(complex(p.z) - complex(q.z)) <= tol and abs(complex(p.w) - complex(q.w)) <= tol * max(
            1.0, abs(complex(p.w))
        )


def sqrt_poly_positive(params: SurfaceParams, t):
    """Positive root of ``t^8 + b t^4 + 1`` for real ``t`` (overflow-safe)."""
    t = np.asarray(t, dtype=float)
    big = np.abs(t) > 1.0
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        s = np.where(big, 1.0 / np.where(big, t, 1.0), 0.0)
        s4 = s**4
        large = (t * t) ** 2 * np.sqrt(1.0 + params.b * s4 + s4 * s4)
    t4 = t**4
    small = np.sqrt(np.where(big, 1.0, t4 * t4 + params.b * t4 + 1.0))
    return np.where(big, large, small)


class Arc(enum.Enum):
    """The four arcs out of which the loops are built, with parameter ranges."""

    C1 = (-np.inf, 0.0)
    C2 = (0.0, np.inf)
    C3 = (-1.0, 1.0)
    C4 = (-np.pi / 2, np.pi / 2)

    @property
    def t_range(self) -> tuple[float, float]:
        return self.value

    @property
    def infinite(self) -> bool:
        return self in (Arc.C1, Arc.C2)


def _check_range(arc: Arc, t) -> None:
    lo, hi = arc.t_range
    t = np.asarray(t, dtype=float)
    if np.any(np.isnan(t)) or np.any(t < lo) or np.any(t > hi):
        raise OutOfRange(f"parameter outside {arc.name} range [{lo}, {hi}]")


def arc_zw(params: SurfaceParams, arc: Arc, t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised ``z(t)``, ``w(t)`` and ``dz/dt`` along an arc (finite ``t``)."""
    t = np.asarray(t, dtype=float)
    if arc in (Arc.C1, Arc.C3):
        z = -1j * t
        w = sqrt_poly_positive(params, t).astype(complex)
        dz = np.full(t.shape, -1j)
    elif arc is Arc.C2:
        z = t.astype(complex)
        w = sqrt_poly_positive(params, t).astype(complex)
        dz = np.ones(t.shape, dtype=complex)
    else:
        e = np.exp(1j * t)
        z = e
        w = -(e * e) * np.sqrt(2.0 * np.cos(4.0 * t) + params.b)
        dz = 1j * e
    return z, w, dz


def arc_point(params: SurfaceParams, arc: Arc, t: float) -> SurfacePoint:
    """The point of ``arc`` at parameter ``t``; ``t = +-inf`` gives the point over infinity."""
    _check_range(arc, t)
    t = float(t)
    if np.isinf(t):
        # On C1 and C2 the ratio w / z^4 tends to 1 at both ends.
        return SurfacePoint(0.0, 1.0, True)
    z, w, _ = arc_zw(params, arc, np.array([t]))
    return SurfacePoint(complex(z[0]), complex(w[0])).normalized()


def compactify(sigma):
    """Map ``sigma`` in [-1, 1] to ``t = tan(sigma pi / 2)``; returns ``(t, dt/dsigma)``."""
    sigma = np.asarray(sigma, dtype=float)
    t = np.tan(0.5 * np.pi * sigma)
    return t, 0.5 * np.pi * (1.0 + t * t)


class Loop(enum.Enum):
    GAMMA1 = "Gamma1"
    GAMMA2 = "Gamma2"


@dataclass(frozen=True)
class LoopSpec:
    """A loop together with the number of times ``phi3`` is applied to it."""

    loop: Loop
    deck_power: int = 0

    def __post_init__(self):
        if not 0 <= int(self.deck_power) <= 3:
            raise OutOfRange("deck power must be in 0..3")
        object.__setattr__(self, "deck_power", int(self.deck_power))

    @property
    def s_range(self) -> tuple[float, float]:
        return (-np.inf, np.inf) if self.loop is Loop.GAMMA1 else (-2.0, np.pi)


@dataclass(frozen=True)
class PathPiece:
    """One smooth piece of an integration path.

    ``evaluate(s)`` returns ``(z, w, dz/ds)`` as complex arrays for a 1-D
    array of parameters ``s`` strictly inside ``[lo, hi]``.
    """

    lo: float
    hi: float
    evaluate: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]


def arc_piece(params: SurfaceParams, arc: Arc, deck_power: int = 0) -> PathPiece:
    """Integration piece for an arc, compactified when its range is infinite."""
    rot = 1j**deck_power
    if arc.infinite:
        lo, hi = (-1.0, 0.0) if arc is Arc.C1 else (0.0, 1.0)

        def evaluate(sig):
            t, dt = compactify(sig)
            z, w, dz = arc_zw(params, arc, t)
            return rot * z, w, rot * dz * dt

    else:
        lo, hi = arc.t_range

        def evaluate(t):
            z, w, dz = arc_zw(params, arc, t)
            return rot * z, w, rot * dz

    return PathPiece(lo, hi, evaluate)


def loop_pieces(params: SurfaceParams, spec: LoopSpec) -> list[PathPiece]:
    """Pieces of a loop in traversal order."""
    arcs = (Arc.C1, Arc.C2) if spec.loop is Loop.GAMMA1 else (Arc.C3, Arc.C4)
    return [arc_piece(params, arc, spec.deck_power) for arc in arcs]


def deck_phi(j: int, p: SurfacePoint) -> SurfacePoint:
    """Apply one of the four curve automorphisms.

    ``phi1 = (conj z, conj w)``, ``phi2 = (z, -w)``, ``phi3 = (iz, w)`` and
    ``phi4 = (1/z, w/z^4)``.  Points are accepted in either chart; ``phi4``
    simply exchanges the two charts, so ``z = 0`` maps to the point over
    infinity without any division.
    """
    z, w, inf = complex(p.z), complex(p.w), p.at_infinity
    if j == 1:
        q = SurfacePoint(z.conjugate(), w.conjugate(), inf)
    elif j == 2:
        q = SurfacePoint(z, -w, inf)
    elif j == 3:
        # In the chart at infinity (iz) maps zeta to -i zeta; omega is unchanged.
        q = SurfacePoint(-1j * z if inf else 1j * z, w, inf)
    elif j == 4:
        q = SurfacePoint(z, w, not inf)
    else:
        raise OutOfRange("deck transformation index must be 1..4")
    return q.normalized()


def loop_point(params: SurfaceParams, spec: LoopSpec, s: float) -> SurfacePoint:
    """Point of the loop at parameter ``s``.

    ``Gamma1`` uses ``C1(s)`` for ``s < 0`` and ``C2(s)`` for ``s >= 0``;
    ``Gamma2`` uses ``C3(s + 1)`` on ``[-2, 0]`` and ``C4(s - pi/2)`` on
    ``(0, pi]``.
    """
    lo, hi = spec.s_range
    s = float(s)
    if np.isnan(s) or s < lo or s > hi:
        raise OutOfRange(f"loop parameter outside [{lo}, {hi}]")
    if spec.loop is Loop.GAMMA1:
        p = arc_point(params, Arc.C1, s) if s < 0 else arc_point(params, Arc.C2, s)
    else:
        p = arc_point(params, Arc.C3, s + 1.0) if s <= 0 else arc_point(params, Arc.C4, s - np.pi / 2)
    for _ in range(spec.deck_power):
        p = deck_phi(3, p)
    return p


def _segment_distance(points: np.ndarray, z0: np.ndarray, z1: np.ndarray) -> np.ndarray:
    """Distance from each point to each segment, shape ``(n_seg, n_points)``."""
    d = (z1 - z0)[:, None]
    rel = points[None, :] - z0[:, None]
    with np.errstate(invalid="ignore", divide="ignore"):
        u = np.where(np.abs(d) > 0, np.real(rel * np.conj(d)) / np.abs(d) ** 2, 0.0)
    u = np.clip(u, 0.0, 1.0)
    return np.abs(rel - u * d)


def continue_branch(
    params: SurfaceParams,
    path,
    w_start: complex,
    *,
    margin: float = DELTA_BP,
    max_halvings: int = 40,
    separation: float = 0.5,
) -> tuple[np.ndarray, np.ndarray]:
    """Continue ``w`` along a sampled ``z``-path by nearest-root selection.

    Parameters
    ----------
    path : array_like of complex
        Ordered samples ``z_0, z_1, ...``; consecutive samples are joined by
        straight segments.
    w_start : complex
        Value of ``w`` at ``z_0``; must square to ``P(z_0)``.
    margin : float
        Minimal admissible distance of the path from a branch point.
    max_halvings : int
        Maximal number of bisections of any original step.
    separation : float
        A step is accepted once ``|w_k - w_{k-1}| <= separation * |w_k + w_{k-1}|``
        for the selected root, i.e. the nearest root is unambiguous.

    Returns
    -------
    z, w : ndarray
        The (possibly refined) samples and the continued values; the original
        samples form a subsequence starting at index 0.

    Raises
    ------
    BranchPointProximity
        If any segment passes within ``margin`` of a branch point.
    ValueError
        If ``w_start`` is not a root at the first sample.
    """
    z = np.atleast_1d(np.asarray(path, dtype=complex))
    w_start = complex(w_start)
    p0 = complex(params.poly(z[0]))
    if abs(w_start * w_start - p0) > 1e-10 * (1.0 + abs(z[0]) ** 8):
        raise ValueError("w_start does not lie over the first path sample")
    bp = params.branch_points()
    if z.size == 1:
        if np.min(np.abs(bp - z[0])) < margin:
            raise BranchPointProximity("path starts at a branch point")
        return z, np.array([w_start])
    if np.min(_segment_distance(bp, z[:-1], z[1:])) < margin:
        raise BranchPointProximity(f"path passes within {margin:g} of a branch point")

    for _ in range(max_halvings + 1):
        r = np.sqrt(params.poly(z))
        diff = np.abs(r[1:] - r[:-1])
        summ = np.abs(r[1:] + r[:-1])
        near, far = np.minimum(diff, summ), np.maximum(diff, summ)
        bad = near > separation * far
        if not np.any(bad):
            break
        idx = np.nonzero(bad)[0]
        mids = 0.5 * (z[idx] + z[idx + 1])
        z = np.insert(z, idx + 1, mids)
    else:
        raise BranchPointProximity("branch continuation did not separate roots after step halving")

    flips = np.where(np.abs(r[1:] - r[:-1]) <= np.abs(r[1:] + r[:-1]), 1.0, -1.0)
    first = 1.0 if abs(r[0] - w_start) <= abs(r[0] + w_start) else -1.0
    signs = first * np.concatenate([[1.0], np.cumprod(flips)])
    w = signs * r
    w[0] = w_start
    return z, w


def sector_sheet_w(params: SurfaceParams, z):
    """Value of ``w`` on the sheet with ``w(0) = 1`` over ``|arg z| <= pi/4``, ``|z| <= 1``.

    On this closed sector the principal square root coincides with the
    continuation from ``w(0) = 1`` except on the boundary rays beyond the
    branch points, where the polynomial is negative real.  There the root is
    the limit from inside the sector: ``+i sqrt|P|`` on ``arg z = pi/4`` and
    ``-i sqrt|P|`` on ``arg z = -pi/4``.
    """
    z = np.asarray(z, dtype=complex)
    w = np.sqrt(params.poly(z))
    on_cut = np.abs(w.real) <= 1e-12 * np.abs(w)
    if np.any(on_cut):
        side = np.where(z.imag >= 0, 1.0, -1.0)
        w = np.where(on_cut, 1j * side * np.abs(w), w)
    return w
