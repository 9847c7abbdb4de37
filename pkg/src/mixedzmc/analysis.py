"""Period-closure search for intermediate associate angles and limit checks.

The limit comparisons need a similarity normalisation, not only a
translation: the surfaces approach their limits in coordinates scaled by a
factor of two and rotated about the x0-axis.  The maps used are

* Scherk (``a -> 1``, ``theta = 0``, origin at ``f(0)``):
  ``t = 2 x0 - pi/2`` and ``(x, y) = 2 R(3pi/4) (x1, x2) - (pi/2, pi/2)``;
* entire graph (``a -> 1``, ``theta = pi/2``, origin at ``f(0)``):
  ``t = -2 x0`` and ``(x, y) = 2 R(3pi/4) (x1, x2)``;
* helicoid (``a -> 0``, origin at the fold point ``gamma(0)``, scaled by
  ``sqrt(b)``): the surface ``(2 phi, -rho sin phi, rho cos phi - 2)``.

Here ``R(psi)`` is the rotation of the x1x2-plane by ``psi``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .errors import NoRootFound, OutOfRange, PoleInput
from .maxface import eval_maxface, integral_from
from .periods import period_table
from .riemann import SurfaceParams, make_params
from .timelike import fold_curve

GYROID_THRESHOLD = 1e-4
MAX_DENOMINATOR = 4
TRIVIAL_MARGIN = 0.05
_TRIPLES = tuple(itertools.combinations(range(8), 3))


# ---------------------------------------------------------------------------
# Gyroid-type member
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GyroidResidual:
    """Lattice-closure defect of the eight period vectors at ``(a, theta)``.

    Attributes
    ----------
    residual : float
        ``min_d max |d K - round(d K)|`` over denominators ``d = 1..4``, where
        ``K`` holds the coordinates of all eight vectors in the chosen basis;
        ``inf`` when the vectors do not span space.
    basis : tuple of int
        Indices (0..7, columns of ``P1`` then ``P2``) of the basis vectors.
    denominator : int
        The denominator attaining the minimum.
    """

    a: float
    theta: float
    residual: float
    basis: tuple[int, int, int]
    denominator: int = 1


def _closure_residual(cols: np.ndarray) -> tuple[float, tuple[int, int, int], int]:
    M = cols.T
    scale = float(np.max(np.linalg.norm(cols, axis=1)))
    dets = np.array([abs(np.linalg.det(M[:, t])) for t in _TRIPLES])
    k = int(np.argmax(dets))
    if scale == 0 or dets[k] <= 1e-10 * scale**3:
        return float("inf"), _TRIPLES[k], 1
    K = np.linalg.solve(M[:, _TRIPLES[k]], M)
    best, best_d = float("inf"), 1
    for d in range(1, MAX_DENOMINATOR + 1):
        r = float(np.max(np.abs(d * K - np.rint(d * K))))
        if r < best:
            best, best_d = r, d
    return best, _TRIPLES[k], best_d


def gyroid_residual(params: SurfaceParams, theta: float) -> GyroidResidual:
    """Closure defect of the period vectors of the surface at angle ``theta``.

    The basis is the triple of period vectors with the largest absolute
    determinant; every vector is expressed in it, and the residual measures
    how far those coordinates are from a common rational lattice with
    denominator at most four.
    """
    cols = period_table(params).columns(theta)
    r, basis, d = _closure_residual(cols)
    return GyroidResidual(params.a, float(theta), r, basis, d)


@dataclass
class GyroidSearchResult:
    a: float
    theta: float
    residual: float
    grid_a: np.ndarray
    grid_theta: np.ndarray
    grid_residual: np.ndarray
    masked: np.ndarray

    def grid_rows(self) -> list[dict]:
        """Residual grid as ``{a, theta, residual}`` rows (masked cells omitted)."""
        rows = []
        for i, a in enumerate(self.grid_a):
            for j, t in enumerate(self.grid_theta):
                if not self.masked[i, j]:
                    rows.append({"a": float(a), "theta": float(t), "residual": float(self.grid_residual[i, j])})
        return rows


def _residual_at(x) -> float:
    a, t = float(x[0]), float(x[1])
    if not (0.0 < a < 1.0):
        return float("inf")
    return gyroid_residual(make_params(a), t).residual


def gyroid_search(
    a_range: tuple[float, float] = (0.2, 0.5),
    theta_range: tuple[float, float] = (0.5, 1.0),
    n_a: int = 61,
    n_theta: int = 51,
    n_starts: int = 8,
    threshold: float = GYROID_THRESHOLD,
    margin: float = TRIVIAL_MARGIN,
) -> GyroidSearchResult:
    """Grid scan plus Nelder-Mead refinement of :func:`gyroid_residual`.

    Cells with ``theta`` within ``margin`` of ``0`` or ``pi/2`` are masked,
    because every period lattice closes there.  The best ``n_starts`` cells
    seed local minimisations; the minimiser with the smallest residual is
    returned, ties broken by the lexicographic order of ``(a, theta)``.

    Raises
    ------
    OutOfRange
        If the ranges leave ``(0, 1) x (0, pi/2)``.
    NoRootFound
        If no refined minimiser inside the ranges has residual below ``threshold``.
    """
    a0, a1 = map(float, a_range)
    t0, t1 = map(float, theta_range)
    if not (0.0 < a0 <= a1 < 1.0) or not (0.0 < t0 <= t1 < np.pi / 2):
        raise OutOfRange("search ranges must lie in (0, 1) x (0, pi/2)")
    A = np.linspace(a0, a1, n_a)
    T = np.linspace(t0, t1, n_theta)
    R = np.array([[gyroid_residual(make_params(a), t).residual for t in T] for a in A])
    masked = (np.abs(T) < margin)[None, :] | (np.abs(T - np.pi / 2) < margin)[None, :]
    masked = np.broadcast_to(masked, R.shape).copy()
    work = np.where(masked, np.inf, R)
    order = np.lexsort((np.broadcast_to(T, R.shape).ravel(), np.broadcast_to(A[:, None], R.shape).ravel(), work.ravel()))
    candidates = []
    for flat in order[:n_starts]:
        if not np.isfinite(work.ravel()[flat]):
            break
        i, j = np.unravel_index(flat, R.shape)
        res = minimize(
            _residual_at,
            [A[i], T[j]],
            method="Nelder-Mead",
            bounds=[(a0, a1), (t0, t1)],
            options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 2000},
        )
        a, t = float(res.x[0]), float(res.x[1])
        inside = a0 <= a <= a1 and t0 <= t <= t1 and min(t, np.pi / 2 - t) >= margin
        if inside and res.fun < threshold:
            candidates.append((float(res.fun), round(a, 12), round(t, 12), a, t))
    if not candidates:
        raise NoRootFound(f"no Gyroid-type parameter in {a_range} x {theta_range}")
    fun, _, _, a, t = min(candidates)
    return GyroidSearchResult(a, t, fun, A, T, R, masked)


# ---------------------------------------------------------------------------
# Limits a -> 1
# ---------------------------------------------------------------------------


def _rotate(x1, x2, psi):
    c, s = np.cos(psi), np.sin(psi)
    return c * x1 - s * x2, s * x1 + c * x2


def scherk_coordinates(points: np.ndarray) -> np.ndarray:
    """``(t, x, y)`` of maxface images at ``theta = 0`` normalised by ``f(0) = 0``."""
    p = np.atleast_2d(points)
    x, y = _rotate(p[:, 1], p[:, 2], 0.75 * np.pi)
    return np.stack([2 * p[:, 0] - np.pi / 2, 2 * x - np.pi / 2, 2 * y - np.pi / 2], axis=1)


def graph_coordinates(points: np.ndarray) -> np.ndarray:
    """``(t, x, y)`` of images at ``theta = pi/2`` normalised by ``f(0) = 0``."""
    p = np.atleast_2d(points)
    x, y = _rotate(p[:, 1], p[:, 2], 0.75 * np.pi)
    return np.stack([-2 * p[:, 0], 2 * x, 2 * y], axis=1)


def scherk_equation(txy: np.ndarray) -> np.ndarray:
    """``cos t - cos x cos y``."""
    txy = np.atleast_2d(txy)
    return np.cos(txy[:, 0]) - np.cos(txy[:, 1]) * np.cos(txy[:, 2])


def graph_equation(txy: np.ndarray) -> np.ndarray:
    """``e^t cosh x - cosh y``."""
    txy = np.atleast_2d(txy)
    return np.exp(txy[:, 0]) * np.cosh(txy[:, 1]) - np.cosh(txy[:, 2])


def limit_sample_points(n_r: int = 6, n_t: int = 5, r_max: float = 0.9, angle_margin: float = 0.15) -> np.ndarray:
    """Sector points away from the branch points that approach ``|z| = 1``."""
    r = np.linspace(0.0, r_max, n_r)
    t = np.linspace(-(np.pi / 4 - angle_margin), np.pi / 4 - angle_margin, n_t)
    pts = (r[:, None] * np.exp(1j * t[None, :])).ravel()
    return np.unique(np.round(pts, 15))


def _check_near_one(params: SurfaceParams) -> None:
    if params.a < 0.9:
        raise OutOfRange("limit check a -> 1 needs a >= 0.9")


def scherk_residual(params: SurfaceParams, samples=None) -> float:
    """Maximum of ``|cos t - cos x cos y|`` over maxface images at ``theta = 0``."""
    _check_near_one(params)
    zs = limit_sample_points() if samples is None else np.asarray(samples, dtype=complex).ravel()
    pts = np.array([eval_maxface(params, 0.0, z) for z in zs])
    return float(np.max(np.abs(scherk_equation(scherk_coordinates(pts)))))


def timelike_limit_samples(params: SurfaceParams, n: int = 5, margin: float = 0.15) -> np.ndarray:
    """Points of the timelike piece with ``|u +- v| <= pi/4 - margin``, in the
    frame where the maxface satisfies ``f(0) = 0``."""
    fc = fold_curve(params)
    lim = np.pi / 4 - margin
    u = np.linspace(0.0, lim, n)
    v = np.linspace(0.0, lim, n)
    U, V = np.meshgrid(u, v, indexing="ij")
    keep = (np.abs(U + V) <= lim + 1e-15) & (np.abs(U - V) <= lim + 1e-15)
    pts = fc.f_tilde(U[keep], V[keep])
    return pts + eval_maxface(params, np.pi / 2, 1.0)


def s0_residual(params: SurfaceParams, samples=None, timelike: bool = True) -> float:
    """Maximum of ``|e^t cosh x - cosh y|`` over both causal parts at ``theta = pi/2``."""
    _check_near_one(params)
    zs = limit_sample_points() if samples is None else np.asarray(samples, dtype=complex).ravel()
    pts = [eval_maxface(params, np.pi / 2, z) for z in zs]
    if timelike:
        pts.extend(timelike_limit_samples(params))
    return float(np.max(np.abs(graph_equation(graph_coordinates(np.array(pts))))))


# ---------------------------------------------------------------------------
# Limits a -> 0
# ---------------------------------------------------------------------------


def elliptic_limit_eval(theta: float, z: complex) -> np.ndarray:
    """Real part of the integral of ``e^{i theta} (-2z, 1+z^2, i(1-z^2)) dz / z^2`` from 1.

    The antiderivative is ``(-2 log z, z - 1/z, i(2 - z - 1/z))`` with the
    principal logarithm, so ``z`` must avoid the non-positive real axis for
    the value to agree with path integration inside the slit plane.

    Raises
    ------
    PoleInput
        At ``z = 0``.
    """
    z = complex(z)
    if z == 0:
        raise PoleInput("the limit data have a pole at z = 0")
    F = np.array([-2.0 * np.log(z), z - 1.0 / z, 1j * (2.0 - z - 1.0 / z)])
    return np.real(np.exp(1j * theta) * F)


def rescaled_maxface(params: SurfaceParams, theta: float, z: complex) -> np.ndarray:
    """``sqrt(b) (f(z) - f(1))``, integrated from ``z = 1`` with the scale inside the quadrature."""
    return np.real(integral_from(params, theta, z, base=1.0, scale=np.sqrt(params.b)))


def elliptic_limit_residual(params: SurfaceParams, theta: float, samples=None) -> float:
    """Largest distance between rescaled maxface samples and the limit surface.

    The default samples lie on the annulus ``0.5 <= |z| <= 1`` of the sector.
    """
    if samples is None:
        r = np.linspace(0.5, 1.0, 4)
        t = np.linspace(-np.pi / 4, np.pi / 4, 5)
        samples = (r[:, None] * np.exp(1j * t[None, :])).ravel()
    d = [np.linalg.norm(rescaled_maxface(params, theta, z) - elliptic_limit_eval(theta, z)) for z in samples]
    return float(max(d))


def helicoid_point(rho, phi) -> np.ndarray:
    """Point ``(2 phi, -rho sin phi, rho cos phi - 2)`` of the limit helicoid."""
    rho, phi = np.broadcast_arrays(np.asarray(rho, float), np.asarray(phi, float))
    return np.stack([2 * phi, -rho * np.sin(phi), rho * np.cos(phi) - 2.0], axis=-1)


def helicoid_distance(points: np.ndarray) -> np.ndarray:
    """Euclidean distance of points from the limit helicoid.

    For fixed ``phi`` the closest ruling point has squared distance
    ``(x0 - 2 phi)^2 + (x1 cos phi + (x2 + 2) sin phi)^2``; this is minimised
    over ``phi`` near ``x0 / 2``.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    out = np.empty(len(pts))
    for k, (x0, x1, x2) in enumerate(pts):
        g = lambda p: (x0 - 2 * p) ** 2 + (x1 * np.cos(p) + (x2 + 2) * np.sin(p)) ** 2  # noqa: E731
        c = 0.5 * x0
        res = minimize_scalar(g, bounds=(c - np.pi / 2, c + np.pi / 2), method="bounded", options={"xatol": 1e-12})
        best = min(g(c), res.fun)
        out[k] = np.sqrt(max(best, 0.0))
    return out


def helicoid_samples(params: SurfaceParams, n: int = 5) -> np.ndarray:
    """Rescaled samples of both pieces of the fundamental piece, in the fold frame."""
    if params.a > 0.2:
        raise OutOfRange("limit check a -> 0 needs a <= 0.2")
    fc = fold_curve(params)
    s = np.sqrt(params.b)
    r = np.linspace(0.5, 1.0, n)
    t = np.linspace(-np.pi / 4, np.pi / 4, n)
    maxf = [rescaled_maxface(params, np.pi / 2, z) for z in (r[:, None] * np.exp(1j * t[None, :])).ravel()]
    alpha = np.linspace(0.0, float(fc.tau(np.pi / 4)), n)
    beta = np.linspace(0.0, float(fc.tau(np.pi / 2)), n)
    A, B = np.meshgrid(alpha, beta, indexing="ij")
    tl = s * fc.check_f(A.ravel(), B.ravel())
    return np.vstack([np.array(maxf), tl])


def helicoid_limit_residual(params: SurfaceParams, samples=None) -> float:
    """Largest distance of rescaled fundamental-piece samples from the helicoid."""
    pts = helicoid_samples(params) if samples is None else np.asarray(samples, dtype=float)
    return float(np.max(helicoid_distance(pts)))
