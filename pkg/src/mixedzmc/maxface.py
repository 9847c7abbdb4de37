"""Evaluation of the maximal immersion and its numerical diagnostics.

Points are evaluated on the closed sector ``|z| <= 1``, ``|arg z| <= pi/4`` of
the sheet with ``w(0) = 1``.  Integration always runs along the real axis to
``|z|`` and then along the circle of radius ``|z|``.  The only branch points
on the sector boundary are ``a e^{+-i pi/4}``; paths ending there are
integrated after a square-root substitution that removes the inverse
square-root singularity.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import CriterionViolation, OutOfRange
from .minkowski import lorentz_cross, minkowski_dot
from .periods import FormVariant, WeierstrassForm
from .quadrature import gauss_kronrod, legendre_nodes
from .riemann import SurfaceParams, continue_branch, sector_sheet_w, sqrt_poly_positive

QUAD_TOL = 1e-12
_ANGLE_SLACK = 1e-12


class SingularityClass(enum.Enum):
    CONE_LIKE = "ConeLike"
    FOLD = "Fold"
    CUSPIDAL_EDGE = "CuspidalEdge"
    OTHER = "Other"


def _form(theta: float, variant: FormVariant) -> WeierstrassForm:
    return WeierstrassForm(float(theta), variant)


def _check_sector(z: complex) -> None:
    if abs(z) > 1.0 + 1e-12 or abs(np.angle(z)) > np.pi / 4 + _ANGLE_SLACK:
        raise OutOfRange(f"z = {z} lies outside the sector |z| <= 1, |arg z| <= pi/4")


def _substituted(fn, lo: float, hi: float, singular_end: str | None):
    """Reparametrise ``[lo, hi]`` by ``u in [0, 1]`` with a square-root clustering.

    Returns an integrand in ``u`` whose integral over ``[0, 1]`` equals the
    integral of ``fn`` over ``[lo, hi]``.
    """
    span = hi - lo
    if singular_end == "end":

        def g(u):
            v = 1.0 - u
            return fn(hi - span * v * v) * (2.0 * span * v)[:, None]

    elif singular_end == "start":

        def g(u):
            return fn(lo + span * u * u) * (2.0 * span * u)[:, None]

    else:

        def g(u):
            return fn(lo + span * u) * span

    return g


def _near_branch(params: SurfaceParams, z: complex) -> bool:
    return bool(np.min(np.abs(params.branch_points() - z)) < 1e-9)


def radial_integral(params, form: WeierstrassForm, r0: float, r1: float, scale: float = 1.0) -> np.ndarray:
    """Complex integral of ``form`` along the real axis from ``r0`` to ``r1``."""
    if r0 == r1:
        return np.zeros(3, dtype=complex)

    def fn(r):
        w = sqrt_poly_positive(params, r).astype(complex)
        return scale * form.values(r.astype(complex), w, np.ones_like(r))

    val, _ = gauss_kronrod(_substituted(fn, r0, r1, None), 0.0, 1.0, abs_tol=QUAD_TOL)
    return val


def arc_integral(params, form: WeierstrassForm, r: float, t0: float, t1: float, scale: float = 1.0) -> np.ndarray:
    """Complex integral of ``form`` along ``z = r e^{it}`` from ``t0`` to ``t1``."""
    if t0 == t1 or r == 0.0:
        return np.zeros(3, dtype=complex)

    def fn(t):
        z = r * np.exp(1j * t)
        return scale * form.values(z, sector_sheet_w(params, z), 1j * z)

    end = None
    if _near_branch(params, r * np.exp(1j * t1)):
        end = "end"
    elif _near_branch(params, r * np.exp(1j * t0)):
        end = "start"
    val, _ = gauss_kronrod(_substituted(fn, t0, t1, end), 0.0, 1.0, abs_tol=QUAD_TOL)
    return val


def ray_integral(params, form: WeierstrassForm, angle: float, r0: float, r1: float, scale: float = 1.0) -> np.ndarray:
    """Complex integral of ``form`` along the ray ``arg z = angle`` from ``r0`` to ``r1``."""
    if r0 == r1:
        return np.zeros(3, dtype=complex)
    e = np.exp(1j * angle)

    def fn(r):
        z = r * e
        return scale * form.values(z, sector_sheet_w(params, z), np.full(r.shape, e))

    end = None
    if _near_branch(params, r1 * e):
        end = "end"
    elif _near_branch(params, r0 * e):
        end = "start"
    val, _ = gauss_kronrod(_substituted(fn, r0, r1, end), 0.0, 1.0, abs_tol=QUAD_TOL)
    return val


def integral_from(
    params: SurfaceParams,
    theta: float,
    z: complex,
    *,
    base: float = 0.0,
    variant: FormVariant = FormVariant.MAXFACE,
    scale: float = 1.0,
) -> np.ndarray:
    """Complex integral of the form from the real base point ``base`` to ``z``."""
    z = complex(z)
    _check_sector(z)
    form = _form(theta, variant)
    r = abs(z)
    total = radial_integral(params, form, base, r, scale)
    if r > 0:
        total = total + arc_integral(params, form, r, 0.0, float(np.angle(z)), scale)
    return total


def eval_maxface(params: SurfaceParams, theta: float, z: complex) -> np.ndarray:
    """Image of ``z`` under the maximal immersion, normalised by ``f(0) = 0``.

    Parameters
    ----------
    params : SurfaceParams
    theta : float
        Associate-family angle.
    z : complex
        Point of the sector ``|z| <= 1``, ``|arg z| <= pi/4``.

    Returns
    -------
    ndarray, shape (3,)
    """
    return np.real(integral_from(params, theta, z))


def eval_minimal_r3(params: SurfaceParams, theta: float, z: complex) -> np.ndarray:
    """Image of ``z`` under the Euclidean minimal immersion with the same data."""
    return np.real(integral_from(params, theta, z, variant=FormVariant.MINIMAL_R3))


def maxface_grid(
    params: SurfaceParams,
    theta: float,
    radii: np.ndarray,
    angles: np.ndarray,
    variant: FormVariant = FormVariant.MAXFACE,
) -> np.ndarray:
    """Images of the polar grid ``radii x angles`` by cumulative path integrals.

    Parameters
    ----------
    radii : ndarray, shape (n_r,)
        Increasing radii in ``[0, 1]``.
    angles : ndarray, shape (n_t,)
        Increasing angles in ``[-pi/4, pi/4]`` that contain ``0``.

    Returns
    -------
    ndarray, shape (n_r, n_t, 3)
    """
    radii = np.asarray(radii, dtype=float)
    angles = np.asarray(angles, dtype=float)
    form = _form(theta, variant)
    j0 = int(np.argmin(np.abs(angles)))
    if angles[j0] != 0.0:
        raise ValueError("angle grid must contain 0")
    out = np.zeros((radii.size, angles.size, 3), dtype=complex)
    acc = np.zeros(3, dtype=complex)
    prev = 0.0
    for i, r in enumerate(radii):
        acc = acc + radial_integral(params, form, prev, r)
        prev = r
        out[i, j0] = acc
        for j in range(j0 + 1, angles.size):
            out[i, j] = out[i, j - 1] + arc_integral(params, form, r, angles[j - 1], angles[j])
        for j in range(j0 - 1, -1, -1):
            out[i, j] = out[i, j + 1] + arc_integral(params, form, r, angles[j + 1], angles[j])
    return np.real(out)


def singular_criterion(params: SurfaceParams, theta: float, t):
    """``dG / (G^2 eta_theta) = e^{-i theta} w / z^2`` on the unit circle ``z = e^{it}``.

    Along the circle the continued root is ``w = e^{2it} sqrt(2 cos 4t + b)``,
    so the value is ``e^{-i theta} sqrt(2 cos 4t + b)``.
    """
    t = np.asarray(t, dtype=float)
    return np.exp(-1j * theta) * np.sqrt(2.0 * np.cos(4.0 * t) + params.b)


def classify_singularities(params: SurfaceParams, theta: float, n: int = 4096) -> SingularityClass:
    """Singularity type of the singular curve ``|z| = 1`` of the member ``theta``.

    The criterion is real for ``theta = 0`` (cone-like points), purely
    imaginary for ``theta = pi/2`` (folds), and has non-vanishing imaginary
    part otherwise (cuspidal edges).  The appropriate property is verified on
    an ``n``-point grid.

    Raises
    ------
    CriterionViolation
        If the grid contradicts the classification.
    """
    th = float(theta) % np.pi
    t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    c = singular_criterion(params, th, t)
    mag = np.abs(c)
    if min(th, np.pi - th) <= 1e-12:
        if np.max(np.abs(c.imag) / mag) > 1e-12:
            raise CriterionViolation("criterion not real at theta = 0")
        return SingularityClass.CONE_LIKE
    if abs(th - 0.5 * np.pi) <= 1e-12:
        if np.max(np.abs(c.real) / mag) > 1e-12:
            raise CriterionViolation("criterion not imaginary at theta = pi/2")
        return SingularityClass.FOLD
    if np.min(np.abs(c.imag) / mag) <= 1e-12:
        raise CriterionViolation("imaginary part of the criterion vanishes on the grid")
    return SingularityClass.CUSPIDAL_EDGE


# ---------------------------------------------------------------------------
# Finite-difference diagnostics
# ---------------------------------------------------------------------------

_STENCIL = np.array([1, -1, 1j, -1j, 1 + 1j, 1 - 1j, -1 + 1j, -1 - 1j])


def local_displacements(
    params: SurfaceParams,
    theta: float,
    z: complex,
    offsets,
    variant: FormVariant = FormVariant.MAXFACE,
    n_nodes: int = 24,
) -> np.ndarray:
    """``f(z + d) - f(z)`` for each offset ``d`` by short straight-segment integrals.

    The root ``w`` is continued along each segment from its sector value at
    ``z``, so stencils may straddle the boundary rays of the sector.
    """
    z = complex(z)
    form = _form(theta, variant)
    w0 = complex(sector_sheet_w(params, z))
    x, wts = legendre_nodes(n_nodes)
    s = 0.5 * (x + 1.0)
    out = []
    for d in np.atleast_1d(offsets):
        nodes = z + d * s
        zz, ww = continue_branch(params, np.concatenate([[z], nodes]), w0, margin=0.0)
        # Refinement may insert midpoints; the original nodes are a subsequence.
        w = ww[1:][np.isin(zz[1:], nodes)]
        vals = form.values(nodes, w, np.full(nodes.shape, d))
        out.append(np.real(0.5 * np.sum(wts[:, None] * vals, axis=0)))
    return np.array(out)


def stencil_geometry(disp: np.ndarray, h: float) -> dict[str, np.ndarray]:
    """First and second derivatives from displacements on the 8-point stencil.

    ``disp`` holds ``f(z + h d) - f(z)`` for ``d`` in ``(1, -1, i, -i, 1+i,
    1-i, -1+i, -1-i)``.
    """
    fp, fm, gp, gm, pp, pm, mp, mm = disp
    fx = (fp - fm) / (2 * h)
    fy = (gp - gm) / (2 * h)
    fxx = (fp + fm) / h**2
    fyy = (gp + gm) / h**2
    fxy = (pp - pm - mp + mm) / (4 * h**2)
    return {"fx": fx, "fy": fy, "fxx": fxx, "fyy": fyy, "fxy": fxy}


def mean_curvature_from_stencil(disp: np.ndarray, h: float) -> float:
    """Lorentzian mean curvature of a spacelike or timelike patch from a stencil."""
    g = stencil_geometry(disp, h)
    fx, fy = g["fx"], g["fy"]
    E, F, G = minkowski_dot(fx, fx), minkowski_dot(fx, fy), minkowski_dot(fy, fy)
    n = lorentz_cross(fx, fy)
    nn = minkowski_dot(n, n)
    nu = n / np.sqrt(abs(nn))
    L, M, N = minkowski_dot(g["fxx"], nu), minkowski_dot(g["fxy"], nu), minkowski_dot(g["fyy"], nu)
    return float((E * N - 2 * F * M + G * L) / (2 * (E * G - F * F)))


def mean_curvature_of_map(func, z: complex, h: float) -> float:
    """Mean curvature of an arbitrary map ``func(z) -> R^3_1`` by central differences."""
    base = np.asarray(func(complex(z)), dtype=float)
    disp = np.array([np.asarray(func(complex(z) + h * d), dtype=float) - base for d in _STENCIL])
    return mean_curvature_from_stencil(disp, h)


def conformality_residual(params: SurfaceParams, theta: float, z: complex, h: float) -> tuple[float, float]:
    """``(<f_x,f_x> - <f_y,f_y>, <f_x,f_y>)`` from central differences of step ``h``."""
    disp = local_displacements(params, theta, z, h * _STENCIL[:4])
    fp, fm, gp, gm = disp
    fx = (fp - fm) / (2 * h)
    fy = (gp - gm) / (2 * h)
    return float(minkowski_dot(fx, fx) - minkowski_dot(fy, fy)), float(minkowski_dot(fx, fy))


def mean_curvature_residual(params: SurfaceParams, theta: float, z: complex, h: float) -> float:
    """Absolute finite-difference mean curvature of the maximal immersion at ``z``."""
    disp = local_displacements(params, theta, z, h * _STENCIL)
    return abs(mean_curvature_from_stencil(disp, h))


def speed_indicator(params: SurfaceParams, theta: float, z: complex, h: float) -> float:
    """Smallest Euclidean singular value of the finite-difference differential."""
    disp = local_displacements(params, theta, z, h * _STENCIL[:4])
    fp, fm, gp, gm = disp
    jac = np.column_stack([(fp - fm) / (2 * h), (gp - gm) / (2 * h)])
    return float(np.linalg.svd(jac, compute_uv=False)[-1])
