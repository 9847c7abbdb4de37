"""The lightlike fold curve and the timelike minimal surface it bounds.

The fold curve is

    gamma(s) = int_0^s xi(t) (1, -cos t, -sin t) dt,   xi(t) = 2 / sqrt(2 cos 4t + b),

and the timelike extension is the d'Alembert midpoint surface
``f~(u, v) = (gamma(u+v) + gamma(u-v)) / 2``.  Because ``gamma`` is
lightlike, its height ``tau(s) = x0(gamma(s))`` is strictly increasing and
can serve as a parameter; in the coordinates ``alpha = (tau(u+v) + tau(u-v))/2``,
``beta = (tau(u+v) - tau(u-v))/2`` the surface height equals ``alpha``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import RootFindFailure
from .quadrature import legendre_nodes
from .riemann import SurfaceParams, make_params

TABLE_STEP = np.pi / 2048
_N_CELLS = 4096  # cells covering one full turn [0, 2 pi]
_GL_NODES = 16


def xi(params: SurfaceParams, t):
    """Speed factor ``2 / sqrt(2 cos 4t + b)`` of the fold curve."""
    return 2.0 / np.sqrt(2.0 * np.cos(4.0 * np.asarray(t, dtype=float)) + params.b)


def xi_prime(params: SurfaceParams, t):
    t = np.asarray(t, dtype=float)
    return 8.0 * np.sin(4.0 * t) / (2.0 * np.cos(4.0 * t) + params.b) ** 1.5


def _velocity(params: SurfaceParams, t: np.ndarray) -> np.ndarray:
    x = xi(params, t)
    return np.stack([x, -x * np.cos(t), -x * np.sin(t)], axis=-1)


class FoldCurve:
    """Tabulated fold curve for one value of ``a``.

    The curve is integrated once over ``[0, 2 pi]`` on cells of width
    ``pi/2048`` with a 16-point Gauss rule per cell; any other parameter is
    reduced to that range with the symmetries

    * ``gamma(-s) = (-gamma0(s), -gamma1(s), gamma2(s))``, and
    * ``gamma(s + 2 pi) = gamma(s) + (tau(2 pi), 0, 0)``,

    and finished with one Gauss rule on the partial cell.
    """

    def __init__(self, params: SurfaceParams):
        self.params = params
        self.nodes = TABLE_STEP * np.arange(_N_CELLS + 1)
        x, w = legendre_nodes(_GL_NODES)
        self._x01 = 0.5 * (x + 1.0)
        self._w01 = 0.5 * w
        lo = self.nodes[:-1]
        t = lo[:, None] + TABLE_STEP * self._x01[None, :]
        cell = TABLE_STEP * np.einsum("k,ckj->cj", self._w01, _velocity(params, t))
        table = np.zeros((_N_CELLS + 1, 3))
        table[1:] = np.cumsum(cell, axis=0)
        self.table = table
        self.turn_height = float(table[-1, 0])
        self._inverse_guess = PchipInterpolator(table[:, 0], self.nodes)

    # -- the curve ---------------------------------------------------------
    def _gamma_turn(self, r: np.ndarray) -> np.ndarray:
        """``gamma`` for ``r`` in ``[0, 2 pi]``."""
        k = np.clip(np.floor(r / TABLE_STEP).astype(int), 0, _N_CELLS - 1)
        lo = self.nodes[k]
        span = r - lo
        t = lo[:, None] + span[:, None] * self._x01[None, :]
        part = span[:, None] * np.einsum("k,ckj->cj", self._w01, _velocity(self.params, t))
        return self.table[k] + part

    def gamma(self, s) -> np.ndarray:
        """Points of the fold curve, shape ``s.shape + (3,)``."""
        s = np.asarray(s, dtype=float)
        flat = s.ravel()
        sign = np.where(flat < 0, -1.0, 1.0)
        mag = np.abs(flat)
        turns = np.floor(mag / (2 * np.pi))
        r = mag - 2 * np.pi * turns
        g = self._gamma_turn(r)
        g[:, 0] += turns * self.turn_height
        g[:, 0] *= sign
        g[:, 1] *= sign
        return g.reshape(s.shape + (3,))

    def gamma_prime(self, s) -> np.ndarray:
        """Analytic tangent ``xi(s) (1, -cos s, -sin s)``."""
        return _velocity(self.params, np.asarray(s, dtype=float))

    def tau(self, s):
        """Height ``x0(gamma(s))``."""
        return self.gamma(s)[..., 0]

    @property
    def c_a(self) -> float:
        """Height of ``gamma(pi)``."""
        return float(self.tau(np.pi))

    def tau_inv(self, h, tol: float = 1e-15, max_iter: int = 60):
        """Inverse of ``tau`` by safeguarded Newton iteration.

        Raises
        ------
        RootFindFailure
            If an inverse does not converge within ``max_iter`` steps.
        """
        h = np.asarray(h, dtype=float)
        flat = h.ravel()
        sign = np.where(flat < 0, -1.0, 1.0)
        mag = np.abs(flat)
        turns = np.floor(mag / self.turn_height)
        rem = mag - turns * self.turn_height
        s = np.clip(self._inverse_guess(rem), 0.0, 2 * np.pi)
        lo = np.zeros_like(s)
        hi = np.full_like(s, 2 * np.pi)
        for _ in range(max_iter):
            f = self.tau(s) - rem
            lo = np.where(f < 0, s, lo)
            hi = np.where(f > 0, s, hi)
            step = f / xi(self.params, s)
            new = s - step
            outside = (new <= lo) | (new >= hi)
            new = np.where(outside, 0.5 * (lo + hi), new)
            done = np.abs(new - s) <= tol * (1.0 + np.abs(s))
            s = new
            if np.all(done):
                break
        else:
            raise RootFindFailure("tau_inv did not converge")
        out = sign * (s + turns * 2 * np.pi)
        return out.reshape(h.shape) if h.ndim else float(out[0])

    # -- the timelike surface ----------------------------------------------
    def f_tilde(self, u, v) -> np.ndarray:
        """Midpoint surface ``(gamma(u+v) + gamma(u-v)) / 2``."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return 0.5 * (self.gamma(u + v) + self.gamma(u - v))

    def gamma_tilde(self, h) -> np.ndarray:
        """Fold curve parametrised by its height."""
        return self.gamma(self.tau_inv(h))

    def check_f(self, alpha, beta) -> np.ndarray:
        """Midpoint surface in height coordinates; its x0-component is ``alpha``."""
        alpha = np.asarray(alpha, dtype=float)
        beta = np.asarray(beta, dtype=float)
        return 0.5 * (self.gamma_tilde(alpha + beta) + self.gamma_tilde(alpha - beta))

    def uv_to_ab(self, u, v):
        tp = self.tau(np.asarray(u, dtype=float) + v)
        tm = self.tau(np.asarray(u, dtype=float) - v)
        return 0.5 * (tp + tm), 0.5 * (tp - tm)

    def ab_to_uv(self, alpha, beta):
        sp = self.tau_inv(np.asarray(alpha, dtype=float) + beta)
        sm = self.tau_inv(np.asarray(alpha, dtype=float) - beta)
        return 0.5 * (sp + sm), 0.5 * (sp - sm)

    # -- diagnostics ---------------------------------------------------------
    def projected_curvature(self, s):
        """Signed curvature of the x1x2-projection, from analytic derivatives.

        With ``x1' = -xi cos s`` and ``x2' = -xi sin s`` the projection has
        speed ``xi`` and turns at unit rate, so the value is ``1 / xi(s)``.
        """
        s = np.asarray(s, dtype=float)
        x, dx = xi(self.params, s), xi_prime(self.params, s)
        c, sn = np.cos(s), np.sin(s)
        d1 = np.stack([-x * c, -x * sn])
        d2 = np.stack([-dx * c + x * sn, -dx * sn - x * c])
        cross = d1[0] * d2[1] - d1[1] * d2[0]
        return cross / (d1[0] ** 2 + d1[1] ** 2) ** 1.5

    def immersion_check(self, u: float, v: float, rel_tol: float = 1e-10) -> bool:
        """Whether the tangents ``gamma'(u+v)`` and ``gamma'(u-v)`` are independent."""
        p = self.gamma_prime(u + v)
        m = self.gamma_prime(u - v)
        return bool(np.linalg.norm(np.cross(p, m)) > rel_tol * np.linalg.norm(p) * np.linalg.norm(m))

    def metric_determinant(self, u, v):
        """Determinant of the induced Lorentzian metric of ``f~`` in ``(u, v)``."""
        gp = self.gamma_prime(np.asarray(u) + v)
        gm = self.gamma_prime(np.asarray(u) - v)
        fu, fv = 0.5 * (gp + gm), 0.5 * (gp - gm)
        dot = lambda x, y: -x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] + x[..., 2] * y[..., 2]
        return dot(fu, fu) * dot(fv, fv) - dot(fu, fv) ** 2


@lru_cache(maxsize=64)
def _fold_curve(a: float) -> FoldCurve:
    return FoldCurve(make_params(a))


def fold_curve(params: SurfaceParams) -> FoldCurve:
    """Shared, read-only fold-curve table for ``params`` (memoised on ``a``)."""
    return _fold_curve(params.a)


def gamma(params: SurfaceParams, s):
    return fold_curve(params).gamma(s)


def f_tilde(params: SurfaceParams, u, v):
    return fold_curve(params).f_tilde(u, v)


def tau(params: SurfaceParams, s):
    return fold_curve(params).tau(s)


def tau_inv(params: SurfaceParams, h):
    return fold_curve(params).tau_inv(h)


def c_a(params: SurfaceParams) -> float:
    return fold_curve(params).c_a


def check_f(params: SurfaceParams, alpha, beta):
    return fold_curve(params).check_f(alpha, beta)


def uv_to_ab(params: SurfaceParams, u, v):
    return fold_curve(params).uv_to_ab(u, v)


def ab_to_uv(params: SurfaceParams, alpha, beta):
    return fold_curve(params).ab_to_uv(alpha, beta)


def projected_curvature(params: SurfaceParams, s):
    return fold_curve(params).projected_curvature(s)


def immersion_check(params: SurfaceParams, u: float, v: float) -> bool:
    return fold_curve(params).immersion_check(u, v)
