"""Weierstrass forms, loop integrals, period matrices and period lattices.

The maximal-surface form is ``Phi_theta = e^{i theta} (-2z, 1+z^2, i(1-z^2)) dz/w``;
the Euclidean minimal-surface form is ``e^{i theta} (1-z^2, i(1+z^2), 2z) dz/w``.
Pulling either back by ``phi3 : (z, w) -> (iz, w)`` multiplies it by a fixed
real matrix, so the eight period vectors are determined by the two integrals
over ``Gamma1`` and ``Gamma2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import CrossCheckFailure, DegenerateLattice
from .quadrature import gauss_kronrod
from .riemann import Loop, LoopSpec, PathPiece, SurfaceParams, loop_pieces, make_params

# phi3^* acts on the maxface form by this matrix: (x0, x1, x2) -> (-x0, x2, -x1).
PHI3_MAXFACE = np.array([[-1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]])
# ... and on the Euclidean minimal-surface form by (x0, x1, x2) -> (x1, -x0, -x2).
PHI3_MINIMAL = np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])

DEFAULT_TOL = 1e-10
MATRIX_TOL = 1e-8


class FormVariant(enum.Enum):
    MAXFACE = "Maxface"
    MINIMAL_R3 = "MinimalR3"


@dataclass(frozen=True)
class WeierstrassForm:
    """A member of the associate family of one of the two forms."""

    theta: float = 0.0
    variant: FormVariant = FormVariant.MAXFACE

    def vector(self, z: np.ndarray) -> np.ndarray:
        """Polynomial vector multiplying ``e^{i theta} dz/w``, shape ``(n, 3)``."""
        z = np.asarray(z, dtype=complex)
        z2 = z * z
        if self.variant is FormVariant.MAXFACE:
            comps = (-2.0 * z, 1.0 + z2, 1j * (1.0 - z2))
        else:
            comps = (1.0 - z2, 1j * (1.0 + z2), 2.0 * z)
        return np.stack(comps, axis=-1)

    def values(self, z, w, dz) -> np.ndarray:
        """The form evaluated on a tangent vector ``dz`` at ``(z, w)``."""
        scal = np.exp(1j * self.theta) * np.asarray(dz) / np.asarray(w)
        return self.vector(z) * scal[..., None]

    @property
    def phi3_matrix(self) -> np.ndarray:
        return PHI3_MAXFACE if self.variant is FormVariant.MAXFACE else PHI3_MINIMAL


def integrate_form(
    params: SurfaceParams,
    form: WeierstrassForm,
    pieces: Sequence[PathPiece],
    *,
    abs_tol: float = DEFAULT_TOL,
    max_panels: int = 2**16,
) -> np.ndarray:
    """Complex integral of ``form`` along a piecewise path.

    Each piece is integrated by adaptive Gauss-Kronrod quadrature to
    ``abs_tol / len(pieces)`` per component.

    Returns
    -------
    ndarray, shape (3,), complex
    """
    total = np.zeros(3, dtype=complex)
    tol = abs_tol / max(1, len(pieces))
    for piece in pieces:

        def integrand(s, piece=piece):
            z, w, dz = piece.evaluate(s)
            return form.values(z, w, dz)

        val, _ = gauss_kronrod(integrand, piece.lo, piece.hi, abs_tol=tol, max_panels=max_panels, initial_panels=4)
        total = total + val
    return total


def loop_integral(
    params: SurfaceParams,
    loop: Loop,
    deck_power: int = 0,
    form: WeierstrassForm | None = None,
    *,
    abs_tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """Integral of a form over ``phi3^deck_power o loop``."""
    form = form or WeierstrassForm()
    return integrate_form(params, form, loop_pieces(params, LoopSpec(loop, deck_power)), abs_tol=abs_tol)


@dataclass(frozen=True)
class QValues:
    q1: float
    q2: float
    q3: float
    q4: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.q1, self.q2, self.q3, self.q4)


def _half_line(f, tol: float, peak: float | None = None) -> float:
    """``int_0^inf f(s) ds`` through ``s = tan(phi)``.

    ``peak`` is a point where the integrand may be sharply peaked (as ``a``
    approaches 1); the interval is split there so the peak is a panel end.
    """

    def g(phi):
        s = np.tan(phi)
        return f(s) * (1.0 + s * s)

    cuts = [0.0, 0.5 * np.pi] if peak is None else [0.0, float(np.arctan(peak)), 0.5 * np.pi]
    return float(sum(gauss_kronrod(g, lo, hi, abs_tol=tol, rel_tol=tol, initial_panels=4)[0] for lo, hi in zip(cuts[:-1], cuts[1:])))


def _finite(f, cuts, tol: float) -> float:
    """Sum of integrals over consecutive intervals of ``cuts``."""
    return float(sum(gauss_kronrod(f, lo, hi, abs_tol=tol, rel_tol=tol, initial_panels=4)[0] for lo, hi in zip(cuts[:-1], cuts[1:])))


def q_values_both(params: SurfaceParams, tol: float = 1e-13) -> dict[str, tuple[float, float | None]]:
    """Each ``q`` by its half-line form and (where one exists) its finite form."""
    b = params.b

    def root(t):
        t4 = t**4
        return np.sqrt(t4 * t4 + b * t4 + 1.0)

    q1 = (
        _half_line(lambda s: 4.0 / np.sqrt((b + 2) * s**4 - 2 * (b - 6) * s**2 + b + 2), tol, peak=1.0),
        _finite(lambda t: 8.0 * t / root(t), (0.0, 1.0), tol),
    )
    q2 = (
        _half_line(lambda s: 1.0 / np.sqrt(s**4 + s**2 + (b + 2) / 16.0), tol),
        _finite(lambda t: 2.0 * (1.0 + t * t) / root(t), (0.0, 1.0), tol),
    )
    q3 = (
        _half_line(lambda s: 4.0 / np.sqrt((b + 2) * s**4 + 2 * (b - 6) * s**2 + b + 2), tol, peak=1.0),
        _finite(lambda t: 2.0 / np.sqrt(2.0 * np.cos(4.0 * t) + b), (-0.5 * np.pi, -0.25 * np.pi, 0.25 * np.pi, 0.5 * np.pi), tol),
    )
    q4 = (_half_line(lambda s: 1.0 / np.sqrt(s**4 - s**2 + (b + 2) / 16.0), tol, peak=np.sqrt(0.5)), None)
    return {"q1": q1, "q2": q2, "q3": q3, "q4": q4}


def q_values(params: SurfaceParams, rel_tol: float = 1e-8) -> QValues:
    """The four positive constants in the period integrals.

    ``q1``, ``q2`` and ``q3`` are each computed in two independent ways and
    must agree to ``rel_tol``; the finite-interval value is returned.

    Raises
    ------
    CrossCheckFailure
        If a pair of forms disagrees.
    """
    both = q_values_both(params)
    out = []
    for name, (first, second) in both.items():
        if second is None:
            out.append(first)
            continue
        if abs(first - second) > rel_tol * abs(second):
            raise CrossCheckFailure(f"{name}: {first!r} vs {second!r}")
        out.append(second)
    return QValues(*out)


def phi3_power(form: WeierstrassForm, j: int) -> np.ndarray:
    return np.linalg.matrix_power(form.phi3_matrix, j)


@dataclass(frozen=True)
class PeriodTable:
    """The constants ``q1..q4`` and the period matrices at ``theta = 0, pi/2``."""

    a: float
    q: tuple[float, float, float, float]
    P1_0: np.ndarray
    P2_0: np.ndarray
    P1_half: np.ndarray
    P2_half: np.ndarray
    loop_integrals: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def b(self) -> float:
        return make_params(self.a).b

    def matrix(self, k: int, theta: float) -> np.ndarray:
        """``P_k(theta) = cos(theta) P_k(0) + sin(theta) P_k(pi/2)``."""
        base, half = (self.P1_0, self.P1_half) if k == 1 else (self.P2_0, self.P2_half)
        return np.cos(theta) * base + np.sin(theta) * half

    def columns(self, theta: float) -> np.ndarray:
        """The eight period vectors as rows, shape ``(8, 3)``."""
        return np.hstack([self.matrix(1, theta), self.matrix(2, theta)]).T

    def to_json(self) -> dict:
        """Plain mapping with the fixed key order ``a, b, q, P1_0, P2_0, P1_half, P2_half``."""
        return {
            "a": self.a,
            "b": self.b,
            "q": list(self.q),
            "P1_0": self.P1_0.tolist(),
            "P2_0": self.P2_0.tolist(),
            "P1_half": self.P1_half.tolist(),
            "P2_half": self.P2_half.tolist(),
        }


def _matrix_from_integrals(integrals: Sequence[np.ndarray], theta: float) -> np.ndarray:
    return np.column_stack([np.real(np.exp(1j * theta) * v) for v in integrals])


@lru_cache(maxsize=256)
def _period_table_cached(a: float) -> PeriodTable:
    params = make_params(a)
    q = q_values(params)
    form = WeierstrassForm()
    ints = {(k, j): loop_integral(params, loop, j, form) for k, loop in ((1, Loop.GAMMA1), (2, Loop.GAMMA2)) for j in range(4)}
    mats = {}
    for k in (1, 2):
        vecs = [ints[(k, j)] for j in range(4)]
        mats[(k, 0)] = _matrix_from_integrals(vecs, 0.0)
        mats[(k, 1)] = _matrix_from_integrals(vecs, 0.5 * np.pi)
    for m in mats.values():
        m.setflags(write=False)
    return PeriodTable(a, q.as_tuple(), mats[(1, 0)], mats[(2, 0)], mats[(1, 1)], mats[(2, 1)], ints)


def period_table(params: SurfaceParams) -> PeriodTable:
    """Period data by direct integration over all eight loops (memoised on ``a``)."""
    return _period_table_cached(params.a)


def period_matrix(params: SurfaceParams, k: int, theta: float, method: str = "direct") -> np.ndarray:
    """The ``3 x 4`` period matrix ``P_k(theta)``.

    Parameters
    ----------
    method : {"direct", "linear", "checked"}
        ``direct`` integrates ``e^{i theta} Phi_0`` over the four loops,
        ``linear`` combines the tabulated ``theta = 0`` and ``theta = pi/2``
        matrices, and ``checked`` does both and requires agreement to 1e-8.
    """
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    loop = Loop.GAMMA1 if k == 1 else Loop.GAMMA2
    if method == "linear":
        return period_table(params).matrix(k, theta)
    direct = _matrix_from_integrals([loop_integral(params, loop, j) for j in range(4)], theta)
    if method == "checked":
        lin = period_table(params).matrix(k, theta)
        if np.max(np.abs(lin - direct)) > MATRIX_TOL:
            raise CrossCheckFailure("period matrix: direct and linear evaluations disagree")
    elif method != "direct":
        raise ValueError(f"unknown method {method!r}")
    return direct


@dataclass(frozen=True)
class Lattice3:
    """Rank-three lattice given by generator rows and a membership tolerance."""

    generators: np.ndarray
    tol: float | None = None

    def __post_init__(self):
        g = np.array(self.generators, dtype=float).reshape(3, 3)
        scale = float(np.max(np.linalg.norm(g, axis=1)))
        if scale == 0 or abs(np.linalg.det(g)) <= 1e-12 * scale**3:
            raise DegenerateLattice("lattice generators are linearly dependent")
        g.setflags(write=False)
        object.__setattr__(self, "generators", g)
        if self.tol is None:
            object.__setattr__(self, "tol", 1e-7 * scale)

    def coordinates(self, v) -> np.ndarray:
        """Real coefficients of ``v`` (or rows of ``v``) in the generator basis."""
        return np.linalg.solve(self.generators.T, np.asarray(v, dtype=float).T).T

    def point(self, m) -> np.ndarray:
        return np.asarray(m, dtype=float) @ self.generators


def lattice_contains(lattice: Lattice3, v) -> tuple[int, int, int] | None:
    """Integer coordinates of ``v`` in ``lattice``, or ``None`` if it is not a member."""
    c = lattice.coordinates(v)
    m = np.rint(c)
    if np.linalg.norm(m @ lattice.generators - np.asarray(v, dtype=float)) <= lattice.tol:
        return tuple(int(x) for x in m)
    return None


def lattice_Lambda(params: SurfaceParams) -> Lattice3:
    """Lattice generated by ``(q1,0,0), (0,q2,0), (0,0,q2)``."""
    q1, q2, _, _ = q_values(params).as_tuple()
    return Lattice3(np.diag([q1, q2, q2]))


def lattice_LambdaPrime(params: SurfaceParams) -> Lattice3:
    """Lattice generated by ``(q3,q4,0), (q3,0,q4), (q3,0,-q4)``."""
    _, _, q3, q4 = q_values(params).as_tuple()
    return Lattice3(np.array([[q3, q4, 0.0], [q3, 0.0, q4], [q3, 0.0, -q4]]))


def expected_period_matrices(q: QValues) -> dict[str, np.ndarray]:
    """Closed-form sign patterns of the period matrices in terms of ``q``."""
    q1, q2, q3, q4 = q.as_tuple()
    return {
        "P1_0": np.array([[-q1, q1, -q1, q1], [q2, q2, -q2, -q2], [q2, -q2, -q2, q2]]),
        "P2_0": np.array([[0, 0, 0, 0], [0, q2, 0, -q2], [q2, 0, -q2, 0]], dtype=float),
        "P1_half": np.zeros((3, 4)),
        "P2_half": np.array([[-q3, q3, -q3, q3], [q4, 0, -q4, 0], [0, -q4, 0, q4]], dtype=float),
    }
