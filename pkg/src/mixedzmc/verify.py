"""Invariant suites with machine-readable results.

Each suite returns a list of :class:`Check` records; a suite passes when all
its checks pass.  Informational measurements are recorded as checks with
``tolerance = None`` and always pass.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .analysis import (
    elliptic_limit_residual,
    helicoid_limit_residual,
    s0_residual,
    scherk_residual,
)
from .assembly import build_omega1, extend_to_omega32, prism_containment, quotient_genus
from .intersect import self_intersection_scan
from .maxface import (
    SingularityClass,
    classify_singularities,
    conformality_residual,
    mean_curvature_residual,
    singular_criterion,
)
from .periods import (
    expected_period_matrices,
    lattice_contains,
    lattice_Lambda,
    lattice_LambdaPrime,
    period_matrix,
    period_table,
    q_values,
    q_values_both,
)
from .riemann import SurfaceParams
from .timelike import fold_curve, xi

SUITES = ("periods", "singularities", "convexity", "assembly", "limits")


@dataclass
class Check:
    name: str
    passed: bool
    value: float
    tolerance: float | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def _le(name: str, value: float, tol: float) -> Check:
    return Check(name, bool(value <= tol), float(value), tol)


def _info(name: str, value: float) -> Check:
    return Check(name, True, float(value), None)


# ---------------------------------------------------------------------------
# Periods
# ---------------------------------------------------------------------------


def _lattice_coefficients_ok(lattice, cols) -> tuple[bool, int]:
    """Whether every column is in ``lattice`` with coefficients in {-1, 0, 1}."""
    worst = 0
    for v in cols:
        m = lattice_contains(lattice, v)
        if m is None:
            return False, -1
        worst = max(worst, max(abs(x) for x in m))
    return worst <= 1, worst


def suite_periods(params: SurfaceParams, seed: int = 0) -> list[Check]:
    checks = []
    both = q_values_both(params)
    for name in ("q1", "q2", "q3"):
        first, second = both[name]
        checks.append(_le(f"{name} dual forms (relative)", abs(first - second) / abs(second), 1e-8))
    q = q_values(params)
    checks.append(Check("q positive", all(x > 0 for x in q.as_tuple()), min(q.as_tuple()), 0.0))
    q1, q2, q3, q4 = q.as_tuple()
    table = period_table(params)
    g1 = table.loop_integrals[(1, 0)]
    g2 = table.loop_integrals[(2, 0)]
    want1 = np.array([-q1, q2, q2], dtype=complex)
    want2 = np.array([1j * q3, -1j * q4, q2])
    checks.append(_le("gamma1 integral (relative)", np.linalg.norm(g1 - want1) / np.linalg.norm(want1), 1e-6))
    checks.append(_le("gamma2 integral (relative)", np.linalg.norm(g2 - want2) / np.linalg.norm(want2), 1e-6))
    exp = expected_period_matrices(q)
    checks.append(_le("P1(pi/2) = 0", float(np.max(np.abs(table.P1_half))), 1e-9))
    for key in ("P1_0", "P2_0", "P2_half"):
        checks.append(_le(f"{key} sign pattern", float(np.max(np.abs(getattr(table, key) - exp[key]))), 1e-8))
    ok0, w0 = _lattice_coefficients_ok(lattice_Lambda(params), table.columns(0.0))
    ok1, w1 = _lattice_coefficients_ok(lattice_LambdaPrime(params), table.columns(0.5 * np.pi))
    checks.append(Check("theta=0 columns in Lambda, coefficients in {-1,0,1}", ok0, w0, 1))
    checks.append(Check("theta=pi/2 columns in Lambda', coefficients in {-1,0,1}", ok1, w1, 1))
    rng = np.random.default_rng(seed)
    theta = float(rng.uniform(0, np.pi))
    d = max(
        float(np.max(np.abs(period_matrix(params, k, theta) - period_matrix(params, k, theta, method="linear"))))
        for k in (1, 2)
    )
    checks.append(_le("direct vs linear period matrix", d, 1e-8))
    return checks


# ---------------------------------------------------------------------------
# Singularities and surface equations
# ---------------------------------------------------------------------------

EXPECTED_CLASSES = {
    0.0: SingularityClass.CONE_LIKE,
    0.5 * np.pi: SingularityClass.FOLD,
    0.3: SingularityClass.CUSPIDAL_EDGE,
    1.0: SingularityClass.CUSPIDAL_EDGE,
}

ORDER_STEPS = (4e-3, 2e-3, 1e-3)
NOISE_FLOOR = 1e-13


def random_interior_points(params: SurfaceParams, n: int, rng: np.random.Generator, clearance: float = 0.05) -> np.ndarray:
    """Points of the open sector away from its rim, centre and the branch points."""
    out = []
    bp = params.branch_points()
    while len(out) < n:
        r = rng.uniform(0.1, 0.9)
        t = rng.uniform(-np.pi / 4, np.pi / 4)
        z = r * np.exp(1j * t)
        if np.min(np.abs(bp - z)) > clearance:
            out.append(z)
    return np.array(out)


def _orders(values: np.ndarray) -> np.ndarray:
    """Observed orders ``log2(r(h) / r(h/2))`` of a residual sequence.

    Values already below ``NOISE_FLOOR`` at the coarser step count as exact
    (order ``inf``).
    """
    v = np.abs(np.asarray(values, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        o = np.log2(v[:-1] / v[1:])
    return np.where(v[:-1] < NOISE_FLOOR, np.inf, o)


def observed_orders(params: SurfaceParams, theta: float, z: complex, steps=ORDER_STEPS) -> dict[str, float]:
    """Smallest observed convergence order of each finite-difference residual at ``z``."""
    conf = np.array([conformality_residual(params, theta, z, h) for h in steps])
    mean = np.array([mean_curvature_residual(params, theta, z, h) for h in steps])
    return {
        "E-G": float(np.min(_orders(conf[:, 0]))),
        "F": float(np.min(_orders(conf[:, 1]))),
        "H": float(np.min(_orders(mean))),
    }


def suite_singularities(params: SurfaceParams, seed: int = 0, n_points: int = 10) -> list[Check]:
    checks = []
    for theta, want in EXPECTED_CLASSES.items():
        try:
            got = classify_singularities(params, theta)
        except Exception as exc:  # a violated criterion is a failed check
            checks.append(Check(f"class at theta={theta:.6g}: {exc}", False, float("nan")))
            continue
        checks.append(Check(f"class at theta={theta:.6g} is {want.value}", got is want, 0.0, None))
    t = np.linspace(0.0, 2 * np.pi, 4096, endpoint=False)
    c = singular_criterion(params, 0.3, t)
    im = float(np.min(np.abs(c.imag)))
    checks.append(Check("min |Im criterion| at theta=0.3", im > 0, im, 0.0))
    rng = np.random.default_rng(seed)
    zs = random_interior_points(params, n_points, rng)
    for theta in (0.0, 0.5 * np.pi, 0.731):
        worst = min(min(observed_orders(params, theta, z).values()) for z in zs)
        checks.append(Check(f"observed order at theta={theta:.6g}", worst >= 1.8, worst, 1.8))
    return checks


# ---------------------------------------------------------------------------
# Fold-curve convexity
# ---------------------------------------------------------------------------


def finite_difference_curvature(params: SurfaceParams, s: np.ndarray, h: float = 1e-4) -> np.ndarray:
    """Curvature of the x1x2-projection of the fold curve by central differences of positions."""
    fc = fold_curve(params)
    p0 = fc.gamma(s)[..., 1:]
    pp = fc.gamma(s + h)[..., 1:]
    pm = fc.gamma(s - h)[..., 1:]
    d1 = (pp - pm) / (2 * h)
    d2 = (pp - 2 * p0 + pm) / h**2
    cross = d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]
    return cross / np.linalg.norm(d1, axis=-1) ** 3


def suite_convexity(params: SurfaceParams, seed: int = 0) -> list[Check]:
    fc = fold_curve(params)
    s = np.linspace(0.0, 2 * np.pi, 1024, endpoint=False)
    kappa = fc.projected_curvature(s)
    x = xi(params, s)
    fd = finite_difference_curvature(params, s)
    return [
        Check("min curvature > 0", bool(np.min(kappa) > 0), float(np.min(kappa)), 0.0),
        _le("max |kappa - finite difference| / kappa", float(np.max(np.abs(kappa - fd) / kappa)), 1e-6),
        _le("max |kappa * xi - 1|", float(np.max(np.abs(kappa * x - 1.0))), 1e-12),
        _info("max |kappa - sqrt(xi)|", float(np.max(np.abs(kappa - np.sqrt(x))))),
    ]


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------


def suite_assembly(params: SurfaceParams, seed: int = 0, res: int = 8) -> list[Check]:
    omega1 = build_omega1(params, res)
    prism = prism_containment(params, omega1)
    asm = extend_to_omega32(params, omega1)
    genus = quotient_genus(asm.mesh, asm.lattice)
    pairs = self_intersection_scan(asm.mesh)
    return [
        _le("prism containment violation", prism.max_violation, 1e-7),
        Check("copies", asm.diagnostics["copies"] == 32, asm.diagnostics["copies"], 32),
        Check("face count = 32 x faces(omega1)", asm.mesh.n_faces == 32 * omega1.n_faces, asm.mesh.n_faces, 32 * omega1.n_faces),
        _le("bounding box vs lattice", asm.diagnostics["box_vs_lattice"], 1e-8),
        Check("consistently oriented", asm.mesh.is_consistently_oriented(), 0.0, None),
        Check("quotient genus", genus == 3, genus, 3),
        Check("self-intersection pairs", len(pairs) == 0, len(pairs), 0),
    ]


# ---------------------------------------------------------------------------
# Limits
# ---------------------------------------------------------------------------


def _decreasing(name: str, values: list[float]) -> list[Check]:
    ok = all(b < a for a, b in zip(values[:-1], values[1:]))
    return [Check(f"{name} strictly decreasing", ok, values[-1], None)] + [
        _info(f"{name}[{i}]", v) for i, v in enumerate(values)
    ]


def limit_sequences() -> dict[str, list[float]]:
    """Residuals of the four limit comparisons along their parameter sequences."""
    from .riemann import make_params

    near_one = [make_params(a) for a in (0.9, 0.99, 0.999)]
    near_zero = [make_params(a) for a in (0.1, 0.05, 0.01)]
    out = {
        "scherk": [scherk_residual(p) for p in near_one],
        "entire graph": [s0_residual(p) for p in near_one],
        "helicoid": [helicoid_limit_residual(p) for p in near_zero],
    }
    for theta in (0.0, 0.731, 0.5 * np.pi):
        out[f"elliptic theta={theta:.6g}"] = [elliptic_limit_residual(p, theta) for p in near_zero]
    return out


def suite_limits(params: SurfaceParams | None = None, seed: int = 0) -> list[Check]:
    checks = []
    for name, values in limit_sequences().items():
        checks.extend(_decreasing(name, values))
    return checks


_RUNNERS = {
    "periods": suite_periods,
    "singularities": suite_singularities,
    "convexity": suite_convexity,
    "assembly": suite_assembly,
    "limits": suite_limits,
}


def run_suite(name: str, params: SurfaceParams, seed: int = 0) -> dict:
    """Run one suite (or ``"all"``) and return ``{suite: {passed, checks}}``."""
    names = SUITES if name == "all" else (name,)
    if any(n not in _RUNNERS for n in names):
        raise KeyError(name)
    report = {}
    for n in names:
        checks = _RUNNERS[n](params, seed=seed)
        report[n] = {"passed": all(c.passed for c in checks), "checks": [c.as_dict() for c in checks]}
    return report
