import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedzmc.errors import BranchPointProximity, OutOfRange, PoleInput
from mixedzmc.riemann import (
    Arc,
    Loop,
    LoopSpec,
    SurfacePoint,
    arc_point,
    arc_zw,
    continue_branch,
    deck_phi,
    loop_point,
    make_params,
    sector_sheet_w,
    sqrt_poly_positive,
)


def test_special_parameter(p14):
    assert abs(p14.b - 14.0) <= 1e-12


def test_b_examples():
    assert make_params(0.1).b == pytest.approx(10000.0001, rel=1e-14)
    assert make_params(1 - 1e-9).b == pytest.approx(2.0, abs=1e-7)


@pytest.mark.parametrize("a", [0.0, 1.0, -0.3, 1.5, float("nan"), float("inf")])
def test_make_params_rejects(a):
    with pytest.raises(OutOfRange):
        make_params(a)


def test_branch_points_are_roots(p052):
    bp = p052.branch_points()
    assert bp.shape == (8,)
    assert np.max(np.abs(p052.poly(bp)) / (1 + np.abs(bp) ** 8)) < 1e-12


def test_arc_point_examples(p14):
    assert arc_point(p14, Arc.C2, 0.0).close_to(SurfacePoint(0.0, 1.0))
    assert arc_point(p14, Arc.C4, 0.0).close_to(SurfacePoint(1.0, -4.0))
    p = arc_point(p14, Arc.C3, 1.0)
    assert p.close_to(SurfacePoint(-1j, 4.0))
    assert complex(p.w) ** 2 == pytest.approx(1 + 14 + 1)


def test_arc_point_at_infinity(p14):
    p = arc_point(p14, Arc.C2, np.inf)
    assert p.at_infinity and p.z == 0 and p.w == 1.0
    with pytest.raises(PoleInput):
        p.to_finite()


@pytest.mark.parametrize("arc", list(Arc))
def test_arc_points_lie_on_curve(p052, arc):
    lo, hi = arc.t_range
    lo, hi = max(lo, -50.0), min(hi, 50.0)
    for t in np.linspace(lo, hi, 41):
        assert arc_point(p052, arc, t).residual(p052) < 1e-12


@pytest.mark.parametrize("arc, t", [(Arc.C3, 1.5), (Arc.C4, 2.0), (Arc.C1, 0.5), (Arc.C2, -1.0), (Arc.C3, np.nan)])
def test_arc_parameter_out_of_range(p14, arc, t):
    with pytest.raises(OutOfRange):
        arc_point(p14, arc, t)


def test_sqrt_poly_positive_large_arguments(p052):
    t = np.array([0.0, 0.5, 3.0, 1e30, -1e30])
    got = sqrt_poly_positive(p052, t)
    assert np.all(np.isfinite(got))
    assert got[0] == 1.0
    assert got[2] == pytest.approx(np.sqrt(3.0**8 + p052.b * 3.0**4 + 1), rel=1e-14)


@settings(max_examples=50, deadline=None)
@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), st.booleans())
def test_deck_group_relations(z, sheet):
    params = make_params(0.52)
    w = np.sqrt(complex(params.poly(z))) * (1 if sheet else -1)
    p = SurfacePoint(z, w).normalized()
    q = p
    for _ in range(4):
        q = deck_phi(3, q)
    assert q.close_to(p, 1e-9)
    assert deck_phi(2, deck_phi(2, p)).close_to(p)
    assert deck_phi(1, deck_phi(1, p)).close_to(p)
    if abs(z) > 1e-3:
        assert deck_phi(4, deck_phi(4, p)).close_to(p, 1e-9)
    for j in (1, 2, 3):
        assert deck_phi(j, p).residual(params) < 1e-9


def test_phi3_fixes_origin_sheet():
    p = SurfacePoint(0.0, 1.0)
    assert deck_phi(3, p).close_to(p)
    assert deck_phi(4, p).at_infinity
    with pytest.raises(OutOfRange):
        deck_phi(5, p)


def test_loop_point_joins(p14):
    g2 = LoopSpec(Loop.GAMMA2)
    left = loop_point(p14, g2, 0.0)
    right = loop_point(p14, g2, 1e-13)
    assert left.close_to(SurfacePoint(-1j, 4.0))
    assert left.close_to(right, 1e-9)
    # The loop closes: both ends are (i, sqrt(2 + b)).
    assert loop_point(p14, g2, -2.0).close_to(loop_point(p14, g2, np.pi), 1e-12)
    g1 = LoopSpec(Loop.GAMMA1)
    assert loop_point(p14, g1, 0.0).close_to(loop_point(p14, g1, -0.0))
    assert loop_point(p14, g1, -np.inf).close_to(loop_point(p14, g1, np.inf))
    with pytest.raises(OutOfRange):
        loop_point(p14, g2, 4.0)


@pytest.mark.parametrize("k", range(4))
def test_loop_images_under_phi3(p052, k):
    spec = LoopSpec(Loop.GAMMA2, k)
    base = loop_point(p052, LoopSpec(Loop.GAMMA2), -0.5)
    p = loop_point(p052, spec, -0.5)
    assert complex(p.z) == pytest.approx(1j**k * complex(base.z))
    assert p.residual(p052) < 1e-12


def test_continue_branch_constant_path(p14):
    z, w = continue_branch(p14, np.zeros(5), 1.0)
    assert np.allclose(w, 1.0)


def test_continue_branch_along_c2(p14):
    z, w = continue_branch(p14, np.linspace(0, 1, 21), 1.0)
    assert w[-1] == pytest.approx(np.sqrt(2 + p14.b), rel=1e-14)


def test_continue_branch_matches_arc_formula(p052):
    # Independent oracle: nearest-root tracking along c4 reproduces the closed form.
    t = np.linspace(-np.pi / 2, np.pi / 2, 400)
    z, w_arc, _ = arc_zw(p052, Arc.C4, t)
    zz, ww = continue_branch(p052, z, w_arc[0])
    keep = np.isin(zz, z)
    assert np.allclose(ww[keep], w_arc, rtol=1e-12, atol=1e-12)


def test_continue_branch_monodromy(p052):
    # A small circle around one branch point swaps the sheets.
    bp = p052.branch_points()[0]
    circle = bp + 0.05 * np.exp(1j * np.linspace(0, 2 * np.pi, 200))
    w0 = np.sqrt(complex(p052.poly(circle[0])))
    _, w = continue_branch(p052, circle, w0)
    assert w[-1] == pytest.approx(-w0, rel=1e-10)


def test_continue_branch_errors(p052):
    bp = p052.branch_points()[0]
    with pytest.raises(BranchPointProximity):
        continue_branch(p052, [bp - 0.1, bp + 0.1], np.sqrt(complex(p052.poly(bp - 0.1))))
    with pytest.raises(ValueError):
        continue_branch(p052, [0.0, 0.1], 2.0)


def test_sector_sheet_is_continuation_from_origin(p052):
    rng = np.random.default_rng(3)
    bp = p052.branch_points()
    for _ in range(20):
        r, t = rng.uniform(0, 1), rng.uniform(-np.pi / 4, np.pi / 4)
        z = r * np.exp(1j * t)
        if np.min(np.abs(bp - z)) < 0.02:
            continue
        path = np.linspace(0, r, 50) * np.exp(1j * t)
        _, w = continue_branch(p052, path, 1.0)
        assert complex(sector_sheet_w(p052, z)) == pytest.approx(w[-1], rel=1e-12)
