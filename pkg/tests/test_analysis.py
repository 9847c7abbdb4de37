import numpy as np
import pytest
from scipy import integrate

from mixedzmc.analysis import (
    elliptic_limit_eval,
    elliptic_limit_residual,
    graph_coordinates,
    graph_equation,
    gyroid_residual,
    gyroid_search,
    helicoid_distance,
    helicoid_limit_residual,
    helicoid_point,
    rescaled_maxface,
    s0_residual,
    scherk_coordinates,
    scherk_equation,
    scherk_residual,
)
from mixedzmc.errors import NoRootFound, OutOfRange, PoleInput
from mixedzmc.riemann import make_params

GYROID = (0.346014, 0.73073)


@pytest.mark.parametrize("a", [0.15, 0.346014, 0.52, 0.8])
@pytest.mark.parametrize("theta", [0.0, np.pi / 2])
def test_trivial_loci(a, theta):
    assert gyroid_residual(make_params(a), theta).residual <= 1e-7


def test_gyroid_point_residual():
    r = gyroid_residual(make_params(GYROID[0]), GYROID[1])
    assert r.residual <= 1e-4
    assert 1 <= r.denominator <= 4


def test_generic_point_is_not_closed():
    assert gyroid_residual(make_params(0.3), 0.5).residual > 1e-3


def test_residual_profile_has_trivial_ends():
    # Along theta the residual vanishes at both trivial ends and is large in between.
    p = make_params(0.3)
    prof = [gyroid_residual(p, t).residual for t in np.linspace(0, np.pi / 2, 9)]
    assert prof[0] <= 1e-7 and prof[-1] <= 1e-7
    assert max(prof[2:-2]) > 1e-2


def test_search_coarse_grid():
    res = gyroid_search(n_a=31, n_theta=26)
    assert abs(res.a - GYROID[0]) <= 1e-3 and abs(res.theta - GYROID[1]) <= 1e-3
    assert res.residual <= 1e-4
    assert res.grid_residual.shape == (31, 26)
    rows = res.grid_rows()
    assert len(rows) == 31 * 26 and set(rows[0]) >= {"a", "theta", "residual"}


def test_search_without_root():
    with pytest.raises(NoRootFound):
        gyroid_search(a_range=(0.6, 0.8), theta_range=(0.5, 1.0), n_a=11, n_theta=11)


def test_search_rejects_bad_ranges():
    with pytest.raises(OutOfRange):
        gyroid_search(a_range=(0.0, 0.5))
    with pytest.raises(OutOfRange):
        gyroid_search(theta_range=(0.5, 2.0))


def test_exact_surface_points():
    # Points of the exact limit surfaces have zero residual.
    x, y = 0.4, -1.1
    t = np.arccos(np.cos(x) * np.cos(y))
    assert abs(scherk_equation(np.array([t, x, y]))[0]) < 1e-15
    assert graph_equation(np.zeros(3))[0] == 0.0
    x, y = 0.7, 1.3
    t = np.log(np.cosh(y) / np.cosh(x))
    assert abs(graph_equation(np.array([t, x, y]))[0]) < 1e-14


def test_similarity_normalisations():
    assert np.allclose(scherk_coordinates(np.zeros(3)), [[-np.pi / 2, -np.pi / 2, -np.pi / 2]])
    assert np.allclose(graph_coordinates(np.zeros(3)), [[0.0, 0.0, 0.0]])


def test_scherk_and_graph_decrease():
    near_one = [make_params(a) for a in (0.9, 0.99, 0.999)]
    sch = [scherk_residual(p) for p in near_one]
    gra = [s0_residual(p) for p in near_one]
    assert sch[0] > sch[1] > sch[2]
    assert gra[0] > gra[1] > gra[2]
    with pytest.raises(OutOfRange):
        scherk_residual(make_params(0.5))


def test_elliptic_base_point_and_pole():
    assert np.allclose(elliptic_limit_eval(0.7, 1.0), 0.0, atol=1e-15)
    with pytest.raises(PoleInput):
        elliptic_limit_eval(0.0, 0.0)


@pytest.mark.parametrize("theta", [0.0, 0.731, np.pi / 2])
@pytest.mark.parametrize("z", [0.5, 0.6 + 0.3j, 0.8 * np.exp(-0.7j)])
def test_elliptic_against_quadrature(theta, z):
    vec = lambda s: np.array([-2 * s, 1 + s * s, 1j * (1 - s * s)]) / s**2  # noqa: E731
    want = []
    for k in range(3):
        f = lambda u: np.real(np.exp(1j * theta) * vec(1 + u * (z - 1))[k] * (z - 1))  # noqa: E731
        want.append(integrate.quad(f, 0, 1, epsabs=1e-13, epsrel=1e-12)[0])
    assert np.allclose(elliptic_limit_eval(theta, z), want, atol=1e-11)


def test_elliptic_x0_closed_form():
    for z in (0.5, 0.7 + 0.2j):
        assert elliptic_limit_eval(0.0, z)[0] == pytest.approx(-2 * np.log(abs(z)), abs=1e-14)


@pytest.mark.parametrize("theta", [0.0, np.pi / 2])
def test_elliptic_limit_converges(theta):
    res = [elliptic_limit_residual(make_params(a), theta) for a in (0.1, 0.05, 0.01)]
    assert res[0] > res[1] > res[2]
    z = 0.7 + 0.2j
    pts = [rescaled_maxface(make_params(a), theta, z) for a in (0.1, 0.05, 0.01)]
    deltas = [np.linalg.norm(p - elliptic_limit_eval(theta, z)) for p in pts]
    assert deltas[0] > deltas[1] > deltas[2]


def test_helicoid_exact_points():
    rng = np.random.default_rng(1)
    pts = helicoid_point(rng.uniform(-2, 2, 10), rng.uniform(-1, 1, 10))
    assert np.max(helicoid_distance(pts)) < 1e-7
    assert helicoid_distance(np.array([0.0, 0.0, 1.0]))[0] == pytest.approx(0.0, abs=1e-12)
    assert helicoid_distance(np.array([0.0, 0.0, -5.0]))[0] == pytest.approx(0.0, abs=1e-12)
    assert helicoid_distance(np.array([0.0, 0.3, 0.0]))[0] > 0.2


def test_helicoid_limit_decreases():
    res = [helicoid_limit_residual(make_params(a)) for a in (0.1, 0.05, 0.01)]
    assert res[0] > res[1] > res[2]
    with pytest.raises(OutOfRange):
        helicoid_limit_residual(make_params(0.5))


def test_unit_circle_is_cone_point_at_theta_zero():
    # At theta = 0 the form has zero real part along |z| = 1, so the whole
    # circle maps to one point, for the rescaled maxface and the limit alike.
    p = make_params(0.05)
    for t in (-0.6, 0.2, 0.7):
        z = np.exp(1j * t)
        assert np.allclose(rescaled_maxface(p, 0.0, z), 0.0, atol=1e-14)
        assert np.allclose(elliptic_limit_eval(0.0, z), 0.0, atol=1e-14)
