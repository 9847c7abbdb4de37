import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedzmc.errors import NullAxis, NullNormal
from mixedzmc.minkowski import (
    CausalType,
    Isometry,
    causal_type,
    line_reflection,
    lorentz_cross,
    minkowski_dot,
    plane_reflection,
    reflect_about_line,
    reflect_about_plane,
    rotate_x0,
)

coord = st.floats(-10, 10, allow_nan=False)
vec = st.tuples(coord, coord, coord).map(np.array)


@pytest.mark.parametrize(
    "u, v, want",
    [((1, 0, 0), (1, 0, 0), -1.0), ((1, 1, 0), (1, 1, 0), 0.0), ((0, 1, 2), (0, 3, 4), 11.0)],
)
def test_dot_examples(u, v, want):
    assert minkowski_dot(u, v) == want


def test_dot_vectorised():
    u = np.array([[1.0, 0, 0], [0, 1, 2]])
    assert np.allclose(minkowski_dot(u, u), [-1.0, 5.0])


@pytest.mark.parametrize(
    "v, want",
    [((0, 1, 0), CausalType.SPACELIKE), ((2, 1, 0), CausalType.TIMELIKE), ((1, 1, 0), CausalType.LIGHTLIKE)],
)
def test_causal_type_examples(v, want):
    assert causal_type(v) is want


@pytest.mark.parametrize("s", np.linspace(0, 2 * np.pi, 13))
def test_fold_tangent_is_lightlike(s):
    assert causal_type((1.0, np.cos(s), np.sin(s))) is CausalType.LIGHTLIKE


@pytest.mark.parametrize(
    "point, direction, p, want",
    [
        ((0, 0, 0), (0, 1, 0), (1, 1, 0), (-1, 1, 0)),
        ((0, 0, 0), (1, 0, 0), (3, 1, 2), (3, -1, -2)),
    ],
)
def test_line_reflection_examples(point, direction, p, want):
    assert np.allclose(reflect_about_line(point, direction, p), want, atol=1e-15)


def test_line_reflection_x2_axis_example():
    # Rotation by pi about the x2-axis flips x0 and x1.
    assert np.allclose(reflect_about_line((0, 0, 0), (0, 0, 1), (1, 1, 0)), (-1, -1, 0))


@pytest.mark.parametrize(
    "point, normal, p, want",
    [
        ((0, 0, 0), (0, 1, -1) / np.sqrt(2), (0, 1, 0), (0, 0, 1)),
        ((0, 0, 0), (1, 0, 0), (1, 2, 3), (-1, 2, 3)),
    ],
)
def test_plane_reflection_examples(point, normal, p, want):
    assert np.allclose(reflect_about_plane(point, normal, p), want, atol=1e-15)


@pytest.mark.parametrize(
    "angle, p, want",
    [
        (np.pi / 4, (0, 1, 0), (0, np.sqrt(0.5), np.sqrt(0.5))),
        (0.0, (3, -1, 2), (3, -1, 2)),
        (np.pi / 2, (1, 1, 0), (1, 0, 1)),
    ],
)
def test_rotate_x0_examples(angle, p, want):
    assert np.allclose(rotate_x0(angle, p), want, atol=1e-15)


def test_null_axis_and_normal_rejected():
    with pytest.raises(NullAxis):
        line_reflection((0, 0, 0), (1, 1, 0))
    with pytest.raises(NullNormal):
        plane_reflection((0, 0, 0), (1, 0, 1))


def test_non_isometry_rejected():
    with pytest.raises(ValueError):
        Isometry(np.diag([1.0, 2.0, 1.0]))


def _non_null(v):
    return abs(minkowski_dot(v, v)) > 1e-3 * max(1.0, float(v @ v))


@settings(max_examples=60, deadline=None)
@given(vec, vec, vec)
def test_line_reflection_is_involutive_isometry(point, direction, p):
    if not _non_null(direction):
        return
    r = line_reflection(point, direction)
    assert np.allclose(r(r(p)), p, atol=1e-9 * (1 + np.abs(p).max()))
    assert r.orientation == 1
    assert np.allclose(r(point), point, atol=1e-9 * (1 + np.abs(point).max()))


@settings(max_examples=60, deadline=None)
@given(vec, vec, vec, vec)
def test_plane_reflection_preserves_interval(point, normal, p, q):
    if not _non_null(normal):
        return
    r = plane_reflection(point, normal)
    d0 = minkowski_dot(p - q, p - q)
    d1 = minkowski_dot(r(p) - r(q), r(p) - r(q))
    assert abs(d0 - d1) <= 1e-8 * (1 + float((p - q) @ (p - q))) * 10
    assert r.orientation == -1
    assert np.allclose(r(r(p)), p, atol=1e-8 * (1 + np.abs(p).max()))


@settings(max_examples=60, deadline=None)
@given(st.floats(-7, 7), vec)
def test_rotation_composition_and_inverse(angle, p):
    from mixedzmc.minkowski import x0_rotation

    r = x0_rotation(angle)
    assert np.allclose(r.compose(r.inverse())(p), p, atol=1e-9 * (1 + np.abs(p).max()))
    assert np.allclose(r.compose(r)(p), x0_rotation(2 * angle)(p), atol=1e-9 * (1 + np.abs(p).max()))


@settings(max_examples=60, deadline=None)
@given(vec, vec)
def test_lorentz_cross_is_orthogonal(u, v):
    n = lorentz_cross(u, v)
    scale = 1 + np.linalg.norm(u) * np.linalg.norm(v)
    assert abs(minkowski_dot(n, u)) <= 1e-9 * scale * (1 + np.linalg.norm(u))
    assert abs(minkowski_dot(n, v)) <= 1e-9 * scale * (1 + np.linalg.norm(v))
