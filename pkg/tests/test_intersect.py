import numpy as np
import pytest

from mixedzmc.assembly import build_omega1, extend_to_omega32
from mixedzmc.intersect import self_intersection_scan, triangle_pairs_intersect
from mixedzmc.mesh import CausalMesh
from mixedzmc.minkowski import CausalType
from mixedzmc.timelike import fold_curve


def two_triangles(second):
    v = np.vstack([[[0, 0, 0], [2, 0, 0], [0, 2, 0]], second]).astype(float)
    return CausalMesh(v, [(0, 1, 2), (3, 4, 5)], np.zeros(2))


def test_crossing_pair_found():
    m = two_triangles([[0.5, 0.5, -1], [0.5, 0.5, 1], [1.5, -1, 0.2]])
    assert self_intersection_scan(m) == [(0, 1)]


def test_separated_pair_not_found():
    m = two_triangles([[0, 0, 1], [2, 0, 1], [0, 2, 1]])
    assert self_intersection_scan(m) == []


def test_coplanar_overlap_found():
    m = two_triangles([[0.5, 0.5, 0], [3, 0.5, 0], [0.5, 3, 0]])
    assert self_intersection_scan(m) == [(0, 1)]


def test_neighbours_excluded():
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0.5]], dtype=float)
    m = CausalMesh(v, [(0, 1, 2), (1, 3, 2)], np.zeros(2))
    assert self_intersection_scan(m) == []


def test_vectorised_narrow_phase():
    a = np.array([[[0, 0, 0], [2, 0, 0], [0, 2, 0]]] * 2, dtype=float)
    b = np.array([[[0.5, 0.5, -1], [0.5, 0.5, 1], [1.5, -1, 0.2]], [[5, 5, 5], [6, 5, 5], [5, 6, 5]]], dtype=float)
    assert list(triangle_pairs_intersect(a, b)) == [True, False]


def strip_mesh(params, n_alpha=60, n_beta=20):
    fc = fold_curve(params)
    ca = fc.c_a
    alphas = np.linspace(-ca, ca, n_alpha + 1)
    betas = ca * np.arange(1, n_beta + 1) / (n_beta + 1)
    A, B = np.meshgrid(alphas, betas, indexing="ij")
    pts = fc.check_f(A, B).reshape(-1, 3)
    nb = betas.size
    idx = lambda i, j: i * nb + j  # noqa: E731
    faces = []
    for i in range(n_alpha):
        for j in range(nb - 1):
            faces += [(idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)), (idx(i, j), idx(i + 1, j + 1), idx(i, j + 1))]
    return CausalMesh(pts, faces, np.full(len(faces), CausalType.TIMELIKE))


@pytest.mark.parametrize("a", [0.1, 0.52, 0.9])
def test_height_strip_is_embedded(a):
    from mixedzmc.riemann import make_params

    assert self_intersection_scan(strip_mesh(make_params(a))) == []


def test_detects_folded_copy(p052):
    # A strip overlapping a translated copy of itself must intersect.
    m = strip_mesh(p052, 20, 8)
    shifted = CausalMesh(m.vertices + np.array([0.0, 0.05, 0.0]), m.faces, m.face_tags)
    both = CausalMesh.concatenate([m, shifted])
    assert len(self_intersection_scan(both)) > 0


def test_assembled_piece_is_embedded(p052):
    asm = extend_to_omega32(p052, build_omega1(p052, 6))
    assert self_intersection_scan(asm.mesh) == []
