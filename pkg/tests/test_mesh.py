import numpy as np
import pytest

from mixedzmc.assembly import closed_genus, quotient_genus
from mixedzmc.errors import NotClosed
from mixedzmc.mesh import CausalMesh, Marker, cluster_points
from mixedzmc.minkowski import CausalType, x0_rotation
from mixedzmc.periods import Lattice3


def octahedron():
    v = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]], dtype=float)
    f = [(0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4), (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5)]
    return CausalMesh(v, f, np.zeros(8))


def torus(n=8, m=6):
    u, v = np.meshgrid(np.arange(n), np.arange(m), indexing="ij")
    pu, pv = 2 * np.pi * u.ravel() / n, 2 * np.pi * v.ravel() / m
    verts = np.column_stack([(3 + np.cos(pv)) * np.cos(pu), (3 + np.cos(pv)) * np.sin(pu), np.sin(pv)])
    idx = lambda i, j: (i % n) * m + (j % m)  # noqa: E731
    faces = []
    for i in range(n):
        for j in range(m):
            faces += [(idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)), (idx(i, j), idx(i + 1, j + 1), idx(i, j + 1))]
    return CausalMesh(verts, faces, np.zeros(len(faces)))


def square_grid(n=5):
    """Flat grid over the unit square in the x1x2-plane (x0 = 0.5)."""
    x, y = np.meshgrid(np.linspace(0, 1, n + 1), np.linspace(0, 1, n + 1), indexing="ij")
    verts = np.column_stack([np.full(x.size, 0.5), x.ravel(), y.ravel()])
    idx = lambda i, j: i * (n + 1) + j  # noqa: E731
    faces = []
    for i in range(n):
        for j in range(n):
            faces += [(idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)), (idx(i, j), idx(i + 1, j + 1), idx(i, j + 1))]
    return CausalMesh(verts, faces, np.zeros(len(faces)))


def test_sphere_genus_zero():
    m = octahedron()
    assert m.euler_characteristic() == 2
    assert closed_genus(m) == 0
    assert m.is_consistently_oriented()
    assert m.boundary_edges().size == 0


def test_torus_genus_one():
    assert closed_genus(torus()) == 1


def test_open_mesh_is_not_closed():
    m = square_grid()
    with pytest.raises(NotClosed):
        closed_genus(m)
    assert m.euler_characteristic() == 1


def test_quotient_of_flat_square_is_torus():
    m = square_grid()
    assert quotient_genus(m, Lattice3(np.eye(3))) == 1


def test_flipped_orientation_detected():
    m = octahedron()
    bad = CausalMesh(m.vertices, np.vstack([m.faces[:4], m.faces[4:, ::-1]]), m.face_tags)
    assert not bad.is_consistently_oriented()
    assert m.flipped().is_consistently_oriented()


def test_weld_merges_duplicates():
    m = square_grid(2)
    dup = CausalMesh.concatenate([m, m.transformed(x0_rotation(0.0))])
    welded, mapping = dup.weld(1e-9)
    assert welded.n_vertices == m.n_vertices
    assert mapping.shape == (dup.n_vertices,)
    assert np.all(welded.face_copy[: m.n_faces] == 0) and np.all(welded.face_copy[m.n_faces :] == 1)


def test_weld_unions_markers():
    v = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 0]], dtype=float)
    m = CausalMesh(v, [(0, 1, 2), (3, 2, 1)], [0, 0], [Marker.LA, 0, 0, Marker.LB])
    w, _ = m.weld()
    assert w.markers[0] == Marker.LA | Marker.LB


def test_canonical_is_order_independent():
    m = torus()
    rng = np.random.default_rng(0)
    perm = rng.permutation(m.n_vertices)
    inv = np.argsort(perm)
    shuffled = CausalMesh(m.vertices[perm], inv[m.faces][rng.permutation(m.n_faces)], m.face_tags)
    a, b = m.canonical(), shuffled.canonical()
    assert np.array_equal(a.vertices, b.vertices)
    assert np.array_equal(a.faces, b.faces)


def test_seams_and_components():
    m = square_grid(4)
    tags = np.where(m.vertices[m.faces].mean(axis=1)[:, 1] < 0.5, CausalType.SPACELIKE, CausalType.TIMELIKE)
    mixed = CausalMesh(m.vertices, m.faces, tags)
    assert mixed.seam_components() == 1
    assert len(mixed.seam_edges()) == 4
    assert mixed.face_components() == 1
    assert mixed.face_components(tags == CausalType.TIMELIKE) == 1
    assert mixed.vertex_components() == 1


def test_geometric_face_types():
    v = np.array([[0, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 0], [1, 1, 0]], dtype=float)
    m = CausalMesh(v, [(0, 1, 2), (0, 1, 3), (0, 4, 2)], np.zeros(3))
    t = m.geometric_face_types()
    assert t[0] == CausalType.SPACELIKE and t[1] == CausalType.TIMELIKE and t[2] == CausalType.LIGHTLIKE


def test_cluster_points_periodic():
    pts = np.array([[0.0, 0.5, 0.5], [0.999999999, 0.5, 0.5], [0.5, 0.5, 0.5]])
    labels = cluster_points(pts, 1e-6, boxsize=1.0)
    assert labels[0] == labels[1] != labels[2]


def test_validation():
    with pytest.raises(ValueError):
        CausalMesh(np.zeros((3, 3)), [(0, 1, 2)], [0, 0])
