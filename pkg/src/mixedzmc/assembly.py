"""Fundamental pieces, the reflection assembly and its topological checks.

The fundamental piece consists of a spacelike part (the image of the sector
``0 <= arg z <= pi/4``, ``|z| <= 1`` under the ``theta = pi/2`` maximal
immersion) and a timelike part (the midpoint surface over the height
rectangle), glued along the lightlike fold curve.  Its boundary consists of
the straight segments ``LA``, ``LB``, ``LCmin`` and the planar curve
``LCmax``.  Successive reflections in these produce a piece invariant under a
rectangular translation lattice; the quotient is a closed surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .errors import NotClosed, SeamMismatch, WeldMismatch
from .maxface import eval_maxface, maxface_grid
from .mesh import CausalMesh, Marker, cluster_points
from .minkowski import CausalType, Isometry, line_reflection, plane_reflection, x0_rotation
from .periods import PHI3_MAXFACE, Lattice3
from .riemann import SurfaceParams
from .timelike import fold_curve

RIM_OFFSET = 1e-4
WELD_TOL = 1e-8
FIT_TOL = 1e-8


# ---------------------------------------------------------------------------
# Fundamental pieces
# ---------------------------------------------------------------------------


def height_grid(params: SurfaceParams, n: int) -> np.ndarray:
    """Heights ``alpha_j = j tau(pi/4) / n`` shared by both pieces."""
    fc = fold_curve(params)
    return np.linspace(0.0, float(fc.tau(np.pi / 4)), n + 1)


def angle_grid(params: SurfaceParams, n: int) -> np.ndarray:
    """Angles ``t_j`` with ``tau(t_j)`` uniform on ``[0, tau(pi/4)]``."""
    fc = fold_curve(params)
    t = np.asarray(fc.tau_inv(height_grid(params, n)), dtype=float)
    t[0], t[-1] = 0.0, np.pi / 4
    return t


def radius_grid(params: SurfaceParams, n_r: int) -> np.ndarray:
    """Radii ``0 < r_1 < ... < r_N = 1`` containing ``a``.

    The segment ``[0, a]`` is divided uniformly.  On ``[a, 1]`` the radii are
    ``1 - (1 - a) sqrt(1 - k/n)``: the image approaches the fold quadratically
    in ``1 - |z|``, so this spacing gives roughly uniform image spacing.
    """
    a = params.a
    n_in = max(2, int(round(n_r * a)))
    n_out = max(2, n_r - n_in)
    inner = a * np.arange(1, n_in + 1) / n_in
    k = np.arange(1, n_out + 1)
    outer = 1.0 - (1.0 - a) * np.sqrt(1.0 - k / n_out)
    return np.concatenate([inner, outer])


def mesh_omega_max(params: SurfaceParams, n_r: int, n_t: int) -> CausalMesh:
    """Spacelike fundamental piece, translated so that its rim is the fold curve.

    Parameters
    ----------
    n_r : int
        Number of radial intervals (at least 4).
    n_t : int
        Number of angular intervals (at least 4); the angles are chosen so the
        rim vertices have equally spaced heights.

    Notes
    -----
    Rings with ``|z| < 1`` are integrated numerically.  The last ring is the
    rim: the integral is evaluated at ``|z| = 1 - 1e-4`` and then snapped to
    the closed-form fold curve, whose distance from the integrated ring is
    stored in ``meta["rim_snap"]``.
    """
    if n_r < 4 or n_t < 4:
        raise ValueError("resolution must be at least 4 in each direction")
    fc = fold_curve(params)
    radii = radius_grid(params, n_r)
    angles = angle_grid(params, n_t)
    origin = eval_maxface(params, np.pi / 2, 1.0)
    work_r = radii.copy()
    work_r[-1] = 1.0 - RIM_OFFSET
    grid = maxface_grid(params, np.pi / 2, work_r, angles) - origin
    rim = fc.gamma(angles)
    snap = float(np.max(np.linalg.norm(grid[-1] - rim, axis=1)))
    grid[-1] = rim

    n_ring = radii.size
    m = angles.size
    center = -origin
    verts = np.vstack([center[None, :], grid.reshape(-1, 3)])
    idx = lambda i, j: 1 + i * m + j  # noqa: E731  ring i (0-based), angle j

    faces = []
    for j in range(m - 1):
        faces.append((0, idx(0, j), idx(0, j + 1)))
    for i in range(n_ring - 1):
        for j in range(m - 1):
            faces.append((idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)))
            faces.append((idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)))
    faces = np.array(faces, dtype=np.int64)

    markers = np.zeros(len(verts), dtype=np.int64)
    markers[0] = Marker.LA | Marker.LCMAX
    a = params.a
    for i, r in enumerate(radii):
        markers[idx(i, 0)] |= Marker.LA
        last = idx(i, m - 1)
        if r <= a + 1e-14:
            markers[last] |= Marker.LCMAX
        if r >= a - 1e-14:
            markers[last] |= Marker.LB
    for j in range(m):
        markers[idx(n_ring - 1, j)] |= Marker.FOLD
    mesh = CausalMesh(verts, faces, np.full(len(faces), CausalType.SPACELIKE), markers)
    mesh.meta.update({"rim_snap": snap, "radii": radii, "angles": angles, "translation": (-origin).tolist()})
    return mesh


def beta_grid(params: SurfaceParams, n_b: int) -> np.ndarray:
    """Values ``beta_k = tau(pi/2) sqrt(k / n_b)``; the square root compensates
    the quadratic approach of the surface to its fold."""
    fc = fold_curve(params)
    return float(fc.tau(np.pi / 2)) * np.sqrt(np.arange(n_b + 1) / n_b)


def mesh_omega_min(params: SurfaceParams, n_a: int, n_b: int) -> CausalMesh:
    """Timelike fundamental piece over ``[0, tau(pi/4)] x [0, tau(pi/2)]``.

    The row ``beta = 0`` is the fold curve itself.
    """
    if n_a < 4 or n_b < 4:
        raise ValueError("resolution must be at least 4 in each direction")
    fc = fold_curve(params)
    alphas = height_grid(params, n_a)
    betas = beta_grid(params, n_b)
    A, B = np.meshgrid(alphas, betas, indexing="ij")
    pts = fc.check_f(A, B)
    pts[:, 0] = fc.gamma_tilde(alphas)
    na, nb = alphas.size, betas.size
    idx = lambda j, k: j * nb + k  # noqa: E731
    faces = []
    for j in range(na - 1):
        for k in range(nb - 1):
            faces.append((idx(j, k), idx(j + 1, k), idx(j + 1, k + 1)))
            faces.append((idx(j, k), idx(j + 1, k + 1), idx(j, k + 1)))
    markers = np.zeros(na * nb, dtype=np.int64)
    for j in range(na):
        markers[idx(j, 0)] |= Marker.FOLD
        markers[idx(j, nb - 1)] |= Marker.LCMIN
    for k in range(nb):
        markers[idx(0, k)] |= Marker.LA
        markers[idx(na - 1, k)] |= Marker.LB
    mesh = CausalMesh(pts.reshape(-1, 3), np.array(faces), np.full(len(faces), CausalType.TIMELIKE), markers)
    mesh.meta.update({"alphas": alphas, "betas": betas})
    return mesh


def join_omega1(max_mesh: CausalMesh, min_mesh: CausalMesh, tol: float = WELD_TOL) -> CausalMesh:
    """Glue the two pieces along the fold curve.

    Raises
    ------
    SeamMismatch
        If the rims have different sample counts or any pair of rim vertices
        is farther apart than ``tol``.
    """
    rim_max = max_mesh.with_marker(Marker.FOLD)
    rim_min = min_mesh.with_marker(Marker.FOLD)
    if rim_max.size != rim_min.size:
        raise SeamMismatch(f"rim sizes differ: {rim_max.size} vs {rim_min.size}")
    # Both rims are listed in increasing height.
    rim_max = rim_max[np.argsort(max_mesh.vertices[rim_max, 0])]
    rim_min = rim_min[np.argsort(min_mesh.vertices[rim_min, 0])]
    gap = np.linalg.norm(max_mesh.vertices[rim_max] - min_mesh.vertices[rim_min], axis=1)
    if np.max(gap) > tol:
        raise SeamMismatch(f"rim vertices differ by {np.max(gap):.3g}")

    n0 = max_mesh.n_vertices
    keep = np.ones(min_mesh.n_vertices, dtype=bool)
    keep[rim_min] = False
    new_index = np.empty(min_mesh.n_vertices, dtype=np.int64)
    new_index[keep] = n0 + np.arange(int(keep.sum()))
    new_index[rim_min] = rim_max
    faces_min = new_index[min_mesh.faces]
    markers = np.concatenate([max_mesh.markers.copy(), min_mesh.markers[keep]])
    np.bitwise_or.at(markers, rim_max, min_mesh.markers[rim_min])
    joined = CausalMesh(
        np.vstack([max_mesh.vertices, min_mesh.vertices[keep]]),
        np.vstack([max_mesh.faces, faces_min]),
        np.concatenate([max_mesh.face_tags, min_mesh.face_tags]),
        markers,
    )
    if not joined.is_consistently_oriented():
        joined.faces[max_mesh.n_faces :] = joined.faces[max_mesh.n_faces :, ::-1]
    joined.meta.update(max_mesh.meta)
    joined.meta["seam_gap"] = float(np.max(gap))
    return joined


def build_omega1(params: SurfaceParams, res: int, res_v: int | None = None) -> CausalMesh:
    """Fundamental piece with ``res`` height intervals and ``res_v`` transverse ones."""
    res_v = res if res_v is None else res_v
    return join_omega1(mesh_omega_max(params, res_v, res), mesh_omega_min(params, res, res_v))


# ---------------------------------------------------------------------------
# Reflection assembly
# ---------------------------------------------------------------------------


def fit_line(points: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Least-squares line: point, unit direction and maximal distance from it."""
    c = points.mean(axis=0)
    _, _, vt = np.linalg.svd(points - c)
    d = vt[0]
    rel = points - c
    resid = np.linalg.norm(rel - np.outer(rel @ d, d), axis=1)
    return c, d, float(resid.max())


def fit_plane(points: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Least-squares plane: point, unit normal and maximal distance from it."""
    c = points.mean(axis=0)
    _, _, vt = np.linalg.svd(points - c)
    n = vt[-1]
    return c, n, float(np.max(np.abs((points - c) @ n)))


def _on_line(points: np.ndarray, p: np.ndarray, d: np.ndarray, tol: float) -> np.ndarray:
    rel = points - p
    return np.linalg.norm(rel - np.outer(rel @ d, d), axis=1) <= tol


def _check_fixed(iso: Isometry, pts: np.ndarray, what: str, tol: float = WELD_TOL) -> None:
    err = float(np.max(np.linalg.norm(iso(pts) - pts, axis=1)))
    if err > tol:
        raise WeldMismatch(f"{what}: boundary moved by {err:.3g} under its own reflection")


def _orbit(mesh: CausalMesh, elements: list[tuple[Isometry, bool]]) -> CausalMesh:
    return CausalMesh.concatenate([mesh.transformed(g, flip) for g, flip in elements])


@dataclass
class Assembly:
    """Result of the reflection assembly."""

    mesh: CausalMesh
    lattice: Lattice3
    lengths: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    stages: dict = field(default_factory=dict)


def extend_to_omega32(params: SurfaceParams, omega1: CausalMesh, tol: float = WELD_TOL) -> Assembly:
    """Apply the reflection sequence to the fundamental piece.

    The steps are: mirror in the plane of ``LCmax``; pi-rotations about ``LA``
    and its mirror image ``LA'``; a rotation about the x0-axis making the
    lower horizontal boundary segments parallel to the x1-axis; and
    pi-rotations about one such segment ``LB^`` and the vertical segment
    ``LC^`` meeting it.  Every axis is fitted to the marked boundary vertices.

    Returns
    -------
    Assembly
        Welded 32-copy mesh, the translation lattice with generators
        ``(2|LC^|,0,0)``, ``(0,2|LB^|,0)``, ``(0,0,2|LB^|)``, the segment
        lengths and fit diagnostics.

    Raises
    ------
    WeldMismatch
        If a boundary is not fixed by the reflection that glues along it.
    """
    diag: dict = {}
    v = omega1.vertices

    # Step 1: mirror in the plane of LCmax.
    lcmax = v[omega1.with_marker(Marker.LCMAX)]
    pc, normal, planarity = fit_plane(lcmax)
    diag["lcmax_planarity"] = planarity
    diag["lcmax_normal"] = normal.tolist()
    if planarity > FIT_TOL:
        raise WeldMismatch(f"LCmax is not planar (residual {planarity:.3g})")
    sigma = plane_reflection(pc, normal)
    _check_fixed(sigma, lcmax, "LCmax")
    omega2 = _orbit(omega1, [(Isometry.identity(), False), (sigma, True)])
    omega2, _ = omega2.weld(tol)

    # Step 2: rotations about LA and its mirror LA'.
    la = v[omega1.with_marker(Marker.LA)]
    pa, da, straight_a = fit_line(la)
    diag["la_straightness"] = straight_a
    r_a = line_reflection(pa, da)
    r_a2 = line_reflection(sigma(pa), sigma.linear @ da)
    _check_fixed(r_a, la, "LA")
    _check_fixed(r_a2, sigma(la), "LA'")
    omega8 = _orbit(
        omega2,
        [(Isometry.identity(), False), (r_a, True), (r_a2, True), (r_a.compose(r_a2), False)],
    )
    omega8, _ = omega8.weld(tol)

    # Step 3: rotate so that the lower copies of LB are parallel to x1.
    lb = v[omega1.with_marker(Marker.LB)]
    pb, db, straight_b = fit_line(lb)
    diag["lb_straightness"] = straight_b
    low_dir = r_a.linear @ db
    angle = -np.arctan2(low_dir[2], low_dir[1])
    angle = (angle + np.pi / 2) % np.pi - np.pi / 2
    rho = x0_rotation(angle)
    diag["rotation_angle"] = float(angle)
    omega8 = omega8.transformed(rho)

    # Step 4: rotations about LB^ (lower horizontal) and LC^ (vertical).
    p_hat_b = rho(r_a(pb))
    d_hat_b = rho.linear @ (r_a.linear @ db)
    lcmin = v[omega1.with_marker(Marker.LCMIN)]
    pcm, dcm, straight_c = fit_line(lcmin)
    diag["lcmin_straightness"] = straight_c
    p_hat_c = rho(pcm)
    d_hat_c = rho.linear @ dcm
    on_b = _on_line(omega8.vertices, p_hat_b, d_hat_b, 1e-7)
    on_c = _on_line(omega8.vertices, p_hat_c, d_hat_c, 1e-7)
    proj_b = (omega8.vertices[on_b] - p_hat_b) @ d_hat_b
    proj_c = (omega8.vertices[on_c] - p_hat_c) @ d_hat_c
    len_b = float(proj_b.max() - proj_b.min())
    len_c = float(proj_c.max() - proj_c.min())
    r_b = line_reflection(p_hat_b, d_hat_b)
    r_c = line_reflection(p_hat_c, d_hat_c)
    _check_fixed(r_b, omega8.vertices[on_b], "LB^")
    _check_fixed(r_c, omega8.vertices[on_c], "LC^")
    omega32 = _orbit(
        omega8,
        [(Isometry.identity(), False), (r_b, True), (r_c, True), (r_b.compose(r_c), False)],
    )
    omega32, _ = omega32.weld(tol)

    lattice = Lattice3(np.diag([2 * len_c, 2 * len_b, 2 * len_b]))
    lengths = {
        "LA": float(np.ptp((la - pa) @ da)),
        "LB": float(np.ptp((lb - pb) @ db)),
        "LCmin": float(np.ptp((lcmin - pcm) @ dcm)),
        "LB_hat": len_b,
        "LC_hat": len_c,
    }
    lo, hi = omega32.vertices.min(axis=0), omega32.vertices.max(axis=0)
    diag["bounding_box"] = [lo.tolist(), hi.tolist()]
    diag["box_vs_lattice"] = float(np.max(np.abs((hi - lo) - np.diag(lattice.generators))))
    diag["copies"] = int(np.unique(omega32.face_copy).size)
    return Assembly(omega32, lattice, lengths, diag, {"omega2": omega2, "omega8": omega8})


# ---------------------------------------------------------------------------
# Whole maxface patch
# ---------------------------------------------------------------------------


def disk_mesh(params: SurfaceParams, theta: float, n_r: int, n_t: int) -> CausalMesh:
    """Image of the disk ``|z| <= 1 - 1e-4`` under the maximal immersion of angle ``theta``.

    The sector ``|arg z| <= pi/4`` is integrated on a polar grid and the
    other three quarters follow from ``f(iz) = R f(z)``, where ``R`` is the
    linear part of the deck transformation ``z -> iz``.  The rays from the
    branch points ``a e^{i(pi/4 + k pi/2)}`` to the rim are branch cuts, so
    neighbouring quarters are welded (at 1e-8) only where their images
    coincide; elsewhere the seam stays open as boundary.

    Parameters
    ----------
    n_r : int
        Radial intervals (at least 4).
    n_t : int
        Angular intervals per quarter (at least 4; rounded up to even so the
        grid contains the real axis).

    Notes
    -----
    The singular set ``|z| = 1`` itself is not meshed.  ``meta["rim_images"]``
    holds the number of distinct images of the rim angles on ``|z| = 1``
    (clustered at 1e-6); for ``theta = 0`` the rim collapses to four
    cone-like points.
    """
    if n_r < 4 or n_t < 4:
        raise ValueError("resolution must be at least 4 in each direction")
    n_t += n_t % 2
    radii = np.linspace(0.0, 1.0, n_r + 1)[1:]
    radii[-1] = 1.0 - RIM_OFFSET
    angles = np.linspace(-np.pi / 4, np.pi / 4, n_t + 1)
    grid = maxface_grid(params, theta, np.append(radii, 1.0), angles)
    rim = grid[-1]
    grid = grid[:-1]
    m = angles.size
    verts = np.vstack([np.zeros((1, 3)), grid.reshape(-1, 3)])
    idx = lambda i, j: 1 + i * m + j  # noqa: E731
    faces = [(0, idx(0, j), idx(0, j + 1)) for j in range(m - 1)]
    for i in range(radii.size - 1):
        for j in range(m - 1):
            faces.append((idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)))
            faces.append((idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)))
    faces = np.array(faces, dtype=np.int64)
    markers = np.zeros(len(verts), dtype=np.int64)
    markers[[idx(radii.size - 1, j) for j in range(m)]] = Marker.FOLD

    all_v, all_rim = [], []
    for k in range(4):
        lin = np.linalg.matrix_power(PHI3_MAXFACE, k)
        all_v.append(verts @ lin.T)
        all_rim.append(rim @ lin.T)
    n = len(verts)
    stacked = CausalMesh(
        np.vstack(all_v),
        np.vstack([faces + k * n for k in range(4)]),
        np.full(4 * len(faces), CausalType.SPACELIKE),
        np.tile(markers, 4),
    )
    welded, _ = stacked.weld(WELD_TOL)
    rim_pts = np.vstack(all_rim)
    scale = max(float(np.max(np.abs(rim_pts))), 1.0)
    welded.meta.update(
        {
            "theta": float(theta),
            "rim_images": int(np.unique(cluster_points(rim_pts, 1e-6 * scale)).size),
            "rim_samples": int(rim_pts.shape[0]),
        }
    )
    return welded


# ---------------------------------------------------------------------------
# Topology and containment
# ---------------------------------------------------------------------------


def quotient_mesh(mesh: CausalMesh, lattice: Lattice3, tol: float = 1e-7) -> CausalMesh:
    """Identify vertices congruent modulo ``lattice``."""
    origin = mesh.vertices.min(axis=0)
    frac = lattice.coordinates(mesh.vertices - origin)
    frac = np.mod(frac, 1.0)
    frac[frac >= 1.0] = 0.0
    scale = float(np.min(np.linalg.norm(lattice.generators, axis=1)))
    labels = cluster_points(frac, tol / scale, boxsize=1.0)
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    faces = inverse[mesh.faces]
    return CausalMesh(mesh.vertices[first], faces, mesh.face_tags.copy(), None, mesh.face_copy.copy())


def quotient_genus(mesh: CausalMesh, lattice: Lattice3, tol: float = 1e-7) -> int:
    """Genus of the closed surface ``mesh / lattice``.

    Raises
    ------
    NotClosed
        If, after identification, some edge is not shared by exactly two faces.
    """
    q = quotient_mesh(mesh, lattice, tol)
    _, counts = q.edges()
    if np.any(counts != 2):
        raise NotClosed(f"{int(np.sum(counts == 1))} boundary edges and {int(np.sum(counts > 2))} non-manifold edges remain")
    chi = q.euler_characteristic()
    return (2 - chi) // 2


def closed_genus(mesh: CausalMesh) -> int:
    """Genus of a closed mesh without identification."""
    _, counts = mesh.edges()
    if np.any(counts != 2):
        raise NotClosed("mesh has boundary or non-manifold edges")
    return (2 - mesh.euler_characteristic()) // 2


@dataclass
class PrismReport:
    max_violation: float
    triangle: np.ndarray
    height: tuple[float, float]
    right_angle_defect: float
    leg_ratio: float
    n_vertices: int


def prism_containment(params: SurfaceParams, omega1: CausalMesh) -> PrismReport:
    """Signed distance of the fundamental piece from the prism ``Delta x LCmin``.

    ``Delta`` is the triangle in the x1x2-plane with corners at the
    projections of ``LA ∩ LCmax``, ``LB ∩ LCmax`` and ``LCmin``; the height
    interval is the x0-range of ``LCmin``.  Positive values are outside.
    """
    v = omega1.vertices
    m = omega1.markers
    corner_ac = v[(m & Marker.LA).astype(bool) & (m & Marker.LCMAX).astype(bool)].mean(axis=0)
    corner_bc = v[(m & Marker.LB).astype(bool) & (m & Marker.LCMAX).astype(bool)].mean(axis=0)
    lcmin = v[omega1.with_marker(Marker.LCMIN)]
    tri = np.array([corner_ac[1:], corner_bc[1:], lcmin[:, 1:].mean(axis=0)])
    lo, hi = float(lcmin[:, 0].min()), float(lcmin[:, 0].max())
    p = v[:, 1:]
    viol = np.maximum(lo - v[:, 0], v[:, 0] - hi)
    centroid = tri.mean(axis=0)
    for i in range(3):
        e0, e1 = tri[i], tri[(i + 1) % 3]
        edge = e1 - e0
        n = np.array([edge[1], -edge[0]]) / np.linalg.norm(edge)
        if (centroid - e0) @ n > 0:
            n = -n
        viol = np.maximum(viol, (p - e0) @ n)
    leg1, leg2 = tri[0] - tri[1], tri[2] - tri[1]
    cosang = leg1 @ leg2 / (np.linalg.norm(leg1) * np.linalg.norm(leg2))
    return PrismReport(
        float(viol.max()),
        tri,
        (lo, hi),
        float(abs(cosang)),
        float(np.linalg.norm(leg1) / np.linalg.norm(leg2)),
        omega1.n_vertices,
    )


@dataclass
class InjectivityReport:
    injective: bool
    min_distance: float
    min_curvature: float
    duplicates: int

    def __bool__(self) -> bool:
        return self.injective


def midpoint_injectivity_check(
    params: SurfaceParams,
    n_alpha: int = 256,
    n_beta: int = 256,
    tol: float = 1e-10,
    betas=None,
) -> InjectivityReport:
    """Check injectivity of the height-parametrised midpoint surface on a grid.

    The x0-coordinate of a sample equals ``alpha``, so two samples can only
    coincide within a row of equal ``alpha``; each row is searched for pairs
    of distinct ``beta`` whose images are closer than ``tol``.  Repeated
    ``beta`` values are reported in ``duplicates`` but are not violations.
    The projected fold curve must be strictly convex, which is checked first.
    """
    fc = fold_curve(params)
    s = np.linspace(0.0, 2 * np.pi, 1024, endpoint=False)
    kappa = float(np.min(fc.projected_curvature(s)))
    if kappa <= 0:
        return InjectivityReport(False, 0.0, kappa, 0)
    ca = fc.c_a
    alphas = np.linspace(-ca, ca, n_alpha)
    if betas is None:
        betas = ca * np.arange(1, n_beta + 1) / (n_beta + 1)
    betas = np.asarray(betas, dtype=float)
    ub, inv = np.unique(betas, return_inverse=True)
    dup = int(betas.size - ub.size)
    A, B = np.meshgrid(alphas, ub, indexing="ij")
    pts = fc.check_f(A, B)
    min_d = np.inf
    ok = True
    for row in pts:
        xy = row[:, 1:]
        tree = cKDTree(xy)
        d, _ = tree.query(xy, k=2)
        min_d = min(min_d, float(d[:, 1].min()))
        if tree.query_pairs(tol):
            ok = False
    return InjectivityReport(ok, min_d, kappa, dup)
