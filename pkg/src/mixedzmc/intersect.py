"""Triangle-mesh self-intersection detection.

Candidate pairs come from a uniform spatial hash over face bounding boxes;
each candidate is decided by segment/triangle crossing tests (non-coplanar
pairs) or by a planar overlap test (coplanar pairs).  All predicates use the
Euclidean metric of the ambient coordinates.  Contacts within ``eps`` of the
boundary of a triangle are not counted, and pairs sharing a vertex are
skipped, so the scan reports proper crossings only.
"""

from __future__ import annotations

import numpy as np

from .mesh import CausalMesh


def _candidate_pairs(tri: np.ndarray, cell: float, pad: float) -> np.ndarray:
    lo = tri.min(axis=1) - pad
    hi = tri.max(axis=1) + pad
    ilo = np.floor(lo / cell).astype(np.int64)
    ihi = np.floor(hi / cell).astype(np.int64)
    span = ihi - ilo + 1
    counts = np.prod(span, axis=1)
    face = np.repeat(np.arange(len(tri)), counts)
    # Enumerate the cells covered by each face box.
    offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    sp = span[face]
    k0 = offs % sp[:, 0]
    k1 = (offs // sp[:, 0]) % sp[:, 1]
    k2 = offs // (sp[:, 0] * sp[:, 1])
    cells = ilo[face] + np.stack([k0, k1, k2], axis=1)
    _, key = np.unique(cells, axis=0, return_inverse=True)
    key = key.ravel()
    order = np.argsort(key, kind="stable")
    key, face = key[order], face[order]
    starts = np.flatnonzero(np.r_[True, key[1:] != key[:-1]])
    sizes = np.diff(np.r_[starts, key.size])
    pairs = []
    for s, n in zip(starts[sizes > 1], sizes[sizes > 1]):
        members = face[s : s + n]
        i, j = np.triu_indices(n, 1)
        pairs.append(np.stack([members[i], members[j]], axis=1))
    if not pairs:
        return np.zeros((0, 2), dtype=np.int64)
    p = np.concatenate(pairs)
    p = np.sort(p, axis=1)
    p = np.unique(p, axis=0)
    ok = np.all(lo[p[:, 0]] <= hi[p[:, 1]], axis=1) & np.all(lo[p[:, 1]] <= hi[p[:, 0]], axis=1)
    return p[ok]


def _segments_cross_triangles(p0, p1, tri, eps):
    """Whether segments ``p0 p1`` properly cross the triangles ``tri``."""
    a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
    e1, e2 = b - a, c - a
    d = p1 - p0
    h = np.cross(d, e2)
    det = np.einsum("ij,ij->i", e1, h)
    scale = np.linalg.norm(e1, axis=1) * np.linalg.norm(e2, axis=1) * np.linalg.norm(d, axis=1)
    good = np.abs(det) > 1e-12 * scale
    inv = np.where(good, 1.0 / np.where(good, det, 1.0), 0.0)
    s = p0 - a
    u = inv * np.einsum("ij,ij->i", s, h)
    q = np.cross(s, e1)
    v = inv * np.einsum("ij,ij->i", d, q)
    t = inv * np.einsum("ij,ij->i", e2, q)
    return good & (u > eps) & (v > eps) & (u + v < 1 - eps) & (t > eps) & (t < 1 - eps)


def _coplanar_overlap(t1: np.ndarray, t2: np.ndarray, normal: np.ndarray, eps: float) -> bool:
    axis = int(np.argmax(np.abs(normal)))
    keep = [i for i in range(3) if i != axis]
    A, B = t1[:, keep], t2[:, keep]

    def cross2(u, v):
        return u[0] * v[1] - u[1] * v[0]

    def inside(p, T):
        s = [cross2(T[(i + 1) % 3] - T[i], p - T[i]) for i in range(3)]
        area = abs(cross2(T[1] - T[0], T[2] - T[0]))
        return all(x > eps * area for x in s) or all(x < -eps * area for x in s)

    for i in range(3):
        p, r = A[i], A[(i + 1) % 3] - A[i]
        for j in range(3):
            q, s = B[j], B[(j + 1) % 3] - B[j]
            den = cross2(r, s)
            if abs(den) <= 1e-14 * np.linalg.norm(r) * np.linalg.norm(s):
                continue
            t = cross2(q - p, s) / den
            u = cross2(q - p, r) / den
            if eps < t < 1 - eps and eps < u < 1 - eps:
                return True
    return any(inside(p, B) for p in A) or any(inside(p, A) for p in B)


def triangle_pairs_intersect(tri_a: np.ndarray, tri_b: np.ndarray, eps: float = 1e-9) -> np.ndarray:
    """Vectorised proper-intersection test for triangle pairs, shapes ``(n, 3, 3)``."""
    n = len(tri_a)
    hit = np.zeros(n, dtype=bool)
    for src, dst in ((tri_a, tri_b), (tri_b, tri_a)):
        for i in range(3):
            hit |= _segments_cross_triangles(src[:, i], src[:, (i + 1) % 3], dst, eps)
    # Coplanar pairs are invisible to the crossing test.
    na = np.cross(tri_a[:, 1] - tri_a[:, 0], tri_a[:, 2] - tri_a[:, 0])
    nrm = np.linalg.norm(na, axis=1)
    size = np.max(np.linalg.norm(tri_a - tri_a[:, :1], axis=2), axis=1)
    dist = np.abs(np.einsum("ij,ikj->ik", na, tri_b - tri_a[:, :1])) / np.maximum(nrm, 1e-300)[:, None]
    coplanar = np.all(dist <= eps * np.maximum(size, 1e-300)[:, None], axis=1) & ~hit
    for k in np.flatnonzero(coplanar):
        hit[k] = _coplanar_overlap(tri_a[k], tri_b[k], na[k], eps)
    return hit


def self_intersection_scan(mesh: CausalMesh, eps: float = 1e-9) -> list[tuple[int, int]]:
    """Pairs of faces that cross each other.

    Parameters
    ----------
    mesh : CausalMesh
    eps : float
        Relative margin (in barycentric and segment parameters) below which
        contacts are treated as touching rather than crossing.

    Returns
    -------
    list of (int, int)
        Sorted face-index pairs; empty when the mesh is embedded at its
        resolution.
    """
    tri = mesh.vertices[mesh.faces]
    if len(tri) < 2:
        return []
    edge = np.linalg.norm(tri[:, 1] - tri[:, 0], axis=1)
    cell = 2.0 * float(np.median(edge)) if np.median(edge) > 0 else 1.0
    ext = np.ptp(tri.reshape(-1, 3), axis=0).max()
    pad = 1e-9 * max(ext, 1.0)
    pairs = _candidate_pairs(tri, cell, pad)
    if len(pairs) == 0:
        return []
    fa, fb = mesh.faces[pairs[:, 0]], mesh.faces[pairs[:, 1]]
    shared = np.any(fa[:, :, None] == fb[:, None, :], axis=(1, 2))
    pairs = pairs[~shared]
    out = []
    chunk = 200_000
    for s in range(0, len(pairs), chunk):
        p = pairs[s : s + chunk]
        hit = triangle_pairs_intersect(tri[p[:, 0]], tri[p[:, 1]], eps)
        out.extend((int(i), int(j)) for i, j in p[hit])
    return sorted(out)
