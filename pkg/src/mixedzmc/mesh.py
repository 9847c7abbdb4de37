"""Indexed triangle meshes whose faces carry a causal-type tag."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .minkowski import CausalType, Isometry, plane_causal_type


class Marker(enum.IntFlag):
    """Boundary labels of vertices; a corner vertex carries several."""

    INTERIOR = 0
    LA = 1
    LB = 2
    LCMAX = 4
    LCMIN = 8
    FOLD = 16


@dataclass
class CausalMesh:
    """Triangle mesh with per-face causal tags and per-vertex boundary markers.

    Attributes
    ----------
    vertices : ndarray, shape (n, 3)
    faces : ndarray, shape (m, 3), int
    face_tags : ndarray, shape (m,), int8
        Values of :class:`CausalType`.
    markers : ndarray, shape (n,), int
        Bitwise OR of :class:`Marker` flags.
    face_copy : ndarray, shape (m,), int
        Index of the copy of the fundamental piece a face belongs to.
    """

    vertices: np.ndarray
    faces: np.ndarray
    face_tags: np.ndarray
    markers: np.ndarray = None
    face_copy: np.ndarray = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)
        self.face_tags = np.asarray(self.face_tags, dtype=np.int8).reshape(-1)
        if self.markers is None:
            self.markers = np.zeros(len(self.vertices), dtype=np.int64)
        self.markers = np.asarray(self.markers, dtype=np.int64)
        if self.face_copy is None:
            self.face_copy = np.zeros(len(self.faces), dtype=np.int64)
        self.face_copy = np.asarray(self.face_copy, dtype=np.int64)
        if self.face_tags.shape[0] != self.faces.shape[0]:
            raise ValueError("one tag per face required")
        if self.markers.shape[0] != self.vertices.shape[0]:
            raise ValueError("one marker per vertex required")

    # -- basic queries -------------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def n_faces(self) -> int:
        return int(self.faces.shape[0])

    def with_marker(self, flag: Marker) -> np.ndarray:
        """Indices of vertices carrying ``flag``."""
        return np.nonzero(self.markers & int(flag))[0]

    def face_areas(self) -> np.ndarray:
        """Euclidean areas of the faces."""
        v = self.vertices[self.faces]
        return 0.5 * np.linalg.norm(np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0]), axis=1)

    def geometric_face_types(self) -> np.ndarray:
        """Causal type of each face plane computed from its edge vectors."""
        v = self.vertices[self.faces]
        return plane_causal_type(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0])

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Unique undirected edges (sorted pairs) and their face multiplicities."""
        e = np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]])
        e = np.sort(e, axis=1)
        uniq, counts = np.unique(e, axis=0, return_counts=True)
        return uniq, counts

    def boundary_edges(self) -> np.ndarray:
        uniq, counts = self.edges()
        return uniq[counts == 1]

    def euler_characteristic(self) -> int:
        used = np.unique(self.faces)
        return int(used.size - self.edges()[0].shape[0] + self.n_faces)

    def is_consistently_oriented(self) -> bool:
        """Every directed edge occurs at most once (adjacent faces agree)."""
        d = np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]])
        _, counts = np.unique(d, axis=0, return_counts=True)
        return bool(np.all(counts == 1))

    def face_components(self, mask: np.ndarray | None = None) -> int:
        """Number of edge-connected components among the selected faces."""
        idx = np.arange(self.n_faces) if mask is None else np.nonzero(mask)[0]
        if idx.size == 0:
            return 0
        f = self.faces[idx]
        e = np.concatenate([np.sort(f[:, [0, 1]], 1), np.sort(f[:, [1, 2]], 1), np.sort(f[:, [2, 0]], 1)])
        owner = np.tile(np.arange(idx.size), 3)
        key = e[:, 0] * (self.n_vertices + 1) + e[:, 1]
        order = np.argsort(key, kind="stable")
        key, owner = key[order], owner[order]
        same = key[1:] == key[:-1]
        rows, cols = owner[:-1][same], owner[1:][same]
        g = coo_matrix((np.ones(rows.size), (rows, cols)), shape=(idx.size, idx.size))
        return int(connected_components(g, directed=False)[0])

    def vertex_components(self) -> int:
        """Connected components of the vertex-edge graph (isolated vertices count)."""
        e, _ = self.edges()
        g = coo_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(self.n_vertices,) * 2)
        return int(connected_components(g, directed=False)[0])

    def seam_edges(self) -> np.ndarray:
        """Edges shared by a spacelike and a timelike face."""
        e = np.concatenate([self.faces[:, [0, 1]], self.faces[:, [1, 2]], self.faces[:, [2, 0]]])
        e = np.sort(e, axis=1)
        tag = np.tile(self.face_tags, 3)
        key = e[:, 0] * (self.n_vertices + 1) + e[:, 1]
        seam = []
        order = np.argsort(key, kind="stable")
        key, tag, e = key[order], tag[order], e[order]
        same = key[1:] == key[:-1]
        mixed = same & (tag[1:] != tag[:-1])
        seam = e[:-1][mixed]
        return np.unique(seam, axis=0) if seam.size else seam.reshape(0, 2)

    def seam_components(self) -> int:
        s = self.seam_edges()
        if s.size == 0:
            return 0
        verts, inv = np.unique(s, return_inverse=True)
        inv = inv.reshape(-1, 2)
        g = coo_matrix((np.ones(len(inv)), (inv[:, 0], inv[:, 1])), shape=(verts.size,) * 2)
        return int(connected_components(g, directed=False)[0])

    # -- transformations -----------------------------------------------------
    def transformed(self, iso: Isometry, flip: bool = False) -> "CausalMesh":
        """Image under ``iso``; ``flip`` reverses face windings."""
        faces = self.faces[:, ::-1].copy() if flip else self.faces.copy()
        return replace(
            self,
            vertices=iso(self.vertices),
            faces=faces,
            face_tags=self.face_tags.copy(),
            markers=self.markers.copy(),
            face_copy=self.face_copy.copy(),
            meta=dict(self.meta),
        )

    def flipped(self) -> "CausalMesh":
        return self.transformed(Isometry.identity(), flip=True)

    @staticmethod
    def concatenate(meshes: list["CausalMesh"], renumber_copies: bool = True) -> "CausalMesh":
        """Disjoint union; copy indices are shifted so copies stay distinct."""
        verts, faces, tags, marks, copies = [], [], [], [], []
        offset = 0
        copy_offset = 0
        for m in meshes:
            verts.append(m.vertices)
            faces.append(m.faces + offset)
            tags.append(m.face_tags)
            marks.append(m.markers)
            copies.append(m.face_copy + (copy_offset if renumber_copies else 0))
            offset += m.n_vertices
            copy_offset += int(m.face_copy.max()) + 1 if m.n_faces else 0
        return CausalMesh(
            np.concatenate(verts),
            np.concatenate(faces),
            np.concatenate(tags),
            np.concatenate(marks),
            np.concatenate(copies),
        )

    def weld(self, tol: float = 1e-8) -> tuple["CausalMesh", np.ndarray]:
        """Merge vertices closer than ``tol``.

        Returns
        -------
        mesh : CausalMesh
            Welded mesh; merged vertices keep the position of the lowest
            original index and the union of markers.
        mapping : ndarray
            New index of every original vertex.
        """
        labels = cluster_points(self.vertices, tol)
        # Representative = lowest original index in each cluster, ordered by first occurrence.
        _, first = np.unique(labels, return_index=True)
        order = np.argsort(first)
        remap = np.empty(order.size, dtype=np.int64)
        remap[order] = np.arange(order.size)
        mapping = remap[labels]
        verts = self.vertices[np.sort(first)]
        marks = np.zeros(order.size, dtype=np.int64)
        np.bitwise_or.at(marks, mapping, self.markers)
        faces = mapping[self.faces]
        return (
            CausalMesh(verts, faces, self.face_tags.copy(), marks, self.face_copy.copy(), dict(self.meta)),
            mapping,
        )

    def canonical(self, decimals: int = 9) -> "CausalMesh":
        """Reproducible ordering: vertices lexicographic on rounded coordinates,
        faces rotated to start at their smallest index and then sorted."""
        r = np.round(self.vertices, decimals) + 0.0
        order = np.lexsort((np.arange(self.n_vertices), r[:, 2], r[:, 1], r[:, 0]))
        inv = np.empty_like(order)
        inv[order] = np.arange(order.size)
        faces = inv[self.faces]
        shift = np.argmin(faces, axis=1)
        idx = (np.arange(3)[None, :] + shift[:, None]) % 3
        faces = np.take_along_axis(faces, idx, axis=1)
        forder = np.lexsort((faces[:, 2], faces[:, 1], faces[:, 0]))
        return CausalMesh(
            self.vertices[order],
            faces[forder],
            self.face_tags[forder],
            self.markers[order],
            self.face_copy[forder],
            dict(self.meta),
        )


def cluster_points(points: np.ndarray, tol: float, boxsize=None) -> np.ndarray:
    """Label points so that points closer than ``tol`` share a label.

    ``boxsize`` enables periodic distances for points in ``[0, boxsize)``.
    """
    n = len(points)
    tree = cKDTree(points, boxsize=boxsize)
    pairs = tree.query_pairs(tol, output_type="ndarray")
    g = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    return connected_components(g, directed=False)[1]
