"""Serialisation of meshes and reports.

Meshes are written in canonical order (see :meth:`CausalMesh.canonical`) and
with round-trip float formatting, so identical inputs give byte-identical
files.  OBJ files group faces as ``spacelike``, ``timelike`` and
``lightlike``; binary PLY files are little-endian with a per-face integer
property ``causal_type``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import IO, Any

import numpy as np

from .mesh import CausalMesh
from .minkowski import CausalType

GROUP_NAMES = {CausalType.SPACELIKE: "spacelike", CausalType.TIMELIKE: "timelike", CausalType.LIGHTLIKE: "lightlike"}

_PLY_VERTEX = np.dtype([("x", "<f8"), ("y", "<f8"), ("z", "<f8")])
_PLY_FACE = np.dtype([("n", "u1"), ("vertex_indices", "<i4", (3,)), ("causal_type", "u1")])


def _fmt(x: float) -> str:
    return repr(float(x) + 0.0)


# ---------------------------------------------------------------------------
# OBJ
# ---------------------------------------------------------------------------


def write_obj(mesh: CausalMesh, stream: IO[str]) -> None:
    """Write ``mesh`` as Wavefront OBJ with one group per causal type."""
    m = mesh.canonical()
    stream.write(f"# vertices {m.n_vertices} faces {m.n_faces}\n")
    for x0, x1, x2 in m.vertices:
        stream.write(f"v {_fmt(x0)} {_fmt(x1)} {_fmt(x2)}\n")
    for tag in CausalType:
        sel = np.nonzero(m.face_tags == int(tag))[0]
        if sel.size == 0:
            continue
        stream.write(f"g {GROUP_NAMES[tag]}\n")
        for i, j, k in m.faces[sel] + 1:
            stream.write(f"f {i} {j} {k}\n")


def read_obj(stream: IO[str]) -> CausalMesh:
    """Read a mesh written by :func:`write_obj` (groups become face tags)."""
    names = {v: k for k, v in GROUP_NAMES.items()}
    verts, faces, tags = [], [], []
    tag = CausalType.SPACELIKE
    for line in stream:
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(p) for p in parts[1:4]])
        elif parts[0] == "g":
            tag = names[parts[1]]
        elif parts[0] == "f":
            faces.append([int(p.split("/")[0]) - 1 for p in parts[1:4]])
            tags.append(int(tag))
    return CausalMesh(np.array(verts), np.array(faces), np.array(tags))


# ---------------------------------------------------------------------------
# PLY
# ---------------------------------------------------------------------------


def write_ply(mesh: CausalMesh, stream: IO[bytes]) -> None:
    """Write ``mesh`` as binary little-endian PLY."""
    m = mesh.canonical()
    header = (
        "ply\n"
        "format binary_little_endian 1.0\n"
        f"element vertex {m.n_vertices}\n"
        "property double x\n"
        "property double y\n"
        "property double z\n"
        f"element face {m.n_faces}\n"
        "property list uchar int vertex_indices\n"
        "property uchar causal_type\n"
        "end_header\n"
    )
    stream.write(header.encode("ascii"))
    v = np.empty(m.n_vertices, dtype=_PLY_VERTEX)
    v["x"], v["y"], v["z"] = (m.vertices + 0.0).T
    stream.write(v.tobytes())
    f = np.empty(m.n_faces, dtype=_PLY_FACE)
    f["n"] = 3
    f["vertex_indices"] = m.faces
    f["causal_type"] = m.face_tags
    stream.write(f.tobytes())


def read_ply(stream: IO[bytes]) -> CausalMesh:
    """Read a mesh written by :func:`write_ply`."""
    counts = {}
    while True:
        line = stream.readline().decode("ascii").strip()
        if line.startswith("format") and line.split()[1] != "binary_little_endian":
            raise ValueError("only binary little-endian PLY is supported")
        if line.startswith("element"):
            _, name, n = line.split()
            counts[name] = int(n)
        if line == "end_header":
            break
    v = np.frombuffer(stream.read(counts["vertex"] * _PLY_VERTEX.itemsize), dtype=_PLY_VERTEX)
    f = np.frombuffer(stream.read(counts["face"] * _PLY_FACE.itemsize), dtype=_PLY_FACE)
    verts = np.column_stack([v["x"], v["y"], v["z"]])
    return CausalMesh(verts, f["vertex_indices"].astype(np.int64), f["causal_type"].astype(np.int8))


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def to_jsonable(obj: Any) -> Any:
    """Convert numpy containers and scalars into plain JSON values.

    Non-finite floats become the strings ``"inf"``, ``"-inf"`` and ``"nan"``.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x + 0.0
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if hasattr(obj, "value") and isinstance(obj.value, (str, int)):
        return obj.value
    return obj


def dumps_json(obj: Any) -> str:
    """Deterministic JSON text (insertion key order, two-space indent, trailing newline)."""
    return json.dumps(to_jsonable(obj), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


def save_mesh(mesh: CausalMesh, path: str | Path, fmt: str | None = None) -> Path:
    """Write ``mesh`` to ``path``; ``fmt`` defaults to the file suffix."""
    path = Path(path)
    fmt = (fmt or path.suffix.lstrip(".")).lower()
    if fmt == "obj":
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            write_obj(mesh, fh)
    elif fmt == "ply":
        with open(path, "wb") as fh:
            write_ply(mesh, fh)
    elif fmt == "json":
        m = mesh.canonical()
        payload = {"vertices": m.vertices, "faces": m.faces, "causal_type": m.face_tags}
        path.write_text(dumps_json(payload), encoding="utf-8")
    else:
        raise ValueError(f"unknown mesh format {fmt!r}")
    return path


def load_mesh(path: str | Path) -> CausalMesh:
    path = Path(path)
    fmt = path.suffix.lstrip(".").lower()
    if fmt == "obj":
        with open(path, encoding="utf-8") as fh:
            return read_obj(fh)
    if fmt == "ply":
        with open(path, "rb") as fh:
            return read_ply(fh)
    if fmt == "json":
        d = json.loads(path.read_text(encoding="utf-8"))
        return CausalMesh(np.array(d["vertices"]), np.array(d["faces"]), np.array(d["causal_type"]))
    raise ValueError(f"unknown mesh format {fmt!r}")
