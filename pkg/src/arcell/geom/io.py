"""ASCII PLY point-cloud and Wavefront OBJ mesh I/O.

Floats are printed with 17 significant digits so finite values round-trip
bit-exactly.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..errors import ParseError
from .cloud import PointCloud
from .mesh import TriangleMesh


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def save_cloud_ply(cloud: PointCloud, path) -> None:
    lines = [
        "ply",
        "format ascii 1.0",
        f"element vertex {len(cloud)}",
        "property double x",
        "property double y",
        "property double z",
        "end_header",
    ]
    for p in cloud.points:
        lines.append(f"{_fmt(p[0])} {_fmt(p[1])} {_fmt(p[2])}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_cloud_ply(path) -> PointCloud:
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines or lines[0].strip() != "ply":
        raise ParseError("not a PLY file (missing 'ply' magic)", line=1)
    count = None
    header_end = None
    for i, line in enumerate(lines[1:], start=2):
        tok = line.split()
        if not tok:
            continue
        if tok[0] == "format":
            if tok[1] != "ascii":
                raise ParseError("only ascii PLY is supported", line=i)
        elif tok[0] == "element":
            if tok[1] != "vertex":
                raise ParseError(f"unsupported element '{tok[1]}'", line=i)
            count = int(tok[2])
        elif tok[0] == "property":
            if tok[1] not in ("double", "float64", "float", "float32"):
                raise ParseError(f"unsupported property type '{tok[1]}'", line=i)
        elif tok[0] == "end_header":
            header_end = i
            break
    if count is None or header_end is None:
        raise ParseError("incomplete PLY header", line=len(lines))
    pts = np.zeros((count, 3))
    for j in range(count):
        lineno = header_end + j
        if lineno >= len(lines):
            raise ParseError("unexpected end of file in vertex list", line=len(lines))
        tok = lines[lineno].split()
        if len(tok) < 3:
            raise ParseError("vertex line must have 3 coordinates", line=lineno + 1)
        try:
            pts[j] = [float(tok[0]), float(tok[1]), float(tok[2])]
        except ValueError as exc:
            raise ParseError(f"bad coordinate: {exc}", line=lineno + 1) from exc
    return PointCloud(pts)


def save_mesh_obj(mesh: TriangleMesh, path) -> None:
    lines = []
    for v in mesh.vertices:
        lines.append(f"v {_fmt(v[0])} {_fmt(v[1])} {_fmt(v[2])}")
    for t in mesh.triangles:
        lines.append(f"f {t[0] + 1} {t[1] + 1} {t[2] + 1}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_mesh_obj(path) -> TriangleMesh:
    verts: list[list[float]] = []
    tris: list[list[int]] = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        tok = line.split()
        if not tok or tok[0].startswith("#"):
            continue
        if tok[0] == "v":
            if len(tok) < 4:
                raise ParseError("vertex record needs 3 coordinates", line=lineno)
            try:
                verts.append([float(tok[1]), float(tok[2]), float(tok[3])])
            except ValueError as exc:
                raise ParseError(f"bad vertex: {exc}", line=lineno) from exc
        elif tok[0] == "f":
            if len(tok) != 4:
                raise ParseError("only triangle faces are supported", line=lineno)
            try:
                # tolerate v/vt/vn syntax by taking the first index
                idx = [int(t.split("/")[0]) - 1 for t in tok[1:]]
            except ValueError as exc:
                raise ParseError(f"bad face: {exc}", line=lineno) from exc
            tris.append(idx)
        # other record types (vn, vt, o, g, usemtl...) are ignored
    return TriangleMesh(np.asarray(verts, dtype=float).reshape(-1, 3), np.asarray(tris, dtype=np.int64).reshape(-1, 3))
