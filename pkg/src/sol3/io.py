"""Persistence: curve CSV files, surface meshes, OBJ export.

All floats are serialized with `repr`, i.e. the shortest string that
round-trips exactly, so identical inputs produce byte-identical files and
files parse back to the exact binary values.  Writes go through a temp file
and an atomic rename; failed commands leave nothing behind.
"""
from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .ode import Trajectory, circle_flat, explicit_solution
from .surface import CurveState, curvature_report, immersion, unit_normal

CSV_HEADER = "s,x,y,theta,theta_prime,H,K"


@dataclass(frozen=True)
class CurveRecord:
    s: float
    x: float
    y: float
    theta: float
    theta_prime: float
    H: float
    K: float


@dataclass(frozen=True)
class MeshGrid:
    """Sampling rectangle for the swept surface; both counts must be >= 2."""

    s_min: float
    s_max: float
    t_min: float
    t_max: float
    n_s: int
    n_t: int

    def __post_init__(self):
        if self.n_s < 2 or self.n_t < 2:
            raise ValueError("mesh grid needs at least 2 samples per direction")
        if not (self.s_max > self.s_min and self.t_max > self.t_min):
            raise ValueError("mesh grid extents must be increasing")


def atomic_write_text(path: str, text: str) -> None:
    """Write text to path via a same-directory temp file and atomic rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def trajectory_records(traj: Trajectory) -> list[CurveRecord]:
    """One record per accepted step, with curvatures evaluated per sample."""
    records = []
    for state, theta_prime in traj.samples:
        rep = curvature_report(state, theta_prime)
        records.append(CurveRecord(state.s, state.x, state.y, state.theta,
                                   theta_prime, rep.H, rep.K))
    return records


def format_curve_csv(records: list[CurveRecord]) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join(repr(v) for v in
                              (r.s, r.x, r.y, r.theta, r.theta_prime, r.H, r.K)))
    return "\n".join(lines) + "\n"


def write_curve_csv(path: str, traj: Trajectory) -> None:
    atomic_write_text(path, format_curve_csv(trajectory_records(traj)))


def read_curve_csv(path: str) -> list[CurveRecord]:
    with open(path, "r") as handle:
        header = handle.readline().rstrip("\n")
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        records = []
        for line in handle:
            parts = line.rstrip("\n").split(",")
            if len(parts) != 7:
                raise ValueError(f"malformed CSV row {line!r}")
            records.append(CurveRecord(*(float(p) for p in parts)))
    return records


def curve_from_kind(kind: str, x0: float = 0.0, y0: float = 0.0,
                    r: float = 1.0) -> Callable[[float], CurveState]:
    """Closed-form curve evaluators for mesh generation without integration."""
    if kind in ("I", "II", "III", "IV"):
        return lambda s: explicit_solution(kind, x0, y0, s)
    if kind == "circle":
        return lambda s: circle_flat(r, s)[0]
    raise ValueError(f"unknown explicit curve kind {kind!r}")


def surface_mesh(
    curve: Callable[[float], CurveState],
    grid: MeshGrid,
) -> tuple[np.ndarray, np.ndarray]:
    """Vertex grid and triangle list of the swept surface over the grid.

    Vertices are psi(s_i, t_j) in row-major order (s slowest).  Quads are
    split into two triangles, wound so Euclidean face normals agree with the
    surface normal at the grid center.
    """
    svals = np.linspace(grid.s_min, grid.s_max, grid.n_s)
    tvals = np.linspace(grid.t_min, grid.t_max, grid.n_t)
    states = [curve(float(s)) for s in svals]
    vertices = np.empty((grid.n_s * grid.n_t, 3))
    for i, state in enumerate(states):
        for j, t in enumerate(tvals):
            p = immersion(state, float(t))
            vertices[i * grid.n_t + j] = (p.x, p.y, p.z)

    faces = []
    for i in range(grid.n_s - 1):
        for j in range(grid.n_t - 1):
            a = i * grid.n_t + j
            b = (i + 1) * grid.n_t + j
            c = (i + 1) * grid.n_t + j + 1
            d = i * grid.n_t + j + 1
            faces.append((a, b, c))
            faces.append((a, c, d))
    faces_arr = np.array(faces, dtype=int)

    if _center_alignment(states, svals, tvals, vertices, faces_arr, grid) < 0.0:
        faces_arr = faces_arr[:, ::-1]
    return vertices, faces_arr


def _center_alignment(states, svals, tvals, vertices, faces, grid) -> float:
    """Sign of (Euclidean face normal) . (surface normal in coordinates) at center."""
    ic, jc = (grid.n_s - 1) // 2, (grid.n_t - 1) // 2
    state, t = states[ic], float(tvals[jc])
    n_frame = unit_normal(state)
    z = t
    n_coords = np.array([n_frame.a1 * math.exp(-z), n_frame.a2 * math.exp(z), n_frame.a3])
    face = faces[2 * (ic * (grid.n_t - 1) + jc)]
    v0, v1, v2 = vertices[face[0]], vertices[face[1]], vertices[face[2]]
    return float(np.cross(v1 - v0, v2 - v0) @ n_coords)


def format_obj(vertices: np.ndarray, faces: np.ndarray) -> str:
    lines = []
    for v in vertices:
        lines.append(f"v {float(v[0])!r} {float(v[1])!r} {float(v[2])!r}")
    for f in faces:
        lines.append(f"f {int(f[0]) + 1} {int(f[1]) + 1} {int(f[2]) + 1}")
    return "\n".join(lines) + "\n"


def write_mesh_obj(path: str, vertices: np.ndarray, faces: np.ndarray) -> None:
    atomic_write_text(path, format_obj(vertices, faces))


def read_obj(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Parse the v/f subset written by `write_mesh_obj`."""
    verts, faces = [], []
    with open(path, "r") as handle:
        for line in handle:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                verts.append([float(p) for p in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(p) - 1 for p in parts[1:4]])
    return np.array(verts), np.array(faces, dtype=int)
