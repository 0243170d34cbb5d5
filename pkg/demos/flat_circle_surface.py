"""A flat surface swept from a circle, and the constant-curvature line table.

Constant-angle lines give constant negative Gauss curvature:
K = -1/(1 + y0^2) for the x-parallel line at height y0 (so the vertical
plane over the x-axis has K = -1 exactly).  More surprisingly, the circle
x = r sin(s/r), y = -r cos(s/r) solves the zero-Gauss-curvature equation for
every radius: its swept surface is flat.
"""
import math
import os

import numpy as np

from sol3 import CurveState, circle_flat, flat_residual, gauss_curvature
from sol3.io import MeshGrid, curve_from_kind, surface_mesh, write_mesh_obj

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

print("Gauss curvature of x-parallel line surfaces:")
for y0 in (0.0, 0.5, 1.0, 2.0):
    k = gauss_curvature(CurveState(0.0, 0.0, y0, 0.0), 0.0)
    print(f"  y0 = {y0:4.1f}:  K = {k:+.12f}   (-1/(1+y0^2) = {-1/(1+y0**2):+.12f})")

print("\nflat circle family: residual of the K = 0 equation and K itself")
for r in (0.5, 1.0, 2.0):
    svals = np.linspace(0.0, 2.0 * math.pi * r, 13)
    worst_res = max(abs(flat_residual(*circle_flat(r, float(s)))) for s in svals)
    worst_k = max(abs(gauss_curvature(*circle_flat(r, float(s)))) for s in svals)
    print(f"  r = {r:3.1f}: max |residual| = {worst_res:.2e}, max |K| = {worst_k:.2e}")

grid = MeshGrid(0.0, 2.0 * math.pi, -1.0, 1.0, 49, 17)
vertices, faces = surface_mesh(curve_from_kind("circle", r=1.0), grid)
obj_path = os.path.join(OUT, "flat_circle.obj")
write_mesh_obj(obj_path, vertices, faces)
print(f"\nwrote {obj_path} ({len(vertices)} vertices, {len(faces)} triangles)")
print("(same as: sol3 mesh --kind circle --r 1 --grid=0:6.283185307179586:-1:1:49:17"
      f" --out {obj_path})")
