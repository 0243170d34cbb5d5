"""Nonzero constant mean curvature: spiralling profiles and the closed orbit.

With H fixed and the launch horizontal from (0, y0), the curve leaves the
y-axis, turns, and recrosses it.  Tracking the first point with horizontal
tangent as y0 varies shows its x-coordinate crossing zero: at the root the
generating curve closes up into a simple loop (here y0 ~ 0.6422 for H = 1),
symmetric across both diagonals.  The swept surface is a cylinder-like tube
over that loop.
"""
import math
import os

import numpy as np

from sol3 import (
    InitialCondition,
    OdeSettings,
    closed_curve_search,
    first_return,
    integrate,
    integrate_forward,
    mean_curvature,
    scan_bracket,
)
from sol3.io import MeshGrid, surface_mesh, write_curve_csv, write_mesh_obj

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

# Two open profiles for contrast: H = 1 from (0, 2) and H = 2 from (0, 1).
for tag, H, y0 in (("h1_y2", 1.0, 2.0), ("h2_y1", 2.0, 1.0)):
    traj = integrate(InitialCondition(0.0, y0, 0.0), OdeSettings(max_s=6.0), H=H)
    path = os.path.join(OUT, f"cmc_{tag}.csv")
    write_curve_csv(path, traj)
    print(f"wrote {path}  (sol3 integrate --y0 {y0} --H {H} --max-s 6 --out ...)")

# How the first horizontal-tangent return moves with y0, at H = 1.
print("\nfirst return with horizontal tangent, H = 1:")
print(f"{'y0':>8} {'s1':>10} {'x(s1)':>12} {'y(s1)':>12}")
for y0 in (0.125, 0.25, 0.5, 0.75):
    traj = integrate_forward(InitialCondition(0.0, y0, 0.0),
                             OdeSettings(max_s=10.0), H=1.0)
    s1, state = first_return(traj)
    print(f"{y0:8.3f} {s1:10.5f} {state.x:12.7f} {state.y:12.7f}")
print("x(s1) grows through zero: the loop closes at the root.")

# The closed generating curve at H = 1 and its swept surface.
result = closed_curve_search(1.0, (0.125, 0.75))
print(f"\nH = 1 closed curve: y0* = {result.y0_star:.7f}, period s1 = {result.s1:.7f}")
print(f"closure residuals: x {result.residual_x:.1e}, y {result.residual_y:.1e} "
      f"({result.iterations} shooting iterations)")
orbit = result.trajectory
print("max |H - 1| along the orbit:",
      max(abs(mean_curvature(st, tp) - 1.0) for st, tp in orbit.samples))
print("(same as: sol3 shoot --H 1 --bracket 0.125:0.75 --out shoot.json)")

csv_path = os.path.join(OUT, "cmc_h1_closed.csv")
write_curve_csv(csv_path, orbit)
print(f"wrote {csv_path}")

grid = MeshGrid(0.0, result.s1, -1.0, 1.0, 49, 21)
vertices, faces = surface_mesh(orbit.state_at, grid)
obj_path = os.path.join(OUT, "cmc_h1_closed.obj")
write_mesh_obj(obj_path, vertices, faces)
print(f"wrote {obj_path} ({len(vertices)} vertices)")

# Same search at H = 2, bracket found by scanning.
bracket = scan_bracket(2.0)
result2 = closed_curve_search(2.0, bracket)
print(f"\nH = 2 closed curve: y0* = {result2.y0_star:.7f}, period s1 = {result2.s1:.7f}"
      f"  (smaller loop than H = 1)")
