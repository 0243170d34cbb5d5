"""Command-line interface: integrate | classify | shoot | mesh | verify | sweep.

Exit codes are part of the contract: 0 success, 1 integration failure,
2 shooting-bracket failure, 3 closure-certificate failure, 64 usage error.
Identical arguments produce byte-identical output files.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import analysis, io, verify
from .ode import InitialCondition, IntegrationError, OdeSettings, integrate

EXIT_OK = 0
EXIT_INTEGRATION = 1
EXIT_BRACKET = 2
EXIT_CLOSURE = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    ic: InitialCondition
    settings: OdeSettings
    H: Optional[float] = None
    out: Optional[str] = None
    grid: Optional[io.MeshGrid] = None
    seed: int = 42
    samples: int = 100
    kind: Optional[str] = None
    r: float = 1.0
    bracket: Optional[tuple[float, float]] = None
    tail_fraction: float = analysis.DEFAULT_TAIL_FRACTION
    settle_threshold: float = analysis.DEFAULT_SETTLE_THRESHOLD
    theta0_range: Optional[tuple[float, float, int]] = None
    out_dir: Optional[str] = None
    workers: int = 1
    snap: bool = True


def _parse_grid(text: str) -> io.MeshGrid:
    parts = text.split(":")
    if len(parts) != 6:
        raise argparse.ArgumentTypeError("grid must be sMIN:sMAX:tMIN:tMAX:NS:NT")
    try:
        return io.MeshGrid(float(parts[0]), float(parts[1]), float(parts[2]),
                           float(parts[3]), int(parts[4]), int(parts[5]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_bracket(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("bracket must be LO:HI")
    return float(parts[0]), float(parts[1])


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("range must be START:STOP:COUNT")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _add_common(sub: argparse.ArgumentParser, with_ic: bool = True):
    if with_ic:
        sub.add_argument("--x0", type=float, default=0.0)
        sub.add_argument("--y0", type=float, default=0.0)
        sub.add_argument("--theta0", type=float, default=0.0)
    sub.add_argument("--max-s", type=float, default=10.0)
    sub.add_argument("--abs-tol", type=float, default=1e-10)
    sub.add_argument("--rel-tol", type=float, default=1e-10)
    sub.add_argument("--max-step", type=float, default=1e-2)
    sub.add_argument("--out", type=str, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sol3", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_int = subs.add_parser("integrate", help="integrate a generating curve to CSV")
    _add_common(p_int)
    p_int.add_argument("--H", type=float, default=None,
                       help="constant mean curvature target (omit for minimal)")
    p_int.add_argument("--no-snap", action="store_true",
                       help="disable exact-line routing of constant-angle starts")

    p_cls = subs.add_parser("classify", help="classify a minimal generating curve")
    _add_common(p_cls)
    p_cls.add_argument("--tail-fraction", type=float,
                       default=analysis.DEFAULT_TAIL_FRACTION)
    p_cls.add_argument("--settle-threshold", type=float,
                       default=analysis.DEFAULT_SETTLE_THRESHOLD)

    p_shoot = subs.add_parser("shoot", help="search the closed CMC generating curve")
    _add_common(p_shoot, with_ic=False)
    p_shoot.add_argument("--H", type=float, required=True)
    p_shoot.add_argument("--bracket", type=_parse_bracket, default=None,
                         help="y0 bracket LO:HI (scanned automatically if omitted)")

    p_mesh = subs.add_parser("mesh", help="export a swept surface as OBJ")
    _add_common(p_mesh)
    p_mesh.add_argument("--H", type=float, default=None)
    p_mesh.add_argument("--kind", type=str, default=None,
                        choices=["I", "II", "III", "IV", "circle"],
                        help="use a closed-form curve instead of integrating")
    p_mesh.add_argument("--r", type=float, default=1.0, help="circle radius")
    p_mesh.add_argument("--grid", type=_parse_grid, required=True,
                        metavar="sMIN:sMAX:tMIN:tMAX:NS:NT")

    p_ver = subs.add_parser("verify", help="frame-vs-oracle curvature verification")
    p_ver.add_argument("--samples", type=int, default=100)
    p_ver.add_argument("--seed", type=int, default=42)
    p_ver.add_argument("--out", type=str, default=None)

    p_sweep = subs.add_parser("sweep", help="classify over a theta0 range in parallel")
    _add_common(p_sweep)
    p_sweep.add_argument("--theta0-range", type=_parse_range, required=True,
                         metavar="START:STOP:COUNT")
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.add_argument("--out-dir", type=str, default=None,
                         help="directory for per-curve CSV files")
    p_sweep.add_argument("--tail-fraction", type=float,
                         default=analysis.DEFAULT_TAIL_FRACTION)
    p_sweep.add_argument("--settle-threshold", type=float,
                         default=analysis.DEFAULT_SETTLE_THRESHOLD)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    settings = OdeSettings(
        abs_tol=getattr(args, "abs_tol", 1e-10),
        rel_tol=getattr(args, "rel_tol", 1e-10),
        max_step=getattr(args, "max_step", 1e-2),
        max_s=getattr(args, "max_s", 10.0),
    )
    ic = InitialCondition(getattr(args, "x0", 0.0), getattr(args, "y0", 0.0),
                          getattr(args, "theta0", 0.0))
    return RunConfig(
        command=args.command,
        ic=ic,
        settings=settings,
        H=getattr(args, "H", None),
        out=getattr(args, "out", None),
        grid=getattr(args, "grid", None),
        seed=getattr(args, "seed", 42),
        samples=getattr(args, "samples", 100),
        kind=getattr(args, "kind", None),
        r=getattr(args, "r", 1.0),
        bracket=getattr(args, "bracket", None),
        tail_fraction=getattr(args, "tail_fraction", analysis.DEFAULT_TAIL_FRACTION),
        settle_threshold=getattr(args, "settle_threshold",
                                 analysis.DEFAULT_SETTLE_THRESHOLD),
        theta0_range=getattr(args, "theta0_range", None),
        out_dir=getattr(args, "out_dir", None),
        workers=getattr(args, "workers", 1),
        snap=not getattr(args, "no_snap", False),
    )


def _emit(report: dict, out: Optional[str]) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out:
        io.atomic_write_text(out, text)
    else:
        sys.stdout.write(text)


def cmd_integrate(cfg: RunConfig) -> int:
    if cfg.out is None:
        print("integrate: --out PATH is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        traj = integrate(cfg.ic, cfg.settings, H=cfg.H, snap=cfg.snap)
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    io.write_curve_csv(cfg.out, traj)
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    try:
        traj = integrate(cfg.ic, cfg.settings, H=None)
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    result = analysis.classify_minimal(traj, cfg.tail_fraction, cfg.settle_threshold)
    _emit(_classification_dict(result), cfg.out)
    return EXIT_OK


def _classification_dict(result: analysis.Classification) -> dict:
    return {
        "kind": result.kind.value,
        "inflection_s": list(result.inflection_s),
        "asymptotes": [
            {"axis": line.axis.value, "offset": line.offset,
             "uncertainty": line.uncertainty}
            for line in result.asymptotes
        ],
    }


def cmd_shoot(cfg: RunConfig) -> int:
    if cfg.H is None or cfg.H == 0.0:
        print("shoot: --H must be nonzero", file=sys.stderr)
        return EXIT_USAGE
    try:
        bracket = cfg.bracket
        if bracket is None:
            bracket = analysis.scan_bracket(cfg.H, cfg.settings,
                                            horizon=max(cfg.settings.max_s, 40.0))
        result = analysis.closed_curve_search(
            cfg.H, bracket, cfg.settings,
            horizon=max(cfg.settings.max_s, 40.0))
    except analysis.BracketError as exc:
        _emit({"error": "bracket", "message": str(exc),
               "residual_lo": exc.residual_lo, "residual_hi": exc.residual_hi},
              cfg.out)
        return EXIT_BRACKET
    except analysis.ClosureError as exc:
        _emit({"error": "closure", "message": str(exc), "y0_star": exc.y0_star,
               "s1": exc.s1, "residual_y": exc.residual_y}, cfg.out)
        return EXIT_CLOSURE
    _emit({
        "H": cfg.H,
        "y0_star": result.y0_star,
        "s1": result.s1,
        "residual_x": result.residual_x,
        "residual_y": result.residual_y,
        "iterations": result.iterations,
    }, cfg.out)
    return EXIT_OK


def cmd_mesh(cfg: RunConfig) -> int:
    if cfg.out is None:
        print("mesh: --out PATH is required", file=sys.stderr)
        return EXIT_USAGE
    grid = cfg.grid
    if cfg.kind is not None:
        curve = io.curve_from_kind(cfg.kind, cfg.ic.x0, cfg.ic.y0, cfg.r)
    else:
        span = max(abs(grid.s_min), abs(grid.s_max))
        settings = OdeSettings(cfg.settings.abs_tol, cfg.settings.rel_tol,
                               cfg.settings.max_step, max(span, 1e-6),
                               cfg.settings.event_tol)
        try:
            traj = integrate(cfg.ic, settings, H=cfg.H)
        except IntegrationError as exc:
            print(f"integration failed: {exc}", file=sys.stderr)
            return EXIT_INTEGRATION
        curve = traj.state_at
    vertices, faces = io.surface_mesh(curve, grid)
    io.write_mesh_obj(cfg.out, vertices, faces)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    report = verify.run_verification(cfg.samples, cfg.seed)
    _emit(report, cfg.out)
    return EXIT_OK if report["passed"] else 1


def _sweep_task(task: tuple) -> dict:
    x0, y0, theta0, settings_tuple, tail, settle, csv_path = task
    settings = OdeSettings(*settings_tuple)
    traj = integrate(InitialCondition(x0, y0, theta0), settings, H=None)
    result = analysis.classify_minimal(traj, tail, settle)
    if csv_path is not None:
        io.write_curve_csv(csv_path, traj)
    entry = _classification_dict(result)
    entry["theta0"] = theta0
    return entry


def cmd_sweep(cfg: RunConfig) -> int:
    start, stop, count = cfg.theta0_range
    if count < 1:
        print("sweep: COUNT must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    thetas = [start + (stop - start) * i / max(count - 1, 1) for i in range(count)]
    if cfg.out_dir is not None:
        os.makedirs(cfg.out_dir, exist_ok=True)
    settings_tuple = (cfg.settings.abs_tol, cfg.settings.rel_tol,
                      cfg.settings.max_step, cfg.settings.max_s,
                      cfg.settings.event_tol)
    tasks = []
    for i, theta0 in enumerate(thetas):
        csv_path = (os.path.join(cfg.out_dir, f"curve_{i:03d}.csv")
                    if cfg.out_dir is not None else None)
        tasks.append((cfg.ic.x0, cfg.ic.y0, theta0, settings_tuple,
                      cfg.tail_fraction, cfg.settle_threshold, csv_path))
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            entries = list(pool.map(_sweep_task, tasks))
    else:
        entries = [_sweep_task(t) for t in tasks]
    _emit({"x0": cfg.ic.x0, "y0": cfg.ic.y0, "curves": entries}, cfg.out)
    return EXIT_OK


_HANDLERS = {
    "integrate": cmd_integrate,
    "classify": cmd_classify,
    "shoot": cmd_shoot,
    "mesh": cmd_mesh,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    try:
        return _HANDLERS[cfg.command](cfg)
    except ValueError as exc:
        print(f"sol3 {cfg.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sol3 {cfg.command}: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION


if __name__ == "__main__":
    sys.exit(main())
