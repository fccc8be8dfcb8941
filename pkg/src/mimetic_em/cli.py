"""Command-line entry point.

::

    mimetic-em run --preset sullivan-1d --out out/1d
    mimetic-em run --config scenario.json --snapshot-every 25
    mimetic-em ops --k 2 --m 4 --dx 1 --dump grad
    mimetic-em verify --k 2 --m 200

Exit codes: 0 success, 1 config error, 2 runtime or solver error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from .config import ConfigError, OpsDump, RunConfig, parse_config, preset, config_to_dict
from .grids import StaggeredGrid1D, StaggeredGrid2D
from .maxwell1d import Run1DResult, run_1d, run_yee_1d
from .maxwell2d import Scenario2D, physical_b, pml_oracle_comparison, run_2d
from .operators import divergence, gradient, laplacian, verify_identities
from .snapshots import SnapshotRecord, write_snapshot

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


def _write_1d(result: Run1DResult, out: Path) -> list[str]:
    files = []
    for snap in result.snapshots:
        recs = [
            SnapshotRecord(snap.step, "ex", "1d-scalar", (snap.ex.size,), snap.ex),
            SnapshotRecord(snap.step, "hy", "1d-edge", (snap.hy.size,), snap.hy),
        ]
        files.append(write_snapshot(out / f"snap_{snap.step:06d}.txt", recs).name)
    return files


def _records_2d(step, e, b, grid: StaggeredGrid2D) -> list[SnapshotRecord]:
    bx, by = physical_b(b, grid)
    return [
        SnapshotRecord(step, "e", "2d-scalar", grid.scalar_shape, e),
        SnapshotRecord(step, "bx", "2d-edge-y", grid.y_edge_shape, bx),
        SnapshotRecord(step, "by", "2d-edge-x", grid.x_edge_shape, by),
    ]


def _ops_for(params: OpsDump):
    if params.n is None:
        grid = StaggeredGrid1D(params.m, params.dx)
    else:
        grid = StaggeredGrid2D(params.m, params.n, params.dx, params.dy)
    build = {"grad": gradient, "div": divergence, "lap": laplacian}[params.dump]
    return grid, build(params.k, grid)


def execute(cfg: RunConfig, out: Path | None = None) -> dict:
    """Run ``cfg``, write snapshots and ``manifest.json``, return the manifest."""
    out = Path(cfg.out if out is None else out)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    p = cfg.params
    manifest: dict = {"config": config_to_dict(replace(cfg, out=str(out)))}
    residuals: dict = {}

    if cfg.kind in ("mimetic1d", "yee1d"):
        runner = run_1d if cfg.kind == "mimetic1d" else run_yee_1d
        result = runner(p)
        files = _write_1d(result, out)
        manifest["courant"] = p.courant
        if cfg.kind == "mimetic1d":
            residuals = verify_identities(p.k, StaggeredGrid1D(p.m, 1.0)).residuals
    elif cfg.kind == "mimetic2d":
        result = run_2d(p)
        grid = p.grid
        files = [
            write_snapshot(
                out / f"snap_{s.step:06d}.txt", _records_2d(s.step, s.e, s.b, grid)
            ).name
            for s in result.snapshots
        ]
        manifest["courant"] = p.dt / min(p.dx, p.dy)
        manifest["max_abs_e"] = max(result.max_abs_e)
        residuals = verify_identities(p.k, grid).residuals
    elif cfg.kind == "pml-oracle":
        cmp_ = pml_oracle_comparison(p, cfg.margin)
        grid = p.grid
        files = []
        for tag, run in (("default", cmp_.default), ("oracle", cmp_.oracle)):
            g = run.scenario.grid
            f = run.final
            files.append(
                write_snapshot(
                    out / f"{tag}_{f.n:06d}.txt", _records_2d(f.n, f.e, f.b, g)
                ).name
            )
        manifest["courant"] = p.dt / min(p.dx, p.dy)
        manifest["max_abs_interior_diff"] = cmp_.max_abs_diff
        residuals = verify_identities(p.k, grid).residuals
    else:  # ops-dump
        grid, op = _ops_for(p)
        name = f"{p.dump}.txt"
        (out / name).write_text(op.dump(), encoding="ascii")
        files = [name]
        manifest["shape"] = list(op.shape)
        residuals = verify_identities(p.k, grid).residuals

    manifest["identity_residuals"] = residuals
    manifest["files"] = files
    manifest["wall_time_s"] = time.perf_counter() - t0
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return manifest


def _cmd_run(args) -> int:
    if (args.preset is None) == (args.config is None):
        raise ConfigError("give exactly one of --preset or --config")
    if args.preset is not None:
        cfg = preset(args.preset)
    else:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        cfg = parse_config(text)
    if args.snapshot_every is not None:
        if args.snapshot_every < 1:
            raise ConfigError("--snapshot-every must be >= 1")
        p = cfg.params
        if isinstance(p, Scenario2D):
            steps = tuple(sorted(set(range(0, p.steps + 1, args.snapshot_every)) | {p.steps}))
            cfg = replace(cfg, params=replace(p, snapshot_steps=steps))
        elif hasattr(p, "snapshot_every"):
            cfg = replace(cfg, params=replace(p, snapshot_every=args.snapshot_every))
    manifest = execute(cfg, Path(args.out) if args.out else None)
    print(f"wrote {len(manifest['files'])} files to {manifest['config']['out']}")
    return EXIT_OK


def _cmd_ops(args) -> int:
    try:
        params = OpsDump(args.k, args.m, args.dx, args.n, args.dy if args.n is not None else None, args.dump)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _, op = _ops_for(params)
    sys.stdout.write(op.dump())
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        if args.n is None:
            grid = StaggeredGrid1D(args.m, args.dx)
        else:
            grid = StaggeredGrid2D(args.m, args.n, args.dx, args.dy)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    report = verify_identities(args.k, grid)
    for name, r in report.residuals.items():
        print(f"{name:16s} {r:.3e} {'ok' if r <= report.tol else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_RUNTIME


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mimetic-em", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a scenario and write snapshots")
    r.add_argument("--preset")
    r.add_argument("--config")
    r.add_argument("--out")
    r.add_argument("--snapshot-every", type=int)
    r.set_defaults(func=_cmd_run)

    o = sub.add_parser("ops", help="dump an operator as coordinate triplets")
    o.add_argument("--k", type=int, default=2)
    o.add_argument("--m", type=int, required=True)
    o.add_argument("--dx", type=float, default=1.0)
    o.add_argument("--n", type=int)
    o.add_argument("--dy", type=float, default=1.0)
    o.add_argument("--dump", choices=("grad", "div", "lap"), required=True)
    o.set_defaults(func=_cmd_ops)

    v = sub.add_parser("verify", help="check the discrete identities")
    v.add_argument("--k", type=int, default=2)
    v.add_argument("--m", type=int, required=True)
    v.add_argument("--n", type=int)
    v.add_argument("--dx", type=float, default=1.0)
    v.add_argument("--dy", type=float, default=1.0)
    v.set_defaults(func=_cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, NotImplementedError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, ArithmeticError, FloatingPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
