"""Batch command-line front end: ``lscopula <command> [--config PATH] ...``.

Exit codes: 0 when no asserted check fails, 1 when one does, 2 for config or
argument errors, 3 for IO errors.  Every run writes one JSON report
(``<command>.json``) atomically into ``--out``; ``"csv": true`` in the
config adds a curve dump with columns t, sf_x, sf_y, hazard_x, hazard_y.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import tempfile
from datetime import datetime, timezone

import numpy as np

from . import baselines, copulas
from ._version import __version__
from .config import COMMANDS, U64_MAX, ConfigError, resolve
from .errors import LSCopulaError
from .majorization import OrderedCone
from .mc_oracle import ks_compare, simulate_system
from .orders import OrderRelation, order_chain_check, order_verdict, quantile_union_grid
from .suite import run_suite
from .systems import SystemSpec, build
from .theorems import (
    TOLERANCE_PROFILES,
    Overall,
    RandomCaseConfig,
    Tolerances,
    catalog,
    check_case,
    conclusion_grid,
    counterexample_search,
    make_case,
)
from .verdict import Status

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3


class _IOFailure(Exception):
    pass


# -- helpers -----------------------------------------------------------------


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer") from None
    if not 0 <= value <= U64_MAX:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2**64 - 1]")
    return value


def _jobs(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("jobs must be positive")
    return value


def _plain(obj):
    """JSON-safe copy: numpy scalars unwrapped, NaN as null, infinities as strings."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False)


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc}") from exc


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        raise ConfigError("$", f"config is not UTF-8: {exc}") from exc
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"invalid JSON: {exc}") from exc


def _system(d: dict) -> SystemSpec:
    return build(
        baselines.from_dict(d["baseline"]),
        d["locations"],
        d["scales"],
        copulas.from_dict(d["dependence"]),
        d["structure"],
    )


def _tolerances(cfg: dict) -> Tolerances:
    base = TOLERANCE_PROFILES[cfg["tolerance_profile"]]
    levels = cfg["grid"]["levels"] or base.grid_levels
    return Tolerances(base.st, base.ratio, levels, cfg["grid"]["domain"])


def _curves(x, y, grid) -> str:
    t = grid.points
    with np.errstate(all="ignore"):
        cols = (t, x.sf(t), y.sf(t), x.hazard(t), y.hazard(t))
    buf = io.StringIO()
    writer = csv.writer(buf)  # RFC 4180: comma separated, CRLF line ends, minimal quoting
    writer.writerow(["t", "sf_x", "sf_y", "hazard_x", "hazard_y"])
    for row in zip(*cols):
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


# -- commands ----------------------------------------------------------------
# each returns (result payload, failed?, optional csv text)


def _run_check_order(cfg, tol: Tolerances, jobs: int):
    x, y = _system(cfg["x"]), _system(cfg["y"])
    grid = quantile_union_grid(x, y, tol.grid_levels)
    verdicts = {}
    for rel in cfg["relations"]:
        t = tol.st if rel == OrderRelation.ST.value else tol.ratio
        verdicts[rel] = order_verdict(x, y, rel, grid, tol=t).to_dict()
    chain = order_chain_check(x, y, grid)
    failed = any(verdicts[r]["status"] == Status.FAILS.value for r in cfg["assert"] if r in verdicts)
    failed |= any(chain.verdicts[r].status is Status.FAILS for r in cfg["assert"] if r not in verdicts)
    result = {
        "verdicts": verdicts,
        "asserted": list(cfg["assert"]),
        "chain_violations": [list(v) for v in chain.violations],
        "grid": {"count": grid.count, "strategy": grid.strategy},
    }
    return result, failed, _curves(x, y, grid) if cfg["csv"] else None


def _run_check_theorem(cfg, tol: Tolerances, jobs: int):
    case = make_case(
        cfg["theorem"],
        baselines.from_dict(cfg["F"]),
        baselines.from_dict(cfg["G"]),
        cfg["lam"],
        cfg["sigma"],
        cfg["mu"],
        cfg["xi"],
        copulas.from_dict(cfg["psi1"]),
        copulas.from_dict(cfg["psi2"]),
        None if cfg["cone"] is None else OrderedCone(cfg["cone"]),
        cfg["sub_case"],
        cfg["n1"],
        cfg["n2"],
    )
    report = check_case(case, tolerances=tol, interpretation=cfg["interpretation"], seed=cfg["seed"])
    text = None
    if cfg["csv"]:
        text = _curves(case.x_spec, case.y_spec, conclusion_grid(case, tol.grid_levels, tol.domain))
    return report.to_dict(), report.overall is Overall.REFUTED, text


def _run_suite(cfg, tol: Tolerances, jobs: int):
    entries = run_suite(
        cfg["theorems"], cfg["trials"], cfg["seed"], tol, jobs, cfg["alternatives"],
        tuple(cfg["sizes"]), tuple(tuple(b) for b in cfg["blocks"]),
    )
    out = [e.to_dict() for e in entries]
    failed = any(e.counts[Overall.REFUTED.value] for e in entries)
    totals = {k: sum(e.counts[k] for e in entries) for k in entries[0].counts} if entries else {}
    return {"entries": out, "totals": totals}, failed, None


def _run_search(cfg, tol: Tolerances, jobs: int):
    config = RandomCaseConfig(interpretation=cfg["interpretation"])
    res = counterexample_search(cfg["theorem"], cfg["trials"], cfg["seed"], cfg["mutate"], cfg["n"], tol, config)
    # a find among hypothesis-valid cases contradicts the catalog entry; mutation finds are expected
    failed = res.found and cfg["mutate"] is None
    result = res.to_dict()
    result["contradiction"] = bool(failed)
    return result, failed, None


def _run_simulate(cfg, tol: Tolerances, jobs: int):
    spec = _system(cfg["system"])
    sim = simulate_system(spec, cfg["count"], cfg["seed"])
    ks = ks_compare(sim, alpha=cfg["alpha"])
    q = np.quantile(sim.lifetimes, [0.05, 0.25, 0.5, 0.75, 0.95])
    result = {
        "count": sim.count,
        "mean": sim.mean,
        "stderr": sim.stderr,
        "quantiles": {"0.05": q[0], "0.25": q[1], "0.5": q[2], "0.75": q[3], "0.95": q[4]},
        "ks": ks.to_dict(),
    }
    return result, not ks.passed, None


def _run_catalog(cfg, tol: Tolerances, jobs: int):
    return {"entries": [d.describe() for d in catalog()]}, False, None


RUNNERS = {
    "check-order": _run_check_order,
    "check-theorem": _run_check_theorem,
    "suite": _run_suite,
    "search": _run_search,
    "simulate": _run_simulate,
    "catalog": _run_catalog,
}


# -- entry point -------------------------------------------------------------


def content_hash(report: dict) -> str:
    """SHA-256 of the canonical report without its metadata and hash fields."""
    body = {k: v for k, v in report.items() if k not in ("metadata", "content_sha256")}
    return hashlib.sha256(_canonical(body).encode("utf-8")).hexdigest()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lscopula", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        p = sub.add_parser(name, help=f"run {name}")
        p.add_argument("--config", metavar="PATH", help="UTF-8 JSON run configuration")
        p.add_argument("--seed", type=_seed, metavar="U64", help="overrides the config seed")
        p.add_argument("--out", metavar="DIR", default=".", help="report directory (default: .)")
        p.add_argument("--jobs", type=_jobs, default=1, metavar="N", help="worker processes for suite runs")
        p.add_argument("--tolerance-profile", choices=sorted(TOLERANCE_PROFILES), help="overrides the config profile")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = _load_config(args.config)
        if isinstance(raw, dict):
            if args.seed is not None:
                raw["seed"] = args.seed
            if args.tolerance_profile is not None:
                raw["tolerance_profile"] = args.tolerance_profile
        cfg = resolve(args.command, raw)
        tol = _tolerances(cfg)
    except ConfigError as exc:
        print(f"config error at {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _IOFailure as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        result, failed, curves = RUNNERS[args.command](cfg, tol, args.jobs)
    except LSCopulaError as exc:
        # values that pass the schema but not a constructor (e.g. Gumbel theta < 1)
        print(f"config error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    code = EXIT_FAIL if failed else EXIT_OK
    report = _plain(
        {
            "command": args.command,
            "version": __version__,
            "seed": cfg["seed"],
            "config": cfg,
            "status": "fail" if failed else "ok",
            "exit_code": code,
            "result": result,
        }
    )
    report["content_sha256"] = content_hash(report)
    report["metadata"] = {"timestamp": datetime.now(timezone.utc).isoformat(), "jobs": args.jobs}
    path = os.path.join(args.out, f"{args.command}.json")
    try:
        _write_atomic(path, _canonical(report) + "\n")
        if curves is not None:
            _write_atomic(os.path.join(args.out, f"{args.command}-curves.csv"), curves)
    except _IOFailure as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"{args.command}: {report['status']} -> {path}")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
