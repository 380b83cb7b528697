"""Command line entry point and scenario output writer.

Commands::

    dmac simulate --config FILE --out DIR [--seed S] [--controllers minimax,oracle,nominal]
    dmac paper-preset --out DIR [--seed S]
    dmac admissible --b B --degree D

On failure a single JSON line ``{"error": <category>, "message": ...}`` goes
to stderr and the exit status is nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import engine
from .config import config_to_dict, paper_preset, parse_config, serialize_config
from .disturbance import realize
from .errors import BlowUpError, DmacError
from .metrics import compute_metrics
from .topology import admissible_interval

EXIT_CODES = {
    "config": 2,
    "topology": 2,
    "admissibility": 3,
    "capacity": 4,
    "disturbance": 5,
    "blowup": 6,
    "io": 7,
    "error": 1,
}


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _json_float(v):
    if v is None:
        return None
    return float(v)


@dataclass
class OutputBundle:
    directory: Path
    trajectory: Path
    summary: Path
    plot_data: list[Path] = field(default_factory=list)
    status: str = "ok"


def write_trajectory(path: Path, records: dict) -> int:
    rows = 0
    with open(path, "w", newline="\n") as fh:
        fh.write("t,node,controller,x,u,s,w,a_selected\n")
        for name, rec in records.items():
            for t in range(rec.horizon + 1):
                for i in range(rec.node_count):
                    a = "" if rec.a_selected is None else _fmt(rec.a_selected[t, i])
                    fh.write(
                        f"{t},{i + 1},{name},{_fmt(rec.x[t, i])},{_fmt(rec.u[t, i])},"
                        f"{_fmt(rec.s[t, i])},{_fmt(rec.w[t, i])},{a}\n"
                    )
                    rows += 1
    return rows


def _write_wide(path: Path, table: np.ndarray) -> None:
    n = table.shape[1]
    with open(path, "w", newline="\n") as fh:
        fh.write("t," + ",".join(f"node_{i + 1}" for i in range(n)) + "\n")
        for t, row in enumerate(table):
            fh.write(f"{t}," + ",".join(_fmt(v) for v in row) + "\n")


def _summary(config, records, metrics, status, failure=None) -> dict:
    per = {}
    for name, m in metrics.controllers.items():
        per[name] = {
            "steps": int(records[name].horizon),
            "cumulative_cost": _json_float(m.cost[-1]),
            "disturbance_energy": _json_float(m.energy[-1]),
            "gain_ratio": _json_float(m.gain_ratio),
            "max_abs_state": _json_float(m.max_abs_state),
        }
        if m.identification_times is not None:
            per[name]["identification_times"] = m.identification_times
    gaps = {}
    for key, gap in metrics.gaps.items():
        k = min(10, gap.shape[0])
        gaps[key] = {
            "mean_first_10": _json_float(np.mean(gap[:k])),
            "mean_last_10": _json_float(np.mean(gap[-k:])),
            "max": _json_float(np.max(gap)),
        }
    doc = {
        "status": status,
        "config": config_to_dict(config),
        "true_a": [float(a) for a in config.models.true_a],
        "controllers": per,
        "gaps": gaps,
    }
    if failure is not None:
        doc["failure"] = failure
    return doc


def run_scenario(config, out_dir) -> OutputBundle:
    """Run every selected controller and write the output bundle to ``out_dir``.

    Files: ``trajectory.csv``, ``summary.json``, ``config.json``, one
    ``states_<controller>.csv`` per controller and ``gap_<a>_<b>.csv`` for the
    minimax/oracle and nominal/oracle pairs.  A blow-up still writes whatever
    was simulated, marks ``status`` as ``"blowup"`` and re-raises.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise _IOFailure(f"cannot create output directory {str(out)!r}: {exc}") from exc

    config.validate()
    w = realize(config.disturbance, config.horizon, config.topology.node_count)
    records = {}
    failure = None
    error = None
    for name in config.controllers:
        try:
            records[name] = engine.simulate(
                config.topology, config.models, w, config.initial_state, name, config.nominal
            )
        except BlowUpError as exc:
            error = exc
            failure = {"controller": name, "step": exc.step, "node": exc.node + 1, "message": str(exc)}
            if exc.partial is not None:
                records[name] = exc.partial
            break

    if error is None:
        metrics = compute_metrics(records, config.models)
    else:
        # a partial record is shorter than the others; skip pairwise gaps
        complete = {k: r for k, r in records.items() if k != failure["controller"]}
        metrics = compute_metrics(complete, config.models)
        partial = compute_metrics({failure["controller"]: records[failure["controller"]]}, config.models)
        metrics.controllers.update(partial.controllers)
    status = "ok" if error is None else "blowup"

    bundle = OutputBundle(out, out / "trajectory.csv", out / "summary.json", status=status)
    try:
        write_trajectory(bundle.trajectory, records)
        (out / "config.json").write_text(serialize_config(config) + "\n")
        for name, rec in records.items():
            p = out / f"states_{name}.csv"
            _write_wide(p, rec.x)
            bundle.plot_data.append(p)
        for key, gap in metrics.gaps.items():
            p = out / f"gap_{key.replace('-', '_')}.csv"
            _write_wide(p, gap)
            bundle.plot_data.append(p)
        summary = _summary(config, records, metrics, status, failure)
        bundle.summary.write_text(json.dumps(summary, indent=2) + "\n")
    except OSError as exc:
        raise _IOFailure(f"cannot write outputs to {str(out)!r}: {exc}") from exc
    if error is not None:
        raise error
    return bundle


class _IOFailure(DmacError, OSError):
    category = "io"


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dmac", description="Distributed minimax adaptive control simulator")
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scenario from a JSON configuration")
    sim.add_argument("--config", required=True, type=Path)
    sim.add_argument("--out", required=True, type=Path)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--controllers", default=None, help="comma-separated subset of minimax,oracle,nominal")

    pre = sub.add_parser("paper-preset", help="run the seven-node buffer network experiment")
    pre.add_argument("--out", required=True, type=Path)
    pre.add_argument("--seed", type=int, default=0)

    adm = sub.add_parser("admissible", help="print the admissible interval of decay rates")
    adm.add_argument("--b", required=True, type=float)
    adm.add_argument("--degree", required=True, type=int)
    return p


def _fail(exc: Exception) -> int:
    category = getattr(exc, "category", "error")
    print(json.dumps({"error": category, "message": str(exc)}), file=sys.stderr)
    return EXIT_CODES.get(category, 1)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "admissible":
            lo, hi = admissible_interval(args.b, args.degree)
            print(json.dumps({"b": args.b, "degree": args.degree, "lo": lo, "hi": hi}))
            return 0
        if args.command == "paper-preset":
            config = paper_preset(args.seed)
        else:
            try:
                text = args.config.read_text()
            except OSError as exc:
                raise _IOFailure(f"cannot read {str(args.config)!r}: {exc}") from exc
            config = parse_config(
                text, base_dir=args.config.parent, seed=args.seed, controllers=args.controllers
            )
        bundle = run_scenario(config, args.out)
        print(json.dumps({"status": bundle.status, "out": str(bundle.directory)}))
        return 0
    except DmacError as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())
