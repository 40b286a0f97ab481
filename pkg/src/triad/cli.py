"""Command-line front end.

    triad run --config PATH --out DIR
    triad render --trace PATH --out FILE
    triad compare --matrix PATH --out FILE
    triad fig2 --out DIR

``TRIAD_SEED`` in the environment overrides the seed of every run.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import geometry as geo
from . import strategies as st
from .engine import RunConfig, RunResult, Scripted, dump_trace, load_trace, rule_from_dict, run
from .errors import ConfigError, RenderError, ResourceError, TriadError
from .evaluators import build_evaluator
from .exactnum import ExactScalar
from .render import render_svg

log = logging.getLogger("triad")

FIG2_RESOURCE = "fig2_script.json"

COMPARE_FIELDS = (
    "strategy", "N", "splits", "evaluations", "hits", "cells", "db_size",
    "redundant_cells", "status",
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


def _seed_override(config: RunConfig) -> RunConfig:
    env = os.environ.get("TRIAD_SEED")
    if env is not None:
        try:
            config.seed = int(env)
        except ValueError:
            raise ConfigError(f"TRIAD_SEED must be an integer, got {env!r}") from None
    return config


def load_config(path: Path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return _seed_override(RunConfig.from_dict(data))


def write_run(result: RunResult, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    (out / "trace.jsonl").write_text(dump_trace(result.trace))
    (out / "stats.json").write_text(json.dumps(result.stats.to_dict(), indent=2) + "\n")
    (out / "vertices.jsonl").write_text(result.state.db.dump())


def redundant_cells(result: RunResult) -> Optional[int]:
    state = result.state
    if state.dimension > geo.MAX_AUDIT_DIMENSION:
        return None
    return sum(1 for c in state.alive_cells() if st.known_corner_count(state, c) >= 2)


# commands ------------------------------------------------------------------


def cmd_run(config_path: Path, out: Path) -> int:
    config = load_config(config_path)
    result = run(config, build_evaluator(config.evaluator))
    write_run(result, Path(out))
    s = result.stats
    if s.aborted:
        log.error("run aborted: %s (partial trace kept)", s.error)
        return EXIT_FAILURE
    print(f"cells={s.cells} evals={s.evaluations} hits={s.hits} splits={s.splits}")
    return EXIT_OK


def cmd_render(trace_path: Path, out: Path) -> int:
    try:
        events = load_trace(Path(trace_path).read_text())
    except OSError as exc:
        raise RenderError(f"cannot read trace {trace_path}: {exc}") from None
    svg = render_svg(events)
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    Path(out).write_text(svg)
    return EXIT_OK


def compare_rows(matrix: dict) -> list[dict]:
    strategies = matrix.get("strategies", [])
    dims = matrix.get("dimensions", [])
    budgets = matrix.get("splits", [])
    selection = matrix.get("selection", {"rule": "fifo"})
    evaluator = matrix.get("evaluator", {"name": "linear"})
    seed = int(matrix.get("seed", 0))
    rows = []
    for name in strategies:
        for n in dims:
            for budget in budgets:
                row = {"strategy": name, "N": n, "splits": budget}
                try:
                    config = _seed_override(RunConfig(
                        domain=tuple((ExactScalar(0), ExactScalar(1)) for _ in range(int(n))),
                        strategy=name,
                        selection=rule_from_dict(selection),
                        stop={"max_splits": budget},
                        seed=seed,
                        evaluator=evaluator,
                    ))
                    result = run(config, build_evaluator(evaluator))
                except TriadError as exc:
                    log.error("compare %s N=%s splits=%s: %s", name, n, budget, exc)
                    row.update(status="failed")
                    rows.append(row)
                    continue
                s = result.stats
                redundant = redundant_cells(result)
                row.update(
                    splits=s.splits, evaluations=s.evaluations, hits=s.hits, cells=s.cells,
                    db_size=s.db_size,
                    redundant_cells="" if redundant is None else redundant,
                    status="aborted" if s.aborted else "ok",
                )
                rows.append(row)
    return rows


def cmd_compare(matrix_path: Path, out: Path) -> int:
    try:
        matrix = json.loads(Path(matrix_path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read matrix {matrix_path}: {exc}") from None
    if not isinstance(matrix, dict):
        raise ConfigError("matrix must be a JSON object")
    rows = compare_rows(matrix)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COMPARE_FIELDS, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    Path(out).write_text(buf.getvalue())
    return EXIT_OK if all(r.get("status") == "ok" for r in rows) else EXIT_FAILURE


def load_fig2_script(resource: Optional[str] = None) -> dict:
    name = resource or FIG2_RESOURCE
    try:
        text = resources.files("triad.data").joinpath(name).read_text()
    except (FileNotFoundError, OSError) as exc:
        raise ResourceError(f"built-in script {name!r} is missing: {exc}") from None
    return json.loads(text)


def fig2_config(script: dict) -> RunConfig:
    return RunConfig(
        domain=tuple((ExactScalar.parse(lo), ExactScalar.parse(hi)) for lo, hi in script["domain"]),
        strategy=script["strategy"],
        selection=Scripted(script["cells"]),
        stop={"max_splits": len(script["cells"])},
        evaluator={"name": "quadratic-offcenter"},
    )


def cmd_fig2(out: Path) -> int:
    script = load_fig2_script()
    config = fig2_config(script)
    result = run(config, build_evaluator(config.evaluator))
    out = Path(out)
    write_run(result, out)
    (out / "fig2.svg").write_text(render_svg(result.trace))
    s = result.stats
    summary = f"cells={s.cells} evals={s.evaluations} hits={s.hits}"
    (out / "summary.txt").write_text(summary + "\n")
    print(summary)
    expected = script["expected"]
    got = {"cells": s.cells, "evaluations": s.evaluations, "hits": s.hits}
    if got != expected:
        log.error("fig2 regression: expected %s, got %s", expected, got)
        return EXIT_FAILURE
    return EXIT_OK


# entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triad", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one experiment from a JSON config")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("render", help="draw a 2-D trace as SVG")
    p.add_argument("--trace", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("compare", help="run a strategy x N x budget matrix to CSV")
    p.add_argument("--matrix", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("fig2", help="replay the built-in 10-split unit-square demonstration")
    p.add_argument("--out", required=True, type=Path)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(args.config, args.out)
        if args.command == "render":
            return cmd_render(args.trace, args.out)
        if args.command == "compare":
            return cmd_compare(args.matrix, args.out)
        return cmd_fig2(args.out)
    except ConfigError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    except TriadError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
