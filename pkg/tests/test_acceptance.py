"""Exit criteria for the build, one test per criterion.

Each test appends a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import json
import random
import time
from collections import Counter
from itertools import combinations

import pytest

from triad import cli
from triad import geometry as geo
from triad import strategies as st
from triad.engine import LowerBound, RandomChoice, RunConfig, minimize, run
from triad.evaluators import build_evaluator
from triad.exactnum import ExactScalar

from conftest import ACCEPTANCE_LINES, random_script, scripted_run, unit
from oracles import onepoint_replay, search_fig2_witness


def report(tag, ok, detail):
    ACCEPTANCE_LINES.append(f"{tag} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"{tag}: {detail}"


def random_run(strategy, n, splits, seed):
    config = RunConfig(domain=unit(n), strategy=strategy, selection=RandomChoice(),
                       stop={"max_splits": splits}, seed=seed)
    return run(config, build_evaluator({"name": "linear"}))


def test_ac1_fig2_reproduction():
    witness = search_fig2_witness(splits=10, target_hits=4, hit_prefix=(False, False, True))
    frozen = cli.load_fig2_script()
    cells, evaluated, hits = onepoint_replay(((0, 1), (0, 1)), frozen["cells"])
    oracle_ok = (len(cells), len(evaluated), hits) == (21, 7, 4) and witness == frozen["cells"]

    started = time.perf_counter()
    result = run(cli.fig2_config(frozen), build_evaluator({"name": "quadratic-offcenter"}))
    elapsed = time.perf_counter() - started
    s = result.stats
    ok = oracle_ok and (s.cells, s.evaluations, s.hits) == (21, 7, 4) and elapsed < 1.0
    report("AC-1", ok, f"cells={s.cells} evals={s.evaluations} hits={s.hits} "
                       f"oracle_match={oracle_ok} runtime={elapsed:.3f}s (<1s)")


def test_ac2_proposition_1_1():
    started = time.perf_counter()
    problems = []
    for n in (1, 2, 3, 4):
        result = random_run(st.S2, n, 200, seed=100 + n)
        first, rest = result.prop11[0], result.prop11[1:]
        if first != (0, 0):
            problems.append((n, "root", first))
        for j, (before, redundant) in enumerate(rest, start=2):
            if redundant not in (1, 2) or redundant != before:
                problems.append((n, j, before, redundant))
        if len(result.prop11) != 200:
            problems.append((n, "splits", len(result.prop11)))
    elapsed = time.perf_counter() - started
    report("AC-2", not problems and elapsed < 5.0,
           f"N=1..4 x 200 splits, violations={problems[:3]} runtime={elapsed:.2f}s (<5s)")


def test_ac3_tiling_exactness():
    bad = []
    runs = 0
    for strategy in st.STRATEGY_NAMES:
        for j in range(20):
            n = 1 + j % 3
            result = random_run(strategy, n, 100, seed=1000 + j)
            runs += 1
            state = result.state
            total = sum((c.volume() for c in state.cells.values()), ExactScalar(0))
            if result.stats.aborted or total != state.root.volume():
                bad.append((strategy, n, j, str(total), result.stats.error))
        for j in range(20):
            n = 1 + j % 2
            result = random_run(strategy, n, 30, seed=2000 + j)
            cells = list(result.state.cells.values())
            overlaps = sum(1 for c1, c2 in combinations(cells, 2) if geo.interiors_overlap(c1, c2))
            if overlaps:
                bad.append((strategy, n, j, "overlaps", overlaps))
    report("AC-3", not bad, f"{runs} volume runs + {4 * 20} overlap runs, failures={bad[:3]}")


def sharing(state):
    return Counter(p for c in state.cells.values() for p in geo.corners(c) if p in state.db)


def test_ac4_sharing_bound():
    worst = {}
    for n in (1, 2, 3):
        for seed in range(10):
            result = random_run(st.S3, n, 100, seed=seed)
            worst[n] = max(worst.get(n, 0), max(sharing(result.state).values()))
    bound_ok = all(worst[n] <= 2 ** n for n in worst)
    built = scripted_run(st.S3, [1, 1, 3], n=2)
    shared = sharing(built.state)
    p = geo.point("2/3", "2/3")
    attained = shared[p] == 4 and max(shared.values()) == 4
    report("AC-4", bound_ok and attained,
           f"max sharing per N={worst}, bound 2^N; (2/3,2/3) shared by {shared[p]} cells")


def test_ac5_evaluation_economy():
    script = random_script(50, seed=5)
    counts = {s: scripted_run(s, script).stats.evaluations for s in st.STRATEGY_NAMES}
    fig2 = cli.load_fig2_script()["cells"]
    fig2_evals = scripted_run(st.S3, fig2).stats.evaluations
    ok = (counts[st.S1] == 101 and counts[st.S3] <= 51 and counts[st.DIAGONAL] <= 102
          and counts[st.S2] == 50 and fig2_evals < 51 and fig2_evals < len(fig2) + 1)
    report("AC-5", ok, f"k=50 N=2: {counts}; s3 on fig2 sequence={fig2_evals} (< {len(fig2) + 1})")


def test_ac6_geometry_equivalence():
    script = random_script(50, seed=6)
    a = Counter(c.box() for c in scripted_run(st.S3, script).state.cells.values())
    b = Counter(c.box() for c in scripted_run(st.DIAGONAL, script).state.cells.values())
    report("AC-6", a == b and sum(a.values()) == 101,
           f"{sum(a.values())} boxes, multisets equal={a == b}")


def test_ac7_determinism(tmp_path):
    cfg = {"N": 2, "strategy": "s3-onepoint", "selection": {"rule": "random"},
           "stop": {"max_splits": 100}, "seed": 3, "evaluator": {"name": "quadratic-offcenter"}}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    rcs = [cli.main(["run", "--config", str(path), "--out", str(tmp_path / d)]) for d in "ab"]
    same = (tmp_path / "a/trace.jsonl").read_bytes() == (tmp_path / "b/trace.jsonl").read_bytes()
    report("AC-7", rcs == [0, 0] and same, f"byte-identical traces={same}")


def test_ac8_minimization_demo():
    config = RunConfig(domain=unit(2), strategy=st.S3, selection=LowerBound(3.0),
                       stop={"max_splits": 300})
    started = time.perf_counter()
    point, value = minimize(config, build_evaluator({"name": "quadratic-offcenter"}))
    elapsed = time.perf_counter() - started
    report("AC-8", value <= 1e-3 and elapsed < 1.0,
           f"best f={value:.6g} at {point} (need <= 1e-3), runtime={elapsed:.3f}s (<1s)")
