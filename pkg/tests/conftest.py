import random

import pytest

from triad import strategies as st
from triad.engine import RunConfig, Scripted, run
from triad.evaluators import build_evaluator
from triad.exactnum import ExactScalar
from triad.geometry import Cell, point


def pt(*coords):
    return point(*coords)


def unit(n):
    return tuple((ExactScalar(0), ExactScalar(1)) for _ in range(n))


def make_cell(a, b, cid=1):
    return Cell(id=cid, a=pt(*a), b=pt(*b))


def fresh_state(strategy, n=2, evaluator="linear"):
    state = st.new_state(strategy, unit(n), build_evaluator({"name": evaluator}))
    state.iteration = 1
    st.initialize(state)
    return state


def scripted_run(strategy, cells, n=2, evaluator="linear"):
    config = RunConfig(domain=unit(n), strategy=strategy, selection=Scripted(cells),
                       stop={"max_splits": len(cells)}, evaluator={"name": evaluator})
    return run(config, build_evaluator(config.evaluator))


def random_script(k, seed, per_split=2):
    """Cell ids valid for every strategy: at split j at least 1 + per_split*(j-1) exist."""
    rng = random.Random(seed)
    return [rng.randint(1, 1 + per_split * j) for j in range(k)]


@pytest.fixture
def s3_state():
    return fresh_state(st.S3)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
