import random
import sys

import pytest
from hypothesis import strategies as st

from pis import refine
from pis.lts import TAU, Lts


@st.composite
def ltss(draw, max_states=6, labels=("a", "b", TAU), max_transitions=12):
    n = draw(st.integers(1, max_states))
    names = [f"s{k}" for k in range(n)]
    trans = draw(st.sets(
        st.tuples(st.sampled_from(names), st.sampled_from(labels), st.sampled_from(names)),
        max_size=max_transitions,
    ))
    init = draw(st.sets(st.sampled_from(names), min_size=1, max_size=2))
    return Lts.build(trans, init, states=names)


def random_raw_lts(rng, max_states=8, labels=("a", "b", TAU), max_transitions=16):
    n = rng.randint(1, max_states)
    names = [f"s{k}" for k in range(n)]
    trans = {(rng.choice(names), rng.choice(labels), rng.choice(names))
             for _ in range(rng.randint(0, max_transitions))}
    return Lts.build(trans, [names[0]], states=names)


@pytest.fixture(params=sorted(refine.BACKENDS))
def backend(request):
    previous = refine.backend()
    refine.set_backend(request.param)
    yield request.param
    refine.set_backend(previous)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
