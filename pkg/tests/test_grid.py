import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fungal.grid import (
    Configuration,
    Simulation,
    has_vpp,
    predict,
    run_cycles,
    run_steps,
    signals,
    step,
    total_grains,
    trace,
)
from fungal.lattice import PLAIN, SOURCE, Block, combine, make_bridge
from fungal.scheme import UpdateScheme

from .conftest import Z1, schemes

FIG1 = {(0, 0): 4, (1, 0): 3, (1, 1): 3, (1, 2): 3, (2, 2): 3, (3, 2): 3, (4, 2): 3, (4, 3): 3}


@st.composite
def configs(draw, size=8, max_grain=5):
    vals = draw(st.lists(st.integers(0, max_grain), min_size=size * size, max_size=size * size))
    arr = np.array(vals, dtype=np.uint8).reshape(size, size)
    return Configuration.from_array(arr)


def test_first_step_of_bridge():
    c = step(Configuration(FIG1), "H")
    want = dict(FIG1)
    want[(0, 0)], want[(1, 0)] = 2, 4
    # the figure shows an 8x6 window; one grain also leaves it to the left
    assert c.window((0, 0), 8, 6) == Configuration(want)
    assert c[(-1, 0)] == 1


@pytest.mark.parametrize("rule", ["H", "V"])
def test_zero_is_fixed(rule):
    assert step(Configuration(), rule) == Configuration()


def test_unknown_rule():
    with pytest.raises(ValueError):
        step(Configuration(), "X")


def test_grain_range_checked():
    with pytest.raises(ValueError):
        Configuration({(0, 0): 6})


def test_zeros_not_stored():
    c = Configuration({(0, 0): 0, (1, 0): 2})
    assert len(c) == 1 and c[(0, 0)] == 0


def test_run_steps_zero_is_identity():
    c = Configuration(FIG1)
    assert run_steps(c, Z1, 0) is c
    assert run_cycles(c, Z1, 0) == c


def test_run_cycles_matches_steps():
    c = Configuration(FIG1)
    assert run_cycles(c, Z1, 2) == run_steps(c, Z1, 14)


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        run_steps(Configuration(), Z1, -1)


def test_one_cycle_moves_signal_along_trail():
    c = run_cycles(Configuration(FIG1), Z1, 1)
    assert signals(c) == {(4, 3)}


def test_chained_bridges_two_cycles(z1):
    a, b, c = Block.at(0, 0, z1), Block.at(1, 1, z1), Block.at(2, 2, z1)
    first = make_bridge(a, b, "+", SOURCE, z1)
    second = make_bridge(b, c, "+", PLAIN, z1)
    cfg = combine(first.overlay, second.overlay)
    assert run_cycles(cfg, z1, 2)[second.path[z1.k]] == 4


def test_signals_and_totals():
    c = Configuration(FIG1)
    assert signals(c) == {(0, 0)}
    assert signals(Configuration()) == set()
    assert total_grains(c) == 25
    assert total_grains(Configuration()) == 0


@pytest.mark.parametrize(
    "cells,expected",
    [([(0, 0), (3, 2)], True), ([(0, 0), (3, 1)], False), ([(5, 5)], True), ([], True)],
)
def test_vpp_examples(cells, expected):
    assert has_vpp(Configuration({c: 4 for c in cells})) is expected


def test_predict_nonzero_at_start():
    assert predict(Configuration(FIG1), (4, 3), 1, Z1)


def test_predict_all_zero():
    assert not predict(Configuration(), (3, 3), 50, Z1)


def test_predict_source_bridge_reaches_end(z1):
    br = make_bridge(Block.at(0, 0, z1), Block.at(1, 1, z1), "+", SOURCE, z1)
    end = br.path[z1.k]
    # clear the target so the answer depends on the dynamics
    c = br.overlay.updated({end: 0})
    assert predict(c, end, z1.k, z1)
    assert not predict(c, end, z1.k - 1, z1)
    assert end in signals(run_cycles(br.overlay, z1, 1))


def test_predict_requires_positive_bound():
    with pytest.raises(ValueError):
        predict(Configuration(), (0, 0), 0, Z1)


def test_trace_matches_run_steps():
    c = Configuration(FIG1)
    frames = trace(c, Z1, 10)
    for t, f in enumerate(frames):
        assert f == run_steps(c, Z1, t)


def test_simulation_grows_window():
    c = Configuration({(0, y): 5 for y in range(3)})
    sim = Simulation(c, "HV", margin=1)
    sim.run(30)
    assert sim.configuration() == run_steps(c, "HV", 30)


def test_simulation_probes():
    sim = Simulation(Configuration(FIG1), Z1, probes=[(4, 3), (9, 9)])
    sim.run(7)
    assert sim.hits() == {(4, 3): 7, (9, 9): None}


def test_state_closure_exhaustive_neighbourhoods():
    # every centre/neighbour combination along one axis
    for a, b, c in itertools.product(range(6), repeat=3):
        row = Configuration({(0, 0): a, (1, 0): b, (2, 0): c})
        for rule in "HV":
            out = step(row, rule)
            assert all(0 <= g <= 5 for g in out.values())


@given(configs(), st.sampled_from("HV"))
def test_conservation(c, rule):
    assert total_grains(step(c, rule)) == total_grains(c)


@st.composite
def vpp_configs(draw, size=8):
    """Signals only on rows of one parity."""
    parity = draw(st.integers(0, 1))
    cells = {}
    for y in range(size):
        top = 5 if y % 2 == parity else 3
        for x, g in enumerate(draw(st.lists(st.integers(0, top), min_size=size, max_size=size))):
            cells[(x, y)] = g
    return Configuration(cells)


@given(vpp_configs(), st.sampled_from("HV"))
def test_vpp_preserved(c, rule):
    assert has_vpp(c)
    assert has_vpp(step(c, rule))


@given(vpp_configs(size=6), schemes(kmax=8), st.integers(0, 30))
def test_vpp_preserved_over_runs(c, z, t):
    assert has_vpp(run_steps(c, z, t))


@given(configs(size=6), schemes(kmax=8), st.integers(0, 20))
def test_locality(c, z, t):
    out = run_steps(c, z, t)
    bb = c.bbox()
    if bb is None:
        assert out == c
        return
    nh = sum(z.rule(s) == "H" for s in range(1, t + 1))
    nv = t - nh
    for x, y in out:
        assert bb[0] - nh <= x <= bb[2] + nh
        assert bb[1] - nv <= y <= bb[3] + nv


@given(configs(size=5), schemes(kmax=6), st.integers(0, 15))
def test_deterministic(c, z, t):
    assert run_steps(c, z, t) == run_steps(c, z, t)


@given(configs(size=5), st.integers(0, 3))
def test_translation_invariance(c, t):
    z = UpdateScheme("HHVV")
    assert run_steps(c.translated(3, -2), z, t) == run_steps(c, z, t).translated(3, -2)
