"""Reference panels reproduced from their first frame."""

import pytest

from fungal.gadgets import build_component
from fungal.grid import Simulation, run_steps, signals

from .conftest import load_panels


def replay(name):
    panels = load_panels(name)
    c0 = panels[0][1]
    for s, panel, hdr in panels:
        yield s, panel, run_steps(c0, hdr.scheme, s).window(hdr.origin, *hdr.size)


@pytest.mark.parametrize(
    "name", ["bridge_cycle.cfg", "bridge_junk.cfg", "bridge_sink.cfg", "shifted_cycle_failure.cfg", "crossing_run.cfg"]
)
def test_panels_reproduced(name):
    for s, want, got in replay(name):
        assert got == want, f"{name} step {s}"


def test_bridge_cycle_ends_at_far_corner():
    last = load_panels("bridge_cycle.cfg")[-1][1]
    assert signals(last) == {(4, 3)}


def test_sink_swallows_signal():
    last = load_panels("bridge_sink.cfg")[-1][1]
    assert not signals(last)


def test_shifted_word_loses_signal():
    # same start under a different word: the signal dies before the corner
    panels = load_panels("shifted_cycle_failure.cfg")
    assert panels[0][2].scheme == "HVHVVHH"
    assert not signals(panels[-1][1])


def test_crossing_run_exits_far_side():
    panels = load_panels("crossing_run.cfg")
    assert [s for s, _, _ in panels] == [0, 10, 14]
    assert signals(panels[-1][1]) == {(8, 9)}


@pytest.mark.parametrize(
    "kind,pol,tag",
    [
        ("duplicator", "+", "pos"),
        ("duplicator", "-", "neg"),
        ("merge", "+", "pos"),
        ("merge", "-", "neg"),
        ("crossing", "+", "pos"),
        ("crossing", "-", "neg"),
        ("switch", "+", "pos"),
    ],
)
def test_component_overlays(kind, pol, tag):
    (_, panel, hdr), = load_panels(f"{kind}_{tag}.cfg")
    g = build_component(kind, pol, (0, 0), hdr.scheme).gadget
    assert g.overlay == panel


def test_alternative_switch_drawing():
    # a different but valid switch: pass alone is blocked, ctrl first lets pass through
    (_, c, hdr), = load_panels("switch_neg.cfg")
    z = hdr.scheme
    pass_in, ctrl_in, out = (0, 2), (0, 9), (8, 8)

    sim = Simulation(c.updated({pass_in: 4}), z)
    sim.run(4 * 7)
    assert sim[out] == 3 and not sim.signals()

    sim = Simulation(c.updated({ctrl_in: 4}), z)
    sim.run(7)
    sim = Simulation(sim.configuration().updated({pass_in: 4}), z)
    reached = False
    for _ in range(4 * 7):
        sim.run(1)
        reached |= sim[out] >= 4
    assert reached
