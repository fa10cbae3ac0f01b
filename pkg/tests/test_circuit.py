import io
import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fungal.circuit import (
    C_D,
    Circuit,
    Gate,
    StreamStats,
    all_inputs,
    audit_switches,
    build_layout,
    compile_circuit,
    compute_budget,
    corrupt,
    emit_stream,
    eval_circuit,
    format_netlist,
    formula_eval,
    formula_size,
    layout,
    lower,
    parse_netlist,
    random_circuit,
    read_embedding,
    to_formula,
    verify,
    verify_embedding,
    working_scheme,
    write_embedding,
)
from fungal.errors import (
    ArityMismatch,
    CircuitTooLarge,
    DegenerateScheme,
    FanInExceeded,
    ForwardReference,
    MultipleOutputs,
    ParseError,
    SinkFailure,
    UnknownGateKind,
)
from fungal.formats import parse_cfg
from fungal.grid import Configuration, predict, run_steps

from .conftest import Z1, rand_scheme

NAND1 = "in x1 x2\ng1 = NAND(x1,x2)\nout g1\n"
MIXED = """# x1 and (x2 or x3)
in x1 x2 x3
g1 = OR(x2,x3)
g2 = AND(x1,g1)
out g2
"""


def chain(m):
    lines = ["in x1 x2"]
    prev = "x1"
    for i in range(m):
        lines.append(f"g{i} = NAND({prev},{'x2' if i % 2 == 0 else 'x1'})")
        prev = f"g{i}"
    return parse_netlist("\n".join(lines))


def truth_table(c):
    """Independent evaluator: rewrite every gate as a Python expression."""
    env = {}
    ops = {"NAND": "1-({0}&{1})", "AND": "{0}&{1}", "OR": "{0}|{1}", "NOT": "1-{0}"}
    out = {}
    for bits in itertools.product((0, 1), repeat=c.n):
        env = dict(zip(c.inputs, bits))
        for g in c.gates:
            env[g.id] = eval(ops[g.kind].format(*g.args), {}, env)
        out[bits] = env[c.output]
    return out


# ---------------------------------------------------------------- netlists


def test_parse_single_gate():
    c = parse_netlist(NAND1)
    assert c.inputs == ("x1", "x2") and c.output == "g1" and c.m == 1


def test_parse_output_defaults_to_last_gate():
    c = parse_netlist("in a b\ng1 = NAND(a,b)\ng2 = NOT(g1)\n")
    assert c.output == "g2"


def test_and_lowers_to_two_nands():
    c = parse_netlist("in x1 x2\ng1 = AND(x1,x2)\nout g1")
    prim = c.primitive
    assert len(prim) == 2 and all(g.kind == "NAND" for g in prim)
    assert prim[1].args == (prim[0].id, prim[0].id)


def test_lower_or_and_not():
    gates = lower([Gate("a", "OR", ("x", "y")), Gate("b", "NOT", ("a",))])
    assert [g.kind for g in gates] == ["NAND"] * 4
    assert gates[-1] == Gate("b", "NAND", ("a", "a"))


@pytest.mark.parametrize(
    "text,err",
    [
        ("in x1\ng1 = NAND(x1,g2)\ng2 = NAND(x1,x1)\nout g1", ForwardReference),
        ("in x1\ng1 = NOT(x1)\nout g1\nout g1", MultipleOutputs),
        ("in a b c\ng1 = NAND(a,b,c)", FanInExceeded),
        ("in a b\ng1 = XOR(a,b)", UnknownGateKind),
        ("in a\nout a b", ParseError),
        ("in a\ng1 = NAND(a)", ParseError),
        ("in a a", ParseError),
        ("", ParseError),
        ("in a\nout zz", ForwardReference),
        ("in a\ng1 == NOT(a)", ParseError),
    ],
)
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_netlist(text)


def test_netlist_round_trip():
    c = parse_netlist(MIXED)
    assert parse_netlist(format_netlist(c)) == c


@pytest.mark.parametrize("bits,out", [((1, 1), 0), ((0, 1), 1), ((0, 0), 1), ((1, 0), 1)])
def test_nand_truth(bits, out):
    assert eval_circuit(parse_netlist(NAND1), bits) == out


def test_eval_arity():
    with pytest.raises(ArityMismatch):
        eval_circuit(parse_netlist(NAND1), (1,))


def test_random_circuits_against_truth_table():
    rng = random.Random(8)
    for _ in range(20):
        c = random_circuit(rng, rng.randint(1, 4), 8, ("NAND", "AND", "OR", "NOT"))
        table = truth_table(c)
        for bits in all_inputs(c.n):
            assert eval_circuit(c, bits) == table[bits]


@given(st.integers(0, 2**32 - 1))
def test_formula_matches_circuit(seed):
    rng = random.Random(seed)
    c = random_circuit(rng, rng.randint(1, 4), rng.randint(1, 8), ("NAND", "AND", "OR", "NOT"))
    f = to_formula(c)
    for bits in all_inputs(c.n):
        assert formula_eval(f, bits) == eval_circuit(c, bits)


def test_lowering_preserves_function():
    rng = random.Random(4)
    for _ in range(30):
        c = random_circuit(rng, 3, 6, ("AND", "OR", "NOT", "NAND"))
        low = Circuit(c.inputs, c.primitive, c.output)
        for bits in all_inputs(c.n):
            assert eval_circuit(low, bits) == eval_circuit(c, bits)


def test_all_inputs_order():
    assert list(all_inputs(2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert list(all_inputs(0)) == [()]


# ---------------------------------------------------------------- budget


def test_budget_scaling():
    assert compute_budget(1).D == C_D
    assert compute_budget(2).D == 16 * C_D
    with pytest.raises(ValueError):
        compute_budget(0)


def test_budget_monotone():
    led = compute_budget(5)
    tiles = [led.tile(i) for i in range(6)]
    assert all(a < b for a, b in itertools.pairwise(tiles))
    assert led.crossing(2, 1) == led.tile(2) + led.c_D * led.D
    assert led.nand(2, 1, 1) == led.crossing(2, 1) + led.c_D * led.D


# ---------------------------------------------------------------- layout


def test_working_scheme_variants():
    assert working_scheme(Z1) == (working_scheme(Z1)[0], False, 0)
    w, rotated, wait = working_scheme("VHHVV")
    assert w.word == "HHVVV" and not rotated and wait == 1
    w, rotated, _ = working_scheme("VVHVH")
    assert rotated
    assert working_scheme("HHVVHHVV")[0].word == "HHVV"


@pytest.mark.parametrize("word", ["HV", "HVVV", "HHHV", "HVHV"])
def test_degenerate_schemes(word):
    with pytest.raises(DegenerateScheme):
        layout(parse_netlist(NAND1), word)


def test_layout_is_cached():
    c = parse_netlist(MIXED)
    assert build_layout(c) is build_layout(c)


def test_circuit_too_large():
    with pytest.raises(CircuitTooLarge):
        compile_circuit(parse_netlist(NAND1), (0, 0), Z1, max_cells=100)


def test_compile_arity():
    with pytest.raises(ArityMismatch):
        compile_circuit(parse_netlist(NAND1), (0,), Z1)


@pytest.mark.parametrize("bits,expected", [((1, 1), False), ((0, 1), True)])
def test_single_nand_prediction(bits, expected):
    e = compile_circuit(parse_netlist(NAND1), bits, Z1)
    assert predict(e.configuration(), e.target, e.time_bound, e.scheme) is expected


def test_target_starts_empty():
    e = compile_circuit(parse_netlist(NAND1), (0, 1), Z1)
    assert e.configuration()[e.target] == 0


def test_mixed_circuit_all_vectors():
    c = parse_netlist(MIXED)
    for bits in all_inputs(3):
        rep = verify(c, bits, Z1)
        assert rep.passed, rep.lines()
        assert rep.expected == (bits[0] & (bits[1] | bits[2]))


def test_region_contains_everything():
    e = compile_circuit(parse_netlist(MIXED), (1, 0, 1), Z1)
    x0, y0, x1, y1 = e.region
    assert all(x0 <= x <= x1 and y0 <= y <= y1 for x, y in e.cells())


def test_region_is_bounding_box():
    e = compile_circuit(parse_netlist(NAND1), (0, 1), Z1)
    c = e.configuration()
    assert c.bbox() == e.region


@pytest.mark.parametrize("word", ["VHHVV", "VVHVH", "HVVH", "HHVVHHVV"])
def test_non_normal_schemes(word):
    c = parse_netlist(MIXED)
    for bits in all_inputs(3):
        assert verify(c, bits, word).passed


def test_rotated_frame_transposes():
    e = compile_circuit(parse_netlist(NAND1), (0, 1), "VVHVH")
    assert e.rotated and e.to_frame((2, 5)) == (5, 2)


# ---------------------------------------------------------------- verification


def test_switch_timing_trace():
    c = parse_netlist(MIXED)
    e = compile_circuit(c, (1, 1, 0), Z1)
    events = audit_switches(e)
    assert events and all(ev.ordered for ev in events)
    fired = [ev for ev in events if ev.ctrl_step is not None and ev.pass_step is not None]
    assert fired and all(ev.ctrl_step < ev.pass_step for ev in fired)


def test_corrupted_embedding_fails():
    c = parse_netlist(NAND1)
    e = compile_circuit(c, (0, 1), Z1)
    rep = verify_embedding(c, e, corrupt(e))
    assert not rep.passed
    # the run departs from the clean one the cycle after the output enters the target wire
    assert rep.first_divergence == e.layout.arrival_cycle + 1
    assert any("divergence" in line for line in rep.lines())


def test_report_lines():
    rep = verify(parse_netlist(NAND1), (1, 1), Z1)
    lines = rep.lines()
    assert lines[0].endswith("PASS") and lines[3].startswith("ledger m=1")


@settings(max_examples=10)
@given(st.integers(0, 2**32 - 1))
def test_random_circuits_end_to_end(seed):
    rng = random.Random(seed)
    c = random_circuit(rng, rng.randint(1, 3), rng.randint(1, 5))
    z = rand_scheme(rng, normal=False)
    bits = tuple(rng.randint(0, 1) for _ in range(c.n))
    rep = verify(c, bits, z)
    assert rep.passed, (format_netlist(c), z.word, bits, rep.lines())


# ---------------------------------------------------------------- streaming


def test_stream_round_trip():
    e = compile_circuit(parse_netlist(MIXED), (1, 0, 1), "VHHVV")
    buf = io.StringIO()
    stats = emit_stream(e, buf)
    cfg, hdr = parse_cfg(buf.getvalue())
    assert cfg == e.configuration()
    assert hdr.order == "columns" and stats.columns == e.width == hdr.size[0]
    assert stats.peak_buffered_cells <= stats.column_height + stats.peak_active_bridges * (
        e.working.k + 1 + e.wait)


def test_stream_empty_configuration():
    buf = io.StringIO()
    stats = emit_stream(Configuration(), buf, "HV")
    assert buf.getvalue().splitlines() == ["fungal-cfg v1 Z=HV origin=0,0 size=0x0 order=columns"]
    assert stats.columns == 0


def test_stream_plain_configuration():
    c = Configuration({(2, 3): 4, (5, 1): 2})
    buf = io.StringIO()
    emit_stream(c, buf, "HV")
    assert parse_cfg(buf.getvalue())[0] == c


class BrokenSink:
    def write(self, text):
        raise OSError("disk full")


def test_sink_failure():
    e = compile_circuit(parse_netlist(NAND1), (0, 1), Z1)
    with pytest.raises(SinkFailure):
        emit_stream(e, BrokenSink())
    with pytest.raises(SinkFailure):
        write_embedding(e, BrokenSink())


@pytest.mark.parametrize("unary", [False, True])
def test_manifest_round_trip(unary):
    e = compile_circuit(parse_netlist(NAND1), (0, 1), Z1)
    buf = io.StringIO()
    write_embedding(e, buf, unary)
    text = buf.getvalue()
    assert ("T unary 1" in text) is unary
    p = read_embedding(text)
    assert (p.scheme, p.region, p.target, p.time_bound) == (e.scheme, e.region, e.target, e.time_bound)
    assert p.configuration == e.configuration()
    assert predict(p.configuration, p.target, p.time_bound, p.scheme)


def test_manifest_errors():
    with pytest.raises(ParseError):
        read_embedding("not a manifest")
    with pytest.raises(ParseError):
        read_embedding("embedding v1\nscheme HV\nfungal-cfg v1 size=0x0\n")


def test_growth_is_polynomial_on_chains():
    ms = list(range(1, 11))
    areas, bounds = [], []
    for m in ms:
        e = compile_circuit(chain(m), (1, 1), Z1)
        areas.append(e.width * e.height)
        bounds.append(e.time_bound)
    # log-log slope over the upper half stays small
    for series in (areas, bounds):
        slope = np.polyfit(np.log(ms[4:]), np.log(series[4:]), 1)[0]
        assert slope < 4
    assert all(a < b for a, b in itertools.pairwise(bounds))
    assert math.isfinite(sum(areas))


def test_target_not_reached_before_bound_when_false():
    c = parse_netlist(NAND1)
    e = compile_circuit(c, (1, 1), Z1)
    final = run_steps(e.configuration(), e.scheme, e.time_bound)
    assert final[e.target] == 0


def test_stream_stats_defaults():
    assert StreamStats() == StreamStats(0, 0, 0, 0)


def test_circuit_size_counts_primitive():
    c = parse_netlist(MIXED)
    assert c.m == 5 and formula_size(to_formula(c)) >= 1
