import pytest
from hypothesis import given
from hypothesis import strategies as st

from fungal.errors import ParseError
from fungal.formats import (
    CfgHeader,
    format_cfg,
    format_panels,
    gadget_records,
    parse_cfg,
    parse_gadget_record,
    parse_header,
    parse_panels,
    pin_manifest,
    read_cfg,
    write_cfg,
)
from fungal.gadgets import build_component
from fungal.grid import Configuration


def test_header_fields():
    hdr = parse_header("fungal-cfg v1 Z=HV origin=-2,3 size=4x5")
    assert hdr == CfgHeader("HV", (-2, 3), (4, 5))
    assert hdr.line() == "fungal-cfg v1 Z=HV origin=-2,3 size=4x5"


@pytest.mark.parametrize(
    "line",
    [
        "fungal v1 size=1x1",
        "fungal-cfg v1 size=axb",
        "fungal-cfg v1 origin=0,0",
        "fungal-cfg v1 size=1x1 junk",
        "fungal-cfg v1 size=1x1 order=diagonal",
        "fungal-cfg v1 size=-1x1",
    ],
)
def test_bad_headers(line):
    with pytest.raises(ParseError):
        parse_header(line)


def test_parse_rows_with_dots():
    c, hdr = parse_cfg("fungal-cfg v1 Z=HV origin=1,1 size=3x2\n4.3\n..2\n")
    assert dict(c) == {(1, 1): 4, (3, 1): 3, (3, 2): 2}
    assert hdr.scheme == "HV"


@pytest.mark.parametrize(
    "body",
    ["fungal-cfg v1 size=2x2\n12\n", "fungal-cfg v1 size=2x1\n123\n", "fungal-cfg v1 size=2x1\n16\n", ""],
)
def test_bad_bodies(body):
    with pytest.raises(ParseError):
        parse_cfg(body)


def test_column_order():
    c, _ = parse_cfg("fungal-cfg v1 origin=0,0 size=2x3 order=columns\n123\n045\n")
    assert c[(0, 2)] == 3 and c[(1, 1)] == 4


@st.composite
def configurations(draw):
    cells = draw(st.dictionaries(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), st.integers(1, 5)))
    return Configuration(cells)


@given(configurations())
def test_round_trip(c):
    assert parse_cfg(format_cfg(c, "HVV"))[0] == c


def test_file_round_trip(tmp_path):
    c = Configuration({(0, 0): 4, (2, 1): 3})
    path = tmp_path / "c.cfg"
    write_cfg(str(path), c, "HV")
    assert read_cfg(str(path))[0] == c


def test_panels_round_trip():
    a = Configuration({(0, 0): 4})
    b = Configuration({(1, 0): 4, (0, 0): 2})
    text = format_panels([(0, a), (1, b), (None, a)], "HV", (0, 0), (3, 2))
    got = parse_panels(text)
    assert [s for s, _, _ in got] == [0, 1, None]
    assert [c for _, c, _ in got] == [a, b, a]


def test_panel_body_without_header():
    with pytest.raises(ParseError):
        parse_panels("123\n")


def test_gadget_records(z1):
    g = build_component("merge", "+", (0, 0), z1).gadget
    recs = gadget_records(g)
    assert recs == ["bridge + plain from 0,0 to 1,1", "bridge + plain from 0,2 to 1,1"]
    assert parse_gadget_record(recs[0]) == ("+", "plain", (0, 0), (1, 1))
    with pytest.raises(ParseError):
        parse_gadget_record("bridge ? from here")


def test_pin_manifest(z1):
    g = build_component("duplicator", "-", (0, 0), z1).gadget
    lines = pin_manifest(g)
    assert lines[0] == "pin in cell=0,5 polarity=- direction=in delay=1"
    assert len(lines) == 3
