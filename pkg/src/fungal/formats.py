"""Text formats: configurations (fungal-cfg), gadget records and pin manifests.

A configuration file starts with a header line

    fungal-cfg v1 Z=<word> origin=<x>,<y> size=<w>x<h>

followed by ``h`` rows of ``w`` digits 0-5 ('.' reads as 0).  With the extra
header token ``order=columns`` the body instead holds ``w`` lines of ``h``
digits, one per column from left to right; the streaming emitter writes this
form so it never needs more than one column in memory.
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass

from .errors import ParseError
from .grid import Configuration
from .lattice import Gadget

HEADER = "fungal-cfg v1"
_HEADER_RE = re.compile(r"^fungal-cfg\s+v1\b(.*)$")


@dataclass(frozen=True)
class CfgHeader:
    scheme: str | None
    origin: tuple[int, int]
    size: tuple[int, int]
    order: str = "rows"

    def line(self) -> str:
        parts = [HEADER]
        if self.scheme:
            parts.append(f"Z={self.scheme}")
        parts.append(f"origin={self.origin[0]},{self.origin[1]}")
        parts.append(f"size={self.size[0]}x{self.size[1]}")
        if self.order != "rows":
            parts.append(f"order={self.order}")
        return " ".join(parts)


def parse_header(line: str) -> CfgHeader:
    m = _HEADER_RE.match(line.strip())
    if not m:
        raise ParseError(f"not a fungal-cfg header: {line.strip()[:60]!r}")
    fields = {}
    for tok in m.group(1).split():
        if "=" not in tok:
            raise ParseError(f"malformed header token {tok!r}")
        key, val = tok.split("=", 1)
        fields[key] = val
    try:
        ox, oy = (int(v) for v in fields.get("origin", "0,0").split(","))
        w, h = (int(v) for v in fields["size"].lower().split("x"))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad origin/size in header: {line.strip()!r}") from exc
    if w < 0 or h < 0:
        raise ParseError("negative size")
    order = fields.get("order", "rows")
    if order not in ("rows", "columns"):
        raise ParseError(f"unknown body order {order!r}")
    return CfgHeader(fields.get("Z"), (ox, oy), (w, h), order)


def _digits(line: str, n: int, where: str) -> list[int]:
    line = line.rstrip("\n").rstrip()
    if len(line) != n:
        raise ParseError(f"{where}: expected {n} digits, got {len(line)}")
    out = []
    for ch in line:
        if ch == ".":
            out.append(0)
        elif "0" <= ch <= "5":
            out.append(ord(ch) - 48)
        else:
            raise ParseError(f"{where}: illegal grain {ch!r}")
    return out


def parse_cfg(text: str | Iterable[str]) -> tuple[Configuration, CfgHeader]:
    lines = text.splitlines() if isinstance(text, str) else [ln.rstrip("\n") for ln in text]
    lines = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty configuration text")
    hdr = parse_header(lines[0])
    (ox, oy), (w, h) = hdr.origin, hdr.size
    body = lines[1:]
    store = {}
    if hdr.order == "rows":
        if len(body) != h:
            raise ParseError(f"expected {h} rows, got {len(body)}")
        for j, ln in enumerate(body):
            for i, g in enumerate(_digits(ln, w, f"row {j}")):
                if g:
                    store[(ox + i, oy + j)] = g
    else:
        if len(body) != w:
            raise ParseError(f"expected {w} columns, got {len(body)}")
        for i, ln in enumerate(body):
            for j, g in enumerate(_digits(ln, h, f"column {i}")):
                if g:
                    store[(ox + i, oy + j)] = g
    return Configuration(store), hdr


def format_cfg(c: Configuration, scheme: str | None = None, origin: tuple[int, int] | None = None,
               size: tuple[int, int] | None = None) -> str:
    """Row-major text of ``c`` over its bounding box (or the given window)."""
    bb = c.bbox()
    if origin is None:
        origin = (bb[0], bb[1]) if bb else (0, 0)
    if size is None:
        size = (bb[2] - origin[0] + 1, bb[3] - origin[1] + 1) if bb else (0, 0)
    hdr = CfgHeader(scheme, origin, size)
    rows = ["".join(str(c[(x, y)]) for x in range(origin[0], origin[0] + size[0]))
            for y in range(origin[1], origin[1] + size[1])]
    return "\n".join([hdr.line(), *rows]) + "\n"


def read_cfg(path: str) -> tuple[Configuration, CfgHeader]:
    with open(path, encoding="ascii") as fh:
        return parse_cfg(fh.read())


def write_cfg(path: str, c: Configuration, scheme: str | None = None, **kw) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_cfg(c, scheme, **kw))


def ascii_panel(c: Configuration, origin: tuple[int, int], size: tuple[int, int]) -> list[str]:
    return c.rows(origin, size[0], size[1])


# ---------------------------------------------------------------- panel sets

_STEP_RE = re.compile(r"^#\s*step\s+(\d+)\s*$")


def parse_panels(text: str) -> list[tuple[int | None, Configuration, CfgHeader]]:
    """Several configurations in one file, each optionally preceded by a
    ``# step N`` comment giving the time it shows."""
    out = []
    block: list[str] = []
    step = pending = None

    def flush() -> None:
        if block:
            c, hdr = parse_cfg(block)
            out.append((step, c, hdr))

    for line in text.splitlines():
        m = _STEP_RE.match(line.strip())
        if m:
            pending = int(m.group(1))
            continue
        if line.startswith("fungal-cfg"):
            flush()
            block, step, pending = [line], pending, None
        elif block:
            block.append(line)
        elif line.strip() and not line.lstrip().startswith("#"):
            raise ParseError("panel body before the first header")
    flush()
    return out


def format_panels(panels: Iterable[tuple[int | None, Configuration]], scheme: str | None,
                  origin: tuple[int, int], size: tuple[int, int]) -> str:
    parts = []
    for step, c in panels:
        head = f"# step {step}\n" if step is not None else ""
        parts.append(head + format_cfg(c, scheme, origin, size))
    return "\n".join(parts)


# ---------------------------------------------------------------- gadgets


def gadget_records(g: Gadget) -> list[str]:
    """One ``bridge <polarity> <kind> from ax,ay to bx,by`` line per bridge."""
    return [b.describe() for b in g.bridges]


_BRIDGE_RE = re.compile(r"^bridge\s+([+-])\s+(\S+)\s+from\s+(-?\d+),(-?\d+)\s+to\s+(-?\d+),(-?\d+)$")


def parse_gadget_record(line: str):
    m = _BRIDGE_RE.match(line.strip())
    if not m:
        raise ParseError(f"bad bridge record {line.strip()!r}")
    pol, kind, ax, ay, bx, by = m.groups()
    return pol, kind, (int(ax), int(ay)), (int(bx), int(by))


def pin_manifest(g: Gadget) -> list[str]:
    return [
        f"pin {name} cell={p.cell[0]},{p.cell[1]} polarity={p.polarity} direction={p.direction} delay={g.delay}"
        for name, p in sorted(g.pins.items())
    ]


__all__ = [
    "CfgHeader", "ascii_panel", "format_cfg", "format_panels", "gadget_records", "parse_cfg",
    "parse_gadget_record", "parse_header", "parse_panels", "pin_manifest", "read_cfg", "write_cfg",
]
