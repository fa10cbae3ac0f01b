"""Circuit compiler: netlists, evaluation, layout, embedding, streaming and verification.

A netlist is compiled into a configuration whose target cell becomes
non-zero within the time bound exactly when the circuit outputs 1.  The
construction works on the block lattice and only meets a concrete scheme when
grains are laid down:

* every Boolean value travels on a pair of rails of equal polarity, exactly
  one of which carries a signal;
* the circuit is unfolded into a formula tree of two-input AND nodes whose
  edges may be negated; a negated edge exchanges the two rails of a pair by
  leading one of them round the sub-layout that produced it;
* each AND node is one switch cell; the input pair that drives the switch
  pass inputs must arrive later than the pair driving the controls, which is
  arranged by shifting the early sub-layout or inserting retarders;
* input rails start with straight source wires (coordinators) whose first
  bridge holds the source grain when the rail's value matches the input bit.
"""

from __future__ import annotations

import random
import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
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
from .gadgets import CLEARANCE, component_shape
from .grid import Cell, Configuration, Simulation, predict
from .lattice import NEG
from .layout import (
    OPEN_END,
    Board,
    Module,
    and_module,
    bridge_contributions,
    leaf_module,
    resolve,
    wrap,
)
from .scheme import UpdateScheme, as_scheme, normalize, primitive_root

GATE_ARITY = {"NAND": 2, "AND": 2, "OR": 2, "NOT": 1}


# ---------------------------------------------------------------- netlists


@dataclass(frozen=True)
class Gate:
    id: str
    kind: str
    args: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.id} = {self.kind}({','.join(self.args)})"


@dataclass(frozen=True)
class Circuit:
    inputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    output: str

    @property
    def n(self) -> int:
        return len(self.inputs)

    @property
    def primitive(self) -> tuple[Gate, ...]:
        return lower(self.gates)

    @property
    def m(self) -> int:
        """Number of primitive NAND gates after lowering."""
        return len(self.primitive)


_NAME = r"[A-Za-z_][A-Za-z0-9_.~]*"
_GATE_RE = re.compile(rf"^({_NAME})\s*=\s*([A-Za-z]+)\s*\(([^()]*)\)$")


def parse_netlist(text: str) -> Circuit:
    """Parse ``in x1 .. xn`` / ``gID = KIND(a,b)`` / ``out gID`` lines."""
    inputs: list[str] = []
    gates: list[Gate] = []
    known: set[str] = set()
    output = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "in":
            for name in line.split()[1:]:
                if not re.fullmatch(_NAME, name) or name in known:
                    raise ParseError(f"line {lineno}: bad or repeated input name {name!r}")
                inputs.append(name)
                known.add(name)
            continue
        if head == "out":
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: 'out' takes exactly one gate")
            if output is not None:
                raise MultipleOutputs(f"line {lineno}: second output {parts[1]!r}")
            if parts[1] not in known:
                raise ForwardReference(f"line {lineno}: output {parts[1]!r} is not defined above")
            output = parts[1]
            continue
        m = _GATE_RE.match(line)
        if not m:
            raise ParseError(f"line {lineno}: cannot read {line!r}")
        gid, kind, argtext = m.group(1), m.group(2).upper(), m.group(3)
        args = tuple(a.strip() for a in argtext.split(",") if a.strip())
        if kind not in GATE_ARITY:
            raise UnknownGateKind(f"line {lineno}: unknown gate kind {kind!r}")
        if len(args) > 2:
            raise FanInExceeded(f"line {lineno}: {gid} has fan-in {len(args)} (at most 2)")
        if len(args) != GATE_ARITY[kind]:
            raise ParseError(f"line {lineno}: {kind} takes {GATE_ARITY[kind]} argument(s)")
        for a in args:
            if a not in known:
                raise ForwardReference(f"line {lineno}: {gid} uses {a!r} before it is defined")
        if gid in known:
            raise ParseError(f"line {lineno}: {gid!r} defined twice")
        if output is not None:
            raise ParseError(f"line {lineno}: gate after the output line")
        gates.append(Gate(gid, kind, args))
        known.add(gid)
    if output is None:
        if not gates:
            raise ParseError("netlist has no gates and no output")
        output = gates[-1].id
    return Circuit(tuple(inputs), tuple(gates), output)


def format_netlist(c: Circuit) -> str:
    lines = [f"in {' '.join(c.inputs)}"] + [str(g) for g in c.gates] + [f"out {c.output}"]
    return "\n".join(lines) + "\n"


def lower(gates: Sequence[Gate]) -> tuple[Gate, ...]:
    """Rewrite AND, OR and NOT into NAND gates (helper gates get ``~`` ids)."""
    out: list[Gate] = []
    for g in gates:
        if g.kind == "NAND":
            out.append(g)
        elif g.kind == "NOT":
            out.append(Gate(g.id, "NAND", (g.args[0], g.args[0])))
        elif g.kind == "AND":
            t = f"{g.id}~n"
            out += [Gate(t, "NAND", g.args), Gate(g.id, "NAND", (t, t))]
        elif g.kind == "OR":
            a, b = f"{g.id}~a", f"{g.id}~b"
            out += [Gate(a, "NAND", (g.args[0], g.args[0])), Gate(b, "NAND", (g.args[1], g.args[1])),
                    Gate(g.id, "NAND", (a, b))]
        else:
            raise UnknownGateKind(g.kind)
    return tuple(out)


def eval_circuit(c: Circuit, bits: Sequence[int]) -> int:
    if len(bits) != c.n:
        raise ArityMismatch(f"circuit has {c.n} inputs, got {len(bits)} bits")
    val = {name: int(bool(b)) for name, b in zip(c.inputs, bits)}
    for g in c.gates:
        a = [val[x] for x in g.args]
        if g.kind == "NAND":
            r = 1 - (a[0] & a[1])
        elif g.kind == "AND":
            r = a[0] & a[1]
        elif g.kind == "OR":
            r = a[0] | a[1]
        else:
            r = 1 - a[0]
        val[g.id] = r
    return val[c.output]


def random_circuit(rng: random.Random, n_inputs: int, n_gates: int, kinds: Sequence[str] = ("NAND",)) -> Circuit:
    """Random circuit whose last gate is the output; every gate reads earlier signals."""
    inputs = tuple(f"x{i + 1}" for i in range(n_inputs))
    names = list(inputs)
    gates = []
    for j in range(n_gates):
        kind = rng.choice(list(kinds))
        args = tuple(rng.choice(names) for _ in range(GATE_ARITY[kind]))
        gid = f"g{j + 1}"
        gates.append(Gate(gid, kind, args))
        names.append(gid)
    return Circuit(inputs, tuple(gates), gates[-1].id)


# ---------------------------------------------------------------- delay ledger

# largest fixed component delay (the diode) plus a clearance detour on each side
C_D = max(component_shape(k, "+")[2] for k in ("duplicator", "merge", "crossing", "switch", "diode")) \
    + 2 * CLEARANCE


@dataclass(frozen=True)
class DelayLedger:
    """Nominal delay budget D = c_D * m**4 with tile, crossing and gate offsets.

    The compiler times signals exactly from the layout (see :class:`Embedding`);
    the ledger is the polynomial envelope those delays stay inside.
    """

    m: int
    c_D: int
    D: int

    def tile(self, i: int) -> int:
        return i * self.m * self.c_D * self.D

    def crossing(self, i: int, j: int) -> int:
        return self.tile(i) + j * self.c_D * self.D

    def nand(self, i: int, j: int, k: int) -> int:
        return self.crossing(i, j) + k * self.c_D * self.D


def compute_budget(m: int, c_D: int = C_D) -> DelayLedger:
    if m < 1:
        raise ValueError("gate count must be at least 1")
    return DelayLedger(m, c_D, c_D * m**4)


# ---------------------------------------------------------------- formulas


class Leaf:
    __slots__ = ("var",)

    def __init__(self, var: int) -> None:
        self.var = var

    def __repr__(self) -> str:
        return f"x{self.var + 1}"


class AndNode:
    __slots__ = ("left", "right")

    def __init__(self, left: tuple, right: tuple) -> None:
        self.left = left
        self.right = right

    def __repr__(self) -> str:
        return f"AND({_lit_str(self.left)}, {_lit_str(self.right)})"


def _lit_str(lit: tuple) -> str:
    return ("~" if lit[1] else "") + repr(lit[0])


def to_formula(c: Circuit) -> tuple:
    """Literal ``(node, negated)`` equivalent to the circuit output; shared
    sub-circuits become shared nodes that the layout later unfolds."""
    lits: dict[str, tuple] = {name: (Leaf(i), False) for i, name in enumerate(c.inputs)}
    for g in c.primitive:
        a, b = lits[g.args[0]], lits[g.args[1]]
        if a[0] is b[0] and a[1] == b[1]:
            lits[g.id] = (a[0], not a[1])
        else:
            lits[g.id] = (AndNode(a, b), True)
    return lits[c.output]


def formula_eval(lit: tuple, bits: Sequence[int]) -> int:
    node, neg = lit
    if isinstance(node, Leaf):
        v = int(bool(bits[node.var]))
    else:
        v = formula_eval(node.left, bits) & formula_eval(node.right, bits)
    return v ^ int(neg)


def formula_size(lit: tuple) -> int:
    """AND nodes in the fully unfolded tree."""
    node = lit[0]
    if isinstance(node, Leaf):
        return 0
    return 1 + formula_size(node.left) + formula_size(node.right)


# ---------------------------------------------------------------- layout


@dataclass
class CircuitLayout:
    """Scheme-independent block layout of a circuit."""

    circuit: Circuit
    board: Board
    target_bridge: int
    last_cycle_offset: int  # largest (cycle - column) at the target wire's start
    target_start: tuple[int, int]

    @property
    def arrival_cycle(self) -> int:
        """Latest cycle the output signal can reach the start of the target bridge."""
        return self.target_start[0] + self.last_cycle_offset

    @property
    def switches(self):
        return self.board.switches


def _module(lit: tuple, memo: dict) -> Module:
    node, neg = lit
    if isinstance(node, Leaf):
        return leaf_module(node.var, neg)
    key = id(node)
    if key not in memo:
        mu, mw = _module(node.left, memo), _module(node.right, memo)
        d1 = max(mw.phases()) - min(mu.rails[1].phases)
        d2 = max(mu.phases()) - min(mw.rails[1].phases)
        memo[key] = and_module(mu, mw) if d1 <= d2 else and_module(mw, mu)
    m = memo[key]
    return wrap(m) if neg else m


@lru_cache(maxsize=256)
def build_layout(c: Circuit) -> CircuitLayout:
    root, neg = to_formula(c)
    memo: dict = {}
    if isinstance(root, Leaf):
        mod = leaf_module(root.var, neg)
        rail, upward = mod.rails[1], False
    else:
        mod = _module((root, False), memo)
        rail, upward = (mod.rails[0], True) if neg else (mod.rails[1], False)
    board = mod.board.copy()
    c0, r0 = rail.block
    nxt = (c0 + 1, r0 - 1 if upward else r0 + 1)
    if not board.clear(nxt, (rail.block,)):
        raise DegenerateScheme("target wire has no room")  # pragma: no cover - layout invariant
    idx = board.add_chain([rail.block, nxt], rail.polarity, last_kind=OPEN_END)
    return CircuitLayout(c, board, idx, max(rail.phases), rail.block)


# ---------------------------------------------------------------- embeddings

DEFAULT_MAX_CELLS = 200_000_000


@dataclass
class StreamStats:
    columns: int = 0
    column_height: int = 0
    peak_active_bridges: int = 0
    peak_buffered_cells: int = 0


@dataclass
class Embedding:
    """Configuration (generated on demand), target cell and time bound.

    ``time_bound`` counts steps of the given scheme; the target is non-zero at
    some step up to it iff the circuit outputs 1.
    """

    scheme: UpdateScheme
    working: UpdateScheme
    rotated: bool
    wait: int
    layout: CircuitLayout
    bits: tuple[int, ...]
    target: Cell
    time_bound: int
    region: tuple[int, int, int, int]
    sources: frozenset[int] = field(default_factory=frozenset)

    @property
    def time_bound_cycles(self) -> int:
        return -(-self.time_bound // self.scheme.k)

    @property
    def width(self) -> int:
        return self.region[2] - self.region[0] + 1

    @property
    def height(self) -> int:
        return self.region[3] - self.region[1] + 1

    def to_frame(self, cell: Cell) -> Cell:
        """Working-frame cell to the frame of the given scheme."""
        return (cell[1], cell[0]) if self.rotated else cell

    def block_cell(self, blk: tuple[int, int], polarity: str) -> Cell:
        z = self.working
        return self.to_frame((blk[0] * z.h, blk[1] * z.v + (z.v - 1 if polarity == NEG else 0)))

    def _contributions(self, i: int):
        br = self.layout.board.bridges[i]
        return bridge_contributions(br, self.working, i in self.sources, self.wait)

    def cells(self) -> dict[Cell, int]:
        out: dict[Cell, int] = {}
        for i in range(len(self.layout.board.bridges)):
            for cell, g in self._contributions(i):
                cell = self.to_frame(cell)
                old = out.get(cell)
                out[cell] = g if old is None else resolve(old, g)
        return out

    def configuration(self) -> Configuration:
        return Configuration(self.cells())

    def columns(self, stats: StreamStats | None = None) -> Iterator[tuple[int, list[int]]]:
        """Yield ``(x, grains of column x from top to bottom)`` left to right.

        Bridges are swept in order of their leftmost column; only bridges
        overlapping the current column are held, so the working set is one
        column plus the bridges crossing it.
        """
        x0, y0, x1, y1 = self.region
        height = y1 - y0 + 1
        if stats is not None:
            stats.column_height = height if x1 >= x0 else 0
        order = sorted(range(len(self.layout.board.bridges)), key=self._first_column)
        pos = 0
        active: dict[int, dict[int, list[tuple[int, int]]]] = {}
        for x in range(x0, x1 + 1):
            while pos < len(order) and self._first_column(order[pos]) <= x:
                i = order[pos]
                by_col: dict[int, list[tuple[int, int]]] = {}
                for cell, g in self._contributions(i):
                    cx, cy = self.to_frame(cell)
                    by_col.setdefault(cx, []).append((cy, g))
                active[i] = by_col
                pos += 1
            col: list[int | None] = [None] * height
            done = []
            for i, by_col in active.items():
                for cy, g in by_col.pop(x, ()):
                    j = cy - y0
                    old = col[j]
                    col[j] = g if old is None else resolve(old, g)
                if not by_col:
                    done.append(i)
            if stats is not None:
                stats.peak_active_bridges = max(stats.peak_active_bridges, len(active))
                held = sum(len(v) for b in active.values() for v in b.values())
                stats.peak_buffered_cells = max(stats.peak_buffered_cells, held + height)
                stats.columns += 1
            for i in done:
                del active[i]
            yield x, [g or 0 for g in col]

    def _first_column(self, i: int) -> int:
        cache = self.__dict__.setdefault("_fc", {})
        if i not in cache:
            cache[i] = min(self.to_frame(cell)[0] for cell, _ in self._contributions(i))
        return cache[i]


def working_scheme(z: UpdateScheme | str) -> tuple[UpdateScheme, bool, int]:
    """(primitive normalised word, rotated?, wait steps) used to build for ``z``."""
    z = as_scheme(z)
    norm = normalize(z)
    w = primitive_root(norm.normalized)
    if w.h < 2 or w.v < 2:
        raise DegenerateScheme(f"scheme {z.word} has a single H or V per period; blocks would be degenerate")
    return w, norm.rotated, norm.wait_steps


def _region(lay: CircuitLayout, w: UpdateScheme, rotated: bool, wait: int, sources) -> tuple[int, int, int, int]:
    xs0 = ys0 = 10**18
    xs1 = ys1 = -(10**18)
    for i, br in enumerate(lay.board.bridges):
        for (x, y), _ in bridge_contributions(br, w, i in sources, wait):
            if rotated:
                x, y = y, x
            xs0, xs1 = min(xs0, x), max(xs1, x)
            ys0, ys1 = min(ys0, y), max(ys1, y)
    if xs1 < xs0:
        return (0, 0, -1, -1)
    return xs0, ys0, xs1, ys1


def compile_circuit(c: Circuit, bits: Sequence[int], z: UpdateScheme | str,
                    max_cells: int = DEFAULT_MAX_CELLS) -> Embedding:
    """Embedding of circuit ``c`` on input ``bits`` for scheme ``z``."""
    if len(bits) != c.n:
        raise ArityMismatch(f"circuit has {c.n} inputs, got {len(bits)} bits")
    z = as_scheme(z)
    w, rotated, wait = working_scheme(z)
    lay = build_layout(c)
    bits = tuple(int(bool(b)) for b in bits)
    sources = frozenset(leaf.bridge for leaf in lay.board.leaves if leaf.value == bool(bits[leaf.var]))
    region = _region(lay, w, rotated, wait, sources)
    area = (region[2] - region[0] + 1) * (region[3] - region[1] + 1)
    if area > max_cells:
        raise CircuitTooLarge(f"embedding needs {area} cells, cap is {max_cells}")
    tb = lay.board.bridges[lay.target_bridge]
    tcell = bridge_cell_end(tb, w)
    e = Embedding(z, w, rotated, wait, lay, bits, (0, 0), 0, region, sources)
    e.target = e.to_frame(tcell)
    # the output reaches the target during the cycle after it enters the target
    # bridge; one spare cycle is added on top
    e.time_bound = wait + w.k * (lay.arrival_cycle + 2)
    return e


def bridge_cell_end(br, w: UpdateScheme) -> Cell:
    from .layout import bridge_cells

    return bridge_cells(br, w)[-1]


def layout(c: Circuit, z: UpdateScheme | str) -> CircuitLayout:
    """Block layout for ``c``; checks that ``z`` admits the construction."""
    working_scheme(z)
    return build_layout(c)


# ---------------------------------------------------------------- streaming


def emit_stream(e: Embedding | Configuration, sink, scheme: str | None = None,
                stats: StreamStats | None = None) -> StreamStats:
    """Write a column-ordered fungal-cfg to ``sink`` (anything with ``write``)."""
    from .formats import CfgHeader

    stats = stats if stats is not None else StreamStats()
    if isinstance(e, Configuration):
        bb = e.bbox()
        region = bb if bb else (0, 0, -1, -1)
        word = scheme

        def cols():
            for x in range(region[0], region[2] + 1):
                yield x, [e[(x, y)] for y in range(region[1], region[3] + 1)]
                stats.columns += 1
            stats.column_height = region[3] - region[1] + 1 if bb else 0
        columns = cols()
    else:
        region = e.region
        word = e.scheme.word
        columns = e.columns(stats)
    w = region[2] - region[0] + 1
    h = region[3] - region[1] + 1
    hdr = CfgHeader(word, (region[0], region[1]) if w > 0 else (0, 0), (max(w, 0), max(h, 0)), "columns")
    try:
        sink.write(hdr.line() + "\n")
        for _x, col in columns:
            sink.write("".join(map(str, col)) + "\n")
    except (OSError, ValueError, AttributeError, TypeError) as exc:
        raise SinkFailure(f"could not write embedding: {exc}") from exc
    return stats


def write_embedding(e: Embedding, sink, unary: bool = False) -> StreamStats:
    """Manifest lines (scheme, region, target, time bound) then the streamed body."""
    x0, y0, x1, y1 = e.region
    t = ("unary " + "1" * e.time_bound) if unary else str(e.time_bound)
    try:
        sink.write("embedding v1\n")
        sink.write(f"scheme {e.scheme.word}\n")
        sink.write(f"region {x0},{y0} {x1},{y1}\n")
        sink.write(f"target {e.target[0]},{e.target[1]}\n")
        sink.write(f"T {t}\n")
    except (OSError, ValueError, AttributeError, TypeError) as exc:
        raise SinkFailure(f"could not write embedding: {exc}") from exc
    return emit_stream(e, sink)


@dataclass
class ParsedEmbedding:
    scheme: UpdateScheme
    region: tuple[int, int, int, int]
    target: Cell
    time_bound: int
    configuration: Configuration


def read_embedding(text: str) -> ParsedEmbedding:
    from .formats import parse_cfg

    lines = text.splitlines()
    if not lines or lines[0].strip() != "embedding v1":
        raise ParseError("not an embedding manifest")
    meta = {}
    i = 1
    while i < len(lines) and not lines[i].startswith("fungal-cfg"):
        key, _, val = lines[i].partition(" ")
        meta[key] = val.strip()
        i += 1
    try:
        (a, b) = meta["region"].split()
        x0, y0 = map(int, a.split(","))
        x1, y1 = map(int, b.split(","))
        tx, ty = map(int, meta["target"].split(","))
        tval = meta["T"]
        t = len(tval.split()[1]) if tval.startswith("unary") else int(tval)
        z = as_scheme(meta["scheme"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad embedding manifest: {exc}") from exc
    cfg, _ = parse_cfg(lines[i:])
    return ParsedEmbedding(z, (x0, y0, x1, y1), (tx, ty), t, cfg)


# ---------------------------------------------------------------- verification


@dataclass
class SwitchEvent:
    """First forward arrival of a signal at a switch's control and pass inputs.

    A wire of 3s conducts both ways, so a signal that runs through a switch
    can also flow back into an idle control wire.  An arrival counts only if
    the cell just upstream on the incoming wire fired first; back-flow hits
    are counted separately.
    """

    label: str
    ctrl_cell: Cell
    pass_cell: Cell
    ctrl_step: int | None
    pass_step: int | None
    backflow: int = 0

    @property
    def ordered(self) -> bool:
        if self.ctrl_step is None or self.pass_step is None:
            return True
        return self.ctrl_step < self.pass_step


@dataclass
class VerifyReport:
    expected: int
    predicted: bool
    time_bound: int
    target: Cell
    region: tuple[int, int, int, int]
    switch_events: list[SwitchEvent]
    ledger: DelayLedger
    first_divergence: int | None = None

    @property
    def violations(self) -> int:
        return sum(not ev.ordered for ev in self.switch_events)

    @property
    def passed(self) -> bool:
        return bool(self.expected) == self.predicted and self.violations == 0

    def lines(self) -> list[str]:
        out = [
            f"expected {self.expected} predicted {int(self.predicted)} -> {'PASS' if self.passed else 'FAIL'}",
            f"target {self.target[0]},{self.target[1]} T={self.time_bound} steps",
            f"region {self.region[0]},{self.region[1]} {self.region[2]},{self.region[3]}",
            f"ledger m={self.ledger.m} c_D={self.ledger.c_D} D={self.ledger.D}",
        ]
        for ev in self.switch_events:
            if ev.ctrl_step is None and ev.pass_step is None:
                continue
            out.append(f"switch {ev.label} ctrl@{ev.ctrl_step} pass@{ev.pass_step} "
                       f"{'ok' if ev.ordered else 'VIOLATION'}")
        if self.first_divergence is not None:
            out.append(f"first divergence at cycle {self.first_divergence}")
        return out


def _upstream(e: Embedding, blk: tuple[int, int], polarity: str) -> Cell | None:
    """Cell one step before ``blk``'s source cell on the wire arriving there."""
    from .layout import bridge_cells

    for br in e.layout.board.bridges:
        if br.b == blk and br.polarity == polarity:
            return e.to_frame(bridge_cells(br, e.working)[-2])
    return None


def switch_cells(e: Embedding) -> list[tuple[str, Cell, Cell, Cell | None, Cell | None]]:
    """(label, ctrl cell, pass cell, cell before ctrl, cell before pass) per switch."""
    out = []
    for n, s in enumerate(e.layout.switches):
        out.append((f"{n}:{s.label}", e.block_cell(s.ctrl, s.ctrl_polarity),
                     e.block_cell(s.passing, s.pass_polarity),
                     _upstream(e, s.ctrl, s.ctrl_polarity), _upstream(e, s.passing, s.pass_polarity)))
    return out


def _forward(hits: dict, cell: Cell, before: Cell | None) -> tuple[int | None, int]:
    t = hits[cell]
    if t is None or before is None:
        return t, 0
    tb = hits[before]
    if tb is not None and tb < t:
        return t, 0
    return None, 1


def audit_switches(e: Embedding, config: Configuration | None = None) -> list[SwitchEvent]:
    """Simulate up to the time bound and record when a signal first reaches
    each switch's control and pass inputs along their incoming wires."""
    cfg = config if config is not None else e.configuration()
    cells = switch_cells(e)
    probes = sorted({c for row in cells for c in row[1:] if c is not None})
    sim = Simulation(cfg, e.scheme, probes=probes)
    sim.run(e.time_bound)
    hits = sim.hits()
    out = []
    for label, c, p, cb, pb in cells:
        tc, bc = _forward(hits, c, cb)
        tp, bp = _forward(hits, p, pb)
        out.append(SwitchEvent(label, c, p, tc, tp, bc + bp))
    return out


def first_divergence(a: Configuration, b: Configuration, z: UpdateScheme, cycles: int) -> int | None:
    """First cycle boundary at which two evolutions differ in their signals
    or in a cell where the starting configurations agreed."""
    seed = {c for c in set(a) | set(b) if a[c] != b[c]}
    sa, sb = Simulation(a, z), Simulation(b, z)
    for i in range(cycles + 1):
        ca, cb = sa.configuration(), sb.configuration()
        if sa.signals() != sb.signals() or any(ca[c] != cb[c] for c in (set(ca) | set(cb)) - seed):
            return i
        sa.run(z.k)
        sb.run(z.k)
    return None


def verify_embedding(c: Circuit, e: Embedding, config: Configuration | None = None) -> VerifyReport:
    clean = e.configuration()
    cfg = config if config is not None else clean
    expected = eval_circuit(c, e.bits)
    predicted = predict(cfg, e.target, e.time_bound, e.scheme)
    events = audit_switches(e, cfg)
    report = VerifyReport(expected, predicted, e.time_bound, e.target, e.region, events,
                          compute_budget(max(c.m, 1)))
    if config is not None and not report.passed:
        report.first_divergence = first_divergence(clean, cfg, e.scheme, e.time_bound_cycles)
    return report


def verify(c: Circuit, bits: Sequence[int], z: UpdateScheme | str) -> VerifyReport:
    return verify_embedding(c, compile_circuit(c, bits, z))


def corrupt(e: Embedding, cell: Cell | None = None) -> Configuration:
    """Copy of the embedding with one grain zeroed (by default the first cell
    after the start of the target bridge)."""
    cfg = e.configuration()
    if cell is None:
        from .layout import bridge_cells

        cell = e.to_frame(bridge_cells(e.layout.board.bridges[e.layout.target_bridge], e.working)[1])
    return cfg.updated({cell: 0})


def all_inputs(n: int) -> Iterable[tuple[int, ...]]:
    for v in range(2**n):
        yield tuple((v >> (n - 1 - i)) & 1 for i in range(n))


__all__ = [
    "C_D", "Circuit", "CircuitLayout", "DelayLedger", "Embedding", "Gate", "ParsedEmbedding", "StreamStats",
    "SwitchEvent", "VerifyReport", "all_inputs", "audit_switches", "build_layout", "compile_circuit",
    "compute_budget", "corrupt", "emit_stream", "eval_circuit", "first_divergence", "format_netlist",
    "formula_eval", "formula_size", "layout", "lower", "parse_netlist", "random_circuit", "read_embedding",
    "to_formula", "verify", "verify_embedding", "working_scheme", "write_embedding",
]
