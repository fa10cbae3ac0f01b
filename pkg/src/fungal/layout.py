"""Block-level layout: boards of bridges, a monotone router, rail wraps,
retarder insertion and the dual-rail AND cell.

Everything here lives on the block lattice and is independent of the update
scheme; :func:`materialize` turns a board into grains for a concrete scheme.
Two blocks belonging to unrelated parts of a board always keep a Chebyshev
distance of at least two, which :func:`check_isolation` confirms at cell level.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BrokenChain, NotDiagonal, RoutingError
from .gadgets import (
    SINK_AT_END,
    SINK_BEFORE_END,
    check_chain,
    component_shape,
    retarder_blocks,
    retarder_range,
)
from .lattice import NEG, POS
from .scheme import UpdateScheme, as_scheme

Blk = tuple[int, int]

OPEN_END = "open"  # bridge whose final cell is left empty (used for the target)
SOURCE = "source"


def _flip(p: str) -> str:
    return NEG if p == POS else POS


@dataclass(frozen=True)
class BlockBridge:
    a: Blk
    b: Blk
    polarity: str
    kind: str = "plain"


@dataclass(frozen=True)
class Rail:
    """End of a wire at a module's right edge and the phases it may carry.

    A phase is ``cycle - column`` of the signal; it is unchanged by rightward
    bridges and grows by two for every leftward one.
    """

    block: Blk
    polarity: str
    phases: frozenset[int]


@dataclass(frozen=True)
class SwitchRecord:
    ctrl: Blk
    ctrl_polarity: str
    passing: Blk
    pass_polarity: str
    label: str = ""


@dataclass(frozen=True)
class LeafRail:
    """First bridge of an input rail: it carries the source grain when the
    input bit equals ``value``."""

    var: int
    value: bool
    bridge: int


@dataclass
class Board:
    bridges: list[BlockBridge] = field(default_factory=list)
    occupied: set[Blk] = field(default_factory=set)
    switches: list[SwitchRecord] = field(default_factory=list)
    leaves: list[LeafRail] = field(default_factory=list)

    # ------------------------------------------------------------ building

    def add_bridge(self, a: Blk, b: Blk, polarity: str, kind: str = "plain") -> int:
        if abs(a[0] - b[0]) != 1 or abs(a[1] - b[1]) != 1:
            raise NotDiagonal(f"blocks {a} and {b} are not diagonally connected")
        self.bridges.append(BlockBridge(a, b, polarity, kind))
        self.occupied.add(a)
        self.occupied.add(b)
        return len(self.bridges) - 1

    def add_chain(self, blocks: Sequence[Blk], polarity: str, first_kind: str = "plain",
                  last_kind: str = "plain") -> int:
        """Add a semi-wire; returns the index of its first bridge."""
        check_chain(blocks)
        first = len(self.bridges)
        n = len(blocks) - 1
        for i in range(n):
            kind = first_kind if i == 0 else "plain"
            if i == n - 1 and last_kind != "plain":
                kind = last_kind
            self.add_bridge(blocks[i], blocks[i + 1], polarity, kind)
        return first

    def place(self, kind: str, polarity: str, anchor: Blk, params: Mapping | None = None,
              label: str = "") -> dict[str, tuple[Blk, str]]:
        """Place a library component; returns its pins as name -> (block, polarity)."""
        br, pins, _ = component_shape(kind, polarity, params)
        ax, ay = anchor
        for a, b, pol, k in br:
            self.add_bridge((a[0] + ax, a[1] + ay), (b[0] + ax, b[1] + ay), pol, k)
        out = {name: ((blk[0] + ax, blk[1] + ay), pol) for name, (blk, pol, _d, _s) in pins.items()}
        if kind == "switch":
            self.switches.append(SwitchRecord(out["ctrl"][0], out["ctrl"][1], out["pass"][0],
                                              out["pass"][1], label))
        return out

    # ------------------------------------------------------------ geometry

    def clear(self, blk: Blk, allow: Iterable[Blk] = ()) -> bool:
        """No occupied block within Chebyshev distance 1, except ``allow``."""
        occ = self.occupied
        x, y = blk
        allow = set(allow)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                nb = (x + dx, y + dy)
                if nb in occ and nb not in allow:
                    return False
        return True

    def crowding(self, blk: Blk) -> int:
        occ = self.occupied
        x, y = blk
        return sum((x + dx, y + dy) in occ for dx in (-2, -1, 0, 1, 2) for dy in (-2, -1, 0, 1, 2))

    def bbox(self) -> tuple[int, int, int, int]:
        if not self.occupied:
            return (0, 0, -1, -1)
        xs = [b[0] for b in self.occupied]
        ys = [b[1] for b in self.occupied]
        return min(xs), min(ys), max(xs), max(ys)

    def route(self, start: Blk, goal: Blk, polarity: str, approach: str = "any",
              margin: int = 24) -> list[Blk]:
        """Monotone rightward wire from ``start`` to ``goal`` avoiding everything else.

        ``approach`` forces the side ("above"/"below") the wire reaches the goal
        from.  Intermediate blocks keep distance two from all occupied blocks
        other than the two end points.  The wire is added to the board.
        """
        sc, sr = start
        gc, gr = goal
        n = gc - sc
        if n < 1 or abs(gr - sr) > n or (gr - sr - n) % 2:
            raise RoutingError(f"no monotone wire from {start} to {goal}")
        if approach == "above":
            last = {gr - 1}
        elif approach == "below":
            last = {gr + 1}
        else:
            last = {gr - 1, gr + 1}
        if n == 1:
            if sr not in last:
                raise RoutingError(f"{start} reaches {goal} from the wrong side")
            self.add_bridge(start, goal, polarity)
            return [start, goal]
        lo, hi = min(sr, gr) - margin, max(sr, gr) + margin
        ends = (start, goal)
        layers: list[dict[int, tuple[float, int]]] = []
        layer = {sr: (0.0, sr)}
        for c in range(sc + 1, gc):
            remaining = gc - c
            nxt: dict[int, tuple[float, int]] = {}
            for r, (cost, _) in layer.items():
                for r2 in (r - 1, r + 1):
                    if not lo <= r2 <= hi or abs(gr - r2) > remaining:
                        continue
                    if remaining == 1 and r2 not in last:
                        continue
                    if r2 in nxt and nxt[r2][0] <= cost:
                        continue
                    if not self.clear((c, r2), ends):
                        continue
                    w = cost + abs(r2 - gr) + 2 * self.crowding((c, r2))
                    if r2 not in nxt or w < nxt[r2][0]:
                        nxt[r2] = (w, r)
            if not nxt:
                raise RoutingError(f"no free wire from {start} to {goal}")
            layers.append(nxt)
            layer = nxt
        r = min(layer, key=lambda q: layer[q][0])
        rows = [r]
        for lay in reversed(layers[1:]):
            r = lay[r][1]
            rows.append(r)
        rows.reverse()
        blocks = [start] + [(sc + 1 + i, q) for i, q in enumerate(rows)] + [goal]
        self.add_chain(blocks, polarity)
        return blocks

    def follow(self, blocks: Sequence[Blk], polarity: str) -> list[Blk]:
        """Add a wire along explicit blocks after checking clearance."""
        blocks = list(blocks)
        check_chain(blocks)
        for blk in blocks[1:-1]:
            if not self.clear(blk, (blocks[0], blocks[-1])):
                raise RoutingError(f"block {blk} of a wire touches other parts of the layout")
        self.add_chain(blocks, polarity)
        return blocks

    # ------------------------------------------------------------ composition

    def absorb(self, other: Board, dx: int = 0, dy: int = 0, mirror: bool = False) -> int:
        """Copy ``other`` into this board, optionally mirrored top-to-bottom
        (rows negated, polarities exchanged) and then shifted.  Returns the
        bridge index offset."""
        t = transform(dx, dy, mirror)
        off = len(self.bridges)
        for br in other.bridges:
            self.bridges.append(BlockBridge(t(br.a), t(br.b), _flip(br.polarity) if mirror else br.polarity,
                                            br.kind))
        self.occupied.update(t(b) for b in other.occupied)
        for s in other.switches:
            self.switches.append(SwitchRecord(
                t(s.ctrl), _flip(s.ctrl_polarity) if mirror else s.ctrl_polarity,
                t(s.passing), _flip(s.pass_polarity) if mirror else s.pass_polarity, s.label))
        for leaf in other.leaves:
            self.leaves.append(LeafRail(leaf.var, leaf.value, leaf.bridge + off))
        return off

    def copy(self) -> Board:
        b = Board()
        b.absorb(self)
        return b


def transform(dx: int, dy: int, mirror: bool):
    if mirror:
        return lambda blk: (blk[0] + dx, -blk[1] + dy)
    return lambda blk: (blk[0] + dx, blk[1] + dy)


# ---------------------------------------------------------------- wire shapes


def polyline(points: Sequence[Blk]) -> list[Blk]:
    """Blocks of a wire through waypoints.  Each leg runs diagonally first and
    then zigzags straight along its dominant axis."""
    out = [tuple(points[0])]
    for p, q in itertools.pairwise(points):
        dc, dr = q[0] - p[0], q[1] - p[1]
        if (dc + dr) % 2:
            raise BrokenChain(f"waypoints {p} and {q} differ in parity")
        sc = 1 if dc > 0 else -1
        sr = 1 if dr > 0 else -1
        c, r = p
        if abs(dc) >= abs(dr):
            for _ in range(abs(dr)):
                c, r = c + sc, r + sr
                out.append((c, r))
            zig = -1
            while c != q[0]:
                c, r = c + sc, r + zig
                zig = -zig
                out.append((c, r))
        else:
            for _ in range(abs(dc)):
                c, r = c + sc, r + sr
                out.append((c, r))
            zig = 1
            while r != q[1]:
                c, r = c + zig, r + sr
                zig = -zig
                out.append((c, r))
        if (c, r) != tuple(q):
            raise BrokenChain(f"leg {p} -> {q} cannot be drawn")
    return out


def phase_gain(blocks: Sequence[Blk]) -> int:
    """Phase added by a wire: two per leftward bridge."""
    return sum(2 for a, b in itertools.pairwise(blocks) if b[0] < a[0])


def shift_phases(ph: Iterable[int], d: int) -> frozenset[int]:
    return frozenset(p + d for p in ph)


# ---------------------------------------------------------------- modules


@dataclass
class Module:
    """A board whose two output rails (top, bottom) end on its right edge.

    Modules are kept in positive orientation: both rails are positive and the
    bottom one is the inner rail that carries the module's value.  Mirroring
    gives the negative orientation with the inner rail on top.
    """

    board: Board
    rails: tuple[Rail, Rail]

    @property
    def right(self) -> int:
        return self.rails[0].block[0]

    def phases(self) -> frozenset[int]:
        return self.rails[0].phases | self.rails[1].phases


LEAF_SPACING = 4
COORDINATOR_LENGTH = 4


def leaf_module(var: int, negated: bool) -> Module:
    """Two parallel coordinator wires with source bridges; the inner (bottom)
    rail is the one that fires when the literal is true."""
    b = Board()
    m = COORDINATOR_LENGTH
    rails = []
    for row0, value in ((0, negated), (LEAF_SPACING, not negated)):
        blocks = [(j, row0 + j) for j in range(m + 1)]
        first = b.add_chain(blocks, POS)
        # the block above the source may hold the lead-in of a delayed start
        b.occupied.add((0, row0 - 1))
        b.leaves.append(LeafRail(var, value, first))
        rails.append(Rail(blocks[-1], POS, frozenset({0})))
    return Module(b, (rails[0], rails[1]))


def extend_rails(mod: Module, column: int) -> Module:
    """Carry both rails straight on to ``column`` (same parity as the rails)."""
    top, bot = mod.rails
    if column == top.block[0]:
        return mod
    if (column - top.block[0]) % 2:
        column += 1
    b = mod.board.copy()
    new = []
    for rail in (top, bot):
        c, r = rail.block
        blocks = [(c, r)]
        up = rail is top
        for i in range(column - c):
            blocks.append((c + i + 1, r + ((-1 if up else 1) if i % 2 == 0 else 0)))
        b.follow(blocks, rail.polarity)
        new.append(Rail(blocks[-1], rail.polarity, rail.phases))
    return Module(b, (new[0], new[1]))


def wrap(mod: Module) -> Module:
    """Exchange the module's rails by leading the top rail round the whole
    module: up, left along the top, down the left side, right along the
    bottom and up the right side until it sits below the former bottom rail."""
    c1 = mod.board.bbox()[2]
    mod = extend_rails(mod, c1) if mod.right != c1 else Module(mod.board.copy(), mod.rails)
    b = mod.board
    c0, r0, c1, r1 = b.bbox()
    top, bot = mod.rails
    (ct, rt), (cb, rb) = top.block, bot.block
    par = (ct + rt) % 2
    xr = c1 + 2
    rtop = r0 - 4
    if (xr + rtop) % 2 != (xr + rt) % 2:
        rtop -= 1
    xl = c0 - 3
    if xl % 2 != xr % 2:
        xl -= 1
    rbot = r1 + 3
    if rbot % 2 != rtop % 2:
        rbot += 1
    r_new = rb + 4
    xe = xr + 4
    pts = [(ct, rt), (xr, rt - 2), (xr, rtop + 2), (xr - 2, rtop), (xl + 2, rtop), (xl, rtop + 2),
           (xl, rbot - 2), (xl + 2, rbot), (xr - 2, rbot), (xr, rbot - 2), (xr, r_new + 2), (xe, r_new)]
    assert all((p[0] + p[1]) % 2 == par for p in pts)
    # inner rail: straight on to the new right edge
    inner = [(cb, rb)]
    for i in range(xe - cb):
        inner.append((cb + i + 1, rb + (1 if i % 2 == 0 else 0)))
    b.follow(inner, bot.polarity)
    outer = polyline(pts)
    b.follow(outer, top.polarity)
    return Module(b, (Rail(inner[-1], bot.polarity, bot.phases),
                      Rail(outer[-1], top.polarity, shift_phases(top.phases, phase_gain(outer)))))


# ---------------------------------------------------------------- retarders


def retarder_for_gain(gain: int) -> tuple[int, int]:
    """Smallest side L and the delay that adds ``gain`` (even) to the phase."""
    if gain % 2 or gain < 0:
        raise ValueError("retarder gains are even and non-negative")
    L = 8
    while True:
        lo, hi = retarder_range(L)
        if hi - lo >= gain:
            return L, lo + gain
        L += 1


def add_retarder(board: Board, rail: Rail, gain: int, upward: bool, lead: int = 4) -> Rail:
    """Insert a retarder after ``rail``: a short diagonal lead and a strip snake
    growing up or down from where the lead ends."""
    c, r = rail.block
    lead_blocks = [(c, r)]
    for i in range(lead):
        # the lead climbs diagonally away from the other rail: that keeps the
        # two retarders apart and meets the snake's first strip from the side
        # it does not fold back over
        lead_blocks.append((c + i + 1, r + (-(i + 1) if upward else i + 1)))
    L, delay = retarder_for_gain(gain)
    snake = retarder_blocks(L, delay)
    sc, sr = lead_blocks[-1]
    placed = [(sc + x, sr - (y - 2) if upward else sr + (y - 2)) for x, y in snake]
    blocks = lead_blocks + placed[1:]
    board.follow(blocks, rail.polarity)
    return Rail(blocks[-1], rail.polarity, shift_phases(rail.phases, phase_gain(blocks)))


# ---------------------------------------------------------------- the AND cell

# Input pins of the cell (column 0) and output pins, in cell coordinates.
CELL_IN = {"a_out": (0, -4), "a_in": (0, 0), "b_in": (0, 5), "b_out": (0, 9)}
CELL_OUT = {"top": (14, 2), "bottom": (14, 8)}


@lru_cache(maxsize=1)
def _cell_template() -> Board:
    """Positive-orientation cell.  Inputs: pair a (top, late) and pair b (bottom,
    early, negative).  The bottom output fires iff both inner inputs fired; the
    top output fires otherwise."""
    b = Board()
    dup = b.place("duplicator", POS, (1, 0))
    s1 = b.place("switch", POS, (2, 1), label="first")
    x = b.place("crossing", POS, (4, 3))
    s2 = b.place("switch", POS, (6, 1), label="second")
    mg = b.place("merge", POS, (10, 2))
    assert dup["out_down"][0] == s1["pass"][0]
    assert s1["out"][0] == x["in_pos"][0]
    assert x["out_neg"][0] == s2["ctrl"][0]
    b.add_bridge(CELL_IN["a_in"], dup["in"][0], POS)
    b.route(dup["out_up"][0], s2["pass"][0], POS, "above")
    b.route(s2["out"][0], mg["in_down"][0], POS, "below")
    b.route(CELL_IN["a_out"], mg["in_up"][0], POS, "above")
    b.route(CELL_IN["b_in"], s1["ctrl"][0], NEG, "below")
    b.route(CELL_IN["b_out"], x["in_neg"][0], NEG, "below")
    b.route(mg["out"][0], CELL_OUT["top"], POS)
    b.route(x["out_pos"][0], CELL_OUT["bottom"], POS)
    return b


def cell_board() -> Board:
    return _cell_template().copy()


SHIFT_LIMIT = 12
GAP = 3


def _route_group(board: Board, jobs: list[tuple[Blk, Blk, str]]) -> None:
    """Route several parallel wires, ordering them so that wires heading down
    are laid bottom first and wires heading up top first."""
    down = sum(g[1] - s[1] for s, g, _ in jobs)
    order = sorted(jobs, key=lambda j: j[0][1], reverse=down > 0)
    for s, g, pol in order:
        board.route(s, g, pol)


def and_module(late: Module, early: Module) -> Module:
    """Cell whose bottom (inner) output carries AND of the inner rails of
    ``late`` (placed on top) and ``early`` (mirrored below).  The late module's
    inner rail feeds both switches' pass inputs, so every phase it carries must
    exceed every phase of the early module; the early module is shifted right
    or the late rails are retarded until that holds."""
    need = max(early.phases()) - min(late.rails[1].phases) + 1
    board = Board()
    board.absorb(late.board)
    lt, li = late.rails
    x_early = 0
    if need > SHIFT_LIMIT:
        gain = need + (need % 2)
        lt = add_retarder(board, lt, gain, upward=True)
        li = add_retarder(board, li, gain, upward=False)
    elif need > 0:
        x_early = need
    # place the early module mirrored below everything so far
    _, _, _, lr1 = board.bbox()
    _ec0, _er0, _ec1, er1 = early.board.bbox()
    # mirrored rows: r -> dy - r ; its top becomes dy - er1
    dy = lr1 + GAP + er1
    et_m, ei_m = early.rails
    # mirrored: inner (bottom) rail goes on top
    e_in_blk = (ei_m.block[0] + x_early, dy - ei_m.block[1])
    if (e_in_blk[0] + e_in_blk[1]) % 2 == (li.block[0] + li.block[1]) % 2:
        dy += 1
    board.absorb(early.board, x_early, dy, mirror=True)
    e_in = Rail((ei_m.block[0] + x_early, dy - ei_m.block[1]), NEG, shift_phases(ei_m.phases, -x_early))
    e_out = Rail((et_m.block[0] + x_early, dy - et_m.block[1]), NEG, shift_phases(et_m.phases, -x_early))
    assert max(e_in.phases | e_out.phases) < min(li.phases)
    # cell position: rows centred between the two pairs
    targets = {"a_out": lt.block, "a_in": li.block, "b_in": e_in.block, "b_out": e_out.block}
    offs = sorted(targets[n][1] - CELL_IN[n][1] for n in targets)
    yc = (offs[0] + offs[-1]) // 2
    right = max(board.bbox()[2], lt.block[0], li.block[0], e_in.block[0])
    spread = max(abs(targets[n][1] - (CELL_IN[n][1] + yc)) for n in targets) + 1
    xc = max(right + 2, max(lt.block[0], li.block[0], e_in.block[0]) + spread + 2)
    if (xc + yc) % 2 != (li.block[0] + li.block[1]) % 2:
        yc += 1
    for _attempt in range(12):
        trial = board.copy()
        cell = cell_board()
        if trial.occupied & {(x + xc, y + yc) for x, y in cell.occupied}:
            xc += 2
            continue
        trial.absorb(cell, xc, yc)
        try:
            _route_group(trial, [
                (lt.block, (xc, yc + CELL_IN["a_out"][1]), POS),
                (li.block, (xc, yc + CELL_IN["a_in"][1]), POS),
            ])
            _route_group(trial, [
                (e_in.block, (xc, yc + CELL_IN["b_in"][1]), NEG),
                (e_out.block, (xc, yc + CELL_IN["b_out"][1]), NEG),
            ])
        except RoutingError:
            xc += 2
            continue
        top = Rail((xc + CELL_OUT["top"][0], yc + CELL_OUT["top"][1]), POS, lt.phases | li.phases)
        bottom = Rail((xc + CELL_OUT["bottom"][0], yc + CELL_OUT["bottom"][1]), POS, li.phases)
        return Module(trial, (top, bottom))
    raise RoutingError("could not wire the AND cell")


# ---------------------------------------------------------------- materialising


@lru_cache(maxsize=64)
def _offsets(word: str, alpha: int, beta: int) -> tuple[tuple[int, int], ...]:
    x = y = 0
    out = [(0, 0)]
    for s in word:
        if s == "H":
            x += alpha
        else:
            y += beta
        out.append((x, y))
    return tuple(out)


def bridge_cells(br: BlockBridge, z: UpdateScheme) -> list[tuple[int, int]]:
    h, v = z.h, z.v
    ax, ay = br.a
    sx, sy = ax * h, ay * v + (v - 1 if br.polarity == NEG else 0)
    alpha = 1 if br.b[0] > ax else -1
    beta = 1 if br.b[1] > ay else -1
    return [(sx + dx, sy + dy) for dx, dy in _offsets(z.word, alpha, beta)]


def bridge_contributions(br: BlockBridge, z: UpdateScheme, source: bool = False, wait: int = 0):
    """(cell, grains) pairs one bridge lays down.  A source bridge carries a 4
    on its first cell; with ``wait`` > 0 the 4 instead sits ``wait`` cells
    away on a vertical lead of 3s so that it arrives after ``wait`` V steps."""
    path = bridge_cells(br, z)
    k = z.k
    kind = br.kind
    twos: tuple = ()
    if kind == SINK_BEFORE_END:
        threes, twos = path[: k - 1], (path[k - 1],)
    elif kind == SINK_AT_END:
        threes, twos = path[:k], (path[k],)
    elif kind == OPEN_END:
        threes = path[:k]
    else:
        threes = path
    for cell in threes:
        yield cell, 3
    for cell in twos:
        yield cell, 2
    if source:
        x, y = path[0]
        if wait == 0:
            yield (x, y), 4
        else:
            back = -1 if br.b[1] > br.a[1] else 1
            for j in range(1, wait + 1):
                yield (x, y + back * j), 4 if j == wait else 3


# where contributions overlap a 4 beats a 2, which beats a 3
_RANK = {3: 0, 2: 1, 4: 2}


def resolve(old: int | None, new: int) -> int:
    return new if old is None or _RANK[new] > _RANK[old] else old


def materialize(board: Board, z: UpdateScheme | str, sources: Iterable[int] = (), wait: int = 0) -> dict:
    """Grain map of the board for scheme ``z``; bridges listed in ``sources``
    carry the source grain."""
    z = as_scheme(z)
    src = set(sources)
    cells: dict[tuple[int, int], int] = {}
    for i, br in enumerate(board.bridges):
        for cell, g in bridge_contributions(br, z, i in src, wait):
            old = cells.get(cell)
            cells[cell] = g if old is None else resolve(old, g)
    return cells


def affected(br: BlockBridge, z: UpdateScheme) -> set[tuple[int, int]]:
    path = bridge_cells(br, z)
    out = set(path)
    for i in range(len(path) - 1):
        x, y = path[i]
        if z.word[i] == "H":
            out.update(((x - 1, y), (x + 1, y)))
        else:
            out.update(((x, y - 1), (x, y + 1)))
    return out


def check_isolation(board: Board, z: UpdateScheme | str) -> list[tuple[int, int]]:
    """Pairs of bridges whose end blocks are at least two blocks apart but
    whose affected neighbourhoods meet.  An empty list means the layout keeps
    unrelated parts from exchanging grains."""
    z = as_scheme(z)
    owners: dict[tuple[int, int], list[int]] = {}
    for i, br in enumerate(board.bridges):
        for cell in affected(br, z):
            owners.setdefault(cell, []).append(i)
    bad = set()
    for idx in owners.values():
        if len(idx) < 2:
            continue
        for x in range(len(idx)):
            for y in range(x + 1, len(idx)):
                i, j = idx[x], idx[y]
                b1, b2 = board.bridges[i], board.bridges[j]
                close = any(max(abs(p[0] - q[0]), abs(p[1] - q[1])) <= 1
                            for p in (b1.a, b1.b) for q in (b2.a, b2.b))
                if not close:
                    bad.add((i, j))
    return sorted(bad)


__all__ = [
    "CELL_IN",
    "CELL_OUT",
    "OPEN_END",
    "Blk",
    "BlockBridge",
    "Board",
    "LeafRail",
    "Module",
    "Rail",
    "SwitchRecord",
    "add_retarder",
    "affected",
    "and_module",
    "bridge_cells",
    "bridge_contributions",
    "cell_board",
    "check_isolation",
    "extend_rails",
    "leaf_module",
    "materialize",
    "phase_gain",
    "polyline",
    "resolve",
    "retarder_for_gain",
    "wrap",
]
