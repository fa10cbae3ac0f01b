"""Component library built from bridges: wires, splitters, joins, crossings,
switches, diodes, retarders and coordinators, plus a harness that drives a
component with timed input signals and reports when its outputs fire.

All components are described in block coordinates relative to an anchor
block, so the same description works for every admissible scheme.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .errors import (
    BrokenChain,
    DelayOutOfRange,
    FootprintCollision,
    HorizonTooSmall,
    IllegalDiagonalShortcut,
    OrientationViolation,
    PolarityMismatch,
    SimultaneousArrival,
)
from .grid import Configuration, Simulation
from .lattice import (
    NEG,
    PLAIN,
    POS,
    SOURCE,
    Block,
    BridgeKind,
    Gadget,
    Pin,
    bridge_between,
    combine_all,
    make_pin,
)
from .scheme import UpdateScheme, as_scheme, shifted_cycles

BlockIx = tuple[int, int]

KINDS = ("duplicator", "merge", "crossing", "switch", "diode", "retarder", "coordinator")
CLEARANCE = 2


def _diag(a: BlockIx, b: BlockIx) -> bool:
    return abs(a[0] - b[0]) == 1 and abs(a[1] - b[1]) == 1


def arrival_side(prev: BlockIx, cur: BlockIx) -> str:
    """Side a wire touches ``cur`` from when its previous block is ``prev``."""
    return "above" if prev[1] < cur[1] else "below"


# ---------------------------------------------------------------- semi-wires


@dataclass
class SemiWire:
    blocks: list[BlockIx]
    polarity: str
    gadget: Gadget

    @property
    def m(self) -> int:
        return len(self.blocks) - 1


def check_chain(blocks: Sequence[BlockIx]) -> None:
    """Consecutive blocks diagonal, no block repeated, no shortcut between
    non-consecutive blocks."""
    if len(blocks) < 2:
        raise BrokenChain("a wire needs at least two blocks")
    for i in range(len(blocks) - 1):
        if not _diag(blocks[i], blocks[i + 1]):
            raise BrokenChain(f"blocks {blocks[i]} and {blocks[i + 1]} are not diagonally connected")
    if len(set(blocks)) != len(blocks):
        raise BrokenChain("a wire visits the same block twice")
    index: dict[BlockIx, int] = {b: i for i, b in enumerate(blocks)}
    for i, (x, y) in enumerate(blocks):
        for dx in (-1, 1):
            for dy in (-1, 1):
                j = index.get((x + dx, y + dy))
                if j is not None and abs(i - j) > 1:
                    raise IllegalDiagonalShortcut(
                        f"blocks {blocks[min(i, j)]} and {blocks[max(i, j)]} are diagonally connected"
                    )


def chain_bridges(blocks: Sequence[BlockIx], polarity: str, z: UpdateScheme, source: bool = False,
                  last_kind: BridgeKind | None = None):
    out = []
    n = len(blocks) - 1
    for i in range(n):
        kind = SOURCE if (i == 0 and source) else PLAIN
        if i == n - 1 and last_kind is not None:
            kind = BridgeKind(kind.source or last_kind.source, last_kind.sink)
        out.append(bridge_between(blocks[i], blocks[i + 1], polarity, z, kind))
    return out


def build_semi_wire(
    blocks: Sequence[BlockIx], polarity: str, z: UpdateScheme | str, source: bool = False
) -> SemiWire:
    z = as_scheme(z)
    blocks = [tuple(b) for b in blocks]
    check_chain(blocks)
    bridges = chain_bridges(blocks, polarity, z, source)
    pins = {
        "in": make_pin(blocks[0], polarity, "in", z),
        "out": make_pin(blocks[-1], polarity, "out", z, arrival_side(blocks[-2], blocks[-1])),
    }
    g = Gadget(z, bridges, pins, frozenset(blocks), len(blocks) - 1, "semi-wire")
    return SemiWire(list(blocks), polarity, g)


# ---------------------------------------------------------------- components


@dataclass
class ComponentSpec:
    kind: str
    polarity: str
    anchor: BlockIx
    gadget: Gadget
    params: dict = field(default_factory=dict)

    @property
    def delay(self) -> int:
        return self.gadget.delay

    @property
    def pins(self) -> dict[str, Pin]:
        return self.gadget.pins


def _flip(p: str) -> str:
    return NEG if p == POS else POS


def retarder_range(L: int) -> tuple[int, int]:
    """Smallest and largest delay of a retarder of side ``L`` (all even values between)."""
    if L < 8:
        raise DelayOutOfRange(f"retarder side {L} below the minimum of 8")
    s, depth = L // 8, L - 5
    return 8 * s, 8 * s + 2 * s * depth


def retarder_side_for(delay: int) -> int:
    """Smallest side whose range covers ``delay`` (which must be even and at least 8)."""
    if delay < 8 or delay % 2:
        raise DelayOutOfRange(f"retarder delays are even and at least 8, got {delay}")
    L = 8
    while True:
        lo, hi = retarder_range(L)
        if lo <= delay <= hi:
            return L
        if delay < lo:
            raise DelayOutOfRange(f"no side realises delay {delay}")
        L += 1


def retarder_blocks(L: int, delay: int) -> list[BlockIx]:
    """Snake of vertical strips.  Each strip pair runs down ``p`` rows on two
    columns, turns at the bottom, climbs back on two columns four to the right
    and turns again at the top; a pair costs ``2p + 8`` cycles over 8 columns."""
    lo, hi = retarder_range(L)
    if not lo <= delay <= hi or (delay - lo) % 2:
        raise DelayOutOfRange(f"delay {delay} outside {lo}..{hi} (even) for side {L}")
    s, depth = L // 8, L - 5
    extra = (delay - lo) // 2
    depths = []
    for _ in range(s):
        p = min(depth, extra)
        depths.append(p)
        extra -= p
    blocks = [(0, 2)]
    c, r = 0, 2

    def mv(dc: int, dr: int) -> None:
        nonlocal c, r
        c += dc
        r += dr
        blocks.append((c, r))

    for j, p in enumerate(depths):
        for _ in range(p):
            mv(1 if (c - 8 * j) % 2 == 0 else -1, 1)
        for dc, dr in ((1, 1), (1, 1), (1, -1), (1, -1)):
            mv(dc, dr)
        for _ in range(p):
            mv(1 if (c - 8 * j - 4) % 2 == 0 else -1, -1)
        for dc, dr in ((1, -1), (1, -1), (1, 1), (1, 1)):
            mv(dc, dr)
    return blocks


DIODE_UPPER = [(3, 2), (4, 1), (5, 0), (6, 1), (7, 2)]
DIODE_LOWER = [(3, 2), (4, 3), (5, 4), (6, 3), (7, 2)]
DIODE_IN = [(0, 1), (1, 2), (2, 1), (3, 2)]
DIODE_OUT = [(7, 2), (8, 1), (9, 2), (10, 1)]


SINK_BEFORE_END = "sink:k-1"
SINK_AT_END = "sink:k"


def resolve_kind(kind: BridgeKind | str, z: UpdateScheme) -> BridgeKind:
    """Turn a scheme-independent kind ("plain", "source", "sink:k-1", "sink:k") into a BridgeKind."""
    if isinstance(kind, BridgeKind):
        return kind
    if kind == SINK_BEFORE_END:
        return BridgeKind(False, z.k - 1)
    if kind == SINK_AT_END:
        return BridgeKind(False, z.k)
    return BridgeKind.parse(kind)


def component_shape(kind: str, polarity: str, params: Mapping | None = None):
    """Scheme-independent description of a component.

    Returns (bridges as (a, b, polarity, kind), pins as name -> (block, polarity,
    direction, approach), delay in cycles).  Kinds are strings resolved per
    scheme by :func:`resolve_kind`.
    """
    params = dict(params or {})
    p = polarity
    PLAIN, SOURCE = "plain", "source"
    sink = SINK_BEFORE_END
    if kind == "duplicator":
        br = [((0, 1), (1, 0), p, PLAIN), ((0, 1), (1, 2), p, PLAIN)]
        pins = {"in": ((0, 1), p, "in", "any"), "out_up": ((1, 0), p, "out", "below"),
                "out_down": ((1, 2), p, "out", "above")}
        return br, pins, 1
    if kind == "merge":
        br = [((0, 0), (1, 1), p, PLAIN), ((0, 2), (1, 1), p, PLAIN)]
        pins = {"in_up": ((0, 0), p, "in", "above"), "in_down": ((0, 2), p, "in", "below"),
                "out": ((1, 1), p, "out", "any")}
        return br, pins, 1
    if kind == "crossing":
        if p == POS:
            br = [((0, 1), (1, 2), POS, PLAIN), ((1, 2), (2, 3), POS, PLAIN),
                  ((0, 2), (1, 1), NEG, PLAIN), ((1, 1), (2, 0), NEG, PLAIN)]
            pins = {"in_pos": ((0, 1), POS, "in", "above"), "in_neg": ((0, 2), NEG, "in", "below"),
                    "out_pos": ((2, 3), POS, "out", "above"), "out_neg": ((2, 0), NEG, "out", "below")}
        else:
            br = [((0, 0), (1, 1), NEG, PLAIN), ((1, 1), (2, 2), NEG, PLAIN),
                  ((0, 3), (1, 2), POS, PLAIN), ((1, 2), (2, 1), POS, PLAIN)]
            pins = {"in_neg": ((0, 0), NEG, "in", "above"), "in_pos": ((0, 3), POS, "in", "below"),
                    "out_neg": ((2, 2), NEG, "out", "above"), "out_pos": ((2, 1), POS, "out", "below")}
        return br, pins, 2
    if kind == "switch":
        if p == POS:
            br = [((0, 1), (1, 2), POS, PLAIN), ((1, 2), (2, 3), POS, PLAIN), ((0, 2), (1, 1), NEG, sink)]
            pins = {"pass": ((0, 1), POS, "in", "above"), "ctrl": ((0, 2), NEG, "in", "below"),
                    "out": ((2, 3), POS, "out", "above")}
        else:
            br = [((0, 2), (1, 1), NEG, PLAIN), ((1, 1), (2, 0), NEG, PLAIN), ((0, 1), (1, 2), POS, sink)]
            pins = {"ctrl": ((0, 1), POS, "in", "above"), "pass": ((0, 2), NEG, "in", "below"),
                    "out": ((2, 0), NEG, "out", "below")}
        return br, pins, 2
    if kind == "diode":
        br = []
        for chain in (DIODE_IN, DIODE_UPPER, DIODE_LOWER, DIODE_OUT):
            for a, b in itertools.pairwise(chain):
                br.append((a, b, p, PLAIN))
        # the upper branch ends in a sink at its last cell: the join needs both branches
        br[len(DIODE_IN) - 1 + len(DIODE_UPPER) - 2] = ((6, 1), (7, 2), p, SINK_AT_END)
        pins = {"in": ((0, 1), p, "in", "any"), "out": ((10, 1), p, "out", "below")}
        return br, pins, len(DIODE_IN) - 1 + len(DIODE_UPPER) - 1 + len(DIODE_OUT) - 1
    if kind == "retarder":
        L = int(params.get("L", 16))
        d = int(params["delay"])
        blocks = retarder_blocks(L, d)
        br = [(a, b, p, PLAIN) for a, b in itertools.pairwise(blocks)]
        pins = {"in": (blocks[0], p, "in", "any"),
                "out": (blocks[-1], p, "out", arrival_side(blocks[-2], blocks[-1]))}
        return br, pins, d
    if kind == "coordinator":
        m = int(params.get("m", 4))
        dy = 1 if params.get("down", True) else -1
        blocks = [(j, dy * j) for j in range(m + 1)]
        br = [(a, b, p, SOURCE if j == 0 and params.get("source", True) else PLAIN)
              for j, (a, b) in enumerate(itertools.pairwise(blocks))]
        pins = {"out": (blocks[-1], p, "out", "above" if dy > 0 else "below")}
        return br, pins, m
    raise ValueError(f"unknown component kind {kind!r}")


def build_component(
    kind: str,
    polarity: str,
    anchor: BlockIx,
    z: UpdateScheme | str,
    params: Mapping | None = None,
    occupied: Iterable[BlockIx] = (),
) -> ComponentSpec:
    """Materialise a component with its anchor block at ``anchor``.

    ``occupied`` lists blocks already used by other parts of a layout; a
    component whose footprint touches them raises FootprintCollision.
    """
    z = as_scheme(z)
    params = dict(params or {})
    br, pins, delay = component_shape(kind, polarity, params)
    ax, ay = anchor
    bridges = [bridge_between((a[0] + ax, a[1] + ay), (b[0] + ax, b[1] + ay), pol, z, resolve_kind(k, z))
               for a, b, pol, k in br]
    fp = frozenset(ix for b in bridges for ix in (b.b1.index, b.b2.index))
    clash = fp & frozenset(occupied)
    if clash:
        raise FootprintCollision(f"{kind} at {anchor} overlaps blocks {sorted(clash)[:4]}")
    pin_objs = {
        name: make_pin((blk[0] + ax, blk[1] + ay), pol, d, z, side)
        for name, (blk, pol, d, side) in pins.items()
    }
    g = Gadget(z, bridges, pin_objs, fp, delay, kind)
    return ComponentSpec(kind, polarity, anchor, g, params)


# ---------------------------------------------------------------- harness


def lead_in(pin: Pin, cycles: int, z: UpdateScheme):
    """Straight source wire of ``cycles`` bridges that delivers a signal to
    ``pin`` from its required side after exactly that many cycles."""
    bx, by = pin.block
    dy = -1 if pin.approach in ("above", "any") else 1
    blocks = [(bx - j, by + dy * j) for j in range(cycles, -1, -1)]
    return chain_bridges(blocks, pin.polarity, z, source=True)


def stimulus_configuration(
    gadget: Gadget, stimuli: Mapping[str, int], z: UpdateScheme
) -> Configuration:
    parts = [b.overlay for b in gadget.bridges] + [gadget.extra]
    direct = {}
    for name, cyc in stimuli.items():
        pin = gadget.pins[name]
        if pin.direction != "in":
            raise ValueError(f"pin {name!r} is not an input")
        if cyc < 0:
            raise ValueError("stimulus cycles must be non-negative")
        if cyc == 0:
            direct[pin.cell] = 4
        else:
            parts.extend(b.overlay for b in lead_in(pin, cyc, z))
    return combine_all(parts).updated(direct)


def simulate_component(
    spec: ComponentSpec | Gadget,
    stimuli: Mapping[str, int],
    z: UpdateScheme | str | None = None,
    horizon: int | None = None,
) -> dict[str, int | None]:
    """Cycle at which each output pin first holds a signal at a cycle boundary.

    ``stimuli`` maps input pin names to the cycle their signal arrives.  Outputs
    that never fire within ``horizon`` cycles map to None.
    """
    g = spec.gadget if isinstance(spec, ComponentSpec) else spec
    z = as_scheme(z) if z is not None else g.z
    latest = max(stimuli.values(), default=0)
    need = latest + g.delay
    if horizon is None:
        horizon = need + 2
    if horizon < need:
        raise HorizonTooSmall(f"horizon {horizon} shorter than last stimulus plus delay ({need})")
    if g.name == "switch" and "pass" in stimuli and "ctrl" in stimuli and stimuli["pass"] == stimuli["ctrl"]:
        raise SimultaneousArrival("control and pass signals may not reach a switch in the same cycle")
    c = stimulus_configuration(g, stimuli, z)
    outs = {n: p for n, p in g.pins.items() if p.direction == "out"}
    sim = Simulation(c, z)
    seen: dict[str, int | None] = {n: None for n in outs}
    for i in range(1, horizon + 1):
        sim.run(z.k)
        for n, p in outs.items():
            if seen[n] is None and sim[p.cell] >= 4:
                seen[n] = i
    return seen


# ---------------------------------------------------------------- connection


def connect(
    g1: Gadget | ComponentSpec, out_pin: str, g2: Gadget | ComponentSpec, in_pin: str,
    clearance: int = CLEARANCE,
) -> Gadget:
    """Translate ``g2`` so its input pin sits on ``g1``'s output pin and merge.

    The shared block is the only contact allowed; every other block of ``g2``
    must keep ``clearance`` blocks (Chebyshev) from blocks of ``g1`` unless it
    lies on the joined route's immediate neighbourhood of the shared block.
    """
    a = g1.gadget if isinstance(g1, ComponentSpec) else g1
    b = g2.gadget if isinstance(g2, ComponentSpec) else g2
    po, pi = a.pins[out_pin], b.pins[in_pin]
    if po.direction != "out" or pi.direction != "in":
        raise ValueError("connect joins an output pin to an input pin")
    if po.polarity != pi.polarity:
        raise PolarityMismatch(f"{out_pin} is {po.polarity} but {in_pin} is {pi.polarity}")
    if pi.approach != "any" and po.approach != "any" and pi.approach != po.approach:
        raise OrientationViolation(
            f"{in_pin} must be fed from {pi.approach} but {out_pin} arrives from {po.approach}"
        )
    dbx, dby = po.block[0] - pi.block[0], po.block[1] - pi.block[1]
    moved = b.translated(dbx, dby)
    shared = po.block
    near = {(shared[0] + dx, shared[1] + dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1)}
    overlap = (moved.footprint & a.footprint) - {shared}
    if overlap:
        raise FootprintCollision(f"footprints overlap at {sorted(overlap)[:4]}")
    for blk in moved.footprint - near:
        for other in a.footprint - near:
            if max(abs(blk[0] - other[0]), abs(blk[1] - other[1])) < clearance:
                raise FootprintCollision(f"blocks {blk} and {other} closer than {clearance}")
    pins = {n: p for n, p in a.pins.items() if n != out_pin}
    for n, p in moved.pins.items():
        if n == in_pin:
            continue
        name = n if n not in pins else f"{b.name}.{n}"
        pins[name] = p
    return Gadget(
        a.z, a.bridges + moved.bridges, pins, a.footprint | moved.footprint,
        a.delay + b.delay, f"{a.name}>{b.name}", a.extra if not moved.extra else combine_all([a.extra, moved.extra]),
    )


# ---------------------------------------------------------------- coordinators


def coordinator_configuration(m: int, z: UpdateScheme | str) -> Configuration:
    spec = build_component("coordinator", POS, (0, 0), z, {"m": m})
    return spec.gadget.overlay


def check_coordinator_kills_shifts(m: int, z: UpdateScheme | str) -> bool:
    """Every proper rotation of ``z`` empties a length-``m`` source wire of
    signals within ``k*m`` steps, while ``z`` itself carries the signal to the end."""
    z = as_scheme(z)
    c = coordinator_configuration(m, z)
    for w in shifted_cycles(z):
        sim = Simulation(c, w)
        for _ in range(z.k * m):
            sim.run(1)
            if not sim.signals():
                break
        else:
            return False
    sim = Simulation(c, z)
    for _ in range(m):
        sim.run(z.k)
        if not sim.signals():
            return False
    return sim[Block.at(m, m, z).plus] >= 4


__all__ = [
    "CLEARANCE", "KINDS", "ComponentSpec", "SemiWire", "arrival_side", "build_component",
    "build_semi_wire", "chain_bridges", "check_chain", "check_coordinator_kills_shifts",
    "component_shape", "connect", "lead_in", "resolve_kind", "retarder_blocks", "retarder_range",
    "retarder_side_for", "simulate_component", "stimulus_configuration",
]
