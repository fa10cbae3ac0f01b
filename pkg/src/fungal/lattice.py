"""Block geometry, Z-paths, bridges and overlay composition.

Blocks tile the plane in ``h x v`` rectangles; ``B+`` is a block's upper-left
cell and ``B-`` its lower-left cell.  A bridge is a Z-path of length k laid
with 3 grains that carries a signal from one source cell to the matching
source cell of a diagonally adjacent block within one cycle.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import BadSinkIndex, NotDiagonal, PinClash, PolarityMismatch
from .grid import Cell, Configuration
from .scheme import UpdateScheme, as_scheme

POS, NEG = "+", "-"


def _check_polarity(p: str) -> str:
    if p not in (POS, NEG):
        raise ValueError(f"polarity must be '+' or '-', got {p!r}")
    return p


@dataclass(frozen=True)
class Block:
    origin: Cell
    h: int
    v: int

    @classmethod
    def at(cls, bx: int, by: int, z: UpdateScheme | str) -> Block:
        z = as_scheme(z)
        return cls((bx * z.h, by * z.v), z.h, z.v)

    @property
    def index(self) -> tuple[int, int]:
        return self.origin[0] // self.h, self.origin[1] // self.v

    @property
    def plus(self) -> Cell:
        return self.origin

    @property
    def minus(self) -> Cell:
        return self.origin[0], self.origin[1] + self.v - 1

    def source(self, polarity: str) -> Cell:
        return self.plus if _check_polarity(polarity) == POS else self.minus

    def cells(self) -> set[Cell]:
        ox, oy = self.origin
        return {(ox + i, oy + j) for i in range(self.h) for j in range(self.v)}


def block_of(cell: Cell, z: UpdateScheme | str) -> Block:
    z = as_scheme(z)
    return Block(((cell[0] // z.h) * z.h, (cell[1] // z.v) * z.v), z.h, z.v)


def closure(b: Block) -> set[Cell]:
    ox, oy = b.origin
    return {(x, y) for x in range(ox - 1, ox + b.h + 1) for y in range(oy - 1, oy + b.v + 1)}


def diagonally_connected(b1: Block, b2: Block) -> bool:
    dx = b2.origin[0] - b1.origin[0]
    dy = b2.origin[1] - b1.origin[1]
    return abs(dx) == b1.h and abs(dy) == b1.v


@dataclass(frozen=True)
class ZPath:
    """Def.: P(s) = P(s-1) + alpha*(1,0) if Z(s) = H else P(s-1) + beta*(0,1)."""

    start: Cell
    alpha: int
    beta: int
    word: str
    length: int | None = None
    cells: tuple[Cell, ...] = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if self.alpha not in (-1, 1) or self.beta not in (-1, 1):
            raise ValueError("alpha and beta must be +1 or -1")
        n = len(self.word) if self.length is None else self.length
        if not 0 <= n <= len(self.word):
            raise ValueError("path length must lie in 0..k")
        x, y = self.start
        out = [(x, y)]
        for sym in self.word[:n]:
            if sym == "H":
                x += self.alpha
            else:
                y += self.beta
            out.append((x, y))
        object.__setattr__(self, "cells", tuple(out))

    @property
    def l(self) -> int:
        return len(self.cells) - 1

    def __getitem__(self, s: int) -> Cell:
        return self.cells[s]

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def end(self) -> Cell:
        return self.cells[-1]


def connect_path(x: Cell, y: Cell, z: UpdateScheme | str) -> ZPath:
    z = as_scheme(z)
    dx, dy = y[0] - x[0], y[1] - x[1]
    if abs(dx) != z.h or abs(dy) != z.v or z.h == 0 or z.v == 0:
        raise NotDiagonal(f"{x} -> {y} is not a diagonal block step for {z.word}")
    return ZPath(x, 1 if dx > 0 else -1, 1 if dy > 0 else -1, z.word)


@dataclass(frozen=True)
class BridgeKind:
    """Plain bridge, source (4 at P(0)) and/or sink at index ``sink``."""

    source: bool = False
    sink: int | None = None

    def __str__(self) -> str:
        parts = []
        if self.source:
            parts.append("source")
        if self.sink is not None:
            parts.append(f"sink@{self.sink}")
        return "+".join(parts) or "plain"

    @classmethod
    def parse(cls, text: str) -> BridgeKind:
        source, sink = False, None
        if text != "plain":
            for part in text.split("+"):
                if part == "source":
                    source = True
                elif part.startswith("sink@"):
                    sink = int(part[5:])
                else:
                    raise ValueError(f"unknown bridge kind {text!r}")
        return cls(source, sink)


PLAIN = BridgeKind()
SOURCE = BridgeKind(source=True)


def sink_at(l: int, source: bool = False) -> BridgeKind:
    return BridgeKind(source, l)


@dataclass(frozen=True)
class Bridge:
    path: ZPath
    kind: BridgeKind
    polarity: str
    b1: Block
    b2: Block

    @property
    def overlay(self) -> Configuration:
        cells = {p: 3 for p in self.path.cells}
        if self.kind.source:
            cells[self.path[0]] = 4
        l = self.kind.sink
        if l is not None:
            cells[self.path[l]] = 2
            for j in range(l + 1, len(self.path)):
                cells[self.path[j]] = 0
        return Configuration(cells)

    def describe(self) -> str:
        (ax, ay), (bx, by) = self.b1.index, self.b2.index
        return f"bridge {self.polarity} {self.kind} from {ax},{ay} to {bx},{by}"


def make_bridge(
    b1: Block, b2: Block, polarity: str, kind: BridgeKind, z: UpdateScheme | str
) -> Bridge:
    z = as_scheme(z)
    _check_polarity(polarity)
    if not diagonally_connected(b1, b2):
        raise NotDiagonal(f"blocks {b1.index} and {b2.index} are not diagonally connected")
    if kind.sink is not None and not 1 <= kind.sink <= z.k:
        raise BadSinkIndex(f"sink index {kind.sink} outside 1..{z.k}")
    path = connect_path(b1.source(polarity), b2.source(polarity), z)
    return Bridge(path, kind, polarity, b1, b2)


def bridge_between(
    a: tuple[int, int], b: tuple[int, int], polarity: str, z: UpdateScheme | str, kind: BridgeKind = PLAIN
) -> Bridge:
    """Bridge between blocks given by their block indices."""
    return make_bridge(Block.at(*a, z), Block.at(*b, z), polarity, kind, z)


def affected_neighbors(t: Bridge | ZPath) -> set[Cell]:
    """Cells that gain grains while the bridge carries a signal during one cycle.

    P(i) turns into a signal at step i and fires at step i+1, so its
    neighbourhood is taken along the axis of the rule applied at step i+1.
    """
    path = t.path if isinstance(t, Bridge) else t
    out = set(path.cells)
    for i in range(path.l):
        x, y = path[i]
        if path.word[i] == "H":
            out.update({(x - 1, y), (x + 1, y)})
        else:
            out.update({(x, y - 1), (x, y + 1)})
    return out


def combine(c1: Configuration, c2: Configuration) -> Configuration:
    """Pointwise: 2 wherever either side holds 2, the maximum elsewhere."""
    store = dict(c1.cells)
    for cell, g in c2.items():
        old = store.get(cell, 0)
        store[cell] = 2 if (old == 2 or g == 2) else max(old, g)
    return Configuration(store)


def combine_all(configs: Iterable[Configuration]) -> Configuration:
    out = Configuration()
    for c in configs:
        out = combine(out, c)
    return out


@dataclass(frozen=True)
class Pin:
    cell: Cell
    polarity: str
    direction: str  # "in" or "out"
    block: tuple[int, int]
    # vertical side a wire touches this pin from: "above", "below" or "any"
    approach: str = "any"


@dataclass
class Gadget:
    z: UpdateScheme
    bridges: list[Bridge] = field(default_factory=list)
    pins: dict[str, Pin] = field(default_factory=dict)
    footprint: frozenset[tuple[int, int]] = frozenset()
    delay: int = 0
    name: str = "gadget"
    extra: Configuration = field(default_factory=Configuration)

    @property
    def overlay(self) -> Configuration:
        return combine_all([b.overlay for b in self.bridges] + [self.extra])

    def pin(self, name: str) -> Pin:
        return self.pins[name]

    def translated(self, dbx: int, dby: int) -> Gadget:
        """Shift by whole blocks."""
        z = self.z
        moved = []
        for b in self.bridges:
            nb1 = Block.at(b.b1.index[0] + dbx, b.b1.index[1] + dby, z)
            nb2 = Block.at(b.b2.index[0] + dbx, b.b2.index[1] + dby, z)
            moved.append(make_bridge(nb1, nb2, b.polarity, b.kind, z))
        pins = {
            n: Pin((p.cell[0] + dbx * z.h, p.cell[1] + dby * z.v), p.polarity, p.direction,
                   (p.block[0] + dbx, p.block[1] + dby), p.approach)
            for n, p in self.pins.items()
        }
        fp = frozenset((x + dbx, y + dby) for x, y in self.footprint)
        return Gadget(z, moved, pins, fp, self.delay, self.name,
                      self.extra.translated(dbx * z.h, dby * z.v))


def make_pin(
    block: tuple[int, int], polarity: str, direction: str, z: UpdateScheme | str, approach: str = "any"
) -> Pin:
    return Pin(Block.at(*block, z).source(polarity), polarity, direction, block, approach)


def gadget_from_bridges(
    bridges: Iterable[Bridge], z: UpdateScheme | str, pins: Mapping[str, Pin] | None = None,
    delay: int = 0, name: str = "gadget",
) -> Gadget:
    bridges = list(bridges)
    fp = frozenset(ix for b in bridges for ix in (b.b1.index, b.b2.index))
    return Gadget(as_scheme(z), bridges, dict(pins or {}), fp, delay, name)


def gadget_sum(g1: Gadget, g2: Gadget, rename: Mapping[str, str] | None = None) -> Gadget:
    """Union of bridges and footprints, overlay by the 2-dominant maximum.

    ``rename`` maps pin names of ``g2`` to new names before merging; a name
    that still collides with a different pin raises PinClash.
    """
    rename = dict(rename or {})
    pins = dict(g1.pins)
    for name, p in g2.pins.items():
        new = rename.get(name, name)
        if new in pins and pins[new] != p:
            raise PinClash(f"pin {new!r} defined twice with different cells")
        pins[new] = p
    if g1.bridges and g2.bridges and g1.z != g2.z:
        raise PolarityMismatch("gadgets built for different schemes")
    return Gadget(
        g1.z,
        g1.bridges + [b for b in g2.bridges if b not in g1.bridges],
        pins,
        g1.footprint | g2.footprint,
        max(g1.delay, g2.delay),
        f"{g1.name}+{g2.name}",
        combine(g1.extra, g2.extra),
    )
