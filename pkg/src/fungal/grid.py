"""Configurations, the two local rules and time evolution.

A configuration maps cells ``(x, y)`` to grain counts 0..5; ``y`` grows
downwards.  Under rule H every cell holding at least 4 grains loses 2 and each
of its left/right neighbours gains one; rule V does the same along columns.
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Iterator, Mapping
from types import MappingProxyType

import numpy as np

from .scheme import UpdateScheme, as_scheme

Cell = tuple[int, int]
H, V = "H", "V"
MAX_GRAIN = 5

if os.environ.get("FUNGAL_PURE"):
    from ._pykernel import run_kernel

    BACKEND = "python"
else:
    try:
        from ._kernel import run_kernel

        BACKEND = "compiled"
    except ImportError:  # extension not built
        from ._pykernel import run_kernel

        BACKEND = "python"


class Configuration(Mapping):
    """Immutable sparse configuration; only non-zero cells are stored."""

    __slots__ = ("_cells", "_hash")

    def __init__(self, cells: Mapping[Cell, int] | Iterable[tuple[Cell, int]] | None = None):
        items = cells.items() if isinstance(cells, Mapping) else (cells or ())
        store: dict[Cell, int] = {}
        for (x, y), g in items:
            g = int(g)
            if not 0 <= g <= MAX_GRAIN:
                raise ValueError(f"grain {g} at {(x, y)} outside 0..{MAX_GRAIN}")
            if g:
                store[(int(x), int(y))] = g
        self._cells = store
        self._hash = None

    @classmethod
    def _trusted(cls, store: dict[Cell, int]) -> Configuration:
        c = cls.__new__(cls)
        c._cells = store
        c._hash = None
        return c

    @classmethod
    def from_rows(cls, rows: Iterable[str | Iterable[int]], origin: Cell = (0, 0)) -> Configuration:
        """Build from text rows ('.', ' ' and '_' mean 0) or integer rows."""
        ox, oy = origin
        store = {}
        for dy, row in enumerate(rows):
            for dx, ch in enumerate(row):
                g = 0 if ch in (".", " ", "_") else int(ch)
                if g:
                    store[(ox + dx, oy + dy)] = g
        return cls(store)

    @classmethod
    def from_array(cls, arr: np.ndarray, origin: Cell = (0, 0)) -> Configuration:
        ox, oy = origin
        ys, xs = np.nonzero(arr)
        vals = arr[ys, xs]
        return cls._trusted({(int(x) + ox, int(y) + oy): int(g) for x, y, g in zip(xs, ys, vals)})

    def __getitem__(self, cell: Cell) -> int:
        return self._cells.get(cell, 0)

    def __contains__(self, cell: object) -> bool:
        return cell in self._cells

    def __iter__(self) -> Iterator[Cell]:
        return iter(self._cells)

    def __len__(self) -> int:
        return len(self._cells)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Configuration):
            return self._cells == other._cells
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._cells.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Configuration({len(self._cells)} cells, total={self.total()})"

    @property
    def cells(self) -> Mapping[Cell, int]:
        return MappingProxyType(self._cells)

    def total(self) -> int:
        return sum(self._cells.values())

    def bbox(self) -> tuple[int, int, int, int] | None:
        """Inclusive ``(xmin, ymin, xmax, ymax)`` of the stored cells."""
        if not self._cells:
            return None
        xs = [x for x, _ in self._cells]
        ys = [y for _, y in self._cells]
        return min(xs), min(ys), max(xs), max(ys)

    def to_array(self, origin: Cell, width: int, height: int) -> np.ndarray:
        ox, oy = origin
        arr = np.zeros((height, width), dtype=np.uint8)
        for (x, y), g in self._cells.items():
            if ox <= x < ox + width and oy <= y < oy + height:
                arr[y - oy, x - ox] = g
        return arr

    def window(self, origin: Cell, width: int, height: int) -> Configuration:
        ox, oy = origin
        return Configuration._trusted(
            {(x, y): g for (x, y), g in self._cells.items() if ox <= x < ox + width and oy <= y < oy + height}
        )

    def updated(self, changes: Mapping[Cell, int]) -> Configuration:
        store = dict(self._cells)
        for cell, g in changes.items():
            if not 0 <= g <= MAX_GRAIN:
                raise ValueError(f"grain {g} outside 0..{MAX_GRAIN}")
            if g:
                store[cell] = int(g)
            else:
                store.pop(cell, None)
        return Configuration._trusted(store)

    def translated(self, dx: int, dy: int) -> Configuration:
        return Configuration._trusted({(x + dx, y + dy): g for (x, y), g in self._cells.items()})

    def rows(self, origin: Cell, width: int, height: int) -> list[str]:
        ox, oy = origin
        return [
            "".join(str(self[(x, y)]) if self[(x, y)] else "." for x in range(ox, ox + width))
            for y in range(oy, oy + height)
        ]


EMPTY = Configuration()


def step(c: Configuration, rule: str) -> Configuration:
    """One synchronous application of rule H or V (firing set fixed first)."""
    if rule not in (H, V):
        raise ValueError(f"unknown rule {rule!r}")
    dx, dy = (1, 0) if rule == H else (0, 1)
    firing = [cell for cell, g in c._cells.items() if g >= 4]
    if not firing:
        return c
    store = dict(c._cells)
    for x, y in firing:
        store[(x, y)] -= 2
    for x, y in firing:
        for nb in ((x + dx, y + dy), (x - dx, y - dy)):
            store[nb] = store.get(nb, 0) + 1
    return Configuration._trusted({cell: g for cell, g in store.items() if g})


class Simulation:
    """Mutable simulator over a dense window that grows when signals reach its edge.

    Work per step is proportional to the number of signals, so long runs over
    large but mostly quiet configurations stay cheap.
    """

    def __init__(
        self,
        c: Configuration,
        z: UpdateScheme | str,
        *,
        margin: int = 8,
        probes: Iterable[Cell] = (),
        watch: Cell | None = None,
        box: tuple[int, int, int, int] | None = None,
    ) -> None:
        self.z = as_scheme(z)
        self._word = np.array([0 if s == H else 1 for s in self.z.word], dtype=np.uint8)
        self.t = 0
        self.margin = margin
        bb = box or c.bbox() or (0, 0, 0, 0)
        cells = list(probes)
        if watch is not None:
            cells.append(watch)
        xs = [bb[0], bb[2]] + [p[0] for p in cells]
        ys = [bb[1], bb[3]] + [p[1] for p in cells]
        self.x0, self.y0 = min(xs) - margin, min(ys) - margin
        width = max(xs) - self.x0 + 1 + margin
        height = max(ys) - self.y0 + 1 + margin
        self.grid = c.to_array((self.x0, self.y0), width, height)
        self.probes: list[Cell] = list(dict.fromkeys(probes))
        self.probe_hits = np.full(len(self.probes), -1, dtype=np.int64)
        for q, p in enumerate(self.probes):
            if c[p] >= 4:
                self.probe_hits[q] = 0
        self.watch = watch
        self.watch_step = -1
        self._reindex()

    def _reindex(self) -> None:
        rows, cols = self.grid.shape
        self._flags = np.zeros(rows * cols, dtype=np.uint8)
        self._probe_idx = np.array(
            [(y - self.y0) * cols + (x - self.x0) for x, y in self.probes], dtype=np.int64
        )
        self._flags[self._probe_idx] |= 2
        self._watch_idx = -1
        if self.watch is not None:
            self._watch_idx = (self.watch[1] - self.y0) * cols + (self.watch[0] - self.x0)

    def _grow(self) -> None:
        pad = max(self.margin, 8, min(self.grid.shape) // 2)
        self.grid = np.pad(self.grid, pad)
        self.x0 -= pad
        self.y0 -= pad
        self._reindex()

    def run(self, nsteps: int, stop_on_watch: bool = False) -> Simulation:
        left = nsteps
        while left > 0:
            done, status, wstep = run_kernel(
                self.grid, self._word, self.t % self.z.k, left, self._flags,
                self._probe_idx, self.probe_hits, self.t,
                self._watch_idx if self.watch_step < 0 else -1, stop_on_watch,
            )
            if wstep >= 0 and self.watch_step < 0:
                self.watch_step = int(wstep)
            self.t += done
            left -= done
            if status == 1:
                self._grow()
            elif status == 2:
                break
        return self

    def run_cycles(self, i: int) -> Simulation:
        return self.run(i * self.z.k)

    def __getitem__(self, cell: Cell) -> int:
        x, y = cell[0] - self.x0, cell[1] - self.y0
        rows, cols = self.grid.shape
        if 0 <= x < cols and 0 <= y < rows:
            return int(self.grid[y, x])
        return 0

    def signals(self) -> set[Cell]:
        ys, xs = np.nonzero(self.grid >= 4)
        return {(int(x) + self.x0, int(y) + self.y0) for x, y in zip(xs, ys)}

    def configuration(self) -> Configuration:
        return Configuration.from_array(self.grid, (self.x0, self.y0))

    def hits(self) -> dict[Cell, int | None]:
        return {p: (int(t) if t >= 0 else None) for p, t in zip(self.probes, self.probe_hits)}


def run_steps(c: Configuration, z: UpdateScheme | str, t: int) -> Configuration:
    if t < 0:
        raise ValueError("step count must be non-negative")
    if t == 0:
        return c
    return Simulation(c, z).run(t).configuration()


def run_cycles(c: Configuration, z: UpdateScheme | str, i: int) -> Configuration:
    if i < 0:
        raise ValueError("cycle count must be non-negative")
    return run_steps(c, z, i * as_scheme(z).k)


def trace(c: Configuration, z: UpdateScheme | str, t: int) -> list[Configuration]:
    """``[c, F(c,Z,1), ..., F(c,Z,t)]``."""
    z = as_scheme(z)
    out = [c]
    for s in range(1, t + 1):
        out.append(step(out[-1], z.rule(s)))
    return out


def signals(c: Configuration) -> set[Cell]:
    return {cell for cell, g in c.items() if g >= 4}


def has_vpp(c: Configuration | Iterable[Cell]) -> bool:
    """All signals share the parity of their row index."""
    cells = signals(c) if isinstance(c, Configuration) else c
    parities = {y & 1 for _, y in cells}
    return len(parities) <= 1


def total_grains(c: Configuration) -> int:
    return c.total()


def predict(c: Configuration, x: Cell, T: int, z: UpdateScheme | str) -> bool:
    """Does cell ``x`` hold a non-zero state at some step ``t <= T``?"""
    if T < 1:
        raise ValueError("time bound must be positive")
    if c[x]:
        return True
    sim = Simulation(c, z, watch=x)
    sim.run(T, stop_on_watch=True)
    return sim.watch_step >= 0
