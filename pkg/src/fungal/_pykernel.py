"""Pure-Python twin of the compiled step loop; same signature and results."""

from __future__ import annotations

import numpy as np


def run_kernel(grid, word, phase, nsteps, flags, probes, probe_hits, t0, watch, stop_on_watch):
    rows, cols = grid.shape
    flat = np.asarray(grid).reshape(-1)
    g = memoryview(flat)
    k = len(word)
    rules = [1 if word[i] == 0 else cols for i in range(k)]
    probe_at = {int(p): q for q, p in enumerate(probes)} if len(probes) else {}
    hot = np.flatnonzero(flat >= 4).tolist()
    watch_step = -1

    if watch >= 0 and g[watch] != 0:
        watch_step = t0
        if stop_on_watch:
            return 0, 2, watch_step

    last_row = (rows - 1) * cols
    for s in range(nsteps):
        if not hot:
            return nsteps, 0, watch_step
        for f in hot:
            x = f % cols
            if x == 0 or x == cols - 1 or f < cols or f >= last_row:
                return s, 1, watch_step
        off = rules[(phase + s) % k]
        touched = set(hot)
        for f in hot:
            g[f] -= 2
        for f in hot:
            g[f - off] += 1
            g[f + off] += 1
            touched.add(f - off)
            touched.add(f + off)
        hot = [c for c in touched if g[c] >= 4]
        if probe_at:
            for c in hot:
                q = probe_at.get(c)
                if q is not None and probe_hits[q] < 0:
                    probe_hits[q] = t0 + s + 1
        if watch >= 0 and watch_step < 0 and g[watch] != 0:
            watch_step = t0 + s + 1
            if stop_on_watch:
                return s + 1, 2, watch_step
    return nsteps, 0, watch_step
