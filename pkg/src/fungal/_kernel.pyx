# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Event-driven step loop over a dense uint8 grid (compiled version)."""

from libcpp.vector cimport vector
from libc.stdint cimport uint8_t, int64_t

cdef enum:
    SEEN = 1
    PROBE = 2


def run_kernel(uint8_t[:, ::1] grid, const uint8_t[::1] word, Py_ssize_t phase,
               Py_ssize_t nsteps, uint8_t[::1] flags, const int64_t[::1] probes,
               int64_t[::1] probe_hits, Py_ssize_t t0, Py_ssize_t watch,
               bint stop_on_watch):
    """Advance ``grid`` in place by up to ``nsteps`` steps.

    ``word`` holds 0 for H and 1 for V; ``phase`` is the word index of the next
    rule.  Returns ``(steps_done, status, watch_step)`` where status is 0 when
    all steps ran, 1 when a signal touched the outer ring (caller must pad and
    resume) and 2 when the watched cell became non-zero and ``stop_on_watch``
    is set.
    """
    cdef Py_ssize_t rows = grid.shape[0]
    cdef Py_ssize_t cols = grid.shape[1]
    cdef Py_ssize_t n = rows * cols
    cdef uint8_t* g = &grid[0, 0]
    cdef uint8_t* fl = &flags[0]
    cdef Py_ssize_t k = word.shape[0]
    cdef Py_ssize_t nprobes = probes.shape[0]
    cdef vector[int64_t] hot
    cdef vector[int64_t] cand
    cdef Py_ssize_t i, j, s, f, x, y, off, q
    cdef int64_t c
    cdef Py_ssize_t watch_step = -1

    for i in range(n):
        if g[i] >= 4:
            hot.push_back(i)

    if watch >= 0 and g[watch] != 0:
        watch_step = t0
        if stop_on_watch:
            return 0, 2, watch_step

    for s in range(nsteps):
        if hot.size() == 0:
            # quiescent: nothing can change any more
            return nsteps, 0, watch_step
        for j in range(<Py_ssize_t>hot.size()):
            f = hot[j]
            y = f // cols
            x = f - y * cols
            if x == 0 or y == 0 or x == cols - 1 or y == rows - 1:
                return s, 1, watch_step
        off = 1 if word[(phase + s) % k] == 0 else cols
        cand.clear()
        for j in range(<Py_ssize_t>hot.size()):
            f = hot[j]
            g[f] -= 2
            cand.push_back(f)
        for j in range(<Py_ssize_t>hot.size()):
            f = hot[j]
            g[f - off] += 1
            g[f + off] += 1
            cand.push_back(f - off)
            cand.push_back(f + off)
        hot.clear()
        for j in range(<Py_ssize_t>cand.size()):
            c = cand[j]
            if fl[c] & SEEN:
                continue
            fl[c] |= SEEN
            if g[c] >= 4:
                hot.push_back(c)
                if fl[c] & PROBE:
                    for q in range(nprobes):
                        if probes[q] == c and probe_hits[q] < 0:
                            probe_hits[q] = t0 + s + 1
        for j in range(<Py_ssize_t>cand.size()):
            fl[cand[j]] &= ~SEEN
        if watch >= 0 and watch_step < 0 and g[watch] != 0:
            watch_step = t0 + s + 1
            if stop_on_watch:
                return s + 1, 2, watch_step
    return nsteps, 0, watch_step
