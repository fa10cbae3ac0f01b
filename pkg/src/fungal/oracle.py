"""Brute-force dense reference simulator used to cross-check the fast path."""

from __future__ import annotations

import numpy as np

from .grid import Configuration
from .scheme import UpdateScheme, as_scheme


def dense_step(arr: np.ndarray, rule: str) -> np.ndarray:
    """Full-array update; the array must already be padded so nothing leaves it."""
    fire = (arr >= 4).astype(np.int16)
    out = arr.astype(np.int16) - 2 * fire
    if rule == "H":
        out[:, 1:] += fire[:, :-1]
        out[:, :-1] += fire[:, 1:]
    else:
        out[1:, :] += fire[:-1, :]
        out[:-1, :] += fire[1:, :]
    return out.astype(np.uint8)


def dense_run(c: Configuration, z: UpdateScheme | str, t: int) -> Configuration:
    """Evolve ``c`` for ``t`` steps on a box padded by the locality bound."""
    z = as_scheme(z)
    bb = c.bbox()
    if bb is None or t == 0:
        return c
    nh = sum(1 for s in range(1, t + 1) if z.rule(s) == "H")
    nv = t - nh
    x0, y0 = bb[0] - nh - 1, bb[1] - nv - 1
    w = bb[2] - bb[0] + 2 * nh + 3
    hgt = bb[3] - bb[1] + 2 * nv + 3
    arr = c.to_array((x0, y0), w, hgt)
    for s in range(1, t + 1):
        arr = dense_step(arr, z.rule(s))
    return Configuration.from_array(arr, (x0, y0))


def dense_trace(arr: np.ndarray, z: UpdateScheme | str, t: int) -> list[np.ndarray]:
    z = as_scheme(z)
    out = [arr]
    for s in range(1, t + 1):
        out.append(dense_step(out[-1], z.rule(s)))
    return out
