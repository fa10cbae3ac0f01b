"""Compare the compiled step kernel with the pure-Python fallback.

    python benchmarks/bench_kernel.py [--steps N] [--repeat R]

Two workloads: an all-5 block that keeps firing for thousands of steps, and
a compiled NAND chain (few signals on a large quiet plane).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fungal import _pykernel, grid
from fungal.circuit import compile_circuit, parse_netlist
from fungal.grid import Configuration, Simulation


def nand_chain(m: int):
    lines = ["in x1 x2"] + [f"g{i} = NAND({'x1' if i == 0 else f'g{i - 1}'},x2)" for i in range(m)]
    return parse_netlist("\n".join(lines))


def workloads(steps: int):
    block = Configuration.from_array(np.full((48, 48), 5, dtype=np.uint8))
    yield "all-5 block 48x48", block, "HVVHHHV", steps
    e = compile_circuit(nand_chain(10), (1, 1), "HVVHHHV")
    yield f"embedding {e.width}x{e.height}", e.configuration(), e.scheme, e.time_bound


def timed(kernel, c, z, steps: int, repeat: int) -> float:
    grid.run_kernel = kernel
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        Simulation(c, z).run(steps)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        from fungal import _kernel
    except ImportError:
        raise SystemExit("compiled kernel not built; reinstall without FUNGAL_NO_EXT")
    original = grid.run_kernel
    try:
        print(f"{'workload':<24}{'steps':>8}{'compiled s':>12}{'python s':>12}{'speedup':>9}")
        for name, c, z, steps in workloads(args.steps):
            fast = timed(_kernel.run_kernel, c, z, steps, args.repeat)
            slow = timed(_pykernel.run_kernel, c, z, steps, args.repeat)
            print(f"{name:<24}{steps:>8}{fast:>12.4f}{slow:>12.4f}{slow / fast:>8.1f}x")
    finally:
        grid.run_kernel = original


if __name__ == "__main__":
    main()
