"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import random
import sys
from collections.abc import Callable
from functools import wraps

import click
import numpy as np

from .circuit import (
    all_inputs,
    compile_circuit,
    eval_circuit,
    parse_netlist,
    read_embedding,
    verify,
    write_embedding,
)
from .errors import FungalError
from .formats import CfgHeader, format_cfg, gadget_records, parse_cfg, pin_manifest
from .gadgets import build_component
from .grid import Configuration, Simulation, predict
from .lattice import NEG, POS
from .oracle import dense_step
from .scheme import as_scheme

# grains 0..5; signals (4, 5) in warm colours
PALETTE = [
    (255, 255, 255),
    (200, 220, 255),
    (110, 160, 230),
    (40, 70, 160),
    (230, 40, 30),
    (255, 150, 0),
]


def _guard(fn: Callable) -> Callable:
    @wraps(fn)
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except FungalError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(exc.exit_code)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return inner


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _load_cfg(path: str, scheme: str | None):
    c, hdr = parse_cfg(_read(path))
    word = scheme or hdr.scheme
    if not word:
        raise click.UsageError("no scheme given and none in the file header")
    return c, hdr, as_scheme(word)


def _parse_cell(text: str) -> tuple[int, int]:
    try:
        x, y = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise click.BadParameter(f"expected x,y, got {text!r}") from exc
    return x, y


def _parse_bits(text: str, n: int) -> tuple[int, ...]:
    text = text.replace(",", "").strip()
    if any(ch not in "01" for ch in text):
        raise click.BadParameter(f"input bits must be 0/1, got {text!r}")
    bits = tuple(int(ch) for ch in text)
    if len(bits) != n:
        raise click.BadParameter(f"circuit has {n} inputs, got {len(bits)} bits")
    return bits


@click.group()
def main() -> None:
    """Fungal sandpile simulator and circuit compiler."""


@main.command()
@click.argument("cfg_file")
@click.option("--scheme", "-z", help="Update word; defaults to the file header's Z.")
@click.option("--steps", type=click.IntRange(min=0), help="Number of steps to run.")
@click.option("--cycles", type=click.IntRange(min=0), help="Number of whole cycles to run.")
@click.option("--trace", is_flag=True, help="Write every intermediate panel.")
@click.option("--clip", is_flag=True, help="Cut output to the input header's window.")
@click.option("--output", "-o", default="-", help="Output file (default stdout).")
@_guard
def simulate(cfg_file, scheme, steps, cycles, trace, clip, output):
    """Evolve a configuration and write the result.

    Without --clip the written window grows to hold every grain.
    """
    c, hdr, z = _load_cfg(cfg_file, scheme)
    if (steps is None) == (cycles is None):
        raise click.UsageError("give exactly one of --steps and --cycles")
    t = steps if steps is not None else cycles * z.k
    window = (hdr.origin, hdr.size)
    sim = Simulation(c, z)
    panels = [c] if trace else []
    for _ in range(t):
        sim.run(1)
        if trace:
            panels.append(sim.configuration())
    if not trace:
        panels = [sim.configuration()]
    if not clip:
        window = _covering(window, panels)
    text = "\n".join(format_cfg(p, z.word, *window) for p in panels)
    _write(output, text)


def _covering(window, panels):
    """Smallest window holding ``window`` and every grain of ``panels``."""
    (x0, y0), (w, h) = window
    x1, y1 = x0 + w - 1, y0 + h - 1
    for p in panels:
        bb = p.bbox()
        if bb is not None:
            x0, y0, x1, y1 = min(x0, bb[0]), min(y0, bb[1]), max(x1, bb[2]), max(y1, bb[3])
    return (x0, y0), (x1 - x0 + 1, y1 - y0 + 1)


def _write(output: str, text: str | bytes) -> None:
    if output == "-":
        if isinstance(text, bytes):
            sys.stdout.buffer.write(text)
        else:
            click.echo(text, nl=False)
        return
    mode = "wb" if isinstance(text, bytes) else "w"
    with open(output, mode) as fh:
        fh.write(text)


def render_ppm(c: Configuration, origin: tuple[int, int], size: tuple[int, int], scale: int = 1) -> bytes:
    w, h = size
    arr = c.to_array(origin, w, h) if w and h else np.zeros((h, w), dtype=np.uint8)
    rgb = np.array(PALETTE, dtype=np.uint8)[np.clip(arr, 0, 5)]
    if scale > 1:
        rgb = rgb.repeat(scale, axis=0).repeat(scale, axis=1)
    header = f"P6\n{w * scale} {h * scale}\n255\n".encode("ascii")
    return header + rgb.tobytes()


def render_ascii(c: Configuration, origin: tuple[int, int], size: tuple[int, int],
                 scheme: str | None = None) -> str:
    """Header plus rows with '.' for empty cells; reads back with ``parse_cfg``."""
    rows = c.rows(origin, size[0], size[1])
    lines = [CfgHeader(scheme, origin, size).line()] + [r.replace("0", ".") for r in rows]
    return "\n".join(lines) + "\n"


@main.command()
@click.argument("cfg_file")
@click.option("--format", "fmt", type=click.Choice(["ascii", "ppm"]), default="ascii")
@click.option("--scale", type=click.IntRange(min=1), default=1, help="Pixels per cell (ppm).")
@click.option("--output", "-o", default="-")
@_guard
def render(cfg_file, fmt, scale, output):
    """Draw a configuration as text or as a PPM image."""
    c, hdr = parse_cfg(_read(cfg_file))
    if fmt == "ascii":
        _write(output, render_ascii(c, hdr.origin, hdr.size, hdr.scheme))
    else:
        _write(output, render_ppm(c, hdr.origin, hdr.size, scale))


@main.command()
@click.argument("kind", type=click.Choice(
    ["duplicator", "merge", "crossing", "switch", "diode", "retarder", "coordinator"]))
@click.option("--scheme", "-z", required=True)
@click.option("--polarity", type=click.Choice([POS, NEG]), default=POS)
@click.option("--anchor", default="0,0", help="Anchor block bx,by.")
@click.option("--param", "-p", multiple=True, help="Component parameter key=value (e.g. delay=40).")
@click.option("--cfg", "cfg_out", help="Also write the overlay as fungal-cfg to this file.")
@click.option("--output", "-o", default="-")
@_guard
def gadget(kind, scheme, polarity, anchor, param, cfg_out, output):
    """Build a library component and print its bridges and pins."""
    params = {}
    for item in param:
        key, sep, val = item.partition("=")
        if not sep:
            raise click.BadParameter(f"expected key=value, got {item!r}")
        params[key] = val
    z = as_scheme(scheme)
    spec = build_component(kind, polarity, _parse_cell(anchor), z, params)
    g = spec.gadget
    lines = [f"gadget {kind} polarity={polarity} Z={z.word} delay={g.delay}"]
    lines += gadget_records(g) + pin_manifest(g)
    _write(output, "\n".join(lines) + "\n")
    if cfg_out:
        _write(cfg_out, format_cfg(g.overlay, z.word))


@main.command(name="compile")
@click.argument("netlist")
@click.option("--inputs", "-x", "bits", required=True, help="Input bits, e.g. 0110.")
@click.option("--scheme", "-z", required=True)
@click.option("--unary", is_flag=True, help="Write the time bound in unary.")
@click.option("--output", "-o", default="-")
@_guard
def compile_cmd(netlist, bits, scheme, unary, output):
    """Compile a circuit and input into an embedding manifest."""
    circ = parse_netlist(_read(netlist))
    e = compile_circuit(circ, _parse_bits(bits, circ.n), scheme)
    if output == "-":
        write_embedding(e, sys.stdout, unary)
    else:
        with open(output, "w", encoding="ascii") as fh:
            write_embedding(e, fh, unary)


@main.command(name="predict")
@click.argument("file")
@click.option("--scheme", "-z", help="Update word (plain configurations only).")
@click.option("--target", help="Target cell x,y (plain configurations only).")
@click.option("--time", "-T", "time_bound", type=click.IntRange(min=1), help="Time bound in steps.")
@_guard
def predict_cmd(file, scheme, target, time_bound):
    """Does the target cell become non-zero within the time bound?  Accepts an
    embedding manifest or a fungal-cfg plus --target and --time."""
    text = _read(file)
    if text.startswith("embedding"):
        emb = read_embedding(text)
        c, z, x, t = emb.configuration, emb.scheme, emb.target, emb.time_bound
    else:
        if target is None or time_bound is None:
            raise click.UsageError("--target and --time are required for a plain configuration")
        c, hdr = parse_cfg(text)
        word = scheme or hdr.scheme
        if not word:
            raise click.UsageError("no scheme given and none in the file header")
        z, x, t = as_scheme(word), _parse_cell(target), time_bound
    click.echo("1" if predict(c, x, t, z) else "0")


@main.command(name="verify")
@click.argument("netlist")
@click.option("--inputs", "-x", "bits", default="all", help="Input bits, or 'all' for every vector.")
@click.option("--scheme", "-z", required=True)
@click.option("--quiet", "-q", is_flag=True, help="Only print one line per input vector.")
@_guard
def verify_cmd(netlist, bits, scheme, quiet):
    """Compile, simulate and compare against direct evaluation."""
    circ = parse_netlist(_read(netlist))
    vectors = list(all_inputs(circ.n)) if bits == "all" else [_parse_bits(bits, circ.n)]
    ok = True
    for v in vectors:
        rep = verify(circ, v, scheme)
        ok &= rep.passed
        tag = "".join(map(str, v)) or "-"
        if quiet:
            click.echo(f"{tag}: eval={eval_circuit(circ, v)} predict={int(rep.predicted)} "
                       f"violations={rep.violations} {'PASS' if rep.passed else 'FAIL'}")
        else:
            click.echo(f"inputs {tag}")
            for line in rep.lines():
                click.echo(f"  {line}")
    sys.exit(0 if ok else 1)


def _broken_step(arr: np.ndarray, rule: str) -> np.ndarray:
    """Deliberately wrong rule (the firing cell keeps its grains)."""
    fire = (arr >= 4).astype(np.int16)
    out = dense_step(arr, rule).astype(np.int16) + 2 * fire
    return out.astype(np.uint8)


def _window(sim: Simulation, x0: int, y0: int, w: int, h: int) -> np.ndarray | None:
    """The simulator's grid cut to a window, or None if grains lie outside it."""
    out = np.zeros((h, w), dtype=np.uint8)
    g = sim.grid
    gy0, gx0 = sim.y0, sim.x0
    ya, yb = max(y0, gy0), min(y0 + h, gy0 + g.shape[0])
    xa, xb = max(x0, gx0), min(x0 + w, gx0 + g.shape[1])
    if ya < yb and xa < xb:
        out[ya - y0:yb - y0, xa - x0:xb - x0] = g[ya - gy0:yb - gy0, xa - gx0:xb - gx0]
    if int(out.sum(dtype=np.int64)) != int(g.sum(dtype=np.int64)):
        return None
    return out


def oracle_check(seed: int, trials: int, size: int, steps: int, broken: bool = False,
                 echo: Callable[[str], None] = click.echo) -> bool:
    """Sparse simulator against the dense reference on random configurations.

    The first trial is the all-5 grid; the rest are uniform random grains.
    """
    rng = random.Random(seed)
    reference = _broken_step if broken else dense_step
    for trial in range(trials):
        k = rng.randint(2, 10)
        word = "H" + "".join(rng.choice("HV") for _ in range(k - 2)) + "V"
        z = as_scheme(word)
        if trial == 0:
            arr0 = np.full((size, size), 5, dtype=np.uint8)
        else:
            arr0 = np.array([[rng.randint(0, 5) for _ in range(size)] for _ in range(size)], dtype=np.uint8)
        pad = steps + 1
        arr = np.pad(arr0, pad)
        sim = Simulation(Configuration.from_array(arr0), z)
        for s in range(1, steps + 1):
            arr = reference(arr, z.rule(s))
            sim.run(1)
            got = _window(sim, -pad, -pad, arr.shape[1], arr.shape[0])
            if got is None or not np.array_equal(got, arr):
                if got is None:
                    where = "outside the reference window"
                else:
                    ys, xs = np.nonzero(got != arr)
                    where = f"({int(xs[0]) - pad},{int(ys[0]) - pad})"
                echo(f"FAIL trial {trial} Z={word} step {s} first differing cell {where}")
                return False
    echo(f"PASS {trials} trials, {size}x{size}, {steps} steps")
    return True


@main.command(name="oracle-check")
@click.option("--seed", type=int, default=0)
@click.option("--trials", type=click.IntRange(min=1), default=50)
@click.option("--size", type=click.IntRange(min=1), default=10)
@click.option("--steps", type=click.IntRange(min=1), default=100)
@click.option("--broken", is_flag=True, hidden=True, help="Use a wrong reference rule (negative control).")
@_guard
def oracle_check_cmd(seed, trials, size, steps, broken):
    """Cross-check the simulator against a dense-array reference."""
    sys.exit(0 if oracle_check(seed, trials, size, steps, broken) else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
