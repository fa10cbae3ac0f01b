"""Fungal sandpile automata: simulation, bridge gadgets and a CVP compiler."""

from .circuit import Circuit, compile_circuit, eval_circuit, parse_netlist, verify
from .formats import format_cfg, parse_cfg
from .gadgets import build_component
from .grid import BACKEND, Configuration, Simulation, predict, run_cycles, run_steps, signals, step
from .scheme import UpdateScheme, normalize, parse_scheme

__all__ = [
    "BACKEND",
    "Circuit",
    "Configuration",
    "Simulation",
    "UpdateScheme",
    "build_component",
    "compile_circuit",
    "eval_circuit",
    "format_cfg",
    "normalize",
    "parse_cfg",
    "parse_netlist",
    "parse_scheme",
    "predict",
    "run_cycles",
    "run_steps",
    "signals",
    "step",
    "verify",
]
