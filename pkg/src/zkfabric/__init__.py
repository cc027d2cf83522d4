"""Joint verification of composite boolean statements.

A bracketed natural-language statement is compiled into a minimized
boolean circuit, split into per-verifier garbled partitions, and checked
by a group of parties that exchange wire labels through oblivious
transfers over a shared append-only board.
"""

from .circuit import (
    LayeredCircuit,
    compile_expression,
    evaluate_plain,
    netlist,
    pad_inputs,
    partition,
)
from .errors import ZkFabricError
from .garble import garble_circuit
from .protocol import (
    SessionParams,
    Transcript,
    replay_board,
    run_session,
    run_simulation,
)
from .repository import Repository
from .syntax import extract, minimize, syn_gen

__version__ = "0.1.0"

__all__ = [
    "LayeredCircuit",
    "Repository",
    "SessionParams",
    "Transcript",
    "ZkFabricError",
    "compile_expression",
    "evaluate_plain",
    "extract",
    "garble_circuit",
    "minimize",
    "netlist",
    "pad_inputs",
    "partition",
    "replay_board",
    "run_session",
    "run_simulation",
    "syn_gen",
    "__version__",
]
