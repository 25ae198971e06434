"""Quaternary logic toolchain: netlists, simulation, algebra checks, binary lowering."""

__version__ = "0.1.0"

from .core import (
    BGateKind,
    BitPair,
    QGateKind,
    Qudit,
    bits_to_qudit,
    eval_bgate,
    eval_qgate,
    qudit_to_bits,
)
from .algebra import (
    parse_expr,
    eval_expr,
    run_law_suite,
    serialize_expr,
    verify_conditional,
    verify_identity,
)
from .netlist import Netlist, assign_slots, parse_netlist, serialize_netlist, validate
from .sim import sim_b, sim_q, truth_table_b, truth_table_q
from .lower import lower_gate, lower_netlist, pack_truth_table
from .verify import check_equivalence, check_gate_templates, random_netlist
from .render import render
from .library import example
