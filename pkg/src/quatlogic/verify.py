"""Gate-level template checks, exhaustive equivalence checking, and fuzzing."""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .core import QUDIT_VALUES, QGateKind, eval_qgate, qudit_to_bits, bits_to_qudit
from .errors import TooManyInputs
from .lower import TEMPLATES, BTemplate, lower_netlist, lsb, msb
from .netlist import Gate, Netlist, assign_slots
from .sim import DEFAULT_MAX_INPUTS, _compile, _run

FUZZ_MAX_INPUTS = 4
FUZZ_MAX_GATES = 16


@dataclass(frozen=True)
class GateCheck:
    kind: QGateKind
    passed: bool
    # (a, b, expected, got) for the first disagreeing operand combination
    witness: Optional[Tuple] = None


def check_gate_templates(
    templates: Optional[Mapping[QGateKind, BTemplate]] = None,
) -> List[GateCheck]:
    """Compare every template against the gate it replaces on all operands."""
    templates = TEMPLATES if templates is None else templates
    results = []
    for kind in QGateKind:
        tpl = templates[kind]
        witness = None
        second = QUDIT_VALUES if kind.arity == 2 else (None,)
        for a, b in itertools.product(QUDIT_VALUES, second):
            want = eval_qgate(kind, a, b)
            got = tpl.evaluate(a, b)
            if got != want:
                witness = (a, b, int(want), int(got))
                break
        results.append(GateCheck(kind, witness is None, witness))
    return results


@dataclass(frozen=True)
class EquivalenceReport:
    circuit: str
    checked: int
    equivalent: bool
    assignment: Optional[Dict[str, int]] = None
    quaternary: Optional[Dict[str, int]] = None
    decoded: Optional[Dict[str, int]] = None

    @property
    def status(self) -> str:
        return "equivalent" if self.equivalent else "mismatch"

    def witness_text(self) -> str:
        if self.equivalent:
            return ""
        env = " ".join(f"{k}={v}" for k, v in self.assignment.items())
        q = " ".join(f"{k}={v}" for k, v in self.quaternary.items())
        b = " ".join(f"{k}={v}" for k, v in self.decoded.items())
        return f"{env} -> quaternary {q}; binary {b}"

    def to_text(self) -> str:
        line = f"{self.circuit}: {self.status} over {self.checked} assignments"
        if not self.equivalent:
            line += f"\n  witness: {self.witness_text()}"
        return line


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["circuit", "status", "checked", "witness"])
    for r in reports:
        w.writerow([r.circuit, r.status, r.checked, r.witness_text()])
    return buf.getvalue()


def check_equivalence(
    n: Netlist,
    max_inputs: int = DEFAULT_MAX_INPUTS,
    templates: Optional[Mapping[QGateKind, BTemplate]] = None,
) -> EquivalenceReport:
    """Lower ``n`` and co-simulate both netlists over every quaternary assignment."""
    if len(n.inputs) > max_inputs:
        raise TooManyInputs(f"{len(n.inputs)} inputs exceed the cap of {max_inputs}")
    b = lower_netlist(n, templates)
    q_steps = _compile(n)
    b_steps = _compile(b)
    names = n.output_names
    checked = 0
    for combo in itertools.product(QUDIT_VALUES, repeat=len(n.inputs)):
        checked += 1
        q_out = _run(n, q_steps, dict(zip(n.inputs, combo)))
        bits = {}
        for name, v in zip(n.inputs, combo):
            bits[msb(name)], bits[lsb(name)] = qudit_to_bits(v)
        b_out = _run(b, b_steps, bits)
        decoded = {o: int(bits_to_qudit((b_out[msb(o)], b_out[lsb(o)]))) for o in names}
        if any(q_out[o] != decoded[o] for o in names):
            return EquivalenceReport(
                n.name, checked, False, dict(zip(n.inputs, combo)), q_out, decoded
            )
    return EquivalenceReport(n.name, checked, True)


class XorShift32:
    """Marsaglia xorshift32 with shifts (13, 17, 5).

    The seed is mixed with 0x9E3779B9 so that seed 0 still gives a non-zero
    state.  ``below(k)`` is ``next() % k``.
    """

    MASK = 0xFFFFFFFF

    def __init__(self, seed: int):
        self.state = ((seed & self.MASK) ^ 0x9E3779B9) or 0x9E3779B9

    def next(self) -> int:
        x = self.state
        x ^= (x << 13) & self.MASK
        x ^= x >> 17
        x ^= (x << 5) & self.MASK
        self.state = x
        return x

    def below(self, k: int) -> int:
        return self.next() % k


_KINDS = tuple(QGateKind)


def random_netlist(seed: int, n_inputs: int, n_gates: int) -> Netlist:
    """A valid netlist that is a pure function of its arguments.

    Each gate picks its kind uniformly and its sources uniformly among the
    inputs, the four constants and the gates built before it.  Every gate
    whose value nobody reads becomes an output.
    """
    if not 1 <= n_inputs <= 4:
        raise ValueError("n_inputs must be in 1..4")
    if not 1 <= n_gates <= 32:
        raise ValueError("n_gates must be in 1..32")
    rng = XorShift32(seed)
    inputs = tuple(f"I{i}" for i in range(n_inputs))
    constants = tuple((f"K{v}", v) for v in QUDIT_VALUES)
    pool = list(inputs) + [c for c, _ in constants]
    gates = []
    read = set()
    for i in range(n_gates):
        kind = _KINDS[rng.below(len(_KINDS))]
        srcs = tuple(pool[rng.below(len(pool))] for _ in range(kind.arity))
        read.update(srcs)
        gid = f"G{i}"
        gates.append(Gate(gid, kind, srcs))
        pool.append(gid)
    outputs = tuple((f"O{g.id}", g.id) for g in gates if g.id not in read)
    n = Netlist(f"random{seed}", inputs, constants, tuple(gates), outputs)
    return assign_slots(n)


def fuzz_parameters(seed: int, max_inputs: int = FUZZ_MAX_INPUTS, max_gates: int = FUZZ_MAX_GATES):
    """Input and gate counts used for ``seed`` in a fuzz campaign."""
    rng = XorShift32(seed ^ 0x5BD1E995)
    return 1 + rng.below(max_inputs), 1 + rng.below(max_gates)


def fuzz(seeds, max_inputs: int = FUZZ_MAX_INPUTS, max_gates: int = FUZZ_MAX_GATES):
    """Yield (netlist, report) for each seed."""
    for seed in seeds:
        k, g = fuzz_parameters(seed, max_inputs, max_gates)
        n = random_netlist(seed, k, g)
        yield n, check_equivalence(n, max_inputs=max_inputs)
