"""Replacement-based lowering of quaternary netlists to binary netlists.

Every quaternary signal ``s`` becomes a wire pair carrying its MSB and LSB.
Inputs, constants and outputs get the literal names ``s.1`` / ``s.0``; each
gate is replaced in place by a fixed binary template whose internal gates
are named ``<gate>__t<k>``.  Templates that are pure wiring (BITSWAP, and the
LSB of INWARD) introduce no gates; downstream readers are wired straight to
the original bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple

from .core import BGATE_LUT, BGateKind, QGateKind, Qudit, bits_to_qudit, qudit_to_bits
from .errors import MalformedTable, NetlistError
from .netlist import Gate, Netlist, validate
from .sim import TruthTable

A1, A0, B1, B0 = "a.1", "a.0", "b.1", "b.0"
PORTS = (A1, A0, B1, B0)


@dataclass(frozen=True)
class TGate:
    name: str
    kind: BGateKind
    inputs: Tuple[str, ...]


@dataclass(frozen=True)
class BTemplate:
    """Binary stand-in for one quaternary gate.

    ``gates`` read the operand ports ``a.1 a.0 b.1 b.0`` or earlier template
    gates; ``out_msb`` / ``out_lsb`` name a port or a template gate.
    """

    kind: QGateKind
    gates: Tuple[TGate, ...]
    out_msb: str
    out_lsb: str

    @property
    def gate_count(self) -> int:
        return len(self.gates)

    def evaluate(self, a, b=None) -> Qudit:
        a1, a0 = qudit_to_bits(a)
        b1, b0 = qudit_to_bits(b) if b is not None else (0, 0)
        wires = {A1: a1, A0: a0, B1: b1, B0: b0}
        for g in self.gates:
            x = wires[g.inputs[0]]
            y = wires[g.inputs[1]] if len(g.inputs) > 1 else 0
            wires[g.name] = BGATE_LUT[g.kind][x][y]
        return bits_to_qudit((wires[self.out_msb], wires[self.out_lsb]))


def _t(*specs):
    return tuple(TGate(f"t{i}", kind, tuple(ins)) for i, (kind, *ins) in enumerate(specs))


AND2, OR2, NOT, XOR2, XNOR2 = (
    BGateKind.AND2,
    BGateKind.OR2,
    BGateKind.NOT,
    BGateKind.XOR2,
    BGateKind.XNOR2,
)

TEMPLATES = {
    QGateKind.AND: BTemplate(QGateKind.AND, _t((AND2, A1, B1), (AND2, A0, B0)), "t0", "t1"),
    QGateKind.OR: BTemplate(QGateKind.OR, _t((OR2, A1, B1), (OR2, A0, B0)), "t0", "t1"),
    QGateKind.XOR: BTemplate(QGateKind.XOR, _t((XOR2, A1, B1), (XOR2, A0, B0)), "t0", "t1"),
    QGateKind.NOT: BTemplate(QGateKind.NOT, _t((NOT, A1), (NOT, A0)), "t0", "t1"),
    QGateKind.BITSWAP: BTemplate(QGateKind.BITSWAP, (), A0, A1),
    QGateKind.INWARD: BTemplate(QGateKind.INWARD, _t((NOT, A1)), "t0", A1),
    QGateKind.OUTWARD: BTemplate(QGateKind.OUTWARD, _t((NOT, A1)), "t0", "t0"),
    QGateKind.EQ: BTemplate(
        QGateKind.EQ, _t((XNOR2, A1, B1), (XNOR2, A0, B0), (AND2, "t0", "t1")), "t2", "t2"
    ),
    # lsb = a0.(a1 + !b1) + b0.(b1 + !a1): take the LSB of whichever operand has
    # the larger MSB, or OR both LSBs when the MSBs tie.
    QGateKind.MAX: BTemplate(
        QGateKind.MAX,
        _t(
            (OR2, A1, B1),
            (NOT, A1),
            (NOT, B1),
            (OR2, A1, "t2"),
            (OR2, B1, "t1"),
            (AND2, A0, "t3"),
            (AND2, B0, "t4"),
            (OR2, "t5", "t6"),
        ),
        "t0",
        "t7",
    ),
    # dual of MAX: lsb = (a0 + a1.!b1).(b0 + b1.!a1)
    QGateKind.MIN: BTemplate(
        QGateKind.MIN,
        _t(
            (AND2, A1, B1),
            (NOT, A1),
            (NOT, B1),
            (AND2, A1, "t2"),
            (AND2, B1, "t1"),
            (OR2, A0, "t3"),
            (OR2, B0, "t4"),
            (AND2, "t5", "t6"),
        ),
        "t0",
        "t7",
    ),
}


def lower_gate(kind: QGateKind) -> BTemplate:
    return TEMPLATES[QGateKind(kind)]


def msb(name: str) -> str:
    return f"{name}.1"


def lsb(name: str) -> str:
    return f"{name}.0"


def lower_netlist(n: Netlist, templates: Optional[Mapping[QGateKind, BTemplate]] = None) -> Netlist:
    """Replace every gate of ``n`` by its binary template, slot by slot."""
    if n.binary:
        raise TypeError("lower_netlist needs a quaternary netlist")
    issues = validate(n)
    if issues:
        raise NetlistError(issues)
    templates = TEMPLATES if templates is None else templates

    pair: Dict[str, Tuple[str, str]] = {}
    inputs = []
    for name in n.inputs:
        inputs += [msb(name), lsb(name)]
        pair[name] = (msb(name), lsb(name))
    constants = []
    for name, value in n.constants:
        hi, lo = qudit_to_bits(value)
        constants += [(msb(name), hi), (lsb(name), lo)]
        pair[name] = (msb(name), lsb(name))

    gates = []
    for g in n.evaluation_order():
        tpl = templates[g.kind]
        wires = {A1: pair[g.inputs[0]][0], A0: pair[g.inputs[0]][1]}
        if len(g.inputs) > 1:
            wires[B1], wires[B0] = pair[g.inputs[1]]
        for k, tg in enumerate(tpl.gates):
            gid = f"{g.id}__t{k}"
            gates.append(Gate(gid, tg.kind, tuple(wires[i] for i in tg.inputs), g.slot))
            wires[tg.name] = gid
        pair[g.id] = (wires[tpl.out_msb], wires[tpl.out_lsb])

    outputs = []
    for name, src in n.outputs:
        outputs += [(msb(name), pair[src][0]), (lsb(name), pair[src][1])]

    out = Netlist(n.name, tuple(inputs), tuple(constants), tuple(gates), tuple(outputs), True)
    issues = validate(out)
    if issues:
        raise NetlistError(issues)
    return out


def encode_assignment(assignment: Mapping[str, int]) -> Dict[str, int]:
    """Quaternary input values -> the binary assignment of their wire pairs."""
    bits = {}
    for name, value in assignment.items():
        bits[msb(name)], bits[lsb(name)] = qudit_to_bits(value)
    return bits


def decode_outputs(bits: Mapping[str, int], names) -> Dict[str, Qudit]:
    return {name: bits_to_qudit((bits[msb(name)], bits[lsb(name)])) for name in names}


def pack_truth_table(t: TruthTable) -> TruthTable:
    """Rewrite a quaternary table as a binary one, each column split into MSB, LSB."""
    if t.radix != 4:
        raise MalformedTable(f"expected a quaternary table, got radix {t.radix}")
    t.check_complete()

    def split(values):
        out = []
        for v in values:
            out.extend(qudit_to_bits(v))
        return tuple(out)

    def names(cols):
        out = []
        for c in cols:
            out += [msb(c), lsb(c)]
        return tuple(out)

    rows = tuple((split(ins), split(outs)) for ins, outs in t.rows)
    return TruthTable(names(t.inputs), names(t.outputs), rows, 2)
