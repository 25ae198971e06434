"""Time-slotted combinational netlists and their line-oriented text format.

A circuit is laid out in vertical timeslots: inputs and constants sit in
slot 0, gates sit in even slots >= 2, and odd slots carry only wiring.  A gate
may read only signals from strictly earlier slots, so the slot numbering is
itself a proof of acyclicity.

Text format (``#`` starts a comment)::

    circuit decoder
    input S
    const C0 = 0
    gate E0 = EQ(S, C0) @ 2
    output L0 = E0

The same grammar describes binary netlists (``.bvl``) with binary gate kinds
and 0/1 constants.  Binary netlists produced by lowering name
template-internal gates ``<gate>__t<k>``; gates of one template share the
slot of the gate they replace and may read each other inside that slot.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from graphlib import CycleError, TopologicalSorter
from typing import Dict, List, Optional, Tuple, Union

from .core import BGateKind, QGateKind, parse_gate_kind
from .errors import NetlistError, NetlistSyntaxError

GateKind = Union[QGateKind, BGateKind]


class IssueKind(str, enum.Enum):
    UNKNOWN_SIGNAL = "UnknownSignal"
    DUPLICATE_NAME = "DuplicateName"
    ARITY_MISMATCH = "ArityMismatch"
    SLOT_VIOLATION = "SlotViolation"
    VALUE_OUT_OF_RANGE = "ValueOutOfRange"
    COMBINATIONAL_CYCLE = "CombinationalCycle"


@dataclass(frozen=True)
class Issue:
    """One validation problem, pinned to a single netlist element."""

    kind: IssueKind
    locus: str
    message: str

    def __str__(self):
        return f"{self.kind.value} at {self.locus}: {self.message}"


@dataclass(frozen=True)
class Gate:
    id: str
    kind: GateKind
    inputs: Tuple[str, ...]
    slot: Optional[int] = None


@dataclass(frozen=True)
class Netlist:
    name: str
    inputs: Tuple[str, ...] = ()
    constants: Tuple[Tuple[str, int], ...] = ()
    gates: Tuple[Gate, ...] = ()
    outputs: Tuple[Tuple[str, str], ...] = ()
    binary: bool = False
    # source line of each declared name, for diagnostics only
    lines: Dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    @property
    def values(self):
        return (0, 1) if self.binary else (0, 1, 2, 3)

    @property
    def output_names(self):
        return tuple(name for name, _ in self.outputs)

    def gate(self, gid: str) -> Gate:
        for g in self.gates:
            if g.id == gid:
                return g
        raise KeyError(gid)

    def signals(self):
        """Every readable signal name: inputs, constants, then gates."""
        return (
            list(self.inputs)
            + [name for name, _ in self.constants]
            + [g.id for g in self.gates]
        )

    def slot_of(self) -> Dict[str, Optional[int]]:
        slots = {name: 0 for name in self.inputs}
        slots.update((name, 0) for name, _ in self.constants)
        slots.update((g.id, g.slot) for g in self.gates)
        return slots

    def evaluation_order(self):
        """Gates sorted by slot, ties broken by declaration order."""
        indexed = sorted(enumerate(self.gates), key=lambda p: (p[1].slot or 0, p[0]))
        return [g for _, g in indexed]

    def max_slot(self) -> int:
        return max((g.slot or 0 for g in self.gates), default=0)

    def fanout(self) -> Dict[str, int]:
        """Number of gate inputs and outputs fed by each signal."""
        counts = {name: 0 for name in self.signals()}
        for g in self.gates:
            for src in g.inputs:
                counts[src] = counts.get(src, 0) + 1
        for _, src in self.outputs:
            counts[src] = counts.get(src, 0) + 1
        return counts


def template_group(gid: str) -> Optional[str]:
    """The replaced-gate id for a lowered template gate ``<gate>__t<k>``."""
    head, sep, tail = gid.rpartition("__t")
    return head if sep and tail.isdigit() else None


def _same_template(a: str, b: str) -> bool:
    ga = template_group(a)
    return ga is not None and ga == template_group(b)


# -- parsing ---------------------------------------------------------------

_IDENT = r"[A-Za-z_][A-Za-z0-9_.]*"
_CIRCUIT_RE = re.compile(rf"circuit\s+({_IDENT})$")
_INPUT_RE = re.compile(rf"input\s+({_IDENT})$")
_CONST_RE = re.compile(rf"const\s+({_IDENT})\s*=\s*([-+]?\d+)$")
_GATE_RE = re.compile(
    rf"gate\s+({_IDENT})\s*=\s*([A-Za-z0-9_]+)\s*\(([^()]*)\)\s*(?:@\s*([-+]?\d+))?$"
)
_OUTPUT_RE = re.compile(rf"output\s+({_IDENT})\s*=\s*({_IDENT})$")
_IDENT_RE = re.compile(rf"{_IDENT}$")


def _parse_lines(text: str, binary: bool) -> Netlist:
    name = None
    inputs: List[str] = []
    constants: List[Tuple[str, int]] = []
    gates: List[Gate] = []
    outputs: List[Tuple[str, str]] = []
    lines: Dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword = line.split(None, 1)[0]
        if keyword == "circuit":
            m = _CIRCUIT_RE.match(line)
            if not m:
                raise NetlistSyntaxError("expected 'circuit <name>'", lineno)
            if name is not None:
                raise NetlistSyntaxError("second 'circuit' declaration", lineno)
            name = m.group(1)
        elif keyword == "input":
            m = _INPUT_RE.match(line)
            if not m:
                raise NetlistSyntaxError("expected 'input <name>'", lineno)
            inputs.append(m.group(1))
            lines.setdefault(m.group(1), lineno)
        elif keyword == "const":
            m = _CONST_RE.match(line)
            if not m:
                raise NetlistSyntaxError("expected 'const <name> = <value>'", lineno)
            constants.append((m.group(1), int(m.group(2))))
            lines.setdefault(m.group(1), lineno)
        elif keyword == "gate":
            m = _GATE_RE.match(line)
            if not m:
                raise NetlistSyntaxError(
                    "expected 'gate <id> = <KIND>(<sig>[, <sig>]) [@ <slot>]'", lineno
                )
            gid, kind_name, args, slot = m.groups()
            kind = parse_gate_kind(kind_name, binary)
            if kind is None:
                family = "binary" if binary else "quaternary"
                raise NetlistSyntaxError(f"unknown {family} gate kind {kind_name!r}", lineno)
            operands = tuple(a.strip() for a in args.split(",")) if args.strip() else ()
            for op in operands:
                if not _IDENT_RE.match(op):
                    raise NetlistSyntaxError(f"bad signal name {op!r}", lineno)
            gates.append(Gate(gid, kind, operands, int(slot) if slot is not None else None))
            lines.setdefault(gid, lineno)
        elif keyword == "output":
            m = _OUTPUT_RE.match(line)
            if not m:
                raise NetlistSyntaxError("expected 'output <name> = <signal>'", lineno)
            outputs.append((m.group(1), m.group(2)))
            lines.setdefault(m.group(1), lineno)
        else:
            raise NetlistSyntaxError(f"unknown statement {keyword!r}", lineno)

    if name is None:
        raise NetlistSyntaxError("missing 'circuit <name>' declaration", 1)
    return Netlist(
        name, tuple(inputs), tuple(constants), tuple(gates), tuple(outputs), binary, lines
    )


def parse_netlist(text: str, binary: bool = False) -> Netlist:
    """Parse, validate and levelize a netlist.

    Raises NetlistSyntaxError for malformed lines and NetlistError carrying
    every validation issue otherwise.  Gates without ``@ slot`` receive the
    earliest legal slot.
    """
    n = _parse_lines(text, binary)
    issues = _structural_issues(n)
    if issues:
        raise NetlistError(issues)
    n = assign_slots(n)
    issues = validate(n)
    if issues:
        raise NetlistError(issues)
    return n


# -- validation ------------------------------------------------------------


def _locus(n: Netlist, name: str) -> str:
    line = n.lines.get(name)
    return f"line {line} ({name})" if line else name


def _structural_issues(n: Netlist) -> List[Issue]:
    """Everything except slot discipline and cycles."""
    issues = []
    seen = set()
    declared = (
        list(n.inputs)
        + [c for c, _ in n.constants]
        + [g.id for g in n.gates]
        + [o for o, _ in n.outputs]
    )
    for name in declared:
        if name in seen:
            issues.append(Issue(IssueKind.DUPLICATE_NAME, _locus(n, name), f"{name!r} declared twice"))
        seen.add(name)

    for cname, value in n.constants:
        if value not in n.values:
            issues.append(
                Issue(
                    IssueKind.VALUE_OUT_OF_RANGE,
                    _locus(n, cname),
                    f"constant {value} not in {{{', '.join(map(str, n.values))}}}",
                )
            )

    signals = set(n.signals())
    for g in n.gates:
        if len(g.inputs) != g.kind.arity:
            issues.append(
                Issue(
                    IssueKind.ARITY_MISMATCH,
                    _locus(n, g.id),
                    f"{g.kind.value} takes {g.kind.arity} input(s), got {len(g.inputs)}",
                )
            )
        for src in g.inputs:
            if src not in signals:
                issues.append(
                    Issue(IssueKind.UNKNOWN_SIGNAL, _locus(n, g.id), f"undeclared signal {src!r}")
                )
    for oname, src in n.outputs:
        if src not in signals:
            issues.append(
                Issue(IssueKind.UNKNOWN_SIGNAL, _locus(n, oname), f"undeclared signal {src!r}")
            )
    return issues


def _topological_gates(n: Netlist) -> List[Gate]:
    by_id = {g.id: g for g in n.gates}
    ts = TopologicalSorter()
    for g in n.gates:
        ts.add(g.id, *[s for s in g.inputs if s in by_id])
    try:
        order = list(ts.static_order())
    except CycleError as exc:
        cycle = exc.args[1]
        raise NetlistError(
            [
                Issue(
                    IssueKind.COMBINATIONAL_CYCLE,
                    _locus(n, cycle[0]),
                    "cycle through " + " -> ".join(cycle),
                )
            ]
        ) from None
    return [by_id[gid] for gid in order]


def _slot_issues(n: Netlist) -> List[Issue]:
    issues = []
    slots = n.slot_of()
    position = {g.id: i for i, g in enumerate(n.gates)}
    for g in n.gates:
        if g.slot is None or g.slot < 2 or g.slot % 2:
            issues.append(
                Issue(
                    IssueKind.SLOT_VIOLATION,
                    _locus(n, g.id),
                    f"gate slot must be an even number >= 2, got {g.slot}",
                )
            )
            continue
        for src in g.inputs:
            src_slot = slots.get(src)
            if src_slot is None:
                continue
            if src_slot < g.slot:
                continue
            if (
                n.binary
                and src_slot == g.slot
                and _same_template(src, g.id)
                and position[src] < position[g.id]
            ):
                continue
            issues.append(
                Issue(
                    IssueKind.SLOT_VIOLATION,
                    _locus(n, g.id),
                    f"reads {src!r} from slot {src_slot}, not earlier than its own slot {g.slot}",
                )
            )
    return issues


def validate(n: Netlist) -> List[Issue]:
    """All issues found in ``n``; an empty list means the netlist is well formed."""
    issues = _structural_issues(n)
    try:
        _topological_gates(n)
    except NetlistError as exc:
        issues.extend(exc.issues)
        return issues
    issues.extend(_slot_issues(n))
    return issues


def assign_slots(n: Netlist) -> Netlist:
    """Give every gate the earliest slot after its sources.

    Explicit slots are kept when they are legal (even, >= 2, after every
    source); an explicit slot that is too early raises SlotViolation.
    """
    issues = _structural_issues(n)
    if issues:
        raise NetlistError(issues)
    slots = n.slot_of()
    position = {g.id: i for i, g in enumerate(n.gates)}
    for g in _topological_gates(n):
        earliest = 2
        for src in g.inputs:
            s = slots[src]
            if n.binary and _same_template(src, g.id) and position[src] < position[g.id]:
                earliest = max(earliest, s)
            else:
                earliest = max(earliest, s + 2)
        if g.slot is None:
            slots[g.id] = earliest
        elif g.slot % 2 or g.slot < earliest:
            raise NetlistError(
                [
                    Issue(
                        IssueKind.SLOT_VIOLATION,
                        _locus(n, g.id),
                        f"explicit slot {g.slot} conflicts with earliest legal slot {earliest}",
                    )
                ]
            )
    gates = tuple(replace(g, slot=slots[g.id]) for g in n.gates)
    return replace(n, gates=gates)


# -- serialization ---------------------------------------------------------


def serialize_netlist(n: Netlist) -> str:
    out = [f"circuit {n.name}"]
    out += [f"input {name}" for name in n.inputs]
    out += [f"const {name} = {int(value)}" for name, value in n.constants]
    for g in n.gates:
        line = f"gate {g.id} = {g.kind.value}({', '.join(g.inputs)})"
        if g.slot is not None:
            line += f" @ {g.slot}"
        out.append(line)
    out += [f"output {name} = {src}" for name, src in n.outputs]
    return "\n".join(out) + "\n"


_BINARY_ONLY = {k.value for k in BGateKind} - {k.value for k in QGateKind}


def looks_binary(text: str) -> bool:
    """Guess whether netlist text is binary: binary-only gate kinds or paired wire names."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        m = _GATE_RE.match(line)
        if m and m.group(2) in _BINARY_ONLY:
            return True
        if line.startswith("input ") and "." in line:
            return True
    return False


def read_netlist(path: str, text: Optional[str] = None, binary: Optional[bool] = None) -> Netlist:
    """Load a netlist file; ``.bvl`` means binary, ``.mvl`` quaternary, otherwise sniff."""
    if text is None:
        with open(path) as f:
            text = f.read()
    if binary is None:
        if path.endswith(".bvl"):
            binary = True
        elif path.endswith(".mvl"):
            binary = False
        else:
            binary = looks_binary(text)
    return parse_netlist(text, binary)
