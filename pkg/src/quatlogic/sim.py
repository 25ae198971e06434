"""Netlist simulation and exhaustive truth-table enumeration."""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

from .core import BGATE_LUT, QGATE_LUT, Qudit
from .errors import IncompleteAssignment, MalformedTable, TooManyInputs, ValueOutOfRange
from .netlist import Netlist

DEFAULT_MAX_INPUTS = 6


def _compile(n: Netlist):
    """Flatten a netlist into (dest, lut, src_a, src_b) steps in slot order."""
    lut_for = BGATE_LUT if n.binary else QGATE_LUT
    steps = []
    for g in n.evaluation_order():
        a = g.inputs[0]
        b = g.inputs[1] if len(g.inputs) > 1 else None
        steps.append((g.id, lut_for[g.kind], a, b))
    return steps


def _run(n: Netlist, steps, values: Dict[str, int]) -> Dict[str, int]:
    for name, value in n.constants:
        values[name] = int(value)
    for dest, lut, a, b in steps:
        values[dest] = lut[values[a]][values[b] if b is not None else 0]
    return {oname: values[src] for oname, src in n.outputs}


def _coerce_assignment(n: Netlist, assignment: Mapping[str, int]) -> Dict[str, int]:
    missing = [name for name in n.inputs if name not in assignment]
    if missing:
        raise IncompleteAssignment(f"no value for input(s) {', '.join(missing)}")
    values = {}
    for name in n.inputs:
        v = assignment[name]
        if isinstance(v, bool) or not isinstance(v, int) or v not in n.values:
            raise ValueOutOfRange(
                f"input {name} = {v!r} not in {{{', '.join(map(str, n.values))}}}"
            )
        values[name] = int(v)
    return values


def simulate(n: Netlist, assignment: Mapping[str, int]) -> Dict[str, int]:
    """Evaluate ``n`` on one complete input assignment."""
    values = _coerce_assignment(n, assignment)
    return _run(n, _compile(n), values)


def signal_values(n: Netlist, assignment: Mapping[str, int]) -> Dict[str, int]:
    """Value of every signal (inputs, constants, gates) under one assignment."""
    values = _coerce_assignment(n, assignment)
    _run(n, _compile(n), values)
    return values


def sim_q(n: Netlist, assignment: Mapping[str, int]) -> Dict[str, Qudit]:
    if n.binary:
        raise TypeError("sim_q needs a quaternary netlist")
    return {k: Qudit(v) for k, v in simulate(n, assignment).items()}


def sim_b(n: Netlist, assignment: Mapping[str, int]) -> Dict[str, int]:
    if not n.binary:
        raise TypeError("sim_b needs a binary netlist")
    return simulate(n, assignment)


@dataclass(frozen=True)
class TruthTable:
    """Exhaustive table; rows run in odometer order, first input most significant."""

    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]
    rows: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]
    radix: int = 4

    def __len__(self):
        return len(self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.inputs + self.outputs)
        for ins, outs in self.rows:
            w.writerow(ins + outs)
        return buf.getvalue()

    def to_text(self) -> str:
        header = list(self.inputs) + ["|"] + list(self.outputs)
        widths = [max(len(h), 1) for h in header]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        for ins, outs in self.rows:
            cells = [str(v) for v in ins] + ["|"] + [str(v) for v in outs]
            lines.append("  ".join(c.rjust(w) for c, w in zip(cells, widths)))
        return "\n".join(lines)

    def check_complete(self):
        """Raise MalformedTable unless rows are the full odometer enumeration."""
        expected = itertools.product(range(self.radix), repeat=len(self.inputs))
        count = 0
        for row, want in zip(self.rows, expected):
            ins, outs = row
            if tuple(ins) != want:
                raise MalformedTable(f"row {count}: inputs {ins} out of order, expected {want}")
            if len(outs) != len(self.outputs):
                raise MalformedTable(f"row {count}: {len(outs)} outputs, expected {len(self.outputs)}")
            if any(v not in range(self.radix) for v in outs):
                raise MalformedTable(f"row {count}: output value outside radix {self.radix}")
            count += 1
        if count != self.radix ** len(self.inputs) or len(self.rows) != count:
            raise MalformedTable(
                f"{len(self.rows)} rows, expected {self.radix ** len(self.inputs)}"
            )


def truth_table_from_csv(text: str, n_inputs: int, radix: int = 4) -> TruthTable:
    """Read a CSV table whose first ``n_inputs`` columns are inputs."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise MalformedTable("empty CSV") from None
    if not 0 <= n_inputs <= len(header):
        raise MalformedTable(f"cannot take {n_inputs} input columns from {len(header)}")
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not c.strip() for c in rec):
            continue
        if len(rec) != len(header):
            raise MalformedTable(f"line {lineno}: {len(rec)} fields, expected {len(header)}")
        try:
            vals = tuple(int(c) for c in rec)
        except ValueError:
            raise MalformedTable(f"line {lineno}: non-integer field") from None
        rows.append((vals[:n_inputs], vals[n_inputs:]))
    return TruthTable(tuple(header[:n_inputs]), tuple(header[n_inputs:]), tuple(rows), radix)


def truth_table(n: Netlist, max_inputs: int = DEFAULT_MAX_INPUTS) -> TruthTable:
    """Enumerate every assignment of ``n`` in odometer order."""
    if len(n.inputs) > max_inputs:
        raise TooManyInputs(f"{len(n.inputs)} inputs exceed the cap of {max_inputs}")
    steps = _compile(n)
    rows = []
    for combo in itertools.product(n.values, repeat=len(n.inputs)):
        outs = _run(n, steps, dict(zip(n.inputs, combo)))
        rows.append((combo, tuple(outs[o] for o in n.output_names)))
    return TruthTable(n.inputs, n.output_names, tuple(rows), len(n.values))


def truth_table_q(n: Netlist, max_inputs: int = DEFAULT_MAX_INPUTS) -> TruthTable:
    if n.binary:
        raise TypeError("truth_table_q needs a quaternary netlist")
    return truth_table(n, max_inputs)


def truth_table_b(n: Netlist, max_inputs: int = 2 * DEFAULT_MAX_INPUTS) -> TruthTable:
    """Binary table; the default cap matches the quaternary cap after pairing."""
    if not n.binary:
        raise TypeError("truth_table_b needs a binary netlist")
    return truth_table(n, max_inputs)
