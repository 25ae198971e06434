"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]`` or ``[FAIL]`` line before asserting.
pytest repeats the lines in an "acceptance criteria" summary section.
``python3 tests/test_acceptance.py`` runs the same checks without pytest and
exits non-zero if any fail.
"""

import itertools
import sys
from dataclasses import replace
from pathlib import Path

import pytest

from quatlogic.algebra import Status, run_law_suite
from quatlogic.core import BGateKind, DYADIC_TABLES, QGateKind, TABLE_PAIRS, UNARY_TABLES, eval_qgate
from quatlogic.errors import NetlistError, ValueOutOfRange
from quatlogic.library import EXAMPLES, example
from quatlogic.lower import TEMPLATES, lower_netlist, pack_truth_table
from quatlogic.netlist import IssueKind, parse_netlist, serialize_netlist
from quatlogic.sim import sim_q, truth_table_b, truth_table_from_csv, truth_table_q
from quatlogic.verify import check_equivalence, check_gate_templates, fuzz

DATA = Path(__file__).parent / "data"
FUZZ_SEEDS = range(500)
# collected for the terminal summary in conftest.py
VERDICTS = []


def _nearest(v, pool):
    # ties never occur for the pools used here
    return min(pool, key=lambda p: abs(p - v))


def _swap(v):
    return ((v & 1) << 1) | (v >> 1)


ORACLE = {
    QGateKind.AND: lambda a, b: a & b,
    QGateKind.OR: lambda a, b: a | b,
    QGateKind.XOR: lambda a, b: a ^ b,
    QGateKind.EQ: lambda a, b: 3 if a == b else 0,
    QGateKind.MAX: max,
    QGateKind.MIN: min,
    QGateKind.NOT: lambda a: 3 - a,
    QGateKind.BITSWAP: _swap,
    QGateKind.INWARD: lambda a: _nearest(3 - a, (1, 2)),
    QGateKind.OUTWARD: lambda a: _nearest(3 - a, (0, 3)),
}


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    VERDICTS.append(line)
    print(line, flush=True)
    return ok


def criterion_1():
    cells = mismatches = 0
    for kind, column in DYADIC_TABLES.items():
        for (a, b), printed in zip(TABLE_PAIRS, column):
            cells += 1
            mismatches += printed != ORACLE[kind](a, b)
    for kind, column in UNARY_TABLES.items():
        for a, printed in enumerate(column):
            cells += 1
            mismatches += printed != ORACLE[kind](a)
    evaluated = 0
    for kind in QGateKind:
        operands = itertools.product(range(4), repeat=kind.arity)
        for ops in operands:
            evaluated += 1
            mismatches += eval_qgate(kind, *ops) != ORACLE[kind](*ops)
    ok = mismatches == 0 and len(DYADIC_TABLES) + len(UNARY_TABLES) == 10
    return report(1, "gate semantics", ok, f"{cells} table cells, {evaluated} evaluations, {mismatches} mismatches")


def criterion_2():
    results = check_gate_templates()
    failed = [r.kind.value for r in results if not r.passed]
    ok = len(results) == 10 and not failed
    return report(2, "gate-level lowering", ok, f"{len(results) - len(failed)}/{len(results)} templates pass")


def criterion_3():
    decoder = example("decoder")
    want_q = [((s,), tuple(3 if i == s else 0 for i in range(4))) for s in range(4)]
    want_b = [
        ((s >> 1, s & 1), tuple(bit for i in range(4) for bit in ((1, 1) if i == s else (0, 0))))
        for s in range(4)
    ]
    got_q = list(truth_table_q(decoder).rows)
    got_b = list(truth_table_b(lower_netlist(decoder)).rows)
    ok = got_q == want_q and got_b == want_b
    return report(3, "decoder tables", ok, "quaternary and binary, 4 rows each")


def criterion_4():
    quaternary = truth_table_from_csv((DATA / "arbitrary3_quaternary.csv").read_text(), 3)
    binary = truth_table_from_csv((DATA / "arbitrary3_binary.csv").read_text(), 6, radix=2)
    packed = pack_truth_table(quaternary)
    ok = (
        len(quaternary) == 64
        and packed.inputs == binary.inputs
        and packed.outputs == binary.outputs
        and packed.rows == binary.rows
    )
    differing = sum(a != b for a, b in zip(packed.rows, binary.rows))
    return report(4, "truth-table packing", ok, f"64 rows, {differing} differ")


def criterion_5():
    suite = run_law_suite()
    counts = {s: sum(r.status is s for r in suite.results) for s in Status}
    surfaced = {r.law.name for r in suite.results if r.status is Status.FAILS_AS_EXPECTED}
    typos = {"boundedness-and-one-as-printed", "boundedness-or-one-as-printed", "interchange-as-printed"}
    loci = {r.law.locus.rsplit(" ", 1)[0] for r in suite.results}
    ok = suite.ok and typos <= surfaced and {"axiom", "operator property", "theorem"} <= loci
    detail = ", ".join(f"{n} {s.value}" for s, n in counts.items())
    return report(5, "algebra suite", ok, detail)


def criterion_6():
    expected = {"decoder": 4, "demux": 16, "mux4": 1024}
    examples_ok = all(
        (r := check_equivalence(example(name))).equivalent and r.checked == checked
        for name, checked in expected.items()
    )
    fuzzed = [(n, r) for n, r in fuzz(FUZZ_SEEDS, max_inputs=4, max_gates=16)]
    bounded = all(len(n.inputs) <= 4 and len(n.gates) <= 16 for n, _ in fuzzed)
    equivalent = sum(r.equivalent for _, r in fuzzed)
    ok = examples_ok and bounded and len(fuzzed) >= 500 and equivalent == len(fuzzed)
    return report(6, "circuit equivalence", ok, f"3 examples, {equivalent}/{len(fuzzed)} fuzzed netlists")


def criterion_7():
    netlists = [example(name) for name in sorted(EXAMPLES)]
    netlists += [n for n, _ in fuzz(range(100), max_inputs=4, max_gates=16)]
    roundtrip = all(parse_netlist(serialize_netlist(n)) == n for n in netlists)
    lowered = [lower_netlist(n) for n in netlists]
    again = [lower_netlist(n) for n in netlists]
    deterministic = all(serialize_netlist(a) == serialize_netlist(b) for a, b in zip(lowered, again))
    binary_roundtrip = all(parse_netlist(serialize_netlist(b), binary=True) == b for b in lowered)
    ok = roundtrip and deterministic and binary_roundtrip
    return report(7, "round-trip and determinism", ok, f"{len(netlists)} netlists")


def _issue(text):
    try:
        parse_netlist(text)
    except NetlistError as exc:
        return [i.kind for i in exc.issues]
    return []


def criterion_8():
    tpl = TEMPLATES[QGateKind.MAX]
    gates = list(tpl.gates)
    gates[-1] = replace(gates[-1], kind=BGateKind.AND2)
    mutated = {**TEMPLATES, QGateKind.MAX: replace(tpl, gates=tuple(gates))}
    bad = next(r for r in check_gate_templates(mutated) if r.kind is QGateKind.MAX)
    corrupted = not bad.passed and bad.witness is not None
    single_max = parse_netlist("circuit m\ninput A\ninput B\ngate g = MAX(A, B)\noutput Y = g\n")
    mismatch = not check_equivalence(single_max, templates=mutated).equivalent

    out_of_range = _issue("circuit c\nconst K = 7\noutput Y = K\n") == [IssueKind.VALUE_OUT_OF_RANGE]
    try:
        sim_q(example("decoder"), {"S": 4})
        sim_rejects = False
    except ValueOutOfRange:
        sim_rejects = True
    dangling = _issue("circuit c\ninput A\ngate g = AND(A, Z)\noutput Y = g\n") == [IssueKind.UNKNOWN_SIGNAL]
    slot = _issue(
        "circuit c\ninput A\ngate g = NOT(A) @ 4\ngate h = NOT(g) @ 4\noutput Y = h\n"
    ) == [IssueKind.SLOT_VIOLATION]
    checks = {
        "corrupted template": corrupted and mismatch,
        "out-of-range constant": out_of_range and sim_rejects,
        "dangling reference": dangling,
        "slot violation": slot,
    }
    failed = [k for k, v in checks.items() if not v]
    return report(8, "negative paths", not failed, "failed: " + ", ".join(failed) if failed else "4/4 rejected")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_criterion(check):
    assert check()


if __name__ == "__main__":
    sys.exit(0 if all([c() for c in CRITERIA]) else 1)
