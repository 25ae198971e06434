import itertools

import pytest

from quatlogic.core import BGateKind, QGateKind, eval_qgate
from quatlogic.errors import MalformedTable, NetlistError
from quatlogic.library import EXAMPLES, example
from quatlogic.lower import (
    TEMPLATES,
    decode_outputs,
    encode_assignment,
    lower_gate,
    lower_netlist,
    pack_truth_table,
)
from quatlogic.netlist import Gate, Netlist, parse_netlist, serialize_netlist, validate
from quatlogic.sim import TruthTable, sim_b, sim_q, truth_table_b, truth_table_from_csv, truth_table_q

DECODER_BINARY_ROWS = [
    ((0, 0), (1, 1, 0, 0, 0, 0, 0, 0)),
    ((0, 1), (0, 0, 1, 1, 0, 0, 0, 0)),
    ((1, 0), (0, 0, 0, 0, 1, 1, 0, 0)),
    ((1, 1), (0, 0, 0, 0, 0, 0, 1, 1)),
]


def operands(kind):
    return itertools.product(range(4), range(4) if kind.arity == 2 else (None,))


@pytest.mark.parametrize("kind", list(QGateKind), ids=lambda k: k.value)
def test_template_sound(kind):
    tpl = lower_gate(kind)
    for a, b in operands(kind):
        assert tpl.evaluate(a, b) == eval_qgate(kind, a, b)


def test_template_gate_counts():
    assert lower_gate(QGateKind.EQ).gate_count == 3
    eq_kinds = sorted(g.kind.value for g in lower_gate(QGateKind.EQ).gates)
    assert eq_kinds == ["AND2", "XNOR2", "XNOR2"]
    assert lower_gate(QGateKind.BITSWAP).gate_count == 0
    assert lower_gate(QGateKind.INWARD).gate_count == 1
    assert lower_gate(QGateKind.OUTWARD).gate_count == 1
    for kind in (QGateKind.AND, QGateKind.OR, QGateKind.XOR, QGateKind.NOT):
        assert lower_gate(kind).gate_count == 2


def test_max_min_msb_gates():
    assert lower_gate(QGateKind.MAX).gates[0].kind is BGateKind.OR2
    assert lower_gate(QGateKind.MIN).gates[0].kind is BGateKind.AND2
    assert lower_gate(QGateKind.MAX).out_msb == "t0"
    assert lower_gate(QGateKind.MIN).out_msb == "t0"


def test_max_min_brute_force_oracle():
    for a, b in itertools.product(range(4), repeat=2):
        assert lower_gate(QGateKind.MAX).evaluate(a, b) == max(a, b)
        assert lower_gate(QGateKind.MIN).evaluate(a, b) == min(a, b)


def test_templates_only_use_binary_gates():
    allowed = set(BGateKind)
    for tpl in TEMPLATES.values():
        assert all(g.kind in allowed for g in tpl.gates)


def test_lower_decoder_matches_binary_table(decoder):
    b = lower_netlist(decoder)
    assert b.binary
    assert validate(b) == []
    assert b.inputs == ("S.1", "S.0")
    t = truth_table_b(b)
    assert t.outputs == ("L0.1", "L0.0", "L1.1", "L1.0", "L2.1", "L2.0", "L3.1", "L3.0")
    assert list(t.rows) == DECODER_BINARY_ROWS
    assert sim_b(b, {"S.1": 0, "S.0": 0}) == {
        "L0.1": 1, "L0.0": 1, "L1.1": 0, "L1.0": 0, "L2.1": 0, "L2.0": 0, "L3.1": 0, "L3.0": 0,
    }


def test_lower_single_not():
    n = parse_netlist("circuit n\ninput A\ngate g = NOT(A)\noutput Y = g\n")
    b = lower_netlist(n)
    assert [(g.id, g.kind, g.inputs) for g in b.gates] == [
        ("g__t0", BGateKind.NOT, ("A.1",)),
        ("g__t1", BGateKind.NOT, ("A.0",)),
    ]
    assert b.outputs == (("Y.1", "g__t0"), ("Y.0", "g__t1"))


def test_lower_chain_equivalent_by_cosimulation():
    n = parse_netlist(
        "circuit chain\ninput A\ninput B\ninput C\n"
        "gate g1 = AND(A, B)\ngate g2 = OR(g1, C)\noutput Y = g2\n"
    )
    b = lower_netlist(n)
    assert len(b.gates) == 4
    assert all(g.kind in (BGateKind.AND2, BGateKind.OR2) for g in b.gates)
    assert {g.slot for g in b.gates if g.id.startswith("g1")} == {2}
    assert {g.slot for g in b.gates if g.id.startswith("g2")} == {4}
    for a, bb, c in itertools.product(range(4), repeat=3):
        env = {"A": a, "B": bb, "C": c}
        want = sim_q(n, env)
        got = decode_outputs(sim_b(b, encode_assignment(env)), n.output_names)
        assert got == want


def test_bitswap_lowering_is_pure_wiring():
    n = parse_netlist("circuit s\ninput A\ngate g = BITSWAP(A)\noutput Y = g\n")
    b = lower_netlist(n)
    assert b.gates == ()
    assert b.outputs == (("Y.1", "A.0"), ("Y.0", "A.1"))


def test_constants_become_bit_pairs(decoder):
    b = lower_netlist(decoder)
    assert dict(b.constants) == {
        "C0.1": 0, "C0.0": 0, "C1.1": 0, "C1.0": 1, "C2.1": 1, "C2.0": 0, "C3.1": 1, "C3.0": 1,
    }


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_pack_equals_lowered_table(name):
    n = example(name)
    assert pack_truth_table(truth_table_q(n)) == truth_table_b(lower_netlist(n))


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_lowering_is_deterministic(name):
    a = serialize_netlist(lower_netlist(example(name)))
    b = serialize_netlist(lower_netlist(example(name)))
    assert a == b


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_lowered_text_roundtrips(name):
    b = lower_netlist(example(name))
    text = serialize_netlist(b)
    again = parse_netlist(text, binary=True)
    assert again == b
    assert serialize_netlist(again) == text


def test_lower_rejects_invalid():
    bad = Netlist("c", ("A",), (), (Gate("g", QGateKind.NOT, ("Z",), 2),), (("Y", "g"),))
    with pytest.raises(NetlistError):
        lower_netlist(bad)


def test_pack_examples(data_dir):
    q = truth_table_from_csv((data_dir / "arbitrary3_quaternary.csv").read_text(), 3)
    packed = pack_truth_table(q)
    assert packed.inputs == ("A.1", "A.0", "B.1", "B.0", "C.1", "C.0")
    assert packed.outputs == ("y.1", "y.0")
    rows = dict(packed.rows)
    assert rows[(0, 1, 1, 0, 0, 0)] == (1, 1)  # (1, 2, 0) -> 3
    assert rows[(0, 1, 0, 1, 0, 1)] == (0, 1)  # (1, 1, 1) -> 1
    assert packed.rows[0] == ((0,) * 6, (0, 0))


def test_pack_rejects_malformed():
    t = TruthTable(("A",), ("Y",), (((0,), (0,)), ((1,), (1,))))
    with pytest.raises(MalformedTable):
        pack_truth_table(t)
    with pytest.raises(MalformedTable):
        pack_truth_table(TruthTable(("A",), ("Y",), (((0,), (0,)), ((1,), (1,))), radix=2))
