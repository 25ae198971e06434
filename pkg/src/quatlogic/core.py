"""Quaternary values, their packed-binary encoding, and single-gate evaluation.

A qudit X is stored as the bit pair <x1, x0> with X = 2*x1 + x0.  Gate
semantics come from the published truth tables, which list each dyadic gate
on the ten unordered operand pairs; the remaining six ordered pairs follow
by commutativity.
"""

from __future__ import annotations

import enum
from itertools import combinations_with_replacement
from typing import NamedTuple

from .errors import ArityMismatch, ValueOutOfRange

QUDIT_VALUES = (0, 1, 2, 3)


class Qudit(int):
    """A quaternary logic level.  Construction rejects anything outside 0..3."""

    __slots__ = ()

    def __new__(cls, value):
        if isinstance(value, Qudit):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueOutOfRange(f"not a quaternary digit: {value!r}")
        if value not in QUDIT_VALUES:
            raise ValueOutOfRange(f"quaternary digit out of range: {value}")
        if _QUDITS:
            return _QUDITS[value]
        return super().__new__(cls, value)

    def __repr__(self):
        return f"Qudit({int(self)})"

    __str__ = int.__repr__

    @property
    def symmetric(self) -> bool:
        """True for 0 and 3, whose bit pair survives a swap unchanged."""
        return self in (0, 3)

    @property
    def asymmetric(self) -> bool:
        return not self.symmetric


_QUDITS: tuple = ()
_QUDITS = tuple(Qudit(v) for v in QUDIT_VALUES)


class BitPair(NamedTuple):
    msb: int
    lsb: int


def _check_bit(bit) -> int:
    if isinstance(bit, bool):
        return int(bit)
    if bit not in (0, 1) or not isinstance(bit, int):
        raise ValueOutOfRange(f"not a binary digit: {bit!r}")
    return bit


def qudit_to_bits(q) -> BitPair:
    q = Qudit(q)
    return BitPair(q >> 1, q & 1)


def bits_to_qudit(bits) -> Qudit:
    msb, lsb = bits
    return _QUDITS[2 * _check_bit(msb) + _check_bit(lsb)]


class QGateKind(enum.Enum):
    AND = "AND"
    OR = "OR"
    NOT = "NOT"
    BITSWAP = "BITSWAP"
    XOR = "XOR"
    INWARD = "INWARD"
    OUTWARD = "OUTWARD"
    EQ = "EQ"
    MAX = "MAX"
    MIN = "MIN"

    @property
    def arity(self) -> int:
        return 1 if self in _Q_UNARY else 2

    @property
    def fundamental(self) -> bool:
        return self in (QGateKind.AND, QGateKind.OR, QGateKind.NOT, QGateKind.BITSWAP)


_Q_UNARY = frozenset({QGateKind.NOT, QGateKind.BITSWAP, QGateKind.INWARD, QGateKind.OUTWARD})


class BGateKind(enum.Enum):
    AND2 = "AND2"
    OR2 = "OR2"
    NOT = "NOT"
    XOR2 = "XOR2"
    XNOR2 = "XNOR2"

    @property
    def arity(self) -> int:
        return 1 if self is BGateKind.NOT else 2


# Operand order used by the published tables: the ten pairs (a, b) with a <= b.
TABLE_PAIRS = tuple(combinations_with_replacement(QUDIT_VALUES, 2))

# Output rows for the dyadic gates, one entry per TABLE_PAIRS element.
DYADIC_TABLES = {
    QGateKind.AND: (0, 0, 0, 0, 1, 0, 1, 2, 2, 3),
    QGateKind.OR: (0, 1, 2, 3, 1, 3, 3, 2, 3, 3),
    QGateKind.XOR: (0, 1, 2, 3, 0, 3, 2, 0, 1, 0),
    QGateKind.EQ: (3, 0, 0, 0, 3, 0, 0, 3, 0, 3),
    QGateKind.MAX: (0, 1, 2, 3, 1, 2, 3, 2, 3, 3),
    QGateKind.MIN: (0, 0, 0, 0, 1, 1, 1, 2, 2, 3),
}

# Unary gates, indexed by operand value.
UNARY_TABLES = {
    QGateKind.NOT: (3, 2, 1, 0),
    QGateKind.BITSWAP: (0, 2, 1, 3),
    QGateKind.INWARD: (2, 2, 1, 1),
    QGateKind.OUTWARD: (3, 3, 0, 0),
}


def _expand(kind):
    if kind.arity == 1:
        row = UNARY_TABLES[kind]
        return tuple((row[a],) * 4 for a in QUDIT_VALUES)
    table = [[None] * 4 for _ in QUDIT_VALUES]
    for (a, b), out in zip(TABLE_PAIRS, DYADIC_TABLES[kind]):
        table[a][b] = table[b][a] = out
    return tuple(tuple(r) for r in table)


# QGATE_LUT[kind][a][b] -> int; unary gates ignore b.  Used by the simulators.
QGATE_LUT = {kind: _expand(kind) for kind in QGateKind}

BGATE_LUT = {
    BGateKind.AND2: ((0, 0), (0, 1)),
    BGateKind.OR2: ((0, 1), (1, 1)),
    BGateKind.XOR2: ((0, 1), (1, 0)),
    BGateKind.XNOR2: ((1, 0), (0, 1)),
    BGateKind.NOT: ((1, 1), (0, 0)),
}


def _check_arity(kind, b):
    if (b is None) != (kind.arity == 1):
        want = "one operand" if kind.arity == 1 else "two operands"
        raise ArityMismatch(f"{kind.value} takes {want}")


def eval_qgate(kind: QGateKind, a, b=None) -> Qudit:
    kind = QGateKind(kind)
    _check_arity(kind, b)
    a = Qudit(a)
    b = Qudit(b) if b is not None else 0
    return _QUDITS[QGATE_LUT[kind][a][b]]


def eval_bgate(kind: BGateKind, a, b=None) -> int:
    kind = BGateKind(kind)
    _check_arity(kind, b)
    a = _check_bit(a)
    b = _check_bit(b) if b is not None else 0
    return BGATE_LUT[kind][a][b]


def parse_gate_kind(name: str, binary: bool = False):
    enum_cls = BGateKind if binary else QGateKind
    try:
        return enum_cls(name)
    except ValueError:
        return None
