"""Quaternary algebra expressions and an exhaustive identity prover.

Grammar (``.`` binds tighter than ``+``, both left-associative)::

    expr    := term ('+' term)*
    term    := factor ('.' factor)*
    factor  := CONST | IDENT | FUNC '(' expr [',' expr] ')' | '(' expr ')'

``*`` and ``·`` are accepted as spellings of ``.``.  FUNC is one of NOT,
BITSWAP, INWARD, OUTWARD (unary) or XOR, EQ, MAX, MIN, AND, OR (binary).
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, Mapping, Optional, Tuple, Union

from .core import QGATE_LUT, QUDIT_VALUES, QGateKind, Qudit, eval_qgate
from .errors import (
    ExprSyntaxError,
    TooManyVariables,
    UnboundVariable,
    UnknownOperator,
)

DEFAULT_MAX_VARS = 4

UNARY_OPS = frozenset({QGateKind.NOT, QGateKind.BITSWAP, QGateKind.INWARD, QGateKind.OUTWARD})
BINARY_OPS = frozenset(
    {QGateKind.AND, QGateKind.OR, QGateKind.XOR, QGateKind.EQ, QGateKind.MAX, QGateKind.MIN}
)


@dataclass(frozen=True)
class Const:
    value: Qudit

    def __post_init__(self):
        object.__setattr__(self, "value", Qudit(self.value))


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: QGateKind
    child: "Expr"

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise UnknownOperator(f"{self.op.value} is not a unary operator", 0)


@dataclass(frozen=True)
class Binary:
    op: QGateKind
    left: "Expr"
    right: "Expr"

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise UnknownOperator(f"{self.op.value} is not a binary operator", 0)


Expr = Union[Const, Var, Unary, Binary]


def variables(e: Expr) -> frozenset:
    if isinstance(e, Var):
        return frozenset({e.name})
    if isinstance(e, Const):
        return frozenset()
    if isinstance(e, Unary):
        return variables(e.child)
    return variables(e.left) | variables(e.right)


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[+.*·(),]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "op" and value in "*·":
            value = "."
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, got, pos = self.take()
        if got != value:
            shown = "end of input" if kind == "end" else repr(got)
            raise ExprSyntaxError(f"expected {value!r}, found {shown}", pos)

    def parse(self):
        e = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {value!r}", pos)
        return e

    def expr(self):
        e = self.term()
        while self.peek()[1] == "+":
            self.take()
            e = Binary(QGateKind.OR, e, self.term())
        return e

    def term(self):
        e = self.factor()
        while self.peek()[1] == ".":
            self.take()
            e = Binary(QGateKind.AND, e, self.factor())
        return e

    def factor(self):
        kind, value, pos = self.take()
        if kind == "num":
            if int(value) not in QUDIT_VALUES:
                raise ExprSyntaxError(f"constant {value} is not a quaternary digit", pos)
            return Const(int(value))
        if kind == "ident":
            if self.peek()[1] == "(":
                return self.call(value, pos)
            if value in QGateKind.__members__:
                raise ExprSyntaxError(f"operator {value} used without arguments", pos)
            return Var(value)
        if value == "(":
            e = self.expr()
            self.expect(")")
            return e
        shown = "end of input" if kind == "end" else repr(value)
        raise ExprSyntaxError(f"unexpected {shown}", pos)

    def call(self, name, pos):
        op = QGateKind.__members__.get(name)
        if op is None:
            raise UnknownOperator(f"unknown operator {name!r}", pos)
        self.expect("(")
        first = self.expr()
        if op in UNARY_OPS:
            self.expect(")")
            return Unary(op, first)
        self.expect(",")
        second = self.expr()
        self.expect(")")
        return Binary(op, first, second)


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


_PREC = {QGateKind.OR: 1, QGateKind.AND: 2}


def _prec(e):
    return _PREC.get(e.op, 3) if isinstance(e, Binary) else 3


def serialize_expr(e: Expr) -> str:
    """Inverse of :func:`parse_expr`, with the fewest parentheses that keep the tree."""
    if isinstance(e, Const):
        return str(int(e.value))
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Unary):
        return f"{e.op.value}({serialize_expr(e.child)})"
    if e.op in _PREC:
        p = _PREC[e.op]
        left = serialize_expr(e.left)
        right = serialize_expr(e.right)
        if _prec(e.left) < p:
            left = f"({left})"
        if _prec(e.right) <= p:
            right = f"({right})"
        sym = "+" if e.op is QGateKind.OR else "."
        return f"{left} {sym} {right}"
    return f"{e.op.value}({serialize_expr(e.left)}, {serialize_expr(e.right)})"


def _as_expr(e) -> Expr:
    return parse_expr(e) if isinstance(e, str) else e


# -- evaluation ------------------------------------------------------------


def _eval(e, env):
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise UnboundVariable(e.name) from None
    if isinstance(e, Unary):
        return QGATE_LUT[e.op][_eval(e.child, env)][0]
    return QGATE_LUT[e.op][_eval(e.left, env)][_eval(e.right, env)]


def eval_expr(e, env: Mapping[str, int]) -> Qudit:
    e = _as_expr(e)
    env = {name: Qudit(v) for name, v in env.items()}
    return Qudit(_eval(e, env))


def assignments(names) -> Iterator[Dict[str, int]]:
    """All assignments over ``names`` in odometer order (sorted names, first most significant)."""
    names = sorted(names)
    for values in itertools.product(QUDIT_VALUES, repeat=len(names)):
        yield dict(zip(names, values))


# -- identity checking -----------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    assignment: Dict[str, Qudit]
    lhs_value: Qudit
    rhs_value: Qudit

    def __str__(self):
        env = ", ".join(f"{k}={v}" for k, v in self.assignment.items())
        return f"{env}: {int(self.lhs_value)} != {int(self.rhs_value)}"


@dataclass(frozen=True)
class Predicate:
    """A condition on an assignment, used to restrict an identity."""

    name: str
    variables: Tuple[str, ...]
    test: Callable[[Mapping[str, int]], bool] = field(compare=False, repr=False)

    def __call__(self, env):
        return self.test(env)


def symmetric(v: str) -> Predicate:
    return Predicate(f"symmetric({v})", (v,), lambda env: env[v] in (0, 3))


def asymmetric(v: str) -> Predicate:
    return Predicate(f"asymmetric({v})", (v,), lambda env: env[v] in (1, 2))


def equal(a: str, b: str) -> Predicate:
    return Predicate(f"{a} = {b}", (a, b), lambda env: env[a] == env[b])


def complement(a: str, b: str) -> Predicate:
    return Predicate(f"{a} = NOT({b})", (a, b), lambda env: env[a] == 3 - env[b])


def _domain(lhs, rhs, extra=(), max_vars=DEFAULT_MAX_VARS):
    names = variables(lhs) | variables(rhs) | frozenset(extra)
    if len(names) > max_vars:
        raise TooManyVariables(
            f"{len(names)} variables exceed the cap of {max_vars}: {', '.join(sorted(names))}"
        )
    return names


def _compare(lhs, rhs, names):
    for env in assignments(names):
        lv = _eval(lhs, env)
        rv = _eval(rhs, env)
        yield env, lv, rv


def _counterexample(env, lv, rv):
    return Counterexample({k: Qudit(v) for k, v in env.items()}, Qudit(lv), Qudit(rv))


def verify_identity(lhs, rhs, max_vars: int = DEFAULT_MAX_VARS) -> Optional[Counterexample]:
    """Return None if ``lhs == rhs`` under every assignment, else the first failure."""
    lhs, rhs = _as_expr(lhs), _as_expr(rhs)
    for env, lv, rv in _compare(lhs, rhs, _domain(lhs, rhs, max_vars=max_vars)):
        if lv != rv:
            return _counterexample(env, lv, rv)
    return None


@dataclass(frozen=True)
class ConditionalReport:
    predicate: str
    holds_under_condition: bool
    violation: Optional[Counterexample]
    fails_otherwise: bool
    witness: Optional[Counterexample]

    @property
    def confirmed(self) -> bool:
        """True when the identity holds exactly where promised and not in general."""
        return self.holds_under_condition and self.fails_otherwise


def verify_conditional(
    lhs, rhs, predicate: Predicate, max_vars: int = DEFAULT_MAX_VARS
) -> ConditionalReport:
    lhs, rhs = _as_expr(lhs), _as_expr(rhs)
    names = _domain(lhs, rhs, predicate.variables, max_vars)
    violation = witness = None
    for env, lv, rv in _compare(lhs, rhs, names):
        if lv == rv:
            continue
        if predicate(env):
            violation = violation or _counterexample(env, lv, rv)
        else:
            witness = witness or _counterexample(env, lv, rv)
    return ConditionalReport(
        predicate.name, violation is None, violation, witness is not None, witness
    )


def find_agreement(lhs, rhs, max_vars: int = DEFAULT_MAX_VARS) -> Optional[Dict[str, Qudit]]:
    """First assignment where both sides agree, or None if they differ everywhere."""
    lhs, rhs = _as_expr(lhs), _as_expr(rhs)
    for env, lv, rv in _compare(lhs, rhs, _domain(lhs, rhs, max_vars=max_vars)):
        if lv == rv:
            return {k: Qudit(v) for k, v in env.items()}
    return None


# -- law catalog -----------------------------------------------------------


class Status(str, enum.Enum):
    HOLDS = "holds"
    FAILS_AS_EXPECTED = "fails-as-expected"
    VIOLATED = "violated"


class Mode(str, enum.Enum):
    IDENTITY = "identity"
    CONDITIONAL = "conditional"
    NEVER = "never-equal"
    CLOSURE = "closure"


@dataclass(frozen=True)
class Law:
    name: str
    locus: str
    lhs: str = ""
    rhs: str = ""
    expect_holds: bool = True
    mode: Mode = Mode.IDENTITY
    predicate: Optional[Predicate] = None
    # conditional laws marked strict must also fail somewhere off the condition
    strict: bool = True
    note: str = ""

    def statement(self) -> str:
        if self.mode is Mode.CLOSURE:
            return "every operator maps {0,1,2,3} into {0,1,2,3}"
        rel = "!=" if self.mode is Mode.NEVER else "="
        text = f"{self.lhs} {rel} {self.rhs}"
        if self.predicate is not None:
            text += f"  when {self.predicate.name}"
        return text


@dataclass(frozen=True)
class LawResult:
    law: Law
    status: Status
    observed_holds: bool
    detail: str = ""


@dataclass
class LawReport:
    results: list

    @property
    def ok(self) -> bool:
        return all(r.status is not Status.VIOLATED for r in self.results)

    def rows(self):
        """(name, locus, status, statement, detail) tuples for tabular output."""
        return [
            (r.law.name, r.law.locus, r.status.value, r.law.statement(), r.detail)
            for r in self.results
        ]

    def to_text(self) -> str:
        rows = self.rows()
        wname = max(len(r[0]) for r in rows)
        wloc = max(len(r[1]) for r in rows)
        wstat = max(len(r[2]) for r in rows)
        lines = []
        for name, locus, status, stmt, detail in rows:
            line = f"{name:<{wname}}  {locus:<{wloc}}  {status:<{wstat}}  {stmt}"
            if detail:
                line += f"  [{detail}]"
            lines.append(line)
        bad = sum(r.status is Status.VIOLATED for r in self.results)
        lines.append(f"{len(rows)} laws checked, {bad} violated")
        return "\n".join(lines)


def _check_closure():
    for kind in QGateKind:
        for a in QUDIT_VALUES:
            for b in QUDIT_VALUES if kind.arity == 2 else (None,):
                out = eval_qgate(kind, a, b)
                if out not in QUDIT_VALUES:
                    return False, f"{kind.value}({a}, {b}) = {out}"
    return True, ""


def check_law(law: Law) -> LawResult:
    if law.mode is Mode.CLOSURE:
        observed, detail = _check_closure()
    elif law.mode is Mode.IDENTITY:
        cex = verify_identity(law.lhs, law.rhs)
        observed = cex is None
        detail = f"counterexample {cex}" if cex else ""
    elif law.mode is Mode.CONDITIONAL:
        rep = verify_conditional(law.lhs, law.rhs, law.predicate)
        observed = rep.confirmed if law.strict else rep.holds_under_condition
        if rep.violation is not None:
            detail = f"fails under condition: {rep.violation}"
        elif rep.witness is not None:
            detail = f"not general: {rep.witness}"
        else:
            detail = "holds unconditionally"
    else:
        agree = find_agreement(law.lhs, law.rhs)
        observed = agree is None
        if agree is not None:
            detail = "agree at " + ", ".join(f"{k}={v}" for k, v in agree.items())
        else:
            detail = ""
    if observed == law.expect_holds:
        status = Status.HOLDS if observed else Status.FAILS_AS_EXPECTED
    else:
        status = Status.VIOLATED
    if law.note:
        detail = f"{law.note}; {detail}" if detail else law.note
    return LawResult(law, status, observed, detail)


def _laws():
    I = Mode.IDENTITY
    ax = "axiom"
    op = "operator property"
    th = "theorem"
    return [
        Law("closure", f"{ax} a", mode=Mode.CLOSURE),
        Law("complement-or", f"{ax} b1", "A + NOT(A)", "3"),
        Law("complement-and", f"{ax} b2", "A . NOT(A)", "0"),
        Law("associativity-or", f"{ax} c1", "A + (B + C)", "(A + B) + C"),
        Law("associativity-and", f"{ax} c2", "A . (B . C)", "(A . B) . C"),
        Law("commutativity-or", f"{ax} d1", "A + B", "B + A"),
        Law("commutativity-and", f"{ax} d2", "A . B", "B . A"),
        Law("distributivity-or-over-and", f"{ax} e1", "A + B . C", "(A + B) . (A + C)"),
        Law("distributivity-and-over-or", f"{ax} e2", "A . (B + C)", "A . B + A . C"),
        Law("boundedness-or-zero", f"{ax} f1", "A + 0", "A"),
        Law("boundedness-and-three", f"{ax} f1", "A . 3", "A",
            note="printed with constant 1; the bitwise expansion gives 3"),
        Law("boundedness-or-three", f"{ax} f2", "A + 3", "3",
            note="printed with constant 1; the bitwise expansion gives 3"),
        Law("boundedness-and-zero", f"{ax} f2", "A . 0", "0"),
        Law("boundedness-and-one-as-printed", f"{ax} f1", "A . 1", "A",
            expect_holds=False, note="printed form, typo for A . 3 = A"),
        Law("boundedness-or-one-as-printed", f"{ax} f2", "A + 1", "1",
            expect_holds=False, note="printed form, typo for A + 3 = 3"),
        Law("bitswap-over-or", f"{op} 1", "BITSWAP(A + B)", "BITSWAP(A) + BITSWAP(B)"),
        Law("bitswap-over-and", f"{op} 1", "BITSWAP(A . B)", "BITSWAP(A) . BITSWAP(B)"),
        Law("de-morgan-not-or", f"{op} 2", "NOT(A + B)", "NOT(A) . NOT(B)"),
        Law("de-morgan-not-and", f"{op} 2", "NOT(A . B)", "NOT(A) + NOT(B)"),
        Law("nand-not", f"{op} 2", "NOT(A)", "NOT(A . A)"),
        Law("nor-not", f"{op} 2", "NOT(A)", "NOT(A + A)"),
        Law("nand-and", f"{op} 2", "A . B", "NOT(NOT(A . B) . NOT(A . B))"),
        Law("nor-and", f"{op} 2", "A . B", "NOT(NOT(A + A) + NOT(B + B))"),
        Law("nand-or", f"{op} 2", "A + B", "NOT(NOT(A . A) . NOT(B . B))"),
        Law("nor-or", f"{op} 2", "A + B", "NOT(NOT(A + B) + NOT(A + B))"),
        Law("de-morgan-outward-or", f"{op} 3", "OUTWARD(A + B)", "OUTWARD(A) . OUTWARD(B)"),
        Law("de-morgan-outward-and", f"{op} 3", "OUTWARD(A . B)", "OUTWARD(A) + OUTWARD(B)"),
        Law("inward-over-or", f"{op} 4", "INWARD(A + B)", "INWARD(A) + INWARD(B)",
            expect_holds=False),
        Law("inward-over-and", f"{op} 4", "INWARD(A . B)", "INWARD(A) . INWARD(B)",
            expect_holds=False),
        Law("inward-de-morgan-or", f"{op} 4", "INWARD(A + B)", "INWARD(A) . INWARD(B)",
            expect_holds=False),
        Law("inward-de-morgan-and", f"{op} 4", "INWARD(A . B)", "INWARD(A) + INWARD(B)",
            expect_holds=False),
        Law("inward-not-commute", f"{op} 5", "INWARD(NOT(A))", "NOT(INWARD(A))"),
        Law("outward-not-commute", f"{op} 6", "OUTWARD(NOT(A))", "NOT(OUTWARD(A))"),
        Law("bitswap-not-commute", f"{op} 7", "BITSWAP(NOT(A))", "NOT(BITSWAP(A))"),
        Law("bitswap-inward-commute", f"{op} 8", "INWARD(BITSWAP(A))", "BITSWAP(INWARD(A))",
            mode=Mode.CONDITIONAL, predicate=asymmetric("A")),
        Law("bitswap-outward-commute", f"{op} 9", "BITSWAP(OUTWARD(A))", "OUTWARD(BITSWAP(A))",
            mode=Mode.CONDITIONAL, predicate=symmetric("A")),
        Law("inward-outward-never-commute", f"{op} 10", "INWARD(OUTWARD(A))",
            "OUTWARD(INWARD(A))", mode=Mode.NEVER),
        Law("idempotency-or", f"{th} 1", "X + X", "X"),
        Law("idempotency-and", f"{th} 1", "X . X", "X"),
        Law("absorption-or", f"{th} 2", "X + X . Y", "X"),
        Law("absorption-and", f"{th} 2", "X . (X + Y)", "X"),
        Law("identity-or", f"{th} 3", "X + Y", "X",
            mode=Mode.CONDITIONAL, predicate=equal("X", "Y"), strict=False),
        Law("identity-and", f"{th} 3", "X . Y", "X",
            mode=Mode.CONDITIONAL, predicate=equal("X", "Y"), strict=False),
        Law("complements-or", f"{th} 4", "X + Y", "3",
            mode=Mode.CONDITIONAL, predicate=complement("X", "Y"), strict=False),
        Law("complements-and", f"{th} 4", "X . Y", "0",
            mode=Mode.CONDITIONAL, predicate=complement("X", "Y"), strict=False),
        Law("involution-not", f"{th} 5", "NOT(NOT(X))", "X"),
        Law("involution-bitswap", f"{th} 5", "BITSWAP(BITSWAP(X))", "X"),
        Law("elimination-or", f"{th} 6", "X + NOT(X) . Y", "X + Y"),
        Law("elimination-and", f"{th} 6", "X . (NOT(X) + Y)", "X . Y"),
        Law("consensus-or", f"{th} 7", "X . Y + NOT(X) . Z + Y . Z", "X . Y + NOT(X) . Z"),
        Law("consensus-and", f"{th} 7", "(X + Y) . (NOT(X) + Z) . (Y + Z)",
            "(X + Y) . (NOT(X) + Z)"),
        Law("interchange-as-printed", f"{th} 8", "X . Y + NOT(X) . Z",
            "(X + Y) . (NOT(X) + Z)", expect_holds=False,
            note="printed form swaps Y and Z on the right"),
        Law("interchange", f"{th} 8", "X . Y + NOT(X) . Z", "(X + Z) . (NOT(X) + Y)"),
        Law("interchange-dual", f"{th} 8", "(X + Y) . (NOT(X) + Z)", "X . Z + NOT(X) . Y"),
        Law("outward-from-inward", "inverter identity", "OUTWARD(A)", "XOR(INWARD(A), 1)"),
        Law("inward-from-outward", "inverter identity", "INWARD(A)", "XOR(OUTWARD(A), 1)"),
    ]


LAWS = tuple(_laws())


def run_law_suite(laws=LAWS) -> LawReport:
    return LawReport([check_law(law) for law in laws])
