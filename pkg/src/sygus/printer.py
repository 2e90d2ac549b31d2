"""Canonical text rendering of terms, sorts, programs, and solutions.

Every command prints on one line with single spaces between siblings, so
golden files are byte-exact and ``parse(print(p))`` is structurally equal
to ``p``.  Bit-vectors always print in binary, reals with their minimal
decimal expansion.
"""

from __future__ import annotations

from fractions import Fraction

from .checker import SynthTask
from .syntax import (
    App,
    ArraySort,
    BitVecSort,
    BoolConst,
    BoolSort,
    BVConst,
    CheckSynth,
    Command,
    Constraint,
    ConstantOf,
    DeclareFun,
    DeclareVar,
    DefineFun,
    DefineSort,
    EnumConst,
    EnumSort,
    InputVariableOf,
    IntConst,
    IntSort,
    Let,
    Lit,
    Literal,
    LocalVariableOf,
    NamedSort,
    NTDef,
    Program,
    RealConst,
    RealSort,
    Ref,
    SetLogic,
    SetOptions,
    SortExpr,
    SynthFun,
    Term,
    VariableOf,
)


class PrintError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


def decimal_str(value: Fraction) -> str:
    """Finite decimal rendering with at least one digit on each side."""
    sign = "-" if value < 0 else ""
    mag = -value if value < 0 else value
    den = mag.denominator
    places = 0
    while den % 2 == 0:
        den //= 2
        places += 1
    twos = places
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    places = max(twos, fives, 1)
    scaled = mag.numerator * 10**places // mag.denominator
    digits = str(scaled).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def print_literal(lit: Literal) -> str:
    if isinstance(lit, IntConst):
        return str(lit.value)
    if isinstance(lit, RealConst):
        return decimal_str(lit.value)
    if isinstance(lit, BoolConst):
        return "true" if lit.value else "false"
    if isinstance(lit, BVConst):
        return "#b" + lit.bits
    assert isinstance(lit, EnumConst)
    return f"{lit.sort_name}::{lit.constructor}"


def print_sort(sort: SortExpr) -> str:
    if isinstance(sort, IntSort):
        return "Int"
    if isinstance(sort, BoolSort):
        return "Bool"
    if isinstance(sort, RealSort):
        return "Real"
    if isinstance(sort, BitVecSort):
        return f"(BitVec {sort.width})"
    if isinstance(sort, EnumSort):
        return f"(Enum ({' '.join(sort.constructors)}))"
    if isinstance(sort, ArraySort):
        return f"(Array {print_sort(sort.domain)} {print_sort(sort.codomain)})"
    assert isinstance(sort, NamedSort)
    return sort.name


def print_term(t: Term) -> str:
    if isinstance(t, Lit):
        return print_literal(t.value)
    if isinstance(t, Ref):
        return t.name
    if isinstance(t, App):
        if not t.args:
            return f"({t.head})"
        return f"({t.head} {' '.join(print_term(a) for a in t.args)})"
    if isinstance(t, Let):
        bindings = " ".join(
            f"({b.name} {print_sort(b.sort)} {print_term(b.value)})"
            for b in t.bindings
        )
        return f"(let ({bindings}) {print_term(t.body)})"
    if isinstance(t, ConstantOf):
        return f"(Constant {print_sort(t.sort)})"
    if isinstance(t, VariableOf):
        return f"(Variable {print_sort(t.sort)})"
    if isinstance(t, InputVariableOf):
        return f"(InputVariable {print_sort(t.sort)})"
    assert isinstance(t, LocalVariableOf)
    return f"(LocalVariable {print_sort(t.sort)})"


def _print_params(params) -> str:
    return "(" + " ".join(f"({n} {print_sort(s)})" for n, s in params) + ")"


def _print_nt(nt: NTDef) -> str:
    prods = " ".join(print_term(p) for p in nt.productions)
    return f"({nt.name} {print_sort(nt.sort)} ({prods}))"


def print_command(cmd: Command) -> str:
    if isinstance(cmd, SetLogic):
        return f"(set-logic {cmd.logic})"
    if isinstance(cmd, DefineSort):
        return f"(define-sort {cmd.name} {print_sort(cmd.body)})"
    if isinstance(cmd, DeclareVar):
        return f"(declare-var {cmd.name} {print_sort(cmd.sort)})"
    if isinstance(cmd, DeclareFun):
        sorts = " ".join(print_sort(s) for s in cmd.arg_sorts)
        return f"(declare-fun {cmd.name} ({sorts}) {print_sort(cmd.ret)})"
    if isinstance(cmd, DefineFun):
        return (
            f"(define-fun {cmd.name} {_print_params(cmd.params)} "
            f"{print_sort(cmd.ret)} {print_term(cmd.body)})"
        )
    if isinstance(cmd, SynthFun):
        nts = " ".join(_print_nt(nt) for nt in cmd.grammar)
        return (
            f"(synth-fun {cmd.name} {_print_params(cmd.params)} "
            f"{print_sort(cmd.ret)} ({nts}))"
        )
    if isinstance(cmd, Constraint):
        return f"(constraint {print_term(cmd.body)})"
    if isinstance(cmd, CheckSynth):
        return "(check-synth)"
    assert isinstance(cmd, SetOptions)
    opts = " ".join(f'({name} "{value}")' for name, value in cmd.opts)
    return f"(set-options ({opts}))"


def print_program(p: Program) -> str:
    """One command per line, canonical spacing, trailing newline."""
    return "".join(print_command(c) + "\n" for c in p.commands)


def print_solution(candidate: dict[str, Term], tasks: tuple[SynthTask, ...]) -> str:
    """One define-fun per synthesis task, in declaration order."""
    lines = []
    for task in tasks:
        body = candidate.get(task.name)
        if body is None:
            raise PrintError(
                "E-INCOMPLETE-CANDIDATE", f"no body for synthesis function '{task.name}'"
            )
        lines.append(
            f"(define-fun {task.name} {_print_params(task.surface_params)} "
            f"{print_sort(task.surface_ret)} {print_term(body)})\n"
        )
    return "".join(lines)


def print_fail() -> str:
    return "(fail)\n"
