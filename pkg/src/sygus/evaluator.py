"""Evaluation of checked terms and sampled models of uninterpreted functions.

Arithmetic is exact: arbitrary-precision integers, ``Fraction`` for reals,
and modular arithmetic for bit-vectors.  Uninterpreted functions are
evaluated against finite sampled models: a model is a pure function of
(declarations, seed), derived per query from a keyed blake2 digest, so the
same tuple always maps to the same value regardless of query order or
process.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .checker import (
    CheckedProblem,
    RArray,
    RBitVec,
    REnum,
    RInt,
    RBool,
    RReal,
    R_BOOL,
    R_INT,
    R_REAL,
    ResolvedSort,
    UFDecl,
)
from .syntax import (
    App,
    Binding,
    BoolConst,
    BVConst,
    EnumConst,
    IntConst,
    Let,
    Lit,
    RealConst,
    Ref,
    Symbol,
    Term,
    free_refs,
)

# Sampled uninterpreted-function results: integers are drawn uniformly from
# this small window so collisions (and hence counterexamples) show up fast.
UF_INT_LO = -8
UF_INT_HI = 8


class EvalError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


# ---------------------------------------------------------------------------
# Runtime values


class Value:
    __slots__ = ()


@dataclass(frozen=True)
class VInt(Value):
    value: int


@dataclass(frozen=True)
class VBool(Value):
    value: bool


@dataclass(frozen=True)
class VReal(Value):
    value: Fraction


@dataclass(frozen=True)
class VBV(Value):
    width: int
    value: int


@dataclass(frozen=True)
class VEnum(Value):
    identity: str
    constructor: Symbol


Assignment = dict[Symbol, Value]


def sort_of_value(v: Value) -> ResolvedSort:
    if isinstance(v, VInt):
        return R_INT
    if isinstance(v, VBool):
        return R_BOOL
    if isinstance(v, VReal):
        return R_REAL
    if isinstance(v, VBV):
        return RBitVec(v.width)
    assert isinstance(v, VEnum)
    return REnum(v.identity, ())


# ---------------------------------------------------------------------------
# Uninterpreted-function models


def _encode_value(v: Value) -> bytes:
    if isinstance(v, VInt):
        return b"i" + str(v.value).encode()
    if isinstance(v, VBool):
        return b"b1" if v.value else b"b0"
    if isinstance(v, VBV):
        return b"v" + f"{v.width}:{v.value}".encode()
    if isinstance(v, VEnum):
        return b"e" + f"{v.identity}::{v.constructor}".encode()
    raise AssertionError(f"unhashable value {v!r}")


def stable_u64(*parts: Union[int, str, bytes]) -> int:
    """Order- and process-independent 64-bit digest of the parts."""
    h = hashlib.blake2b(digest_size=8)
    for p in parts:
        if isinstance(p, int):
            chunk = str(p).encode()
        elif isinstance(p, str):
            chunk = p.encode()
        else:
            chunk = p
        h.update(len(chunk).to_bytes(4, "big"))
        h.update(chunk)
    return int.from_bytes(h.digest(), "big")


def _value_for_sort(sort: ResolvedSort, u: int) -> Value:
    if isinstance(sort, RInt):
        return VInt(UF_INT_LO + u % (UF_INT_HI - UF_INT_LO + 1))
    if isinstance(sort, RBool):
        return VBool(bool(u & 1))
    if isinstance(sort, RBitVec):
        return VBV(sort.width, u % (1 << sort.width))
    if isinstance(sort, REnum):
        return VEnum(sort.identity, sort.constructors[u % len(sort.constructors)])
    raise AssertionError(f"no sampled values for sort {sort}")


def _has_unsupported_sort(sorts: tuple[ResolvedSort, ...]) -> bool:
    return any(isinstance(s, (RReal, RArray)) for s in sorts)


class UFModel:
    """Memoized finite model of the declared uninterpreted functions.

    Functionally consistent by construction: results are a pure function of
    (seed, function name, argument tuple).  The memo table records every
    queried point, which is what a counterexample report shows.
    """

    def __init__(self, decls: tuple[UFDecl, ...], seed: int):
        self.decls = decls
        self.seed = seed
        self._by_name: dict[Symbol, list[UFDecl]] = {}
        for d in decls:
            self._by_name.setdefault(d.name, []).append(d)
        self.table: dict[tuple[Symbol, tuple[Value, ...]], Value] = {}

    def query(self, name: Symbol, args: tuple[Value, ...]) -> Value:
        key = (name, args)
        hit = self.table.get(key)
        if hit is not None:
            return hit
        arg_sorts = tuple(sort_of_value(a) for a in args)
        decl = next(
            d for d in self._by_name[name] if d.arg_sorts == arg_sorts
        )
        u = stable_u64(self.seed, name, *map(_encode_value, args))
        result = _value_for_sort(decl.ret, u)
        self.table[key] = result
        return result


def fresh_uf_model(decls: tuple[UFDecl, ...], seed: int) -> UFModel:
    """Deterministic sampled model for the given declarations and seed."""
    for d in decls:
        if _has_unsupported_sort(d.arg_sorts + (d.ret,)):
            raise EvalError(
                "E-UF-UNSUPPORTED-SORT",
                f"cannot sample models for '{d.name}' over Real or Array sorts",
            )
    return UFModel(decls, seed)


# ---------------------------------------------------------------------------
# Evaluation environment


@dataclass(frozen=True)
class _Callable:
    kind: str  # "macro" | "cand" | "uf"
    arg_sorts: tuple[ResolvedSort, ...]
    params: tuple[Symbol, ...]
    body: Optional[Term]


class EvalEnv:
    """Function tables and enum registry shared across evaluations.

    Candidate bodies for the synthesis functions are swappable, so one
    environment can screen many candidates without rebuilding its tables.
    """

    def __init__(
        self,
        problem: CheckedProblem,
        ufs: Optional[UFModel] = None,
        candidates: Optional[dict[Symbol, Term]] = None,
    ):
        self.model = ufs
        self.enums = problem.enum_registry()
        self.funcs: dict[Symbol, list[_Callable]] = {}
        for m in problem.macros:
            self._add(
                m.name,
                _Callable(
                    "macro",
                    tuple(s for _, s in m.params),
                    tuple(p for p, _ in m.params),
                    m.body,
                ),
            )
        for d in problem.uf_decls:
            self._add(d.name, _Callable("uf", d.arg_sorts, (), None))
        self._task_info: dict[Symbol, tuple[tuple[Symbol, ...], tuple[ResolvedSort, ...]]] = {
            t.name: (
                tuple(p for p, _ in t.params),
                tuple(s for _, s in t.params),
            )
            for t in problem.synth_tasks
        }
        self._cands: dict[Symbol, _Callable] = {}
        if candidates:
            self.set_candidates(candidates)

    def _add(self, name: Symbol, c: _Callable) -> None:
        self.funcs.setdefault(name, []).append(c)

    def set_candidate(self, name: Symbol, body: Term) -> None:
        params, arg_sorts = self._task_info[name]
        self._cands[name] = _Callable("cand", arg_sorts, params, body)

    def set_candidates(self, mapping: dict[Symbol, Term]) -> None:
        for name, body in mapping.items():
            self.set_candidate(name, body)

    def dispatch(self, name: Symbol, args: tuple[Value, ...]) -> Optional[_Callable]:
        arg_sorts = None
        entries = self.funcs.get(name)
        if entries:
            arg_sorts = tuple(sort_of_value(a) for a in args)
            for e in entries:
                if e.arg_sorts == arg_sorts:
                    return e
        cand = self._cands.get(name)
        if cand is not None:
            if arg_sorts is None:
                arg_sorts = tuple(sort_of_value(a) for a in args)
            if cand.arg_sorts == arg_sorts:
                return cand
        return None


# ---------------------------------------------------------------------------
# Term evaluation


def _lit_value(lit, enums: dict[Symbol, REnum]) -> Value:
    if isinstance(lit, IntConst):
        return VInt(lit.value)
    if isinstance(lit, RealConst):
        return VReal(lit.value)
    if isinstance(lit, BoolConst):
        return VBool(lit.value)
    if isinstance(lit, BVConst):
        return VBV(lit.width, lit.value)
    assert isinstance(lit, EnumConst)
    return VEnum(enums[lit.sort_name].identity, lit.constructor)


def eval_term(t: Term, assignment: Assignment, env: EvalEnv) -> Value:
    """Call-by-value evaluation of a checked term."""
    if isinstance(t, Lit):
        return _lit_value(t.value, env.enums)
    if isinstance(t, Ref):
        v = assignment.get(t.name)
        if v is not None:
            return v
        return _apply(t.name, (), env)
    if isinstance(t, App):
        args = tuple(eval_term(a, assignment, env) for a in t.args)
        return _apply(t.head, args, env)
    assert isinstance(t, Let)
    # Parallel semantics: all binding values are evaluated in the outer
    # environment before any becomes visible.
    values = [(b.name, eval_term(b.value, assignment, env)) for b in t.bindings]
    inner = dict(assignment)
    inner.update(values)
    return eval_term(t.body, inner, env)


def _apply(name: Symbol, args: tuple[Value, ...], env: EvalEnv) -> Value:
    entry = env.dispatch(name, args)
    if entry is not None:
        if entry.kind == "uf":
            assert env.model is not None, "uninterpreted function without a model"
            return env.model.query(name, args)
        return eval_term(entry.body, dict(zip(entry.params, args)), env)
    return _theory_op(name, args)


def _theory_op(name: Symbol, args: tuple[Value, ...]) -> Value:
    if name == "=":
        return VBool(args[0] == args[1])
    if name == "distinct":
        return VBool(args[0] != args[1])
    if name == "ite":
        cond = args[0]
        assert isinstance(cond, VBool)
        return args[1] if cond.value else args[2]
    if name == "and":
        return VBool(all(a.value for a in args))
    if name == "or":
        return VBool(any(a.value for a in args))
    if name == "not":
        return VBool(not args[0].value)
    if name == "=>":
        return VBool(not args[0].value or args[1].value)
    if name == "xor":
        return VBool(args[0].value != args[1].value)
    a = args[0]
    if isinstance(a, VInt):
        b = args[1]
        if name == "+":
            return VInt(a.value + b.value)
        if name == "-":
            return VInt(a.value - b.value)
        if name == "*":
            return VInt(a.value * b.value)
        return _compare(name, a.value, b.value)
    if isinstance(a, VReal):
        b = args[1]
        if name == "+":
            return VReal(a.value + b.value)
        if name == "-":
            return VReal(a.value - b.value)
        if name == "*":
            return VReal(a.value * b.value)
        if name == "/":
            if b.value == 0:
                raise EvalError("E-DIV-ZERO", "division by zero")
            return VReal(a.value / b.value)
        return _compare(name, a.value, b.value)
    if isinstance(a, VBV):
        return _bv_op(name, a, args)
    raise AssertionError(f"no semantics for '{name}' at {args!r}")


def _compare(name: Symbol, a, b) -> VBool:
    if name == "<=":
        return VBool(a <= b)
    if name == "<":
        return VBool(a < b)
    if name == ">=":
        return VBool(a >= b)
    if name == ">":
        return VBool(a > b)
    raise AssertionError(f"no semantics for '{name}'")


def _bv_op(name: Symbol, a: VBV, args: tuple[Value, ...]) -> Value:
    mask = (1 << a.width) - 1
    if name == "bvnot":
        return VBV(a.width, ~a.value & mask)
    if name == "bvneg":
        return VBV(a.width, -a.value & mask)
    b = args[1]
    assert isinstance(b, VBV)
    if name == "bvadd":
        return VBV(a.width, (a.value + b.value) & mask)
    if name == "bvsub":
        return VBV(a.width, (a.value - b.value) & mask)
    if name == "bvand":
        return VBV(a.width, a.value & b.value)
    if name == "bvor":
        return VBV(a.width, a.value | b.value)
    if name == "bvxor":
        return VBV(a.width, a.value ^ b.value)
    if name == "bvshl":
        # Shift amounts at or beyond the width yield the zero vector.
        if b.value >= a.width:
            return VBV(a.width, 0)
        return VBV(a.width, (a.value << b.value) & mask)
    if name == "bvlshr":
        if b.value >= a.width:
            return VBV(a.width, 0)
        return VBV(a.width, a.value >> b.value)
    if name == "bvult":
        return VBool(a.value < b.value)
    if name == "bvule":
        return VBool(a.value <= b.value)
    raise AssertionError(f"no semantics for '{name}'")


# ---------------------------------------------------------------------------
# Macro expansion


def expand_macros(t: Term, macros) -> Term:
    """Replace every macro application by its substituted body.

    ``macros`` is an iterable of objects with name/params/body attributes
    (``MacroDef`` works).  Overloaded macro names are not supported here;
    evaluation handles those directly.
    """
    table: dict[Symbol, tuple[tuple[Symbol, ...], Term]] = {}
    for m in macros:
        if m.name in table:
            raise ValueError(f"macro '{m.name}' is overloaded; cannot expand")
        table[m.name] = (tuple(p for p, _ in m.params), m.body)
    expanded: dict[Symbol, Term] = {}

    def body_of(name: Symbol) -> Term:
        if name not in expanded:
            params, body = table[name]
            expanded[name] = walk(body)
        return expanded[name]

    def walk(node: Term) -> Term:
        if isinstance(node, App):
            args = tuple(walk(a) for a in node.args)
            if node.head in table:
                params, _ = table[node.head]
                return _substitute(body_of(node.head), dict(zip(params, args)))
            return App(node.head, args, node.pos)
        if isinstance(node, Ref):
            if node.name in table:
                params, _ = table[node.name]
                if not params:
                    return body_of(node.name)
            return node
        if isinstance(node, Let):
            bindings = tuple(
                Binding(b.name, b.sort, walk(b.value)) for b in node.bindings
            )
            return Let(bindings, walk(node.body), node.pos)
        return node

    return walk(t)


def _substitute(t: Term, mapping: dict[Symbol, Term]) -> Term:
    """Capture-avoiding substitution of terms for variable references."""
    counter = [0]

    def fresh(base: Symbol, avoid: set[Symbol]) -> Symbol:
        while True:
            counter[0] += 1
            candidate = f"{base}!{counter[0]}"
            if candidate not in avoid:
                return candidate

    def go(node: Term, m: dict[Symbol, Term]) -> Term:
        if not m:
            return node
        if isinstance(node, Ref):
            return m.get(node.name, node)
        if isinstance(node, App):
            return App(node.head, tuple(go(a, m) for a in node.args), node.pos)
        if isinstance(node, Let):
            values = [go(b.value, m) for b in node.bindings]
            bound = {b.name for b in node.bindings}
            inner = {k: v for k, v in m.items() if k not in bound}
            captured: set[Symbol] = set()
            for repl in inner.values():
                captured |= free_refs(repl)
            avoid = captured | set(free_refs(node.body)) | bound | set(inner)
            renames: dict[Symbol, Term] = {}
            new_names: list[Symbol] = []
            for b in node.bindings:
                if b.name in captured:
                    nn = fresh(b.name, avoid)
                    avoid.add(nn)
                    renames[b.name] = Ref(nn)
                    new_names.append(nn)
                else:
                    new_names.append(b.name)
            body_map = dict(inner)
            body_map.update(renames)
            bindings = tuple(
                Binding(nn, b.sort, v)
                for nn, b, v in zip(new_names, node.bindings, values)
            )
            return Let(bindings, go(node.body, body_map), node.pos)
        return node

    return go(t, dict(mapping))
