"""Baseline enumerative synthesizer.

Grammar shorthands are expanded into concrete alternatives, candidate terms
are enumerated per synthesis function in term-size order, and candidate
tuples are screened against accumulated counterexamples before full
verification (CEGIS-lite).

Verification is testing, not proof: candidates are checked on a finite grid
over the universal variables, a batch of sampled models for uninterpreted
functions, and a batch of random assignments.  A ``Valid`` verdict therefore
means "no counterexample found within the configured budget".

Multi-function search runs in lockstep budget rounds: round ``b`` visits
every candidate tuple whose largest component has size exactly ``b`` (all
components at most ``b``), ordered by total size, then by size vector, then
by per-function enumeration order.  This grows all functions uniformly
instead of racing one function through ever-larger terms.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import islice, product
from typing import Iterator, Mapping, Optional, Union

from .checker import (
    CheckedNT,
    CheckedProblem,
    RArray,
    RBitVec,
    RBool,
    REnum,
    RInt,
    RReal,
    ResolvedSort,
    SynthTask,
)
from .evaluator import (
    Assignment,
    EvalEnv,
    UFModel,
    VBool,
    VBV,
    VEnum,
    VInt,
    Value,
    eval_term,
    fresh_uf_model,
    stable_u64,
)
from .syntax import (
    App,
    Binding,
    BoolConst,
    BVConst,
    ConstantOf,
    EnumConst,
    GTerm,
    InputVariableOf,
    IntConst,
    Let,
    Lit,
    LocalVariableOf,
    NamedSort,
    RealConst,
    Ref,
    Symbol,
    Term,
    VariableOf,
    app_heads,
    free_refs,
    subterms,
    term_size,
)

_MASK64 = (1 << 64) - 1


class SolveError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


@dataclass
class SolverConfig:
    """Search and verification budgets.

    ``constant_pool`` supplies the alternatives for integer ``(Constant _)``
    shorthands; bit-vector pools are exhaustive up to width 4 and otherwise
    use 0, 1, all-ones plus ``bv_sample_count`` seeded draws; enum pools are
    all constructors.  ``observational_prune`` collapses candidate terms
    that agree on a small seeded input sample; it speeds up large searches
    but can in principle prune the only solution, so it is off by default.
    """

    max_term_size: int = 12
    grid_radius: int = 5
    grid_point_cap: int = 10_000
    random_samples: int = 256
    sample_range: int = 1 << 16
    uf_model_count: int = 32
    seed: int = 0
    constant_pool: tuple[int, ...] = (0, 1, -1, 2)
    bv_sample_count: int = 8
    timeout_seconds: Optional[float] = None
    observational_prune: bool = False


# ---------------------------------------------------------------------------
# Shorthand expansion


@dataclass(frozen=True)
class ExpandedNT:
    name: Symbol
    sort: ResolvedSort
    productions: tuple[GTerm, ...]


@dataclass(frozen=True)
class ExpandedGrammar:
    nts: dict[Symbol, ExpandedNT]
    order: tuple[Symbol, ...]
    let_names: frozenset[Symbol]


def _grammar_lets(grammar: tuple[CheckedNT, ...], problem: CheckedProblem):
    """Let-bound names across all productions, in first-occurrence order."""
    lets: dict[Symbol, ResolvedSort] = {}
    for nt in grammar:
        for prod in nt.productions:
            for node in subterms(prod):
                if isinstance(node, Let):
                    for b in node.bindings:
                        lets.setdefault(b.name, problem.resolve(b.sort))
    return lets


def _constant_alternatives(
    sort: ResolvedSort, surface, cfg: SolverConfig
) -> list[GTerm]:
    if isinstance(sort, RInt):
        return [Lit(IntConst(c)) for c in cfg.constant_pool]
    if isinstance(sort, RBool):
        return [Lit(BoolConst(True)), Lit(BoolConst(False))]
    if isinstance(sort, RBitVec):
        w = sort.width
        if w <= 4:
            values = list(range(1 << w))
        else:
            values = [0, 1, (1 << w) - 1]
            rng = random.Random(stable_u64(cfg.seed, "bv-pool", w))
            for _ in range(cfg.bv_sample_count):
                v = rng.randrange(1 << w)
                if v not in values:
                    values.append(v)
        return [Lit(BVConst(w, v)) for v in values]
    if isinstance(sort, REnum) and isinstance(surface, NamedSort):
        # Enum constants need a nameable sort; inline enums have none.
        return [Lit(EnumConst(surface.name, c)) for c in sort.constructors]
    return []


def expand_shorthands(
    grammar: tuple[CheckedNT, ...],
    task: SynthTask,
    problem: CheckedProblem,
    cfg: SolverConfig,
) -> ExpandedGrammar:
    """Replace the four grammar shorthands by concrete alternatives."""
    lets = _grammar_lets(grammar, problem)

    def expand(prod: GTerm) -> list[GTerm]:
        if isinstance(prod, ConstantOf):
            return _constant_alternatives(problem.resolve(prod.sort), prod.sort, cfg)
        if isinstance(prod, InputVariableOf):
            want = problem.resolve(prod.sort)
            return [Ref(p) for p, s in task.params if s == want]
        if isinstance(prod, LocalVariableOf):
            want = problem.resolve(prod.sort)
            return [Ref(n) for n, s in lets.items() if s == want]
        if isinstance(prod, VariableOf):
            want = problem.resolve(prod.sort)
            out = [Ref(p) for p, s in task.params if s == want]
            out.extend(Ref(n) for n, s in lets.items() if s == want)
            return out
        return [prod]

    nts: dict[Symbol, ExpandedNT] = {}
    for nt in grammar:
        productions: list[GTerm] = []
        for prod in nt.productions:
            productions.extend(expand(prod))
        if not productions:
            raise SolveError(
                "E-EMPTY-EXPANSION",
                f"every production of non-terminal '{nt.name}' expanded to nothing",
            )
        nts[nt.name] = ExpandedNT(nt.name, nt.sort, tuple(productions))
    return ExpandedGrammar(nts, tuple(n.name for n in grammar), frozenset(lets))


# ---------------------------------------------------------------------------
# Term enumeration

# A derivation witness: (non-terminal, production index, child witnesses).
Witness = tuple


@dataclass(frozen=True)
class _Prod:
    index: int
    template: GTerm
    holes: tuple[Symbol, ...]
    own_size: int

    @property
    def is_unit(self) -> bool:
        return self.own_size == 0


def _find_holes(template: GTerm, nt_names: frozenset[Symbol]) -> tuple[Symbol, ...]:
    out: list[Symbol] = []

    def walk(node: GTerm) -> None:
        if isinstance(node, Ref):
            if node.name in nt_names:
                out.append(node.name)
        elif isinstance(node, App):
            for a in node.args:
                walk(a)
        elif isinstance(node, Let):
            for b in node.bindings:
                walk(b.value)
            walk(node.body)

    walk(template)
    return tuple(out)


def _fill(template: GTerm, fills: tuple[Term, ...], nt_names: frozenset[Symbol]) -> Term:
    it = iter(fills)

    def walk(node: GTerm) -> Term:
        if isinstance(node, Ref):
            return next(it) if node.name in nt_names else node
        if isinstance(node, App):
            return App(node.head, tuple(walk(a) for a in node.args), node.pos)
        if isinstance(node, Let):
            bindings = tuple(
                Binding(b.name, b.sort, walk(b.value)) for b in node.bindings
            )
            return Let(bindings, walk(node.body), node.pos)
        return node

    return walk(template)


def _compositions(total: int, k: int) -> Iterator[tuple[int, ...]]:
    """k-tuples of positive integers summing to total, first part ascending."""
    if k == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - k + 2):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


class TermTable:
    """Size-indexed memo of grammar derivations with witnesses.

    ``exact(nt, s)`` lists every derivable term of size exactly ``s`` once,
    in canonical order: production index, then leftmost argument varying
    slowest.  Unit productions (a production that is a bare reference to
    another non-terminal) are closed by fixpoint after the structural
    productions of each size level.
    """

    def __init__(self, g: ExpandedGrammar):
        self.g = g
        nt_names = frozenset(g.nts)
        self._nt_names = nt_names
        self.prods: dict[Symbol, list[_Prod]] = {}
        for name in g.order:
            compiled = []
            for i, template in enumerate(g.nts[name].productions):
                holes = _find_holes(template, nt_names)
                compiled.append(
                    _Prod(i, template, holes, term_size(template) - len(holes))
                )
            self.prods[name] = compiled
        self.tables: dict[tuple[Symbol, int], list[tuple[Term, Witness]]] = {}
        self._seen: dict[tuple[Symbol, int], set[Term]] = {}
        self._built = 0
        self._closed: dict[tuple[Symbol, int], list[tuple[Term, Witness]]] = {}

    def exact(self, nt: Symbol, size: int) -> list[tuple[Term, Witness]]:
        while self._built < size:
            self._build_level(self._built + 1)
        return self.tables[(nt, size)]

    def closed(self, nt: Symbol, size: int) -> list[tuple[Term, Witness]]:
        """Like ``exact`` but without terms leaking a free let-bound name."""
        key = (nt, size)
        if key not in self._closed:
            lets = self.g.let_names
            self._closed[key] = [
                (t, w) for t, w in self.exact(nt, size) if not (free_refs(t) & lets)
            ]
        return self._closed[key]

    def _build_level(self, size: int) -> None:
        for name in self.g.order:
            key = (name, size)
            out: list[tuple[Term, Witness]] = []
            seen: set[Term] = set()
            for prod in self.prods[name]:
                if prod.is_unit:
                    continue
                k = len(prod.holes)
                if k == 0:
                    if prod.own_size == size:
                        self._add(out, seen, prod.template, (name, prod.index, ()))
                    continue
                rest = size - prod.own_size
                if rest < k:
                    continue
                for comp in _compositions(rest, k):
                    pools = [
                        self.tables[(h, c)] for h, c in zip(prod.holes, comp)
                    ]
                    if not all(pools):
                        continue
                    for picks in product(*pools):
                        term = _fill(
                            prod.template,
                            tuple(t for t, _ in picks),
                            self._nt_names,
                        )
                        self._add(
                            out,
                            seen,
                            term,
                            (name, prod.index, tuple(w for _, w in picks)),
                        )
            self.tables[key] = out
            self._seen[key] = seen
        # Close unit productions at this level until stable.
        changed = True
        while changed:
            changed = False
            for name in self.g.order:
                key = (name, size)
                for prod in self.prods[name]:
                    if not prod.is_unit:
                        continue
                    target = prod.holes[0]
                    for t, w in list(self.tables[(target, size)]):
                        if t not in self._seen[key]:
                            self.tables[key].append((t, (name, prod.index, (w,))))
                            self._seen[key].add(t)
                            changed = True
        self._built = size

    @staticmethod
    def _add(out: list, seen: set, term: Term, witness: Witness) -> None:
        if term not in seen:
            seen.add(term)
            out.append((term, witness))


def enumerate_terms(g: ExpandedGrammar, from_nt: Symbol, max_size: int) -> Iterator[Term]:
    """All derivations of ``from_nt`` up to ``max_size``, smallest first,
    each exactly once, never with a free let-bound name."""
    table = TermTable(g)
    for size in range(1, max_size + 1):
        for term, _ in table.closed(from_nt, size):
            yield term


def replay_witness(g: ExpandedGrammar, witness: Witness) -> Term:
    """Rebuild the term a derivation witness denotes."""
    nt, index, children = witness
    nt_names = frozenset(g.nts)
    template = g.nts[nt].productions[index]
    fills = tuple(replay_witness(g, c) for c in children)
    return _fill(template, fills, nt_names)


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class Valid:
    pass


@dataclass(frozen=True)
class Counterexample:
    assignment: Assignment
    uf_seed: int


VerificationResult = Union[Valid, Counterexample]


@dataclass(frozen=True)
class Candidate:
    terms: dict[Symbol, Term]
    witnesses: dict[Symbol, Witness] = field(default_factory=dict)


@dataclass(frozen=True)
class Solved:
    candidate: Candidate


@dataclass(frozen=True)
class Fail:
    reason: str  # "exhausted" or "timeout"


class _Timeout(Exception):
    pass


def _unsupported(sort: ResolvedSort) -> bool:
    return isinstance(sort, (RReal, RArray))


def _theory_gate(problem: CheckedProblem) -> None:
    if problem.sig.logic in ("Reals", "Arrays"):
        raise SolveError(
            "E-THEORY-UNSUPPORTED",
            f"solving over the {problem.sig.logic} theory is not supported",
        )
    for name, sort in problem.universal_vars:
        if _unsupported(sort):
            raise SolveError(
                "E-THEORY-UNSUPPORTED",
                f"universal variable '{name}' has unsupported sort {sort}",
            )
    for d in problem.uf_decls:
        if any(_unsupported(s) for s in d.arg_sorts + (d.ret,)):
            raise SolveError(
                "E-THEORY-UNSUPPORTED",
                f"uninterpreted function '{d.name}' has an unsupported sort",
            )
    for task in problem.synth_tasks:
        sorts = tuple(s for _, s in task.params) + (task.ret,)
        if any(_unsupported(s) for s in sorts):
            raise SolveError(
                "E-THEORY-UNSUPPORTED",
                f"synthesis function '{task.name}' has an unsupported sort",
            )
    bodies = problem.constraints + tuple(m.body for m in problem.macros)
    for term in bodies:
        for node in subterms(term):
            if isinstance(node, Lit) and isinstance(node.value, RealConst):
                raise SolveError(
                    "E-THEORY-UNSUPPORTED",
                    "real-valued terms cannot be verified by this solver",
                )


def _grid_values(sort: ResolvedSort, cfg: SolverConfig) -> list[Value]:
    if isinstance(sort, RInt):
        r = cfg.grid_radius
        return [VInt(i) for i in range(-r, r + 1)]
    if isinstance(sort, RBool):
        return [VBool(False), VBool(True)]
    if isinstance(sort, RBitVec):
        w = sort.width
        if w <= 4:
            return [VBV(w, v) for v in range(1 << w)]
        values = [0, 1, (1 << w) - 1]
        rng = random.Random(stable_u64(cfg.seed, "bv-grid", w))
        for _ in range(cfg.bv_sample_count):
            v = rng.randrange(1 << w)
            if v not in values:
                values.append(v)
        return [VBV(w, v) for v in values]
    assert isinstance(sort, REnum)
    return [VEnum(sort.identity, c) for c in sort.constructors]


def _random_value(sort: ResolvedSort, rng: random.Random, cfg: SolverConfig) -> Value:
    if isinstance(sort, RInt):
        return VInt(rng.randint(-cfg.sample_range, cfg.sample_range))
    if isinstance(sort, RBool):
        return VBool(bool(rng.getrandbits(1)))
    if isinstance(sort, RBitVec):
        return VBV(sort.width, rng.randrange(1 << sort.width))
    assert isinstance(sort, REnum)
    return VEnum(sort.identity, rng.choice(sort.constructors))


def _falsifies(problem: CheckedProblem, env: EvalEnv, assignment: Assignment,
               model: Optional[UFModel]) -> bool:
    env.model = model
    for c in problem.constraints:
        if not eval_term(c, assignment, env).value:
            return True
    return False


def verify(
    candidate: Mapping[Symbol, Term],
    problem: CheckedProblem,
    cfg: SolverConfig,
    cex_store: Optional[list[tuple[Assignment, int]]] = None,
    _deadline: Optional[float] = None,
) -> VerificationResult:
    """Check a candidate against stored counterexamples, the grid, and
    random samples; a novel counterexample is appended to ``cex_store``."""
    _theory_gate(problem)
    if cex_store is None:
        cex_store = []
    terms = candidate.terms if isinstance(candidate, Candidate) else dict(candidate)
    env = EvalEnv(problem, candidates=terms)
    has_ufs = bool(problem.uf_decls)

    def model_for(seed: int) -> Optional[UFModel]:
        return fresh_uf_model(problem.uf_decls, seed) if has_ufs else None

    for assignment, uf_seed in cex_store:
        if _falsifies(problem, env, assignment, model_for(uf_seed)):
            return Counterexample(assignment, uf_seed)

    names = [n for n, _ in problem.universal_vars]
    domains = [_grid_values(s, cfg) for _, s in problem.universal_vars]
    if has_ufs:
        model_seeds = [(cfg.seed + m) & _MASK64 for m in range(cfg.uf_model_count)]
    else:
        model_seeds = [cfg.seed]
    for model_seed in model_seeds:
        model = model_for(model_seed)
        for point in islice(product(*domains), cfg.grid_point_cap):
            assignment = dict(zip(names, point))
            if _falsifies(problem, env, assignment, model):
                cex_store.append((assignment, model_seed))
                return Counterexample(assignment, model_seed)
        if _deadline is not None and time.monotonic() > _deadline:
            raise _Timeout()

    rng = random.Random(stable_u64(cfg.seed, "samples"))
    for _ in range(cfg.random_samples):
        assignment = {
            n: _random_value(s, rng, cfg) for n, s in problem.universal_vars
        }
        sample_seed = rng.getrandbits(64) if has_ufs else cfg.seed
        if _falsifies(problem, env, assignment, model_for(sample_seed)):
            cex_store.append((assignment, sample_seed))
            return Counterexample(assignment, sample_seed)
    return Valid()


# ---------------------------------------------------------------------------
# Search


def _mentioned_tasks(term: Term, task_names: frozenset[Symbol]) -> frozenset[Symbol]:
    return (app_heads(term) | free_refs(term)) & task_names


class _Screen:
    """Lazy per-term screening against the shared counterexample store.

    For each enumerated term we track how many stored counterexamples its
    single-function constraints survive; a term is revisited only when the
    store has grown since it was last screened.
    """

    def __init__(
        self,
        problem: CheckedProblem,
        constraints: list[Term],
        task_name: Symbol,
        store: list[tuple[Assignment, int]],
        model_for,
    ):
        self.problem = problem
        self.constraints = constraints
        self.task_name = task_name
        self.store = store
        self.model_for = model_for
        self.env = EvalEnv(problem)
        self.progress: dict[Term, int] = {}

    def alive(self, term: Term) -> bool:
        done = self.progress.get(term, 0)
        if done < 0:
            return False
        if not self.constraints:
            return True
        self.env.set_candidate(self.task_name, term)
        while done < len(self.store):
            assignment, uf_seed = self.store[done]
            self.env.model = self.model_for(uf_seed)
            for c in self.constraints:
                if not eval_term(c, assignment, self.env).value:
                    self.progress[term] = -1
                    return False
            done += 1
        self.progress[term] = done
        return True


def _signature_inputs(task: SynthTask, cfg: SolverConfig) -> list[Assignment]:
    rng = random.Random(stable_u64(cfg.seed, "prune", task.name))
    return [
        {p: _random_value(s, rng, cfg) for p, s in task.params} for _ in range(16)
    ]


def solve(problem: CheckedProblem, cfg: SolverConfig) -> Union[Solved, Fail]:
    """Search candidate tuples in budget rounds; deterministic for a fixed
    problem and configuration."""
    _theory_gate(problem)
    tasks = problem.synth_tasks
    cex_store: list[tuple[Assignment, int]] = []
    deadline = (
        time.monotonic() + cfg.timeout_seconds if cfg.timeout_seconds else None
    )
    if not tasks:
        result = verify({}, problem, cfg, cex_store)
        return Solved(Candidate({}, {})) if isinstance(result, Valid) else Fail("exhausted")

    grammars = {t.name: expand_shorthands(t.grammar, t, problem, cfg) for t in tasks}
    tables = {t.name: TermTable(grammars[t.name]) for t in tasks}
    names = [t.name for t in tasks]
    name_set = frozenset(names)

    solo: dict[Symbol, list[Term]] = {n: [] for n in names}
    joint: list[Term] = []
    for c in problem.constraints:
        mentioned = _mentioned_tasks(c, name_set)
        if len(mentioned) == 1:
            solo[next(iter(mentioned))].append(c)
        else:
            joint.append(c)

    has_ufs = bool(problem.uf_decls)
    models: dict[int, Optional[UFModel]] = {}

    def model_for(seed: int) -> Optional[UFModel]:
        if seed not in models:
            models[seed] = fresh_uf_model(problem.uf_decls, seed) if has_ufs else None
        return models[seed]

    screens = {
        t.name: _Screen(problem, solo[t.name], t.name, cex_store, model_for)
        for t in tasks
    }
    joint_env = EvalEnv(problem)
    prune_inputs = (
        {t.name: _signature_inputs(t, cfg) for t in tasks}
        if cfg.observational_prune
        else None
    )
    prune_seen: dict[Symbol, set] = {t.name: set() for t in tasks}
    pool_cache: dict[tuple[Symbol, int], list[tuple[Term, Witness]]] = {}

    def pool(task: SynthTask, size: int) -> list[tuple[Term, Witness]]:
        key = (task.name, size)
        if key in pool_cache:
            return pool_cache[key]
        entries = tables[task.name].closed("Start", size)
        if prune_inputs is not None:
            kept = []
            env = EvalEnv(problem)
            for term, witness in entries:
                env.set_candidate(task.name, term)
                sig = tuple(
                    eval_term(
                        App(task.name, tuple(Ref(p) for p, _ in task.params)),
                        inputs,
                        env,
                    )
                    for inputs in prune_inputs[task.name]
                )
                if sig in prune_seen[task.name]:
                    continue
                prune_seen[task.name].add(sig)
                kept.append((term, witness))
            entries = kept
        pool_cache[key] = entries
        return entries

    def joint_ok(assignment_terms: dict[Symbol, Term]) -> bool:
        if not joint or not cex_store:
            return True
        joint_env.set_candidates(assignment_terms)
        for assignment, uf_seed in cex_store:
            joint_env.model = model_for(uf_seed)
            for c in joint:
                if not eval_term(c, assignment, joint_env).value:
                    return False
        return True

    ticks = 0
    try:
        for budget in range(1, cfg.max_term_size + 1):
            vectors = sorted(
                (
                    v
                    for v in product(range(1, budget + 1), repeat=len(tasks))
                    if max(v) == budget
                ),
                key=lambda v: (sum(v), v),
            )
            for vec in vectors:
                pools = [pool(t, s) for t, s in zip(tasks, vec)]
                if not all(pools):
                    continue
                for picks in product(*pools):
                    ticks += 1
                    if deadline is not None and ticks % 256 == 0:
                        if time.monotonic() > deadline:
                            raise _Timeout()
                    if not all(
                        screens[n].alive(t) for n, (t, _) in zip(names, picks)
                    ):
                        continue
                    terms = {n: t for n, (t, _) in zip(names, picks)}
                    if not joint_ok(terms):
                        continue
                    result = verify(terms, problem, cfg, cex_store, _deadline=deadline)
                    if isinstance(result, Valid):
                        witnesses = {n: w for n, (_, w) in zip(names, picks)}
                        return Solved(Candidate(terms, witnesses))
    except _Timeout:
        return Fail("timeout")
    return Fail("exhausted")
