"""Brute-force derivation-closure oracle for enumeration tests.

Deliberately written as a naive fixpoint over sets, independent of the
solver's size-indexed tables: keep substituting already-derived terms into
production templates until nothing new appears under the size bound.
"""

from itertools import product

from sygus.solver import ExpandedGrammar
from sygus.syntax import App, Binding, Let, Lit, Ref, Term, term_size


def oracle_terms(g: ExpandedGrammar, from_nt: str, max_size: int) -> set[Term]:
    sets: dict[str, set[Term]] = {name: set() for name in g.nts}
    changed = True
    while changed:
        changed = False
        for name in g.order:
            for template in g.nts[name].productions:
                for t in _instances(template, g, sets, max_size):
                    if t not in sets[name]:
                        sets[name].add(t)
                        changed = True
    return {
        t
        for t in sets[from_nt]
        if not (_free_names(t, frozenset()) & g.let_names)
    }


def _instances(template, g, sets, max_size: int) -> list[Term]:
    if isinstance(template, Ref):
        if template.name in g.nts:
            return [t for t in sets[template.name] if term_size(t) <= max_size]
        return [template]
    if isinstance(template, App):
        child_lists = [_instances(a, g, sets, max_size) for a in template.args]
        out = []
        for combo in product(*child_lists):
            t = App(template.head, tuple(combo), template.pos)
            if term_size(t) <= max_size:
                out.append(t)
        return out
    if isinstance(template, Let):
        value_lists = [_instances(b.value, g, sets, max_size) for b in template.bindings]
        body_list = _instances(template.body, g, sets, max_size)
        out = []
        for combo in product(*value_lists):
            bindings = tuple(
                Binding(b.name, b.sort, v)
                for b, v in zip(template.bindings, combo)
            )
            for body in body_list:
                t = Let(bindings, body, template.pos)
                if term_size(t) <= max_size:
                    out.append(t)
        return out
    assert isinstance(template, Lit)
    return [template]


def _free_names(t: Term, bound: frozenset) -> set[str]:
    if isinstance(t, Ref):
        return set() if t.name in bound else {t.name}
    if isinstance(t, App):
        out: set[str] = set()
        for a in t.args:
            out |= _free_names(a, bound)
        return out
    if isinstance(t, Let):
        out = set()
        for b in t.bindings:
            out |= _free_names(b.value, bound)
        inner = bound | {b.name for b in t.bindings}
        return out | _free_names(t.body, inner)
    return set()
