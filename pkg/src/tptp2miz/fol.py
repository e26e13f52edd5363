"""First-order syntax: terms, formulas, clauses, substitutions, signatures.

Values are immutable; every operation returns new structures.  Variables are
kept by name so they survive into rendered output, while alpha-equivalence
and generalized-atom identity go through a de Bruijn normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import ArityConflict, KindConflict

# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class App:
    name: str
    args: tuple = ()

    def __repr__(self):
        if not self.args:
            return self.name
        return f"{self.name}({','.join(map(repr, self.args))})"


Term = Union[Var, App]


def const(name: str) -> App:
    return App(name, ())


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Verum:
    pass


@dataclass(frozen=True)
class Falsum:
    pass


Formula = Union[Atom, Eq, Not, And, Or, Implies, Iff, Forall, Exists, Verum, Falsum]

TRUE = Verum()
FALSE = Falsum()

_BINARY = (And, Or, Implies, Iff)
_QUANT = (Forall, Exists)


def big_and(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def big_or(parts) -> Formula:
    parts = list(parts)
    if not parts:
        return FALSE
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def flatten(f: Formula, node) -> list:
    """Flatten a nested binary connective into its operand list."""
    if isinstance(f, node):
        return flatten(f.left, node) + flatten(f.right, node)
    return [f]


# ---------------------------------------------------------------------------
# Clauses


@dataclass(frozen=True)
class Literal:
    positive: bool
    atom: Union[Atom, Eq]

    def negate(self) -> "Literal":
        return Literal(not self.positive, self.atom)

    def to_formula(self) -> Formula:
        return self.atom if self.positive else Not(self.atom)


@dataclass(frozen=True)
class Clause:
    literals: tuple

    def to_formula(self) -> Formula:
        if not self.literals:
            return FALSE
        return big_or(lit.to_formula() for lit in self.literals)


def literal_of_formula(f: Formula) -> Literal:
    if isinstance(f, Not):
        inner = literal_of_formula(f.body)
        return inner.negate()
    if isinstance(f, (Atom, Eq)):
        return Literal(True, f)
    raise ValueError(f"not a literal: {f!r}")


def clause_of_formula(f: Formula) -> Clause:
    """Read a disjunction of literals (or falsum) as a clause."""
    if isinstance(f, Falsum):
        return Clause(())
    return Clause(tuple(literal_of_formula(p) for p in flatten(f, Or)))


# ---------------------------------------------------------------------------
# Variable traversal


def term_vars(t: Term) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    else:
        for a in t.args:
            yield from term_vars(a)


def _free_vars(f: Formula, bound: frozenset) -> Iterator[str]:
    if isinstance(f, Atom):
        for t in f.args:
            for v in term_vars(t):
                if v not in bound:
                    yield v
    elif isinstance(f, Eq):
        for t in (f.left, f.right):
            for v in term_vars(t):
                if v not in bound:
                    yield v
    elif isinstance(f, Not):
        yield from _free_vars(f.body, bound)
    elif isinstance(f, _BINARY):
        yield from _free_vars(f.left, bound)
        yield from _free_vars(f.right, bound)
    elif isinstance(f, _QUANT):
        yield from _free_vars(f.body, bound | {f.var})


def free_vars(f: Formula) -> list:
    """Free variables in first-occurrence (left-to-right) order."""
    seen = []
    for v in _free_vars(f, frozenset()):
        if v not in seen:
            seen.append(v)
    return seen


def term_functions(t: Term) -> Iterator[tuple]:
    if isinstance(t, App):
        yield (t.name, len(t.args))
        for a in t.args:
            yield from term_functions(a)


def formula_symbols(f: Formula) -> Iterator[tuple]:
    """Yield (name, kind, arity) for every symbol occurrence."""
    if isinstance(f, Atom):
        yield (f.pred, "predicate", len(f.args))
        for t in f.args:
            for name, arity in term_functions(t):
                yield (name, "function", arity)
    elif isinstance(f, Eq):
        for t in (f.left, f.right):
            for name, arity in term_functions(t):
                yield (name, "function", arity)
    elif isinstance(f, Not):
        yield from formula_symbols(f.body)
    elif isinstance(f, _BINARY):
        yield from formula_symbols(f.left)
        yield from formula_symbols(f.right)
    elif isinstance(f, _QUANT):
        yield from formula_symbols(f.body)


# ---------------------------------------------------------------------------
# Closure and prefixes


def universal_closure(f: Formula) -> Formula:
    for v in reversed(free_vars(f)):
        f = Forall(v, f)
    return f


def strip_universal_prefix(f: Formula):
    """Remove the maximal leading block of universal quantifiers."""
    prefix = []
    while isinstance(f, Forall):
        prefix.append(f.var)
        f = f.body
    return prefix, f


# ---------------------------------------------------------------------------
# Substitution

_LOWER_WORD = re.compile(r"[a-z][a-zA-Z0-9_]*$")

_fresh_counter = [0]


def fresh_var(avoid, base="Z") -> str:
    n = 0
    while True:
        cand = f"{base}{n}" if n else base
        if cand not in avoid:
            return cand
        n += 1


def subst_term(s: Mapping[str, Term], t: Term) -> Term:
    if isinstance(t, Var):
        return s.get(t.name, t)
    return App(t.name, tuple(subst_term(s, a) for a in t.args))


def apply_substitution(s: Mapping[str, Term], f: Formula) -> Formula:
    """Simultaneous, capture-avoiding substitution of free variables."""
    if not s:
        return f
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(subst_term(s, t) for t in f.args))
    if isinstance(f, Eq):
        return Eq(subst_term(s, f.left), subst_term(s, f.right))
    if isinstance(f, Not):
        return Not(apply_substitution(s, f.body))
    if isinstance(f, _BINARY):
        return type(f)(apply_substitution(s, f.left), apply_substitution(s, f.right))
    if isinstance(f, _QUANT):
        relevant = {k: v for k, v in s.items() if k != f.var}
        live = [k for k in relevant if k in free_vars(f.body)]
        relevant = {k: relevant[k] for k in live}
        if not relevant:
            return f
        range_vars = set()
        for t in relevant.values():
            range_vars.update(term_vars(t))
        var, body = f.var, f.body
        if var in range_vars:
            avoid = range_vars | set(free_vars(body)) | set(relevant)
            new = fresh_var(avoid, base=var)
            body = apply_substitution({var: Var(new)}, body)
            var = new
        return type(f)(var, apply_substitution(relevant, body))
    return f


# ---------------------------------------------------------------------------
# De Bruijn normal form and alpha-equivalence


def _norm_term(t: Term, env) -> tuple:
    if isinstance(t, Var):
        if t.name in env:
            return ("b", env[t.name])
        return ("f", t.name)
    return ("a", t.name, tuple(_norm_term(a, env) for a in t.args))


def debruijn(f: Formula, env=None, depth=0) -> tuple:
    """Hashable normal form: bound variables as indices, equality oriented."""
    if env is None:
        env = {}
    if isinstance(f, Atom):
        return ("atom", f.pred, tuple(_norm_term(t, env) for t in f.args))
    if isinstance(f, Eq):
        sides = sorted((_norm_term(f.left, env), _norm_term(f.right, env)))
        return ("eq", tuple(sides))
    if isinstance(f, Not):
        return ("not", debruijn(f.body, env, depth))
    if isinstance(f, _BINARY):
        tag = type(f).__name__.lower()
        return (tag, debruijn(f.left, env, depth), debruijn(f.right, env, depth))
    if isinstance(f, _QUANT):
        tag = "forall" if isinstance(f, Forall) else "exists"
        inner = dict(env)
        inner[f.var] = depth
        return (tag, debruijn(f.body, inner, depth + 1))
    return (type(f).__name__.lower(),)


def alpha_equivalent(f: Formula, g: Formula) -> bool:
    return debruijn(f) == debruijn(g)


# ---------------------------------------------------------------------------
# Signatures


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str  # "function" | "predicate"
    arity: int

    @property
    def quoted(self) -> bool:
        return _LOWER_WORD.match(self.name) is None


def collect_signature(formulas: Iterable[Formula]) -> list:
    """Deterministic symbol inventory; rejects arity and kind conflicts."""
    arities = {}  # (name, kind) -> arity
    kinds = {}  # name -> kind
    for f in formulas:
        for name, kind, arity in formula_symbols(f):
            prev_kind = kinds.get(name)
            if prev_kind is not None and prev_kind != kind:
                raise KindConflict(name)
            kinds[name] = kind
            prev = arities.get((name, kind))
            if prev is not None and prev != arity:
                raise ArityConflict(name, kind, (prev, arity))
            arities[(name, kind)] = arity
    symbols = [Symbol(name, kind, arity) for (name, kind), arity in arities.items()]
    symbols.sort(key=lambda s: (s.kind, s.name))
    return symbols


def merge_signatures(base: Iterable[Symbol], extra: Iterable[Symbol]) -> list:
    by_key = {}
    for s in list(base) + list(extra):
        prev = by_key.get((s.name, s.kind))
        if prev is not None and prev.arity != s.arity:
            raise ArityConflict(s.name, s.kind, (prev.arity, s.arity))
        other = "function" if s.kind == "predicate" else "predicate"
        if (s.name, other) in by_key:
            raise KindConflict(s.name)
        by_key[(s.name, s.kind)] = s
    out = list(by_key.values())
    out.sort(key=lambda s: (s.kind, s.name))
    return out


def rename_symbols(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Rename function/predicate symbols throughout a formula."""

    def ren_term(t):
        if isinstance(t, Var):
            return t
        return App(mapping.get(t.name, t.name), tuple(ren_term(a) for a in t.args))

    if isinstance(f, Atom):
        return Atom(mapping.get(f.pred, f.pred), tuple(ren_term(t) for t in f.args))
    if isinstance(f, Eq):
        return Eq(ren_term(f.left), ren_term(f.right))
    if isinstance(f, Not):
        return Not(rename_symbols(f.body, mapping))
    if isinstance(f, _BINARY):
        return type(f)(
            rename_symbols(f.left, mapping), rename_symbols(f.right, mapping)
        )
    if isinstance(f, _QUANT):
        return type(f)(f.var, rename_symbols(f.body, mapping))
    return f


def ground_subterms(f: Formula) -> list:
    """All ground terms occurring in a formula, deterministically ordered."""
    found = {}

    def walk_term(t):
        ground = True
        if isinstance(t, Var):
            return False
        for a in t.args:
            if not walk_term(a):
                ground = False
        if ground:
            found.setdefault(_norm_term(t, {}), t)
        return ground

    def walk(g):
        if isinstance(g, Atom):
            for t in g.args:
                walk_term(t)
        elif isinstance(g, Eq):
            walk_term(g.left)
            walk_term(g.right)
        elif isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, _BINARY):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, _QUANT):
            walk(g.body)

    walk(f)
    return [found[k] for k in sorted(found)]
