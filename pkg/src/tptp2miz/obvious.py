"""Mizar-style 'obvious inference' checking.

A conclusion is accepted when the negated conclusion (universal variables
replaced by fresh constants) together with the premises is refutable using
at most one substitution instance of each universally quantified premise.

Quantified subformulas are treated as opaque generalized atoms, so the
ground reasoning core is a DPLL search extended with congruence closure
over ground equalities.  Universal premises do not take part in the
propositional case analysis directly: a chosen instance either is a single
literal (which then acts as a known fact) or must be outright falsified by
a branch.  This keeps the rule aligned with the multi-premise checker it
models: formula-level resolution steps that need propositional chaining
through a disjunctive instance are rejected as non-obvious.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from . import fol
from .errors import SignatureTooLarge

DEFAULT_BUDGET = 10000

_MAX_CLAUSES = 512
_MAX_BRANCHES = 256
_MAX_CANDIDATES = 64
_FILL = fol.App(".z")  # designated constant for residual variables


class Verdict(Enum):
    OBVIOUS = "Obvious"
    NOT_OBVIOUS = "NotObvious"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ObviousnessQuery:
    premises: tuple
    conclusion: "fol.Formula"
    budget: int = DEFAULT_BUDGET
    fixed_vars: tuple = ()

    @staticmethod
    def make(premises, conclusion, budget=DEFAULT_BUDGET, fixed_vars=()):
        return ObviousnessQuery(tuple(premises), conclusion, budget, tuple(fixed_vars))


@dataclass(frozen=True)
class ObviousnessVerdict:
    kind: Verdict
    selection: tuple = ()  # per-premise {var: Term}, aligned with query.premises
    commitments: tuple = ()  # internal: ((unit_key, subst_items), ...) for replay

    @property
    def is_obvious(self):
        return self.kind is Verdict.OBVIOUS


NOT_OBVIOUS = ObviousnessVerdict(Verdict.NOT_OBVIOUS)
UNKNOWN = ObviousnessVerdict(Verdict.UNKNOWN)


class _BudgetExceeded(Exception):
    pass


class _TooHard(Exception):
    """Structure outside the supported fragment (explosion guards)."""


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise _BudgetExceeded()


# ---------------------------------------------------------------------------
# Generalized atoms


def _term_key(t):
    return fol._norm_term(t, {})


@dataclass
class _Registry:
    atoms: dict = field(default_factory=dict)  # key -> info tuple

    def pred(self, name, args):
        key = ("p", name, tuple(_term_key(a) for a in args))
        self.atoms.setdefault(key, ("pred", name, tuple(args)))
        return key

    def eq(self, left, right):
        lk, rk = _term_key(left), _term_key(right)
        if rk < lk:
            left, right = right, left
            lk, rk = rk, lk
        key = ("e", (lk, rk))
        self.atoms.setdefault(key, ("eq", left, right))
        return key

    def quant(self, formula):
        key = ("q", fol.debruijn(formula))
        self.atoms.setdefault(key, ("quant", formula))
        return key

    def atom_key(self, f):
        if isinstance(f, fol.Atom):
            return self.pred(f.pred, f.args)
        if isinstance(f, fol.Eq):
            return self.eq(f.left, f.right)
        if isinstance(f, (fol.Forall, fol.Exists)):
            return self.quant(f)
        raise ValueError(f"not an atom: {f!r}")


def _nnf(f, positive=True):
    """Negation normal form over generalized atoms (quantifiers opaque)."""
    if isinstance(f, fol.Not):
        return _nnf(f.body, not positive)
    if isinstance(f, fol.Implies):
        return _nnf(fol.Or(fol.Not(f.left), f.right), positive)
    if isinstance(f, fol.Iff):
        both = fol.And(fol.Implies(f.left, f.right), fol.Implies(f.right, f.left))
        return _nnf(both, positive)
    if isinstance(f, fol.And):
        node = fol.And if positive else fol.Or
        return node(_nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, fol.Or):
        node = fol.Or if positive else fol.And
        return node(_nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, fol.Verum):
        return fol.TRUE if positive else fol.FALSE
    if isinstance(f, fol.Falsum):
        return fol.FALSE if positive else fol.TRUE
    # atoms and quantified subformulas
    return f if positive else fol.Not(f)


def _clausify(f, registry):
    """CNF clauses (tuples of (atom_key, polarity)) of an NNF input."""
    f = _nnf(f)

    def cnf(g):
        if isinstance(g, fol.Verum):
            return []
        if isinstance(g, fol.Falsum):
            return [()]
        if isinstance(g, fol.And):
            return cnf(g.left) + cnf(g.right)
        if isinstance(g, fol.Or):
            left, right = cnf(g.left), cnf(g.right)
            if len(left) * len(right) > _MAX_CLAUSES:
                raise _TooHard()
            return [a + b for a in left for b in right]
        if isinstance(g, fol.Not):
            return [((registry.atom_key(g.body), False),)]
        return [((registry.atom_key(g), True),)]

    out = []
    for clause in cnf(f):
        lits = tuple(sorted(set(clause)))
        if any((k, not v) in lits for k, v in lits):
            continue  # tautology
        out.append(lits)
    if len(out) > _MAX_CLAUSES:
        raise _TooHard()
    return out


# ---------------------------------------------------------------------------
# Congruence closure


class _Congruence:
    def __init__(self, terms, equations):
        self.key_of = {}
        self.terms = {}
        self.parent = {}
        for t in terms:
            self._add(t)
        pending = []
        for l, r in equations:
            pending.append((self._add(l), self._add(r)))
        for a, b in pending:
            self._merge(a, b)
        self._congruence_fixpoint()

    def _add(self, t):
        key = _term_key(t)
        if key not in self.terms:
            self.terms[key] = t
            self.parent[key] = key
            if isinstance(t, fol.App):
                for a in t.args:
                    self._add(a)
        return key

    def find(self, key):
        while self.parent[key] != key:
            self.parent[key] = self.parent[self.parent[key]]
            key = self.parent[key]
        return key

    def _merge(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def _congruence_fixpoint(self):
        changed = True
        while changed:
            changed = False
            sigs = {}
            for key, t in self.terms.items():
                if not isinstance(t, fol.App) or not t.args:
                    continue
                sig = (t.name, tuple(self.find(_term_key(a)) for a in t.args))
                other = sigs.get(sig)
                if other is None:
                    sigs[sig] = key
                elif self.find(other) != self.find(key):
                    self._merge(other, key)
                    changed = True

    def term_class(self, t):
        key = _term_key(t)
        if key not in self.parent:
            # unseen term: classes of compound terms follow argument classes
            if isinstance(t, fol.App) and t.args:
                sig = (t.name, tuple(self.term_class(a) for a in t.args))
                for key2, t2 in self.terms.items():
                    if isinstance(t2, fol.App) and t2.args:
                        if (t2.name, tuple(self.term_class(a) for a in t2.args)) == sig:
                            return self.find(key2)
            return key
        return self.find(key)


@dataclass
class _BranchView:
    """Branch assignment canonicalized through congruence closure."""

    values: dict  # canonical atom key -> bool
    cc: Optional[_Congruence]
    conflict: bool

    def lookup(self, key, registry):
        if self.cc is None:
            return self.values.get(key)
        return self.values.get(_canonical(key, registry, self.cc))


def _canonical(key, registry, cc):
    info = registry.atoms[key]
    if info[0] == "pred":
        return ("p", info[1], tuple(cc.term_class(a) for a in info[2]))
    if info[0] == "eq":
        a, b = cc.term_class(info[1]), cc.term_class(info[2])
        if a == b:
            return ("e", "refl")
        return ("e", tuple(sorted((a, b))))
    return key


def _make_branch_view(assignment, registry):
    equations = []
    terms = []
    for key, value in assignment.items():
        info = registry.atoms[key]
        if info[0] == "eq":
            terms.extend((info[1], info[2]))
            if value:
                equations.append((info[1], info[2]))
        elif info[0] == "pred":
            terms.extend(info[2])
    cc = _Congruence(terms, equations)
    values = {}
    for key, value in assignment.items():
        canon = _canonical(key, registry, cc)
        if canon == ("e", "refl"):
            if not value:
                return _BranchView({}, cc, True)
            continue
        if canon in values and values[canon] != value:
            return _BranchView({}, cc, True)
        values[canon] = value
    return _BranchView(values, cc, False)


def _evaluate(f, view, registry):
    """Three-valued evaluation of a ground generalized-atom formula."""
    f = _nnf(f)

    def ev(g):
        if isinstance(g, fol.Verum):
            return True
        if isinstance(g, fol.Falsum):
            return False
        if isinstance(g, fol.Not):
            inner = ev(g.body)
            return None if inner is None else not inner
        if isinstance(g, fol.And):
            a, b = ev(g.left), ev(g.right)
            if a is False or b is False:
                return False
            if a is True and b is True:
                return True
            return None
        if isinstance(g, fol.Or):
            a, b = ev(g.left), ev(g.right)
            if a is True or b is True:
                return True
            if a is False and b is False:
                return False
            return None
        if isinstance(g, fol.Eq) and view.cc is not None:
            if view.cc.term_class(g.left) == view.cc.term_class(g.right):
                return True
        key = registry.atom_key(g)
        return view.lookup(key, registry)

    return ev(f)


# ---------------------------------------------------------------------------
# DPLL branch enumeration


def _dpll_branches(clauses, budget):
    """All satisfying leaf assignments of the clause set (before congruence)."""
    branches = []

    def propagate(assignment, clauses_left):
        while True:
            changed = False
            remaining = []
            for clause in clauses_left:
                satisfied = False
                unassigned = []
                for key, pol in clause:
                    val = assignment.get(key)
                    if val is None:
                        unassigned.append((key, pol))
                    elif val == pol:
                        satisfied = True
                        break
                if satisfied:
                    continue
                if not unassigned:
                    return None
                if len(unassigned) == 1:
                    key, pol = unassigned[0]
                    assignment[key] = pol
                    changed = True
                else:
                    remaining.append(clause)
            clauses_left = remaining
            if not changed:
                return clauses_left

    def search(assignment, clauses_left):
        budget.spend()
        clauses_left = propagate(assignment, clauses_left)
        if clauses_left is None:
            return
        if not clauses_left:
            branches.append(dict(assignment))
            if len(branches) > _MAX_BRANCHES:
                raise _TooHard()
            return
        key = next(
            k for k, _ in clauses_left[0] if assignment.get(k) is None
        )
        for value in (True, False):
            trial = dict(assignment)
            trial[key] = value
            search(trial, list(clauses_left))

    search({}, list(clauses))
    return branches


# ---------------------------------------------------------------------------
# Universal units and instance candidates


@dataclass(frozen=True)
class _UniversalUnit:
    key: tuple  # normalized closed form, identifies the unit
    variables: tuple
    matrix: "fol.Formula"


def _universal_unit(closed):
    variables, matrix = fol.strip_universal_prefix(closed)
    if not variables:
        return None
    return _UniversalUnit(fol.debruijn(closed), tuple(variables), matrix)


def _derived_units(branch, registry):
    """Universal facts implied by a branch's opaque quantified atoms."""
    units = []
    for key in sorted(branch, key=repr):
        value = branch[key]
        info = registry.atoms.get(key)
        if info is None or info[0] != "quant":
            continue
        formula = info[1]
        if value and isinstance(formula, fol.Forall):
            unit = _universal_unit(formula)
            if unit is not None:
                units.append(unit)
        elif not value and isinstance(formula, fol.Exists):
            variables = []
            body = formula
            while isinstance(body, fol.Exists):
                variables.append(body.var)
                body = body.body
            units.append(
                _UniversalUnit(
                    ("neg",) + fol.debruijn(formula), tuple(variables), fol.Not(body)
                )
            )
    return units


def _matrix_atoms(matrix):
    atoms = []

    def walk(g):
        if isinstance(g, (fol.Atom, fol.Eq)):
            atoms.append(g)
        elif isinstance(g, fol.Not):
            walk(g.body)
        elif isinstance(g, (fol.And, fol.Or, fol.Implies, fol.Iff)):
            walk(g.left)
            walk(g.right)
        # quantified subformulas are opaque for candidate generation

    walk(matrix)
    return atoms


def _match_term(pattern, ground, variables, subst):
    if isinstance(pattern, fol.Var):
        if pattern.name in variables:
            bound = subst.get(pattern.name)
            if bound is None:
                subst[pattern.name] = ground
                return True
            return _term_key(bound) == _term_key(ground)
        return isinstance(ground, fol.Var) and ground.name == pattern.name
    if isinstance(ground, fol.Var) or pattern.name != ground.name:
        return False
    if len(pattern.args) != len(ground.args):
        return False
    return all(
        _match_term(p, g, variables, subst)
        for p, g in zip(pattern.args, ground.args)
    )


def _match_atom(pattern, ground_info, variables, subst):
    if isinstance(pattern, fol.Atom):
        if ground_info[0] != "pred" or ground_info[1] != pattern.pred:
            return None
        if len(ground_info[2]) != len(pattern.args):
            return None
        trial = dict(subst)
        for p, g in zip(pattern.args, ground_info[2]):
            if not _match_term(p, g, variables, trial):
                return None
        return trial
    if isinstance(pattern, fol.Eq):
        if ground_info[0] != "eq":
            return None
        for left, right in ((ground_info[1], ground_info[2]), (ground_info[2], ground_info[1])):
            trial = dict(subst)
            if _match_term(pattern.left, left, variables, trial) and _match_term(
                pattern.right, right, variables, trial
            ):
                return trial
        return None
    return None


def _candidate_substitutions(unit, atom_infos, universe, budget):
    """Instance candidates for one universal unit, deterministically ordered."""
    variables = set(unit.variables)
    patterns = _matrix_atoms(unit.matrix)
    partials = [{}]
    for pattern in patterns:
        extended = []
        for partial in partials:
            extended.append(partial)
            for info in atom_infos:
                budget.spend()
                trial = _match_atom(pattern, info, variables, partial)
                if trial is not None:
                    extended.append(trial)
        # dedup, keep deterministic order, cap growth
        seen = set()
        kept = []
        for p in extended:
            sig = tuple(sorted((k, _term_key(v)) for k, v in p.items()))
            if sig not in seen:
                seen.add(sig)
                kept.append(p)
        partials = kept[:_MAX_CANDIDATES]
    # complete residual variables
    complete = []
    seen = set()
    for partial in sorted(partials, key=lambda p: -len(p)):
        residual = [v for v in unit.variables if v not in partial]
        if residual and len(residual) <= 2 and len(universe) <= 16:
            fillers = itertools.product(universe, repeat=len(residual))
        elif residual:
            fillers = [tuple(_FILL for _ in residual)]
        else:
            fillers = [()]
        for fill in fillers:
            budget.spend()
            subst = dict(partial)
            subst.update(dict(zip(residual, fill)))
            sig = tuple(sorted((k, _term_key(v)) for k, v in subst.items()))
            if sig not in seen:
                seen.add(sig)
                complete.append(subst)
            if len(complete) >= _MAX_CANDIDATES:
                return complete
    return complete


# ---------------------------------------------------------------------------
# The checker


def _goal_constants(n):
    return [fol.App(f".g{i + 1}") for i in range(n)]


def _fix_formula(f, fixed_vars):
    closed = f
    mapping = {v: fol.App(f".x_{v}") for v in fixed_vars}
    return fol.apply_substitution(mapping, closed)


def _instance_formula(unit, subst):
    mapping = {v: subst.get(v, _FILL) for v in unit.variables}
    return fol.apply_substitution(mapping, unit.matrix)


class _Problem:
    def __init__(self, premises, conclusion, fixed_vars, budget):
        self.registry = _Registry()
        self.budget = budget
        self.premise_units = []  # per premise: _UniversalUnit or None
        self.clauses = []
        ground_formulas = []

        fixed = tuple(fixed_vars)
        prem_closed = []
        for p in premises:
            p = _fix_formula(p, fixed)
            prem_closed.append(fol.universal_closure(p))
        conclusion = _fix_formula(conclusion, fixed)
        conclusion = fol.universal_closure(conclusion)

        for closed in prem_closed:
            unit = _universal_unit(closed)
            self.premise_units.append(unit)
            ground_formulas.append(closed if unit is None else None)
            if unit is not None:
                # the whole closed premise also participates as an opaque fact
                self.clauses.append(((self.registry.quant(closed), True),))

        goal_vars, matrix = fol.strip_universal_prefix(conclusion)
        consts = _goal_constants(len(goal_vars))
        self.goal_matrix = fol.apply_substitution(
            dict(zip(goal_vars, consts)), matrix
        )
        ground_formulas.append(fol.Not(self.goal_matrix))

        for g in ground_formulas:
            if g is not None:
                self.clauses.extend(_clausify(g, self.registry))

        self.universe = self._term_universe(prem_closed + [self.goal_matrix])

    def _term_universe(self, formulas):
        found = {}
        for f in formulas:
            for t in fol.ground_subterms(f):
                found.setdefault(_term_key(t), t)
        found.setdefault(_term_key(_FILL), _FILL)
        return [found[k] for k in sorted(found)]

    # -- closure search ------------------------------------------------------

    def solve(self):
        branches = _dpll_branches(self.clauses, self.budget)
        views = []
        open_branches = []
        for branch in branches:
            view = _make_branch_view(branch, self.registry)
            if not view.conflict:
                views.append(view)
                open_branches.append(branch)
        if not views:
            return {}
        units_by_key = {}
        for unit in self.premise_units:
            if unit is not None:
                units_by_key.setdefault(unit.key, unit)
        per_branch_units = []
        for branch in open_branches:
            available = dict(units_by_key)
            for unit in _derived_units(branch, self.registry):
                available.setdefault(unit.key, unit)
            per_branch_units.append(available)

        commitments = self._close_all(open_branches, per_branch_units, 0, {})
        return commitments

    def _branch_closed(self, branch, commitments):
        assignment = dict(branch)
        instances = []
        for unit, subst in commitments.values():
            inst = _instance_formula(unit, subst)
            instances.append(inst)
            lit = _as_literal(inst)
            if lit is not None:
                key = self.registry.atom_key(lit[1])
                if key in assignment and assignment[key] != lit[0]:
                    return True
                assignment[key] = lit[0]
        view = _make_branch_view(assignment, self.registry)
        if view.conflict:
            return True
        for inst in instances:
            if _evaluate(inst, view, self.registry) is False:
                return True
        return False

    def _close_all(self, branches, per_branch_units, index, commitments):
        if index == len(branches):
            return commitments
        self.budget.spend()
        branch = branches[index]
        if self._branch_closed(branch, commitments):
            return self._close_all(branches, per_branch_units, index + 1, commitments)
        available = per_branch_units[index]
        if len(commitments) >= len(available) + len(
            [u for u in self.premise_units if u is not None]
        ):
            return None
        assignment = dict(branch)
        for unit, subst in commitments.values():
            inst = _instance_formula(unit, subst)
            lit = _as_literal(inst)
            if lit is not None:
                assignment.setdefault(self.registry.atom_key(lit[1]), lit[0])
        atom_infos = [
            self.registry.atoms[k]
            for k in sorted(assignment, key=repr)
            if self.registry.atoms[k][0] in ("pred", "eq")
        ]
        for key in sorted(available, key=repr):
            if key in commitments:
                continue
            unit = available[key]
            for subst in _candidate_substitutions(
                unit, atom_infos, self.universe, self.budget
            ):
                trial = dict(commitments)
                trial[key] = (unit, subst)
                inst = _instance_formula(unit, subst)
                lit = _as_literal(inst)
                helps = self._branch_closed(branch, trial) or lit is not None
                if not helps:
                    continue
                result = self._close_all(branches, per_branch_units, index, trial)
                if result is not None:
                    return result
        return None


def _as_literal(f):
    """(polarity, atom) when the formula is a single literal, else None."""
    if isinstance(f, fol.Not):
        inner = _as_literal(f.body)
        if inner is not None and inner[0]:
            return (False, inner[1])
        return None
    if isinstance(f, (fol.Atom, fol.Eq)):
        return (True, f)
    return None


def is_obvious(query: ObviousnessQuery) -> ObviousnessVerdict:
    budget = _Budget(query.budget)
    try:
        problem = _Problem(
            query.premises, query.conclusion, query.fixed_vars, budget
        )
        commitments = problem.solve()
    except _BudgetExceeded:
        return UNKNOWN
    except _TooHard:
        return UNKNOWN
    if commitments is None:
        return NOT_OBVIOUS
    selection = []
    for unit in problem.premise_units:
        if unit is None or unit.key not in commitments:
            selection.append({})
        else:
            _, subst = commitments[unit.key]
            selection.append({v: subst.get(v, _FILL) for v in unit.variables})
    packed = tuple(
        (key, tuple(sorted(subst.items())))
        for key, (unit, subst) in commitments.items()
    )
    return ObviousnessVerdict(Verdict.OBVIOUS, tuple(selection), packed)


def replay(query: ObviousnessQuery, verdict: ObviousnessVerdict) -> bool:
    """Re-check an Obvious verdict using only its recorded selection."""
    if not verdict.is_obvious:
        return False
    budget = _Budget(query.budget)
    try:
        problem = _Problem(query.premises, query.conclusion, query.fixed_vars, budget)
        branches = _dpll_branches(problem.clauses, budget)
    except (_BudgetExceeded, _TooHard):
        return False
    units_by_key = {u.key: u for u in problem.premise_units if u is not None}
    commitments = {}
    for key, subst_items in verdict.commitments:
        unit = units_by_key.get(key)
        if unit is None:
            # derived unit: rebuild from any branch where it is available
            for branch in branches:
                for cand in _derived_units(branch, problem.registry):
                    if cand.key == key:
                        unit = cand
                        break
                if unit is not None:
                    break
        if unit is None:
            return False
        commitments[key] = (unit, dict(subst_items))
    for branch in branches:
        view = _make_branch_view(branch, problem.registry)
        if view.conflict:
            continue
        if not problem._branch_closed(branch, commitments):
            return False
    return True


# ---------------------------------------------------------------------------
# Brute-force entailment oracle

_DEFAULT_MODEL_CAP = 4_000_000


def brute_force_entails(premises, conclusion, domain_size, cap=_DEFAULT_MODEL_CAP):
    """True iff every interpretation of the given finite domain size that
    satisfies all premises also satisfies the conclusion (exhaustive)."""
    if domain_size < 1:
        raise ValueError("domain_size must be >= 1")
    premises = [fol.universal_closure(p) for p in premises]
    conclusion = fol.universal_closure(conclusion)
    symbols = fol.collect_signature(premises + [conclusion])
    n = domain_size

    total = 1
    for s in symbols:
        cells = n ** s.arity
        total *= (n ** cells) if s.kind == "function" else (2 ** cells)
        if total > cap:
            raise SignatureTooLarge(total, cap)

    domain = range(n)
    funcs = [s for s in symbols if s.kind == "function"]
    preds = [s for s in symbols if s.kind == "predicate"]

    def tables(symbol_list, values):
        spaces = []
        for s in symbol_list:
            points = list(itertools.product(domain, repeat=s.arity))
            spaces.append(
                [dict(zip(points, combo)) for combo in itertools.product(values, repeat=len(points))]
            )
        return itertools.product(*spaces)

    def eval_term(t, interp, env):
        if isinstance(t, fol.Var):
            return env[t.name]
        return interp[(t.name, len(t.args))][
            tuple(eval_term(a, interp, env) for a in t.args)
        ]

    def eval_formula(f, interp, env):
        if isinstance(f, fol.Atom):
            return interp[(f.pred, len(f.args))][
                tuple(eval_term(a, interp, env) for a in f.args)
            ]
        if isinstance(f, fol.Eq):
            return eval_term(f.left, interp, env) == eval_term(f.right, interp, env)
        if isinstance(f, fol.Not):
            return not eval_formula(f.body, interp, env)
        if isinstance(f, fol.And):
            return eval_formula(f.left, interp, env) and eval_formula(f.right, interp, env)
        if isinstance(f, fol.Or):
            return eval_formula(f.left, interp, env) or eval_formula(f.right, interp, env)
        if isinstance(f, fol.Implies):
            return (not eval_formula(f.left, interp, env)) or eval_formula(
                f.right, interp, env
            )
        if isinstance(f, fol.Iff):
            return eval_formula(f.left, interp, env) == eval_formula(f.right, interp, env)
        if isinstance(f, fol.Forall):
            return all(
                eval_formula(f.body, interp, {**env, f.var: d}) for d in domain
            )
        if isinstance(f, fol.Exists):
            return any(
                eval_formula(f.body, interp, {**env, f.var: d}) for d in domain
            )
        return isinstance(f, fol.Verum)

    for func_tables in tables(funcs, list(domain)):
        for pred_tables in tables(preds, [False, True]):
            interp = {}
            for s, table in zip(funcs, func_tables):
                interp[(s.name, s.arity)] = table
            for s, table in zip(preds, pred_tables):
                interp[(s.name, s.arity)] = table
            if all(eval_formula(p, interp, {}) for p in premises):
                if not eval_formula(conclusion, interp, {}):
                    return False
    return True
