"""Expanding non-obvious inference steps into explicit sub-proofs.

Each universally quantified parent gets a ground substitution instance
(ground relative to the conclusion's variables, which the sub-proof
fixes).  Once every needed instance is stated explicitly, the conclusion
follows by an obvious inference from the instances alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import fol, obvious
from .errors import ExpansionFailed
from .obvious import ObviousnessQuery, Verdict
from .tptp import InferenceRecord


@dataclass(frozen=True)
class DirectJustification:
    """The step is obvious from its parents as stated; cite them directly."""

    verdict: "obvious.ObviousnessVerdict"


@dataclass(frozen=True)
class InstanceStep:
    label: str
    parent_index: int  # into the step's parent list
    formula: "fol.Formula"  # instantiated matrix, fixed variables free


@dataclass(frozen=True)
class SubProof:
    fixed_variables: tuple
    instances: tuple  # InstanceStep, in citation order
    conclusion: "fol.Formula"


def _labels():
    for size in itertools.count(1):
        for combo in itertools.product("ABCDEFGHIJKLMNOPQRSTUVWXYZ", repeat=size):
            yield "".join(combo)


def substitution_from_inference_record(record) -> dict:
    """Variable bindings recorded by the prover, when present."""
    if isinstance(record, InferenceRecord):
        return dict(record.bindings)
    return {}


def _atom_infos(formulas):
    infos = []
    seen = set()

    def note(info):
        if info[0] == "pred":
            key = ("p", info[1], tuple(obvious._term_key(a) for a in info[2]))
        else:
            key = ("e", tuple(sorted((obvious._term_key(info[1]), obvious._term_key(info[2])))))
        if key not in seen:
            seen.add(key)
            infos.append(info)

    for f in formulas:
        for atom in obvious._matrix_atoms(f):
            if isinstance(atom, fol.Atom):
                note(("pred", atom.pred, tuple(atom.args)))
            else:
                note(("eq", atom.left, atom.right))
    return infos


def expand_step(step_formula, parent_formulas, budget=obvious.DEFAULT_BUDGET,
                hint=None):
    """Instance selection turning one derivation step into a sub-proof.

    Returns (fixed_variables, instances) where instances is a list of
    (parent_index, substitution, instance_formula); raises ExpansionFailed
    when no selection within the search space works.  Parents may be used
    twice: the search retries with duplicated parents before giving up.
    """
    fixed = tuple(fol.free_vars(step_formula))
    conclusion = step_formula

    parents = []
    for i, p in enumerate(parent_formulas):
        closed = fol.universal_closure(p)
        unit = obvious._universal_unit(closed)
        parents.append((i, unit, closed))

    # pool of atoms instances can be matched against
    pool = _atom_infos(
        [conclusion]
        + [closed for _, unit, closed in parents if unit is None]
    )
    universe = {}
    for f in [conclusion] + [c for _, _, c in parents]:
        for t in fol.ground_subterms(f):
            universe.setdefault(obvious._term_key(t), t)
    for v in fixed:
        universe.setdefault(obvious._term_key(fol.Var(v)), fol.Var(v))
    universe = [universe[k] for k in sorted(universe)]

    tracker = obvious._Budget(budget)

    def try_parents(active):
        universal = [(i, unit) for i, unit, _ in active if unit is not None]
        ground = [closed for _, unit, closed in active if unit is None]

        def leaf_check(chosen):
            premises = ground + [inst for _, _, inst in chosen]
            query = ObviousnessQuery.make(
                premises, conclusion,
                budget=max(200, budget // 10), fixed_vars=fixed,
            )
            tracker.spend(50)
            return obvious.is_obvious(query).kind is Verdict.OBVIOUS

        def search(pos, chosen, pool_now):
            if pos == len(universal):
                return chosen if leaf_check(chosen) else None
            index, unit = universal[pos]
            candidates = obvious._candidate_substitutions(
                unit, pool_now, universe, tracker
            )
            if hint:
                preferred = {v: hint[v] for v in unit.variables if v in hint}
                if preferred:
                    merged = []
                    for c in candidates:
                        if all(
                            obvious._term_key(c.get(v)) == obvious._term_key(t)
                            for v, t in preferred.items()
                        ):
                            merged.insert(0, c)
                        else:
                            merged.append(c)
                    candidates = merged
            for subst in candidates:
                inst = obvious._instance_formula(unit, subst)
                extra = _atom_infos([inst])
                result = search(pos + 1, chosen + [(index, subst, inst)],
                                pool_now + extra)
                if result is not None:
                    return result
            return None

        return search(0, [], list(pool))

    try:
        result = try_parents(parents)
        if result is None:
            doubled = []
            for i, unit, closed in parents:
                doubled.append((i, unit, closed))
                if unit is not None:
                    doubled.append((i, unit, closed))
            if len(doubled) > len(parents):
                result = try_parents(doubled)
    except obvious._BudgetExceeded:
        result = None
    if result is None:
        raise ExpansionFailed("<step>")
    return fixed, result


def build_subproof(step_name, step_formula, parent_formulas,
                   budget=obvious.DEFAULT_BUDGET, hint=None) -> SubProof:
    try:
        fixed, chosen = expand_step(step_formula, parent_formulas, budget, hint)
    except ExpansionFailed:
        raise ExpansionFailed(step_name) from None
    labels = _labels()
    instances = tuple(
        InstanceStep(next(labels), index, inst) for index, _, inst in chosen
    )
    return SubProof(fixed, instances, step_formula)
