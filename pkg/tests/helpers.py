"""Shared generators and oracles for the test suite."""

import random

from tptp2miz import fol

CONSTS = ["a", "b"]
UNARY_PREDS = ["p"]
BINARY_PREDS = ["r"]


def random_term(rng, variables, depth=0):
    roll = rng.random()
    if variables and roll < 0.5:
        return fol.Var(rng.choice(variables))
    return fol.App(rng.choice(CONSTS))


def random_atom(rng, variables):
    if rng.random() < 0.6:
        return fol.Atom(rng.choice(UNARY_PREDS), (random_term(rng, variables),))
    return fol.Atom(
        rng.choice(BINARY_PREDS),
        (random_term(rng, variables), random_term(rng, variables)),
    )


def random_literal(rng, variables):
    atom = random_atom(rng, variables)
    if rng.random() < 0.2:
        atom = fol.Eq(random_term(rng, variables), random_term(rng, variables))
    return fol.Not(atom) if rng.random() < 0.5 else atom


def random_clause_formula(rng, variables, width=3):
    lits = [random_literal(rng, variables) for _ in range(rng.randint(1, width))]
    return fol.big_or(lits)


def random_quantified(rng, max_vars=2):
    names = ["X", "Y"][: rng.randint(0, max_vars)]
    body = random_clause_formula(rng, names)
    for v in reversed(names):
        body = fol.Forall(v, body)
    return body


def random_formula(rng, variables=(), depth=2):
    """Arbitrary small formula, possibly with quantifiers."""
    variables = list(variables)
    if depth == 0 or rng.random() < 0.35:
        return random_literal(rng, variables)
    kind = rng.randrange(6)
    if kind == 0:
        return fol.Not(random_formula(rng, variables, depth - 1))
    if kind in (1, 2):
        node = fol.And if kind == 1 else fol.Or
        return node(
            random_formula(rng, variables, depth - 1),
            random_formula(rng, variables, depth - 1),
        )
    if kind == 3:
        return fol.Implies(
            random_formula(rng, variables, depth - 1),
            random_formula(rng, variables, depth - 1),
        )
    fresh = fol.fresh_var(set(variables))
    node = fol.Forall if kind == 4 else fol.Exists
    return node(fresh, random_formula(rng, variables + [fresh], depth - 1))


def make_rng(seed):
    return random.Random(seed)


def random_article(rng):
    """Small ground refutation article: implication chains with some
    redundant restatements, always passing the obviousness invariant."""
    from tptp2miz import fol
    from tptp2miz.article import ArticleModel, DiffuseBlock, EnvironmentManifest, Item

    length = rng.randint(2, 6)
    atoms = [fol.Atom(f"p{i}", (fol.App("c"),)) for i in range(length + 1)]

    axiom_items = [Item("Ax1", atoms[0], ("AXIOMS:1",))]
    for i in range(length):
        k = len(axiom_items) + 1
        axiom_items.append(
            Item(f"Ax{k}", fol.Implies(atoms[i], atoms[i + 1]), (f"AXIOMS:{k}",))
        )

    lemmas = []
    label = 0
    prev_ref = "Ax1"
    for i in range(1, length + 1):
        label += 1
        lemmas.append(Item(f"S{label}", atoms[i], (prev_ref, f"Ax{i + 1}")))
        prev_ref = f"S{label}"
        if rng.random() < 0.4:  # redundant restatement
            label += 1
            lemmas.append(Item(f"S{label}", atoms[i], (prev_ref,)))
            prev_ref = f"S{label}"

    assumption_label = f"S{label + 1}"
    diffuse = DiffuseBlock(
        assumption_label, fol.Not(atoms[length]), [], (prev_ref, assumption_label)
    )
    model = ArticleModel((), axiom_items, lemmas, atoms[length], diffuse)
    manifest = EnvironmentManifest(
        functions=[("c", 0)],
        predicates=[(f"p{i}", 1) for i in range(length + 1)],
        axioms=[i.formula for i in axiom_items],
        skolem_defs=[],
    )
    return model, manifest
