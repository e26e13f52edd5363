"""Article model, concrete-syntax rendering, and the environment manifest.

An article is a flat sequence of axiom items (cited from the external
manifest), conjecture-independent lemmas, and a single theorem whose
proof is a diffuse reasoning block refuting the negated conjecture.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import derivation, expand, fol, obvious, skolem, tptp
from .derivation import StepClass
from .errors import DuplicateName, ExpansionFailed, NoConjecture


@dataclass
class Item:
    label: str
    formula: "fol.Formula"
    refs: tuple = ()  # labels and external refs, citation order
    subproof: object = None  # expand.SubProof when the step needed one
    source_name: str = ""  # derivation step this item came from


@dataclass
class DiffuseBlock:
    assumption_label: str
    assumption: "fol.Formula"
    inner_steps: list
    contradiction_refs: tuple


@dataclass
class EnvironmentManifest:
    functions: list  # (name, arity)
    predicates: list
    axioms: list  # closed formulas, AXIOMS:<i> numbering from 1
    skolem_defs: list  # closed formulas, SKOLEM:def <n> numbering from 1

    def __eq__(self, other):
        if not isinstance(other, EnvironmentManifest):
            return NotImplemented
        return (
            self.functions == other.functions
            and self.predicates == other.predicates
            and [fol.debruijn(a) for a in self.axioms]
            == [fol.debruijn(a) for a in other.axioms]
            and [fol.debruijn(a) for a in self.skolem_defs]
            == [fol.debruijn(a) for a in other.skolem_defs]
        )


@dataclass
class ArticleModel:
    reservations: tuple
    axiom_items: list
    lemma_items: list
    theorem: "fol.Formula"
    diffuse: DiffuseBlock
    pending: bool = False  # problem mode: theorem stated without proof

    def all_steps(self):
        return list(self.lemma_items) + list(self.diffuse.inner_steps)


# ---------------------------------------------------------------------------
# Building an article from a derivation graph


def _henkin_premises(unit_formula, parent_formulas, henkin):
    premises = list(parent_formulas)
    if henkin is not None:
        premises.append(henkin)
    return premises


def build_article(graph, keep_unused=False, budget=obvious.DEFAULT_BUDGET,
                  conjecture=None):
    classes = derivation.classify_all(graph)
    depends = derivation.mark_conjecture_dependence(graph, classes)
    used = derivation.mark_used(graph)
    order = derivation.topological_order(graph)
    base_sig = derivation.original_signature(graph)

    conj_nodes = [n for n in order if classes[n] is StepClass.CONJECTURE]
    neg_nodes = [n for n in order if classes[n] is StepClass.NEGATED_CONJECTURE]

    if conjecture is not None:
        # user-designated refuted assumption: the theorem is its negation
        if conjecture not in graph.nodes:
            raise NoConjecture()
        designated = graph.nodes[conjecture].formula
        theorem = designated.body if isinstance(designated, fol.Not) else fol.Not(designated)
        neg_nodes = [conjecture] + [n for n in neg_nodes if n != conjecture]
        conj_nodes = [n for n in conj_nodes if n != conjecture]
        depends = dict(depends)
        stack = [conjecture]
        while stack:
            cur = stack.pop()
            if not depends.get(cur):
                depends[cur] = True
                stack.extend(graph.children[cur])
    elif conj_nodes:
        theorem = graph.nodes[conj_nodes[0]].formula
    else:
        raise NoConjecture()

    if neg_nodes:
        assumption_node = neg_nodes[0]
        assumption = graph.nodes[assumption_node].formula
    else:
        assumption_node = None
        assumption = fol.Not(theorem)

    # axiom items: file-sourced non-conjecture units, topological order
    axiom_items = []
    axiom_label_of = {}
    for name in order:
        if classes[name] is StepClass.AXIOM:
            i = len(axiom_items) + 1
            label = f"Ax{i}"
            axiom_label_of[name] = label
            axiom_items.append(
                Item(label, graph.nodes[name].formula, (f"AXIOMS:{i}",), None, name)
            )

    skip_classes = (StepClass.AXIOM, StepClass.CONJECTURE)
    derived = []
    for name in order:
        if classes[name] in skip_classes:
            continue
        if name == assumption_node or name == graph.sink:
            continue
        if classes[name] is StepClass.NEGATED_CONJECTURE and name != assumption_node:
            pass  # redundant restatements of the assumption are ordinary steps
        if not used[name] and not keep_unused:
            continue
        derived.append(name)

    lemma_names = [n for n in derived if not depends[n]]
    inner_names = [n for n in derived if depends[n]]

    label_of = dict(axiom_label_of)
    lemma_count = len(lemma_names)
    for j, name in enumerate(lemma_names, start=1):
        label_of[name] = f"S{j}"
    assumption_label = f"S{lemma_count + 1}"
    if assumption_node is not None:
        label_of[assumption_node] = assumption_label
    for j, name in enumerate(inner_names, start=lemma_count + 2):
        label_of[name] = f"S{j}"
    for name in conj_nodes:
        # citations of the conjecture resolve to the assumption of its negation
        label_of.setdefault(name, assumption_label)

    # choice axioms for skolemization steps, numbered among kept steps only
    henkins = {}
    skolem_symbols = []
    for name in derived:
        if classes[name] is StepClass.SKOLEMIZATION:
            symbol = skolem.validate_single_skolem(name, graph, base_sig)
            henkins[name] = (len(henkins) + 1, skolem.make_henkin_axiom(name, graph, base_sig))
            skolem_symbols.append(symbol)

    def justify(name):
        unit = graph.nodes[name]
        parent_names = list(graph.parents[name])
        parent_formulas = [graph.nodes[p].formula for p in parent_names]
        refs = [label_of[p] for p in parent_names]
        henkin = henkins.get(name)
        premises = list(parent_formulas)
        if henkin is not None:
            refs.append(f"SKOLEM:def {henkin[0]}")
            premises.append(henkin[1])
        query = obvious.ObviousnessQuery.make(premises, unit.formula, budget)
        if obvious.is_obvious(query).is_obvious:
            return tuple(refs), None
        hint = expand.substitution_from_inference_record(unit.source)
        sub = expand.build_subproof(name, unit.formula, premises, budget, hint)
        return tuple(refs), sub

    lemma_items = []
    for name in lemma_names:
        refs, sub = justify(name)
        lemma_items.append(Item(label_of[name], graph.nodes[name].formula, refs, sub, name))
    inner_items = []
    for name in inner_names:
        refs, sub = justify(name)
        inner_items.append(Item(label_of[name], graph.nodes[name].formula, refs, sub, name))

    if graph.sink is not None:
        contradiction_refs = tuple(label_of[p] for p in graph.parents[graph.sink])
    else:
        contradiction_refs = tuple()

    diffuse = DiffuseBlock(assumption_label, assumption, inner_items, contradiction_refs)

    model = ArticleModel((), axiom_items, lemma_items, theorem, diffuse)
    _rename_skolems(model, henkins, skolem_symbols)
    model.reservations = _reservations(model)
    manifest = _build_manifest(model, henkins)
    return model, manifest


def _rename_skolems(model, henkins, skolem_symbols):
    """Fresh prover symbols become skolem1, skolem2, ... in topological order."""
    mapping = {s.name: f"skolem{i}" for i, s in enumerate(skolem_symbols, start=1)}
    if not mapping:
        return

    def fix(f):
        return fol.rename_symbols(f, mapping)

    for item in model.axiom_items + model.all_steps():
        item.formula = fix(item.formula)
        if item.subproof is not None:
            item.subproof = expand.SubProof(
                item.subproof.fixed_variables,
                tuple(
                    expand.InstanceStep(s.label, s.parent_index, fix(s.formula))
                    for s in item.subproof.instances
                ),
                fix(item.subproof.conclusion),
            )
    model.theorem = fix(model.theorem)
    model.diffuse.assumption = fix(model.diffuse.assumption)
    for name in henkins:
        n, axiom = henkins[name]
        henkins[name] = (n, fix(axiom))


def _formula_var_count(f):
    prefix, matrix = fol.strip_universal_prefix(fol.universal_closure(f))
    count = len(prefix)

    def walk(g):
        nonlocal count
        if isinstance(g, (fol.Forall, fol.Exists)):
            count += 1
            walk(g.body)
        elif isinstance(g, fol.Not):
            walk(g.body)
        elif isinstance(g, (fol.And, fol.Or, fol.Implies, fol.Iff)):
            walk(g.left)
            walk(g.right)

    walk(matrix)
    return count


def _reservations(model):
    most = 0
    for item in model.axiom_items + model.all_steps():
        most = max(most, _formula_var_count(item.formula))
        if item.subproof is not None:
            for s in item.subproof.instances:
                most = max(most, _formula_var_count(s.formula))
    most = max(most, _formula_var_count(model.theorem))
    most = max(most, _formula_var_count(model.diffuse.assumption))
    return tuple(f"X{i}" for i in range(1, most + 1))


def _build_manifest(model, henkins):
    formulas = [item.formula for item in model.axiom_items + model.all_steps()]
    formulas.append(model.theorem)
    formulas.append(model.diffuse.assumption)
    for item in model.all_steps():
        if item.subproof is not None:
            formulas.extend(s.formula for s in item.subproof.instances)
    skolem_defs = [axiom for _, axiom in sorted(henkins.values())]
    formulas.extend(skolem_defs)
    closed = [fol.universal_closure(f) for f in formulas]
    symbols = fol.collect_signature(closed)
    return EnvironmentManifest(
        functions=[(s.name, s.arity) for s in symbols if s.kind == "function"],
        predicates=[(s.name, s.arity) for s in symbols if s.kind == "predicate"],
        axioms=[fol.universal_closure(i.formula) for i in model.axiom_items],
        skolem_defs=skolem_defs,
    )


# ---------------------------------------------------------------------------
# Problem mode: flat article without a proof


def translate_problem(units):
    seen = set()
    for u in units:
        if u.name in seen:
            raise DuplicateName(u.name)
        seen.add(u.name)
    axiom_items = []
    theorem = None
    for u in units:
        if u.role == "conjecture":
            theorem = u.formula
        else:
            i = len(axiom_items) + 1
            axiom_items.append(
                Item(f"Ax{i}", u.formula, (f"AXIOMS:{i}",), None, u.name)
            )
    diffuse = DiffuseBlock("", fol.FALSE, [], ())
    model = ArticleModel((), axiom_items, [], theorem, diffuse, pending=True)
    model.reservations = _reservations_flat(model)
    closed = [fol.universal_closure(i.formula) for i in axiom_items]
    if theorem is not None:
        closed.append(fol.universal_closure(theorem))
    symbols = fol.collect_signature(closed)
    manifest = EnvironmentManifest(
        functions=[(s.name, s.arity) for s in symbols if s.kind == "function"],
        predicates=[(s.name, s.arity) for s in symbols if s.kind == "predicate"],
        axioms=[fol.universal_closure(i.formula) for i in axiom_items],
        skolem_defs=[],
    )
    return model, manifest


def _reservations_flat(model):
    most = 0
    for item in model.axiom_items:
        most = max(most, _formula_var_count(item.formula))
    if model.theorem is not None:
        most = max(most, _formula_var_count(model.theorem))
    return tuple(f"X{i}" for i in range(1, most + 1))


# ---------------------------------------------------------------------------
# Rendering


def _render_term(t, names):
    if isinstance(t, fol.Var):
        return names.get(t.name, t.name)
    if not t.args:
        return t.name
    return "(" + t.name + " " + " ".join(_render_term(a, names) for a in t.args) + ")"


def _render(f, names, top=False):
    def operand(g):
        text = _render(g, names)
        if isinstance(g, (fol.Atom, fol.Eq)):
            return text
        return "(" + text + ")"

    if isinstance(f, fol.Atom):
        if not f.args:
            return f.pred
        return f.pred + " " + ",".join(_render_term(a, names) for a in f.args)
    if isinstance(f, fol.Eq):
        return _render_term(f.left, names) + " = " + _render_term(f.right, names)
    if isinstance(f, fol.Not):
        body = f.body
        if isinstance(body, (fol.Atom, fol.Eq)):
            return "not " + _render(body, names)
        return "not (" + _render(body, names) + ")"
    if isinstance(f, (fol.And, fol.Or)):
        word = " & " if isinstance(f, fol.And) else " or "
        parts = fol.flatten(f, type(f))
        return word.join(operand(p) for p in parts)
    if isinstance(f, fol.Implies):
        return operand(f.left) + " implies " + operand(f.right)
    if isinstance(f, fol.Iff):
        return operand(f.left) + " iff " + operand(f.right)
    if isinstance(f, (fol.Forall, fol.Exists)):
        kind = type(f)
        variables = []
        body = f
        while isinstance(body, kind):
            variables.append(names.get(body.var, body.var))
            body = body.body
        joint = ",".join(variables)
        inner = _render(body, names)
        if not isinstance(body, (fol.Atom, fol.Eq)):
            inner = "(" + inner + ")"
        if isinstance(f, fol.Forall):
            return "for " + joint + " holds " + inner
        return "ex " + joint + " st " + inner
    if isinstance(f, fol.Verum):
        return "not contradiction"
    return "contradiction"


def _display_form(f):
    """Strip the universal closure and rename variables to X1, X2, ...

    Returns (rendered matrix formula text, original-name comment or None).
    """
    closed = fol.universal_closure(f)
    prefix, matrix = fol.strip_universal_prefix(closed)
    names = {}
    for v in prefix:
        names[v] = f"X{len(names) + 1}"

    def note_bound(g):
        if isinstance(g, (fol.Forall, fol.Exists)):
            if g.var not in names:
                names[g.var] = f"X{len(names) + 1}"
            note_bound(g.body)
        elif isinstance(g, fol.Not):
            note_bound(g.body)
        elif isinstance(g, (fol.And, fol.Or, fol.Implies, fol.Iff)):
            note_bound(g.left)
            note_bound(g.right)

    note_bound(matrix)
    text = _render(matrix, names, top=True)
    renamed = [(old, new) for old, new in names.items() if old != new]
    comment = None
    if renamed:
        comment = ":: " + ", ".join(f"{new} <- {old}" for old, new in renamed)
    return text, comment


def _subproof_lines(item, indent):
    pad = " " * indent
    lines = []
    sub = item.subproof
    # the statement's variable renaming must also apply inside the proof
    closed = fol.universal_closure(item.formula)
    prefix, _ = fol.strip_universal_prefix(closed)
    names = {v: f"X{i + 1}" for i, v in enumerate(prefix)}
    lines.append(pad + "proof")
    thus_refs = []
    instantiated = set()
    for step in sub.instances:
        ref = item.refs[step.parent_index] if step.parent_index < len(item.refs) else "?"
        lines.append(
            pad + "  " + step.label + ": " + _render(step.formula, names) + " by " + ref + ";"
        )
        thus_refs.append(step.label)
        instantiated.add(step.parent_index)
    for i, ref in enumerate(item.refs):
        if i not in instantiated:
            thus_refs.append(ref)
    lines.append(pad + "  thus thesis by " + ",".join(thus_refs) + ";")
    lines.append(pad + "end;")
    return lines


def _item_lines(item, indent=0):
    pad = " " * indent
    text, comment = _display_form(item.formula)
    lines = []
    if comment:
        lines.append(pad + comment)
    if item.subproof is None:
        by = " by " + ",".join(item.refs) + ";" if item.refs else ";"
        lines.append(pad + item.label + ": " + text + by)
    else:
        lines.append(pad + item.label + ": " + text)
        lines.extend(_subproof_lines(item, indent))
    return lines


def render_article(model) -> str:
    out = []
    if model.reservations:
        out.append("reserve " + ",".join(model.reservations) + ";")
        out.append("")
    for item in model.axiom_items:
        out.extend(_item_lines(item))
        out.append("")
    for item in model.lemma_items:
        out.extend(_item_lines(item))
        out.append("")
    if model.theorem is None:
        return "\n".join(out).rstrip("\n") + "\n"
    theorem_text, theorem_comment = _display_form(model.theorem)
    if model.pending:
        if theorem_comment:
            out.append(theorem_comment)
        out.append("theorem")
        out.append(theorem_text + ";")
        out.append("::> pending proof")
        return "\n".join(out) + "\n"
    if theorem_comment:
        out.append(theorem_comment)
    out.append("theorem")
    out.append(theorem_text)
    out.append("proof")
    out.append("  now")
    assume_text, assume_comment = _display_form(model.diffuse.assumption)
    if assume_comment:
        out.append("    " + assume_comment)
    out.append(
        "    assume " + model.diffuse.assumption_label + ": " + assume_text + ";"
    )
    for item in model.diffuse.inner_steps:
        out.extend(_item_lines(item, indent=4))
    out.append(
        "    thus contradiction by "
        + ",".join(model.diffuse.contradiction_refs)
        + ";"
    )
    out.append("  end;")
    out.append("  hence thesis;")
    out.append("end;")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Environment manifest text


def render_manifest(m: EnvironmentManifest) -> str:
    lines = []
    for name, arity in m.functions:
        lines.append(f"func {tptp.quote_atom(name)} {arity}")
    for name, arity in m.predicates:
        lines.append(f"pred {tptp.quote_atom(name)} {arity}")
    for i, f in enumerate(m.axioms, start=1):
        lines.append(f"axiom {i}: {tptp.format_formula(f)}")
    for n, f in enumerate(m.skolem_defs, start=1):
        lines.append(f"skolemdef {n}: {tptp.format_formula(f)}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_manifest(text: str) -> EnvironmentManifest:
    functions, predicates, axioms, skolem_defs = [], [], [], []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        kind, rest = line.split(" ", 1)
        if kind in ("func", "pred"):
            name, arity = rest.rsplit(" ", 1)
            if name.startswith("'"):
                name = name[1:-1].replace("\\'", "'").replace("\\\\", "\\")
            entry = (name, int(arity))
            (functions if kind == "func" else predicates).append(entry)
        elif kind in ("axiom", "skolemdef"):
            _, formula_text = rest.split(":", 1)
            unit = tptp.parse_problem(f"fof(m,axiom,{formula_text.strip()}).")[0]
            (axioms if kind == "axiom" else skolem_defs).append(unit.formula)
        else:
            raise ValueError(f"unrecognized manifest line: {line!r}")
    return EnvironmentManifest(functions, predicates, axioms, skolem_defs)


# ---------------------------------------------------------------------------
# Article scanner: referential integrity of our own concrete syntax

import re as _re

_ITEM_RE = _re.compile(r"^(?:assume )?(Ax\d+|S\d+|[A-Z]{1,2}\d*):")
_BY_RE = _re.compile(r"by ([^;]+);")


def scan_article(text):
    """(label, refs) pairs in order of appearance, honoring proof scopes."""
    results = []
    scopes = [set()]
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("::") or not line:
            continue
        if line == "proof" or line.startswith("now"):
            scopes.append(set())
            continue
        if line.startswith("end;"):
            scopes.pop()
            continue
        label = None
        m = _ITEM_RE.match(line)
        if m:
            label = m.group(1)
        refs = ()
        b = _BY_RE.search(line)
        if b:
            refs = tuple(r.strip() for r in b.group(1).split(","))
        if label or refs:
            results.append((label, refs, tuple(frozenset(s) for s in scopes)))
        if label:
            scopes[-1].add(label)
    return results


def check_references(article_text, manifest: EnvironmentManifest):
    """Every citation resolves to an earlier label or a manifest external."""
    problems = []
    axiom_count = len(manifest.axioms)
    skolem_count = len(manifest.skolem_defs)
    for label, refs, scopes in scan_article(article_text):
        visible = set().union(*scopes) if scopes else set()
        for ref in refs:
            if ref.startswith("AXIOMS:"):
                if not (1 <= int(ref.split(":")[1]) <= axiom_count):
                    problems.append((label, ref))
            elif ref.startswith("SKOLEM:def "):
                if not (1 <= int(ref.split("def ")[1]) <= skolem_count):
                    problems.append((label, ref))
            elif ref not in visible:
                problems.append((label, ref))
    return problems
