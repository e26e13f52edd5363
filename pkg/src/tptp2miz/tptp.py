"""TPTP problem and TSTP derivation parsing and serialization (fof/cnf only)."""

from __future__ import annotations

import os
import re
import warnings
from dataclasses import dataclass, field
from typing import Optional

from . import fol
from .errors import IncludeNotFound, IoError, TptpSyntaxError, UnsupportedLanguage


class TptpWarning(UserWarning):
    pass


ROLES = {
    "axiom",
    "hypothesis",
    "definition",
    "conjecture",
    "negated_conjecture",
    "plain",
    "lemma",
    "derived",
}

# Rules that may legitimately have no parents (introductions).
INTRODUCTION_RULES = {"introduced", "assumption", "definition", "axiom_of_choice"}


@dataclass(frozen=True)
class FileSource:
    origin: str
    path: str = "unknown"


@dataclass(frozen=True)
class UnknownSource:
    text: str = ""


@dataclass(frozen=True)
class InferenceRecord:
    rule: str
    parents: tuple
    status: Optional[str] = None
    bindings: tuple = ()  # ((var, Term), ...) when the record carries bind() info


Source = None  # FileSource | InferenceRecord | UnknownSource | None


@dataclass(frozen=True)
class AnnotatedFormula:
    name: str
    language: str  # "fof" | "cnf"
    role: str
    formula: "fol.Formula"
    source: object = None
    clause: Optional["fol.Clause"] = None


# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*|\#[^\n]*|/\*.*?\*/)
  | (?P<quoted>'(?:[^'\\]|\\.)*')
  | (?P<dollar>\$[a-z][a-zA-Z0-9_]*)
  | (?P<lower>[a-z][a-zA-Z0-9_]*)
  | (?P<upper>[A-Z][a-zA-Z0-9_]*)
  | (?P<number>[+-]?\d+(?:\.\d+)?)
  | (?P<op><=>|<~>|=>|<=|!=|~\||~&|[!?~&|=:(),.\[\]<>*])
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass
class Token:
    kind: str
    value: str
    line: int
    column: int


def tokenize(text: str):
    pos = 0
    line = 1
    line_start = 0
    tokens = []
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise TptpSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        nl = value.count("\n")
        if nl:
            line += nl
            line_start = pos + value.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _unquote(s: str) -> str:
    return s[1:-1].replace("\\'", "'").replace("\\\\", "\\")


_LOWER_WORD = re.compile(r"[a-z][a-zA-Z0-9_]*$")


def quote_atom(name: str) -> str:
    if _LOWER_WORD.match(name):
        return name
    return "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def error(self, message, expected=()):
        tok = self.peek()
        raise TptpSyntaxError(message, tok.line, tok.column, expected)

    def expect(self, value):
        tok = self.peek()
        if tok.value != value or tok.kind == "eof":
            self.error(f"got {tok.value!r}", expected=(repr(value),))
        return self.next()

    def at(self, value) -> bool:
        tok = self.peek()
        return tok.kind != "eof" and tok.value == value

    # -- top level ----------------------------------------------------------

    def parse_units(self):
        """Yield ('unit', AnnotatedFormula) and ('include', path, names) items."""
        items = []
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.value == "include":
                items.append(self.parse_include())
            elif tok.value in ("fof", "cnf"):
                items.append(("unit", self.parse_unit()))
            elif tok.value in ("tff", "thf", "tcf", "tpi"):
                raise UnsupportedLanguage(tok.value, tok.line)
            else:
                self.error(f"got {tok.value!r}", expected=("'fof'", "'cnf'", "'include'"))
        return items

    def parse_include(self):
        self.expect("include")
        self.expect("(")
        tok = self.peek()
        if tok.kind != "quoted":
            self.error("include path must be quoted", expected=("quoted atom",))
        path = _unquote(self.next().value)
        names = None
        if self.at(","):
            self.next()
            self.expect("[")
            names = []
            while not self.at("]"):
                names.append(self.parse_name())
                if self.at(","):
                    self.next()
            self.expect("]")
        self.expect(")")
        self.expect(".")
        return ("include", path, names)

    def parse_name(self) -> str:
        tok = self.peek()
        if tok.kind in ("lower", "number"):
            return self.next().value
        if tok.kind == "quoted":
            return _unquote(self.next().value)
        self.error("expected a unit name", expected=("lower word", "quoted atom"))

    def parse_unit(self) -> AnnotatedFormula:
        lang = self.next().value
        self.expect("(")
        name = self.parse_name()
        self.expect(",")
        role_tok = self.peek()
        if role_tok.kind != "lower" or role_tok.value not in ROLES:
            self.error(
                f"unknown role {role_tok.value!r}",
                expected=tuple(sorted(ROLES)),
            )
        role = self.next().value
        self.expect(",")
        clause = None
        if lang == "fof":
            formula = self.parse_fof_formula()
        else:
            formula = self.parse_cnf_formula()
            clause = fol.clause_of_formula(formula)
        source = None
        if self.at(","):
            self.next()
            source = self.parse_source()
            if self.at(","):  # optional useful_info, discarded
                self.next()
                self.parse_annotation_term()
        self.expect(")")
        self.expect(".")
        return AnnotatedFormula(name, lang, role, formula, source, clause)

    # -- fof formulas -------------------------------------------------------

    _NONASSOC = {"=>", "<=", "<=>", "<~>", "~|", "~&"}

    def parse_fof_formula(self) -> "fol.Formula":
        left = self.parse_unitary()
        tok = self.peek()
        if tok.value in ("&", "|"):
            op = tok.value
            parts = [left]
            while self.at(op):
                self.next()
                parts.append(self.parse_unitary())
            if self.peek().value in ("&", "|") or self.peek().value in self._NONASSOC:
                self.error("binary connectives cannot be mixed without parentheses")
            node = fol.And if op == "&" else fol.Or
            out = parts[0]
            for p in parts[1:]:
                out = node(out, p)
            return out
        if tok.value in self._NONASSOC:
            op = self.next().value
            right = self.parse_unitary()
            nxt = self.peek()
            if nxt.value in ("&", "|") or nxt.value in self._NONASSOC:
                self.error("binary connectives are non-associative; add parentheses")
            if op == "=>":
                return fol.Implies(left, right)
            if op == "<=":
                return fol.Implies(right, left)
            if op == "<=>":
                return fol.Iff(left, right)
            if op == "<~>":
                return fol.Not(fol.Iff(left, right))
            if op == "~|":
                return fol.Not(fol.Or(left, right))
            return fol.Not(fol.And(left, right))
        return left

    def parse_unitary(self) -> "fol.Formula":
        tok = self.peek()
        if tok.value in ("!", "?"):
            quant = self.next().value
            self.expect("[")
            names = []
            while True:
                v = self.peek()
                if v.kind != "upper":
                    self.error("expected a variable", expected=("upper word",))
                names.append(self.next().value)
                if self.at(","):
                    self.next()
                else:
                    break
            self.expect("]")
            self.expect(":")
            body = self.parse_unitary()
            node = fol.Forall if quant == "!" else fol.Exists
            for v in reversed(names):
                body = node(v, body)
            return body
        if tok.value == "~":
            self.next()
            return fol.Not(self.parse_unitary())
        if tok.value == "(":
            self.next()
            inner = self.parse_fof_formula()
            self.expect(")")
            return inner
        return self.parse_atomic()

    def parse_atomic(self) -> "fol.Formula":
        tok = self.peek()
        if tok.kind == "dollar":
            self.next()
            if tok.value == "$true":
                return fol.TRUE
            if tok.value == "$false":
                return fol.FALSE
            self.error(f"unsupported defined symbol {tok.value!r}")
        term = self.parse_term()
        nxt = self.peek()
        if nxt.value == "=":
            self.next()
            return fol.Eq(term, self.parse_term())
        if nxt.value == "!=":
            self.next()
            return fol.Not(fol.Eq(term, self.parse_term()))
        if isinstance(term, fol.Var):
            self.error("a bare variable is not a formula")
        return fol.Atom(term.name, term.args)

    def parse_term(self) -> "fol.Term":
        tok = self.peek()
        if tok.kind == "upper":
            return fol.Var(self.next().value)
        if tok.kind in ("lower", "quoted", "number"):
            name = self.next().value
            if tok.kind == "quoted":
                name = _unquote(name)
            args = ()
            if self.at("("):
                self.next()
                got = [self.parse_term()]
                while self.at(","):
                    self.next()
                    got.append(self.parse_term())
                self.expect(")")
                args = tuple(got)
            return fol.App(name, args)
        self.error("expected a term", expected=("variable", "functor"))

    # -- cnf formulas -------------------------------------------------------

    def parse_cnf_formula(self) -> "fol.Formula":
        if self.at("("):
            self.next()
            inner = self._parse_disjunction()
            self.expect(")")
            return inner
        return self._parse_disjunction()

    def _parse_disjunction(self) -> "fol.Formula":
        parts = [self._parse_cnf_literal()]
        while self.at("|"):
            self.next()
            parts.append(self._parse_cnf_literal())
        if len(parts) == 1:
            return parts[0]
        return fol.big_or(parts)

    def _parse_cnf_literal(self) -> "fol.Formula":
        if self.at("~"):
            self.next()
            return fol.Not(self._parse_cnf_literal())
        return self.parse_atomic()

    # -- sources ------------------------------------------------------------

    def parse_source(self):
        start = self.i
        try:
            term = self.parse_annotation_term()
        except TptpSyntaxError:
            raise
        source = _interpret_source(term)
        if isinstance(source, UnknownSource):
            warnings.warn(
                f"unrecognized source annotation {term!r}; treating as unknown",
                TptpWarning,
                stacklevel=4,
            )
        return source

    def parse_annotation_term(self):
        """Parse a general annotation term into nested python structures."""
        tok = self.peek()
        if tok.value == "[":
            self.next()
            items = []
            while not self.at("]"):
                items.append(self.parse_annotation_term())
                if self.at(","):
                    self.next()
            self.expect("]")
            return items
        if tok.kind in ("lower", "quoted", "dollar", "number", "upper"):
            name = self.next().value
            if tok.kind == "quoted":
                name = _unquote(name)
            if self.at("("):
                self.next()
                args = []
                while not self.at(")"):
                    args.append(self.parse_annotation_term())
                    if self.at(","):
                        self.next()
                self.expect(")")
                out = (name, args)
            else:
                out = name
            if self.at(":"):  # parent annotation, e.g. name : [bind(...)]
                self.next()
                return (":", [out, self.parse_annotation_term()])
            return out
        self.error("expected an annotation term")


def _interpret_source(term):
    if isinstance(term, str):
        if term == "unknown":
            return UnknownSource("unknown")
        return UnknownSource(repr(term))
    if isinstance(term, tuple):
        head, args = term
        if head == "file":
            if len(args) >= 2 and isinstance(args[1], str):
                path = args[0] if isinstance(args[0], str) else "unknown"
                return FileSource(args[1], path)
            if args and isinstance(args[0], str):
                return FileSource(args[0], args[0])
            return UnknownSource(repr(term))
        if head == "inference":
            return _interpret_inference(term)
    return UnknownSource(repr(term))


def _leaf_parents(items):
    names = []
    for item in items:
        if isinstance(item, str):
            names.append(item)
        elif isinstance(item, tuple):
            head, args = item
            if head == "inference" and len(args) == 3:
                names.extend(_leaf_parents(args[2]))
            elif head == ":" and args:
                names.extend(_leaf_parents(args[:1]))
            elif head == "file" and len(args) >= 2 and isinstance(args[1], str):
                names.append(args[1])
            # theory(equality) and similar non-name parents are dropped
        elif isinstance(item, list):
            names.extend(_leaf_parents(item))
    return names


def _interpret_inference(term):
    head, args = term
    if len(args) != 3 or not isinstance(args[0], str) or not isinstance(args[2], list):
        return UnknownSource(repr(term))
    rule = args[0]
    status = None
    bindings = []
    info = args[1] if isinstance(args[1], list) else [args[1]]
    for item in info:
        if isinstance(item, tuple):
            ihead, iargs = item
            if ihead == "status" and iargs and isinstance(iargs[0], str):
                status = iargs[0]
    for item in _collect_binds([info, args[2]]):
        bound = _interpret_binding(item[1])
        if bound is not None:
            bindings.append(bound)
        else:
            warnings.warn(
                f"malformed bind annotation {item!r}; ignoring",
                TptpWarning,
                stacklevel=5,
            )
    parents = tuple(_leaf_parents(args[2]))
    return InferenceRecord(rule, parents, status, tuple(bindings))


def _collect_binds(obj):
    found = []
    if isinstance(obj, list):
        for item in obj:
            found.extend(_collect_binds(item))
    elif isinstance(obj, tuple):
        head, args = obj
        if head == "bind" and len(args) == 2:
            found.append(obj)
        else:
            found.extend(_collect_binds(list(args)))
    return found


def _interpret_binding(args):
    var, value = args
    if not (isinstance(var, str) and var[:1].isupper()):
        return None
    if isinstance(value, tuple) and value[0] == "$fot" and len(value[1]) == 1:
        value = value[1][0]
    term = _annotation_to_term(value)
    if term is None:
        return None
    return (var, term)


def _annotation_to_term(value):
    if isinstance(value, str):
        if value[:1].isupper():
            return fol.Var(value)
        return fol.App(value, ())
    if isinstance(value, tuple):
        head, args = value
        sub = [_annotation_to_term(a) for a in args]
        if any(t is None for t in sub):
            return None
        return fol.App(head, tuple(sub))
    return None


# ---------------------------------------------------------------------------
# Public parse entry points


def _resolve_include(path, base_dir, include_dirs):
    searched = []
    dirs = []
    if base_dir:
        dirs.append(base_dir)
    dirs.extend(include_dirs)
    env = os.environ.get("TPTP")
    if env:
        dirs.append(env)
    for d in dirs:
        cand = os.path.join(d, path)
        searched.append(cand)
        if os.path.exists(cand):
            return cand
    if os.path.exists(path):
        return path
    searched.append(path)
    raise IncludeNotFound(path, searched)


def _parse(text, base_dir=None, include_dirs=()):
    units = []
    for item in _Parser(text).parse_units():
        if item[0] == "unit":
            units.append(item[1])
        else:
            _, path, names = item
            resolved = _resolve_include(path, base_dir, include_dirs)
            with open(resolved, "r", encoding="utf-8") as fh:
                sub = _parse(fh.read(), os.path.dirname(resolved), include_dirs)
            if names is not None:
                wanted = set(names)
                sub = [u for u in sub if u.name in wanted]
            units.extend(sub)
    return units


def parse_problem(text: str, base_dir=None, include_dirs=()) -> list:
    """Parse a TPTP problem (fof/cnf units, includes resolved)."""
    return _parse(text, base_dir, include_dirs)


def parse_derivation(text: str, base_dir=None, include_dirs=()) -> list:
    """Parse a TSTP derivation; identical grammar, sources interpreted."""
    return _parse(text, base_dir, include_dirs)


def _read_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise IoError(str(exc)) from exc


def parse_problem_file(path, include_dirs=()):
    text = _read_file(path)
    return parse_problem(text, os.path.dirname(os.path.abspath(path)), include_dirs)


def parse_derivation_file(path, include_dirs=()):
    text = _read_file(path)
    return parse_derivation(text, os.path.dirname(os.path.abspath(path)), include_dirs)


# ---------------------------------------------------------------------------
# Serialization


def format_term(t: "fol.Term") -> str:
    if isinstance(t, fol.Var):
        return t.name
    name = quote_atom(t.name)
    if not t.args:
        return name
    return name + "(" + ",".join(format_term(a) for a in t.args) + ")"


def format_formula(f: "fol.Formula") -> str:
    if isinstance(f, fol.Atom):
        name = quote_atom(f.pred)
        if not f.args:
            return name
        return name + "(" + ",".join(format_term(a) for a in f.args) + ")"
    if isinstance(f, fol.Eq):
        return f"{format_term(f.left)} = {format_term(f.right)}"
    if isinstance(f, fol.Not):
        if isinstance(f.body, fol.Eq):
            return f"{format_term(f.body.left)} != {format_term(f.body.right)}"
        return "~ " + _format_unitary(f.body)
    if isinstance(f, (fol.And, fol.Or)):
        op = " & " if isinstance(f, fol.And) else " | "
        parts = fol.flatten(f, type(f))
        return "(" + op.join(_format_unitary(p) for p in parts) + ")"
    if isinstance(f, fol.Implies):
        return f"({_format_unitary(f.left)} => {_format_unitary(f.right)})"
    if isinstance(f, fol.Iff):
        return f"({_format_unitary(f.left)} <=> {_format_unitary(f.right)})"
    if isinstance(f, (fol.Forall, fol.Exists)):
        node = type(f)
        mark = "!" if isinstance(f, fol.Forall) else "?"
        names = []
        while isinstance(f, node):
            names.append(f.var)
            f = f.body
        return f"{mark} [{','.join(names)}] : {_format_unitary(f)}"
    if isinstance(f, fol.Verum):
        return "$true"
    return "$false"


def _format_unitary(f) -> str:
    text = format_formula(f)
    if isinstance(f, (fol.And, fol.Or, fol.Implies, fol.Iff)):
        return text  # already parenthesized
    return text


def format_source(source) -> str:
    if isinstance(source, FileSource):
        return f"file({quote_atom(source.path)},{quote_atom(source.origin)})"
    if isinstance(source, InferenceRecord):
        info = []
        if source.status:
            info.append(f"status({source.status})")
        for var, term in source.bindings:
            info.append(f"bind({var},$fot({format_term(term)}))")
        parents = ",".join(quote_atom(p) for p in source.parents)
        return f"inference({quote_atom(source.rule)},[{','.join(info)}],[{parents}])"
    return "unknown"


def serialize(units) -> str:
    """Emit TPTP text re-parsable by parse_problem / parse_derivation."""
    lines = []
    for u in units:
        head = f"{u.language}({quote_atom(u.name)},{u.role},{format_formula(u.formula)}"
        if u.source is not None:
            head += "," + format_source(u.source)
        lines.append(head + ").")
    return "\n".join(lines) + ("\n" if lines else "")
