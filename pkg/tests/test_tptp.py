import os

import pytest
from hypothesis import given, settings, strategies as st

from tptp2miz import fol, tptp
from tptp2miz.errors import (
    IncludeNotFound,
    TptpSyntaxError,
    UnsupportedLanguage,
)

import helpers
from conftest import FIXTURES


def parse1(text):
    units = tptp.parse_problem(text)
    assert len(units) == 1
    return units[0]


class TestFofParsing:
    def test_simple_axiom(self):
        u = parse1("fof(a1, axiom, p(c)).")
        assert u.name == "a1"
        assert u.role == "axiom"
        assert u.formula == fol.Atom("p", (fol.App("c"),))

    def test_quantifiers_and_connectives(self):
        u = parse1("fof(a, axiom, ![X]: (p(X) => ? [Y] : r(X,Y))).")
        f = u.formula
        assert isinstance(f, fol.Forall)
        assert isinstance(f.body, fol.Implies)
        assert isinstance(f.body.right, fol.Exists)

    def test_equality_and_inequality(self):
        u = parse1("fof(a, axiom, a = b & c != d).")
        left, right = u.formula.left, u.formula.right
        assert isinstance(left, fol.Eq)
        assert isinstance(right, fol.Not) and isinstance(right.body, fol.Eq)

    def test_reverse_implication_swaps(self):
        u = parse1("fof(a, axiom, p(c) <= q(c)).")
        assert u.formula == fol.Implies(
            fol.Atom("q", (fol.App("c"),)), fol.Atom("p", (fol.App("c"),))
        )

    def test_xor_desugars(self):
        u = parse1("fof(a, axiom, p(c) <~> q(c)).")
        assert isinstance(u.formula, fol.Not)
        assert isinstance(u.formula.body, fol.Iff)

    def test_mixed_binary_needs_parens(self):
        with pytest.raises(TptpSyntaxError):
            parse1("fof(a, axiom, p(c) & q(c) | r(c,c)).")

    def test_dollar_constants(self):
        assert parse1("fof(a, axiom, $true).").formula is fol.TRUE
        assert parse1("fof(a, axiom, $false).").formula is fol.FALSE

    def test_quoted_atoms(self):
        u = parse1("fof(a, axiom, p('strange name')).")
        assert u.formula.args[0].name == "strange name"

    def test_comments_ignored(self):
        units = tptp.parse_problem(
            "% leading\nfof(a, axiom, p(c)). /* block */ # hash\nfof(b, axiom, q(c))."
        )
        assert [u.name for u in units] == ["a", "b"]


class TestCnfParsing:
    def test_clause(self):
        u = parse1("cnf(c1, plain, (p(X) | ~q(X))).")
        assert u.language == "cnf"
        assert u.clause is not None
        assert len(u.clause.literals) == 2

    def test_clause_without_parens(self):
        u = parse1("cnf(c1, plain, ~p(X)).")
        assert len(u.clause.literals) == 1
        assert not u.clause.literals[0].positive


class TestErrors:
    def test_syntax_error_has_position(self):
        with pytest.raises(TptpSyntaxError) as info:
            tptp.parse_problem("fof(a, axiom, p(c)")
        assert info.value.line == 1
        assert info.value.column > 0

    def test_unsupported_language(self):
        with pytest.raises(UnsupportedLanguage):
            tptp.parse_problem("tff(a, type, p: $i > $o).")

    def test_unknown_role(self):
        with pytest.raises(TptpSyntaxError):
            tptp.parse_problem("fof(a, mystery, p(c)).")

    def test_include_not_found(self):
        with pytest.raises(IncludeNotFound):
            tptp.parse_problem("include('NoSuch/file.ax').", base_dir="/tmp")


class TestIncludes:
    def test_include_resolved_from_base_dir(self, tmp_path):
        (tmp_path / "extra.ax").write_text("fof(ax1, axiom, p(c)).\n")
        units = tptp.parse_problem("include('extra.ax').", base_dir=str(tmp_path))
        assert [u.name for u in units] == ["ax1"]

    def test_include_name_filter(self, tmp_path):
        (tmp_path / "extra.ax").write_text(
            "fof(ax1, axiom, p(c)).\nfof(ax2, axiom, q(c)).\n"
        )
        units = tptp.parse_problem(
            "include('extra.ax', [ax2]).", base_dir=str(tmp_path)
        )
        assert [u.name for u in units] == ["ax2"]

    def test_tptp_env_var(self, tmp_path, monkeypatch):
        (tmp_path / "Axioms").mkdir()
        (tmp_path / "Axioms" / "x.ax").write_text("fof(ax1, axiom, p(c)).\n")
        monkeypatch.setenv("TPTP", str(tmp_path))
        units = tptp.parse_problem("include('Axioms/x.ax').", base_dir="/nowhere")
        assert [u.name for u in units] == ["ax1"]


class TestSources:
    def test_file_source(self):
        u = parse1("fof(a, axiom, p(c), file('Problems/X.p', orig)).")
        assert isinstance(u.source, tptp.FileSource)
        assert u.source.origin == "orig"
        assert u.source.path == "Problems/X.p"

    def test_inference_record(self):
        u = parse1(
            "cnf(c2, plain, p(c), inference(resolution,[status(thm)],[c_0_1, c_0_9]))."
        )
        assert isinstance(u.source, tptp.InferenceRecord)
        assert u.source.rule == "resolution"
        assert u.source.parents == ("c_0_1", "c_0_9")
        assert u.source.status == "thm"

    def test_nested_inference_flattened_to_leaves(self):
        u = parse1(
            "cnf(c, plain, p(c), inference(fof_nnf,[status(thm)],"
            "[inference(variable_rename,[status(thm)],[c_0_2]), theory(equality)]))."
        )
        assert u.source.rule == "fof_nnf"
        assert u.source.parents == ("c_0_2",)

    def test_bindings_parsed(self):
        u = parse1(
            "cnf(c, plain, p(c), inference(spm,[status(thm)],"
            "[c_0_1 : [bind(X1, $fot(f(a)))]]))."
        )
        assert u.source.parents == ("c_0_1",)
        assert dict(u.source.bindings)["X1"] == fol.App("f", (fol.App("a"),))

    def test_unknown_source_warns_not_fails(self):
        with pytest.warns(tptp.TptpWarning):
            u = parse1("fof(a, axiom, p(c), creator(esoteric)).")
        assert isinstance(u.source, tptp.UnknownSource)


def roundtrip(units):
    return tptp.parse_derivation(tptp.serialize(units))


class TestRoundTrip:
    def test_problem_fixture(self):
        path = os.path.join(FIXTURES, "puz001+1.p")
        units = tptp.parse_problem_file(path)
        assert len(units) == 11
        assert roundtrip(units) == units

    def test_derivation_fixture(self):
        path = os.path.join(FIXTURES, "puz001+1.out")
        units = tptp.parse_derivation_file(path)
        assert len(units) == 42
        again = roundtrip(units)
        # nested inference terms flatten on first parse; a second parse of
        # the serialized form must then be a fixed point
        assert roundtrip(again) == again

    @given(st.integers(0, 10_000))
    @settings(max_examples=80, deadline=None)
    def test_random_formulas(self, seed):
        rng = helpers.make_rng(seed)
        units = [
            tptp.AnnotatedFormula(
                f"u{i}", "fof", "axiom", helpers.random_formula(rng, ["X"])
            )
            for i in range(rng.randint(1, 4))
        ]
        # serialization flattens &/| chains, so re-parsing normalizes
        # associativity; compare modulo that normal form
        def chain_norm(f, env=(), depth=0):
            env = dict(env)
            if isinstance(f, (fol.And, fol.Or)):
                parts = fol.flatten(f, type(f))
                return (
                    type(f).__name__,
                    tuple(chain_norm(p, tuple(env.items()), depth) for p in parts),
                )
            if isinstance(f, fol.Not):
                return ("not", chain_norm(f.body, tuple(env.items()), depth))
            if isinstance(f, (fol.Implies, fol.Iff)):
                return (
                    type(f).__name__,
                    chain_norm(f.left, tuple(env.items()), depth),
                    chain_norm(f.right, tuple(env.items()), depth),
                )
            if isinstance(f, (fol.Forall, fol.Exists)):
                env[f.var] = depth
                return (
                    type(f).__name__,
                    chain_norm(f.body, tuple(env.items()), depth + 1),
                )
            return fol.debruijn(f, env)

        first = roundtrip(units)
        assert roundtrip(first) == first
        for u, v in zip(units, first):
            assert chain_norm(u.formula) == chain_norm(v.formula)


class TestQuoting:
    def test_needs_quotes(self):
        assert tptp.quote_atom("strange name") == "'strange name'"
        assert tptp.quote_atom("plain_atom") == "plain_atom"

    def test_quoted_roundtrip(self):
        u = parse1("fof(a, axiom, p('it''s tricky')).") if False else None
        # escape style in TPTP uses backslash
        v = parse1(r"fof(a, axiom, p('a\'b')).")
        assert v.formula.args[0].name == "a'b"
        again = tptp.parse_problem(tptp.serialize([v]))
        assert again == [v]
