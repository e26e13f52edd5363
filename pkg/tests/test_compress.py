import os

from tptp2miz import article, compress, derivation, fol, obvious, tptp

import helpers
from conftest import FIXTURES


def F(text):
    return tptp.parse_problem(f"fof(x,axiom,{text}).")[0].formula


def fixture_article():
    units = tptp.parse_derivation_file(os.path.join(FIXTURES, "puz001+1.out"))
    graph = derivation.build_graph(units)
    return article.build_article(graph)


def recheck(model, manifest):
    """Obviousness + referential integrity over the whole article."""
    assert article.check_references(article.render_article(model), manifest) == []
    index = compress._formula_index(model, manifest)
    for item in model.all_steps():
        if item.subproof is not None:
            continue
        premises = [index[r] for r in item.refs if r in index]
        q = obvious.ObviousnessQuery.make(premises, item.formula)
        assert obvious.is_obvious(q).is_obvious, item.label
    if model.diffuse.contradiction_refs:
        premises = [
            index[r] for r in model.diffuse.contradiction_refs if r in index
        ]
        q = obvious.ObviousnessQuery.make(premises, fol.FALSE)
        assert obvious.is_obvious(q).is_obvious


class TestChainExample:
    def build(self):
        # phi'' --(conjunction elim)--> phi' --(restatement)--> phi
        conj = F("p(c) & q(c)")
        phi = F("q(c)")
        axiom = article.Item("Ax1", conj, ("AXIOMS:1",))
        s1 = article.Item("S1", phi, ("Ax1",))
        s2 = article.Item("S2", phi, ("S1",))
        diffuse = article.DiffuseBlock("S3", fol.Not(phi), [], ("S2", "S3"))
        model = article.ArticleModel((), [axiom], [s1, s2], phi, diffuse)
        manifest = article.EnvironmentManifest(
            [("c", 0)], [("p", 1), ("q", 1)], [conj], []
        )
        return model, manifest

    def test_chain_collapses_to_direct_citation(self):
        model, manifest = self.build()
        out, report = compress.compress(model, manifest)
        assert out.lemma_items == []
        assert out.diffuse.contradiction_refs == ("Ax1", "S1")
        assert report.steps_before == 2
        assert report.steps_after == 0
        recheck(out, manifest)


class TestFixtureCompression:
    def test_compresses_and_revalidates(self):
        model, manifest = fixture_article()
        before = len(model.all_steps())
        out, report = compress.compress(model, manifest)
        assert report.steps_before == before
        assert report.steps_after == len(out.all_steps())
        assert report.steps_after <= before
        assert report.passes <= before + 1
        recheck(out, manifest)

    def test_idempotent(self):
        model, manifest = fixture_article()
        once, report1 = compress.compress(model, manifest)
        twice, report2 = compress.compress(once, manifest)
        assert report2.removed_labels == []
        assert article.render_article(once) == article.render_article(twice)

    def test_theorem_axioms_and_formulas_preserved(self):
        model, manifest = fixture_article()
        out, _ = compress.compress(model, manifest)
        assert out.theorem == model.theorem
        assert [i.formula for i in out.axiom_items] == [
            i.formula for i in model.axiom_items
        ]
        surviving = {fol.debruijn(i.formula) for i in out.all_steps()}
        original = {fol.debruijn(i.formula) for i in model.all_steps()}
        assert surviving <= original

    def test_max_passes_limits_work(self):
        model, manifest = fixture_article()
        out, report = compress.compress(model, manifest, max_passes=1)
        assert report.passes == 1
        recheck(out, manifest)


class TestRandomArticles:
    def test_fixed_point_properties(self):
        failures = []
        for seed in range(30):
            rng = helpers.make_rng(seed)
            model, manifest = helpers.random_article(rng)
            before = len(model.all_steps())
            out, report = compress.compress(model, manifest)
            assert report.passes <= before + 1
            again, report2 = compress.compress(out, manifest)
            if report2.removed_labels:
                failures.append(seed)
            recheck(out, manifest)
        assert failures == []
