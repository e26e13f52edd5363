import pytest

from tptp2miz import expand, fol, obvious, tptp
from tptp2miz.errors import ExpansionFailed
from tptp2miz.obvious import ObviousnessQuery


def F(text):
    return tptp.parse_problem(f"fof(x,axiom,{text}).")[0].formula


def verify_subproof(sp, parent_formulas):
    """Postcondition: the conclusion is obvious from the chosen instances
    plus the ground parents, with the sub-proof's variables fixed."""
    ground = [
        p for p in parent_formulas
        if not fol.strip_universal_prefix(fol.universal_closure(p))[0]
    ]
    premises = ground + [s.formula for s in sp.instances]
    q = ObviousnessQuery.make(
        premises, sp.conclusion, fixed_vars=sp.fixed_variables
    )
    assert obvious.is_obvious(q).is_obvious


class TestResolutionExample:
    def test_formula_level_step_expands(self):
        p1 = F("![X]:(~l(X)|d(X))")
        p2 = F("![X]:![Y]:(~l(X)|~d(X)|~d(Y))")
        conclusion = F("~l(X)|~d(Y)")
        sp = expand.build_subproof("s", conclusion, [p1, p2])
        assert sp.fixed_variables == ("X", "Y")
        assert [s.label for s in sp.instances] == ["A", "B"]
        assert [s.parent_index for s in sp.instances] == [0, 1]
        # instance of premise 1 at the fixed X
        assert fol.debruijn(sp.instances[0].formula) == fol.debruijn(
            F("~l(X)|d(X)")
        )
        verify_subproof(sp, [p1, p2])


class TestInstanceSelection:
    def test_ground_parents_need_no_instances(self):
        sp = expand.build_subproof(
            "s", F("q(c)"), [F("p(c)"), F("![X]:(p(X)=>q(X))")]
        )
        assert [s.parent_index for s in sp.instances] == [1]
        verify_subproof(sp, [F("p(c)"), F("![X]:(p(X)=>q(X))")])

    def test_hint_is_respected(self):
        parent = F("![X]:(p(X)=>q(X))")
        sp = expand.build_subproof(
            "s", F("q(c)"), [parent, F("p(c)")], hint={"X": fol.App("c")}
        )
        inst = sp.instances[0].formula
        assert fol.debruijn(inst) == fol.debruijn(F("p(c)=>q(c)"))

    def test_duplicated_parent_when_one_instance_is_not_enough(self):
        parent = F("![X]:(p(X)=>p(f(X)))")
        sp = expand.build_subproof(
            "s", F("p(f(f(c)))"), [parent, F("p(c)")]
        )
        indexes = [s.parent_index for s in sp.instances]
        assert indexes.count(0) == 2
        forms = {fol.debruijn(s.formula) for s in sp.instances}
        assert fol.debruijn(F("p(c)=>p(f(c))")) in forms
        assert fol.debruijn(F("p(f(c))=>p(f(f(c)))")) in forms
        verify_subproof(sp, [parent, F("p(c)")])


class TestFailure:
    def test_non_consequence_fails(self):
        with pytest.raises(ExpansionFailed) as info:
            expand.build_subproof("bad_step", F("q(c)"), [F("p(c)")])
        assert info.value.step_name == "bad_step"

    def test_instances_outside_term_universe_fail(self):
        # the needed witness term appears nowhere in the step's formulas
        with pytest.raises(ExpansionFailed):
            expand.build_subproof(
                "s", F("$false"), [F("![X]:~p(X)"), F("?[Y]:p(g(Y))")]
            )


class TestRecordBindings:
    def test_bindings_extracted(self):
        unit = tptp.parse_problem(
            "cnf(c, plain, p(c), inference(spm,[status(thm)],"
            "[c1 : [bind(X2, $fot(b))]]))."
        )[0]
        hint = expand.substitution_from_inference_record(unit.source)
        assert hint == {"X2": fol.App("b")}

    def test_non_inference_source_gives_empty(self):
        assert expand.substitution_from_inference_record(None) == {}
        assert (
            expand.substitution_from_inference_record(tptp.FileSource("x")) == {}
        )
