from __future__ import annotations

import pytest

from lccsketch import theories as T
from lccsketch.dsl import build_algebra
from lccsketch.errors import GuardrailExceeded
from lccsketch.fincat import FinCategory, Functor, check_functor, enumerate_functors
from lccsketch.lex import (
    derive_lex_algebra,
    find_lex_choice,
    has_terminal,
    is_finitely_complete,
    lex_signature,
    terminal_choices,
)
from lccsketch.sigalg import (
    Evaluator,
    OpObj,
    TId,
    check_equations,
    derived_ops,
    extend_algebra,
    satisfies,
    stage,
    stage_inclusion,
    validate_algebra,
)


@pytest.fixture(scope="module")
def lex():
    return lex_signature()


def test_signature_shape(lex):
    sig, eqs = lex
    assert sorted(sig.names) == ["arr", "gap", "pb", "trm"]
    arities = dict(eqs.arities())
    assert "EMPTY" in arities and not arities["EMPTY"].objects
    assert len(sig.op("arr").arity.objects) == 1
    assert check_equations(sig, eqs) == []


def test_codomain_equation_targets_the_terminal(lex):
    _, eqs = lex
    (f_cod,) = [e for e in eqs.equations if e.name == "t/eq/f-cod"]
    assert f_cod.rhs == TId(OpObj("trm", "T", ()))
    assert stage(f_cod.lhs) == 1


def test_groupoid_variant_adds_naturality(lex):
    _, eqs = lex
    _, grpd = lex_signature("grpd")
    extra = {e.name for e in grpd.equations} - {e.name for e in eqs.equations}
    assert extra == {"t/eq/f-nat"}


def test_one_object_category_satisfies(lex):
    sig, eqs = lex
    alg = derive_lex_algebra(FinCategory.terminal())
    assert alg is not None
    assert satisfies(alg, eqs).ok


def test_divisor_lattice(lex):
    sig, eqs = lex
    alg = build_algebra(sig, T.divisor12_algebra())
    env = Functor(FinCategory.empty(), alg.carrier, {}, {})
    assert Evaluator(alg, env).value(OpObj("trm", "T", ())) == "12"
    report = satisfies(alg, eqs)
    assert report.ok and report.environments > 0
    assert validate_algebra(alg) == []


def test_discrete_pair_fails_at_the_codomain_equation(lex):
    sig, eqs = lex
    alg = build_algebra(sig, T.discrete2_algebra())
    assert validate_algebra(alg) == []
    report = satisfies(alg, eqs)
    assert {(f.equation, f.arity) for f in report.failures} == {("t/eq/f-cod", "ARROW")}
    assert not is_finitely_complete(alg.carrier)


def test_first_failure_only_stops_early(lex):
    sig, eqs = lex
    alg = build_algebra(sig, T.discrete2_algebra())
    assert len(satisfies(alg, eqs, first_failure_only=True).failures) == 1


def test_validation_guardrail(lex):
    sig, _ = lex
    alg = build_algebra(sig, T.divisor12_algebra())
    with pytest.raises(GuardrailExceeded):
        validate_algebra(alg, max_checks=10)


def test_groupoid_enrichment_on_divisors():
    _, grpd = lex_signature("grpd")
    alg = derive_lex_algebra(T.divisor_poset(12), "grpd")
    assert satisfies(alg, grpd).ok


def test_stage_one_over_a_point(lex):
    sig, _ = lex
    c = FinCategory.discrete(["x"])
    s0, s1 = derived_ops(sig, c, 0), derived_ops(sig, c, 1)
    assert len(s0.category.objects) == 1
    # var(x); trm: 1; arr: 2 objects of ARR; pb: 4 of C; gap: 5 of D
    assert len(s1.category.objects) == 1 + 1 + 2 + 4 + 5
    inc = stage_inclusion(s0, s1)
    assert len(set(inc.obj_map.values())) == len(inc.obj_map)
    assert len(set(inc.mor_map.values())) == len(inc.mor_map)


def test_derived_operations_extend_to_a_functor(lex):
    sig, _ = lex
    carrier = T.divisor_poset(6)
    alg = derive_lex_algebra(carrier)
    c = FinCategory.discrete(["x"])
    ops = derived_ops(sig, c, 1)
    for env in enumerate_functors(c, carrier):
        F = extend_algebra(alg, ops, env)
        check_functor(F)
        assert F.obj("var(x)") == env.obj("x")


def test_negative_stage_rejected(lex):
    sig, _ = lex
    with pytest.raises(ValueError):
        derived_ops(sig, FinCategory.discrete(["x"]), -1)


def test_terminal_choices_on_a_chain():
    chain = T.divisor_poset(4)
    options = list(terminal_choices(chain))
    assert [t for t, _ in options] == ["4"]
    assert has_terminal(chain)
    choice = find_lex_choice(chain)
    assert choice.terminal == "4"


def test_no_terminal_means_no_algebra():
    two = FinCategory.discrete(["a", "b"])
    assert not has_terminal(two)
    assert find_lex_choice(two) is None
    assert derive_lex_algebra(two) is None
