from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from lccsketch import theories as T
from lccsketch.errors import IllTyped
from lccsketch.finset import FinSetMor
from lccsketch.lexpr import (
    Bang,
    Comp,
    Gen,
    GenMor,
    Id,
    IHom,
    Interpretation,
    Pi,
    PiDisplay,
    PiTranspose,
    PiUntranspose,
    PbProj1,
    PbProj2,
    PbTuple,
    Poly,
    PolyMor,
    Pullback,
    Terminal,
    check_obj,
    eval_mor,
    eval_obj,
    ihom_terminal_iso,
    infer_boundary,
    norm_mor,
    same_obj,
)

EL, TY, EL_PI, TY_PI = Gen("EL"), Gen("TY"), Gen("EL_Pi"), Gen("TY_Pi")
El, pi, lam, El_Pi = GenMor("El"), GenMor("pi"), GenMor("lam"), GenMor("El_Pi")


@pytest.fixture
def base():
    return T.pi_base()


@pytest.fixture
def prop():
    return Interpretation(T.prop_universe_model())


@pytest.mark.parametrize("expr,size", [
    (Terminal(), 1),
    (EL, 1),
    (Pullback(El, pi), 2),
    (Pullback(El, El), 1),
    (Pi(El, Id(EL)), 2),
    (Poly(El, EL), 2),
    (Poly(El, TY), 3),
    (IHom(EL, TY), 2),
    (IHom(TY, EL), 1),
    (IHom(Terminal(), TY), 2),
])
def test_object_sizes_in_the_prop_universe(base, prop, expr, size):
    check_obj(base, expr)
    assert len(eval_obj(prop, expr)) == size


def test_composite_boundary(base):
    assert infer_boundary(base, Comp(El, lam)) == (EL_PI, TY)


def test_composite_in_the_wrong_order(base):
    with pytest.raises(IllTyped):
        infer_boundary(base, Comp(lam, El))


def test_pullback_needs_a_shared_codomain(base):
    with pytest.raises(IllTyped):
        check_obj(base, Pullback(El, lam))


def test_unknown_generator(base):
    with pytest.raises(IllTyped):
        check_obj(base, Gen("nope"))


def test_pullback_square_commutes(base, prop):
    P = Pullback(El, pi)
    left = eval_mor(prop, Comp(El, PbProj1(P)))
    right = eval_mor(prop, Comp(pi, PbProj2(P)))
    assert left == right


def test_tuple_into_the_pullback(base, prop):
    P = Pullback(El, pi)
    t = PbTuple(P, lam, El_Pi)
    dom, cod = infer_boundary(base, t)
    assert dom == EL_PI and same_obj(base, cod, P)
    m = eval_mor(prop, t)
    # the model's square is a pullback, so the gap map is a bijection
    assert m.is_bijective()


def test_lam_then_unlam_is_identity(base, prop):
    P = Pullback(pi, El)
    h = PbProj2(P)
    k = PiTranspose(Id(EL), h)
    assert infer_boundary(base, k) == (TY_PI, Pi(El, Id(EL)))
    back = PiUntranspose(pi, k)
    assert eval_mor(prop, back) == eval_mor(prop, h)


def test_display_of_lam_recovers_p(base, prop):
    k = PiTranspose(Id(EL), PbProj2(Pullback(pi, El)))
    assert eval_mor(prop, Comp(PiDisplay(El, Id(EL)), k)) == eval_mor(prop, pi)


def test_bang_is_unique(prop):
    b = eval_mor(prop, Bang(TY))
    assert len(b.cod) == 1 and len(b.dom) == 2


def test_identity_normalizes_away(base):
    assert norm_mor(base, Comp(Id(EL), El)) == norm_mor(base, El)
    assert norm_mor(base, Comp(El, lam)) == norm_mor(base, Comp(pi, El_Pi))


def test_ihom_from_terminal(prop):
    iso = ihom_terminal_iso(prop, EL)
    assert iso.is_bijective()
    assert iso != FinSetMor.identity(iso.dom)


def test_poly_mor_is_functorial(prop):
    a = eval_mor(prop, PolyMor(El, Comp(El, lam)))
    b = eval_mor(prop, Comp(PolyMor(El, El), PolyMor(El, lam)))
    assert a == b


GENS = [El, pi, lam, El_Pi]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(GENS), min_size=1, max_size=3))
def test_typed_composites_evaluate_like_functions(path):
    base = T.pi_base()
    prop = Interpretation(T.prop_universe_model())
    expr = path[0]
    ok = True
    for g in path[1:]:
        expr = Comp(g, expr)
    try:
        infer_boundary(base, expr)
    except IllTyped:
        ok = False
    chain = [base.dom(path[0].name)] + [base.cod(g.name) for g in path]
    composable = all(base.cod(a.name) == base.dom(b.name) for a, b in zip(path, path[1:]))
    assert ok == composable
    if ok:
        m = eval_mor(prop, expr)
        direct = prop.base.mor(path[0].name)
        for g in path[1:]:
            direct = direct.then(prop.base.mor(g.name))
        assert m == direct
        assert len(m.cod) == len(prop.base.obj(chain[-1]))
