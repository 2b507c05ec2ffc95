from __future__ import annotations

from itertools import product
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from lccsketch.errors import BoundaryMismatch, GuardrailExceeded, NotACone
from lccsketch.fincat import FinCategory, present
from lccsketch.finset import (
    DependentProduct,
    FinSetMor,
    FinSetObj,
    Fn,
    SetCone,
    SetFunctor,
    all_functions,
    exponential,
    function_space,
    is_limiting_set,
    limit,
    mediating,
    polynomial,
    polynomial_map,
    postcompose,
    precompose,
    product_cone,
    pullback,
)


def fmap(dom, cod, pairs: dict) -> FinSetMor:
    return FinSetMor.from_map(FinSetObj(dom), FinSetObj(cod), pairs.__getitem__)


@st.composite
def maps(draw, max_dom=3, max_cod=3, cod=None):
    c = cod if cod is not None else FinSetObj.range(draw(st.integers(1, max_cod)))
    d = FinSetObj.range(draw(st.integers(0, max_dom)))
    if not len(c):
        d = FinSetObj.range(0)
    images = tuple(draw(st.sampled_from(c.elements)) for _ in d.elements)
    return FinSetMor(d, c, images)


def test_product_of_two_and_three():
    cone = product_cone([FinSetObj.range(2), FinSetObj.range(3)])
    assert len(cone.apex) == 6
    assert is_limiting_set(cone, max_apex=2)


def test_fn_equality_ignores_order():
    assert Fn([(1, "a"), (0, "b")]) == Fn([(0, "b"), (1, "a")])
    assert Fn([(0, "b")])(0) == "b"


def test_kernel_pair_of_an_injection_is_the_diagonal():
    f = fmap([0, 1], [0, 1, 2], {0: 0, 1: 2})
    pb = pullback(f, f)
    assert len(pb.apex) == 2
    assert all(pb.legs["a"](e) == pb.legs["b"](e) for e in pb.apex.elements)


def test_kernel_pair_of_a_constant_map():
    f = fmap([0, 1, 2], ["*"], {0: "*", 1: "*", 2: "*"})
    assert len(pullback(f, f).apex) == 9


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_pullback_size(data):
    f = data.draw(maps())
    g = data.draw(maps(cod=f.cod))
    pb = pullback(f, g)
    assert len(pb.apex) == sum(len(f.fiber(z)) * len(g.fiber(z)) for z in f.cod.elements)
    assert is_limiting_set(pb)


def test_mediating_map_commutes():
    f = fmap([0, 1], ["z"], {0: "z", 1: "z"})
    pb = pullback(f, f)
    apex = FinSetObj(["w"])
    other = SetCone(pb.shape, pb.diagram, apex, {
        "a": fmap(["w"], [0, 1], {"w": 1}), "b": fmap(["w"], [0, 1], {"w": 0}), "c": fmap(["w"], ["z"], {"w": "z"})})
    m = mediating(other, pb)
    assert m.then(pb.legs["a"])("w") == 1
    assert m.then(pb.legs["b"])("w") == 0


def test_non_limit_cone_is_rejected_with_witness():
    f = fmap([0, 1], ["z"], {0: "z", 1: "z"})
    pb = pullback(f, f)
    half = FinSetObj(list(pb.apex.elements)[:2])
    legs = {i: FinSetMor(half, pb.diagram.obj(i), tuple(pb.legs[i](x) for x in half.elements)) for i in pb.legs}
    cert = is_limiting_set(SetCone(pb.shape, pb.diagram, half, legs))
    assert not cert
    assert cert.witness[1] == []


def test_constant_legs_and_missing_legs():
    f = fmap([0, 1], ["z"], {0: "z", 1: "z"})
    pb = pullback(f, f)
    legs = dict(pb.legs)
    legs["a"] = FinSetMor(pb.apex, FinSetObj([0, 1]), tuple(0 for _ in pb.apex.elements))
    legs["c"] = FinSetMor(pb.apex, FinSetObj(["z"]), tuple("z" for _ in pb.apex.elements))
    bad = SetCone(pb.shape, pb.diagram, pb.apex, {**legs, "b": FinSetMor(pb.apex, FinSetObj([0, 1]),
                                                                             tuple(1 for _ in pb.apex.elements))})
    # every leg pair commutes over a one-point base, but the apex is not a product
    assert not is_limiting_set(bad)
    with pytest.raises(NotACone):
        is_limiting_set(SetCone(pb.shape, pb.diagram, pb.apex, {"a": legs["a"]}))


def test_equalizer_as_limit():
    shape = present(["x", "y"], [("f", "x", "y"), ("g", "x", "y")])
    X, Y = FinSetObj.range(4), FinSetObj.range(2)
    F = SetFunctor.from_generators(shape, {"x": X, "y": Y}, {
        "f": FinSetMor(X, Y, (0, 1, 0, 1)), "g": FinSetMor(X, Y, (0, 0, 0, 1))})
    assert len(limit(shape, F).apex) == 3


def test_limit_of_empty_diagram_is_a_point():
    cone = limit(FinCategory.empty(), SetFunctor(FinCategory.empty(), {}, {}))
    assert len(cone.apex) == 1


@pytest.mark.parametrize("nx,ny", [(0, 0), (0, 3), (2, 0), (2, 3), (3, 2)])
def test_exponential_size_and_evaluation(nx, ny):
    X, Y = FinSetObj.range(nx), FinSetObj.range(ny)
    e = exponential(X, Y)
    assert len(e.obj) == ny ** nx
    assert len(function_space(X, Y)) == len(list(all_functions(X, Y)))


def test_pre_and_post_composition():
    X, Y, Z = FinSetObj.range(2), FinSetObj.range(3), FinSetObj.range(2)
    h = FinSetMor(X, Y, (0, 2))
    k = FinSetMor(Y, Z, (1, 0, 1))
    pre = precompose(h, Z)
    assert len(pre.dom) == 2 ** 3 and len(pre.cod) == 2 ** 2
    post = postcompose(k, X)
    assert len(post.dom) == 3 ** 2 and len(post.cod) == 2 ** 2


def test_guardrail_on_large_function_space():
    with pytest.raises(GuardrailExceeded):
        function_space(FinSetObj.range(8), FinSetObj.range(8), ceiling=1000)


@settings(max_examples=40, deadline=None)
@given(maps(), st.integers(0, 3))
def test_polynomial_size(f, n):
    X = FinSetObj.range(n)
    assert len(polynomial(f, X)) == sum(n ** len(f.fiber(a)) for a in f.cod.elements)


def test_polynomial_map_is_functorial():
    f = fmap([0, 1, 2], ["a", "b"], {0: "a", 1: "a", 2: "b"})
    h = FinSetMor(FinSetObj.range(2), FinSetObj.range(3), (2, 0))
    k = FinSetMor(FinSetObj.range(3), FinSetObj.range(2), (1, 1, 0))
    assert polynomial_map(f, h).then(polynomial_map(f, k)) == polynomial_map(f, h.then(k))
    assert polynomial_map(f, FinSetMor.identity(h.dom)) == FinSetMor.identity(polynomial(f, h.dom))


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_dependent_product_adjunction(data):
    f = data.draw(maps())
    g = data.draw(maps(cod=f.dom)) if len(f.dom) else FinSetMor(FinSetObj.range(0), f.dom, ())
    p = data.draw(maps(cod=f.cod))
    dp = DependentProduct(f, g)
    left, right = dp.left_homs(p), dp.right_homs(p)
    assert len(left) == len(right)
    for h in left:
        assert dp.untranspose(p, dp.transpose(p, h)) == h
    for k in right:
        assert dp.transpose(p, dp.untranspose(p, k)) == k


def test_dependent_product_total_size():
    f = fmap([0, 1, 2], ["a", "b"], {0: "a", 1: "a", 2: "b"})
    g = fmap(["u", "v", "w", "x"], [0, 1, 2], {"u": 0, "v": 0, "w": 1, "x": 2})
    dp = DependentProduct(f, g)
    # over a: sections of g on {0, 1}, 2 * 1; over b: 1
    assert len(dp.total) == 2 + 1
    assert sorted(dp.display(e) for e in dp.total.elements) == ["a", "a", "b"]


def test_dependent_product_boundary():
    f = fmap([0], ["a"], {0: "a"})
    g = fmap([0], ["q"], {0: "q"})
    with pytest.raises(BoundaryMismatch):
        DependentProduct(f, g)


def test_all_functions_count():
    for n, m in product(range(4), range(4)):
        got = list(all_functions(FinSetObj.range(n), FinSetObj.range(m)))
        assert len(got) == m ** n
        assert len(set(got)) == len(got)


def test_dependent_product_counts_by_formula():
    f = fmap([0, 1, 2, 3], [0, 1], {0: 0, 1: 0, 2: 1, 3: 1})
    g = fmap(range(6), range(4), {0: 0, 1: 0, 2: 1, 3: 2, 4: 2, 5: 2})
    dp = DependentProduct(f, g)
    assert len(dp.total) == sum(prod(len(g.fiber(x)) for x in f.fiber(y)) for y in f.cod.elements)
