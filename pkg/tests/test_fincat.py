from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from lccsketch.errors import (
    AssociativityViolation,
    BoundaryMismatch,
    BoundExceeded,
    FunctorialityViolation,
    IdentityLawViolation,
    NaturalityViolation,
    NotACone,
)
from lccsketch.fincat import (
    Cone,
    FinCategory,
    Functor,
    NatTransformation,
    check_functor,
    check_natural,
    commutative_square,
    cone_shape,
    enumerate_cones,
    enumerate_functors,
    enumerate_transformations,
    functor_category,
    is_limiting,
    limits_in,
    present,
    validate_category,
    walking_cospan,
)
from lccsketch.smallcats import enumerate_categories


def monoid(elements, mul) -> dict:
    """Raw one-object category from a multiplication table on ``elements``."""
    return {
        "objects": ["x"],
        "morphisms": {e: ("x", "x") for e in elements},
        "identity": {"x": elements[0]},
        "compose": {(g, f): mul[(g, f)] for g in elements for f in elements},
    }


def unital_tables(elements):
    rest = elements[1:]
    e = elements[0]
    for values in product(elements, repeat=len(rest) ** 2):
        mul = {(e, x): x for x in elements}
        mul.update({(x, e): x for x in elements})
        mul.update(dict(zip(product(rest, rest), values)))
        yield mul


def test_walking_arrow_counts():
    c = FinCategory.walking_arrow()
    assert len(c.objects) == 2 and len(c.morphisms) == 3
    assert c.hom("a", "b") == ["f"]
    assert c.hom("b", "a") == []


def test_commutative_square_has_one_diagonal():
    sq = commutative_square()
    assert len(sq.morphisms) == 4 + 4 + 1
    assert len(sq.hom("nw", "se")) == 1


def test_presentation_quotients_parallel_paths():
    c = present(["x", "y", "z"], [("f", "x", "y"), ("g", "y", "z"), ("h", "x", "z")], [("f.g", "h")])
    assert c.comp("g", "f") == "h"
    assert len(c.hom("x", "z")) == 1


def test_free_loop_exceeds_bound():
    with pytest.raises(BoundExceeded):
        present(["x"], [("e", "x", "x")], bound=6)


def test_idempotent_loop_is_finite():
    c = present(["x"], [("e", "x", "x")], [("e.e", "e")])
    assert len(c.morphisms) == 2


def test_associativity_violation_found_by_search():
    elements = ["1", "a", "b"]
    verdicts = {"ok": 0, "assoc": 0}
    for mul in unital_tables(elements):
        try:
            validate_category(monoid(elements, mul))
            verdicts["ok"] += 1
        except AssociativityViolation as err:
            h, g, f = err.triple
            lhs = mul[(h, mul[(g, f)])]
            rhs = mul[(mul[(h, g)], f)]
            assert lhs != rhs
            verdicts["assoc"] += 1
    oracle = sum(
        all(mul[(x, mul[(y, z)])] == mul[(mul[(x, y)], z)] for x in elements for y in elements for z in elements)
        for mul in unital_tables(elements))
    assert verdicts["ok"] == oracle == 11
    assert verdicts["assoc"] == 3 ** 4 - oracle


def test_identity_law_violation():
    raw = monoid(["1", "a"], {("1", "1"): "1", ("1", "a"): "a", ("a", "1"): "1", ("a", "a"): "a"})
    with pytest.raises(IdentityLawViolation):
        validate_category(raw)


def test_missing_composite_is_a_boundary_problem():
    raw = {"objects": ["x", "y"], "morphisms": {"1x": ("x", "x"), "1y": ("y", "y"), "f": ("x", "y")},
           "identity": {"x": "1x", "y": "1y"}, "compose": {("1x", "1x"): "1x", ("1y", "1y"): "1y"}}
    with pytest.raises(BoundaryMismatch):
        validate_category(raw)


def brute_force_functors(c: FinCategory, a: FinCategory) -> int:
    count = 0
    for objs in product(a.objects, repeat=len(c.objects)):
        om = dict(zip(c.objects, objs))
        choices = [a.hom(om[c.dom(f)], om[c.cod(f)]) for f in c.morphisms]
        for mors in product(*choices):
            mm = dict(zip(c.morphisms, mors))
            if all(mm[c.id(o)] == a.id(om[o]) for o in c.objects) and all(
                    mm[h] == a.comp(mm[g], mm[f]) for (g, f), h in c.compose_table.items()):
                count += 1
    return count


SMALL = [c for c in enumerate_categories(2, 4) if c.objects]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_functor_enumeration_matches_brute_force(c, a):
    found = list(enumerate_functors(c, a))
    assert len(found) == brute_force_functors(c, a)
    assert len({F.key() for F in found}) == len(found)
    for F in found:
        check_functor(F)


def test_functor_from_non_functorial_data():
    c = FinCategory.walking_arrow()
    a = present(["x"], [("e", "x", "x")], [("e.e", "e")])
    F = Functor(c, a, {"a": "x", "b": "x"}, {"id(a)": "e", "id(b)": "id(x)", "f": "e"})
    with pytest.raises(FunctorialityViolation):
        check_functor(F)


def test_transformations_between_constant_functors():
    arrow = FinCategory.walking_arrow()
    src = FinCategory.discrete(["p"])
    F = Functor.constant(src, arrow, "a")
    G = Functor.constant(src, arrow, "b")
    assert len(list(enumerate_transformations(F, G))) == 1
    assert list(enumerate_transformations(G, F)) == []
    bad = NatTransformation(F, G, {"p": "id(a)"})
    with pytest.raises((NaturalityViolation, BoundaryMismatch)):
        check_natural(bad)


def test_functor_category_of_arrow_into_arrow():
    arrow = FinCategory.walking_arrow()
    fc = functor_category(arrow, arrow)
    # functors are the monotone maps of a 2-chain: 3 of them, ordered in a chain
    assert len(fc.objects) == 3
    assert len(fc.morphisms) == 6


def test_cone_shape_of_discrete_two():
    d = FinCategory.discrete(["i", "j"])
    shape, inclusion = cone_shape(d)
    assert len(shape.non_identity()) == 2
    assert set(shape.legs) == {"i", "j"}
    assert inclusion.obj("i") == "i"


def test_cone_shape_keeps_relations():
    d = walking_cospan()
    shape, _ = cone_shape(d)
    # both routes from the apex to the corner of the cospan agree
    assert shape.hom(shape.apex, "c") == [shape.legs["c"]]


def divisor_leq(a: str, b: str) -> bool:
    return int(b) % int(a) == 0


def test_meets_in_a_poset_are_limits():
    p = FinCategory.from_poset(["1", "2", "3", "6"], divisor_leq)
    d = FinCategory.discrete(["l", "r"])
    D = Functor(d, p, {"l": "2", "r": "3"}, {"id(l)": "id(2)", "id(r)": "id(3)"})
    limits = limits_in(d, D)
    assert [c.apex for c in limits] == ["1"]
    cert = is_limiting(limits[0])
    assert cert and len(cert.mediators) == len(list(enumerate_cones(d, D)))


def test_non_limit_has_a_witness():
    p = FinCategory.from_poset(["1", "2", "3", "6"], divisor_leq)
    d = FinCategory.discrete(["l"])
    D = Functor(d, p, {"l": "6"}, {"id(l)": "id(6)"})
    cone = Cone(d, D, "2", {"l": "2<=6"})
    cert = is_limiting(cone)
    assert not cert
    other, mediators = cert.witness
    assert other.apex in ("3", "6") and mediators == []


def test_not_a_cone():
    arrow = FinCategory.walking_arrow()
    d = FinCategory.discrete(["l"])
    D = Functor(d, arrow, {"l": "a"}, {"id(l)": "id(a)"})
    with pytest.raises(NotACone):
        is_limiting(Cone(d, D, "b", {"l": "f"}))
