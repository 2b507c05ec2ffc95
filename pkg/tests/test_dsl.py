from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from lccsketch import fixtures
from lccsketch import theories as T
from lccsketch.corpus import files, read
from lccsketch.dsl import (
    build_algebra,
    parse_algebra,
    parse_category,
    parse_category_file,
    parse_expression,
    parse_model,
    parse_signature,
    parse_sketch,
    parse_value,
    print_algebra,
    print_category,
    print_model,
    print_mor,
    print_obj,
    print_signature,
    print_sketch,
)
from lccsketch.dsl.lexer import TokenStream, tokenize
from lccsketch.errors import IllTyped, ParseError, UnboundGenerator
from lccsketch.fincat import present
from lccsketch.finset import Fn, fmt_value
from lccsketch.lexpr import (
    Bang,
    Comp,
    Gen,
    GenMor,
    Id,
    IHom,
    PbProj1,
    PbProj2,
    PbTuple,
    Poly,
    Pullback,
    Terminal,
    infer_boundary,
    same_obj,
)


def _base_of(name: str):
    if name in fixtures.MODELS:
        return fixtures.expected(fixtures.MODELS[name][0]).base
    return fixtures.expected(fixtures.INTERPRETATIONS[name][0])


def parse_any(name: str, text: str):
    if name.endswith(".skt"):
        return parse_sketch(text, name)
    if name.endswith(".cat"):
        return parse_category_file(text, name)[0]
    if name.endswith(".sig"):
        return parse_signature(text, name)
    if name.endswith(".alg"):
        return parse_algebra(text, name)
    return parse_model(text, _base_of(name), name)


def print_any(name: str, value) -> str:
    if name.endswith(".skt"):
        return print_sketch(value)
    if name.endswith(".cat"):
        return print_category(value)
    if name.endswith(".sig"):
        return print_signature(*value)
    if name.endswith(".alg"):
        return print_algebra(value)
    return print_model(value)


CORPUS = fixtures.all_names()


def test_corpus_is_complete():
    on_disk = sorted(n for suffix in (".skt", ".mdl", ".cat", ".int", ".sig", ".alg") for n in files(suffix))
    assert on_disk == CORPUS


@pytest.mark.parametrize("name", CORPUS)
def test_golden_text(name):
    assert read(name) == fixtures.render(name)


@pytest.mark.parametrize("name", CORPUS)
def test_golden_parse(name):
    assert parse_any(name, read(name)) == fixtures.expected(name)


@pytest.mark.parametrize("name", CORPUS)
def test_print_parse_round_trip(name):
    value = parse_any(name, read(name))
    assert print_any(name, value) == read(name)


def test_algebra_files_build():
    sig, _ = fixtures.expected("lex.sig")
    for name in fixtures.ALGEBRAS:
        alg = build_algebra(sig, parse_algebra(read(name), name))
        assert alg.carrier.objects


# -- values --------------------------------------------------------------------------------------

atoms = st.one_of(
    st.integers(0, 50),
    st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,5}", fullmatch=True),
    st.text(alphabet="ab \"\\=,", min_size=1, max_size=5),
)
values = st.recursive(
    atoms,
    lambda inner: st.one_of(
        st.lists(inner, max_size=3).map(tuple),
        st.dictionaries(st.integers(0, 5), inner, max_size=3).map(lambda d: Fn(d.items())),
    ),
    max_leaves=8,
)


@settings(max_examples=150, deadline=None)
@given(values)
def test_value_round_trip(v):
    assert parse_value(TokenStream(fmt_value(v))) == v


# -- categories --------------------------------------------------------------------------------------


@st.composite
def presentations(draw):
    k = draw(st.integers(1, 4))
    objs = [f"o{i}" for i in range(k)]
    arrows = []
    for n in range(draw(st.integers(0, 4))):
        i = draw(st.integers(0, k - 1))
        j = draw(st.integers(0, k - 1))
        if i < j:
            arrows.append((f"u{n}", objs[i], objs[j]))
    return present(objs, arrows)


@settings(max_examples=60, deadline=None)
@given(presentations())
def test_category_round_trip(c):
    text = print_category(c)
    again = parse_category(text)
    assert again == c
    assert print_category(again) == text


def test_unpresented_category_prints_its_table():
    from lccsketch.fincat import FinCategory

    poset = FinCategory.from_poset(["1", "2", "4"], lambda a, b: int(b) % int(a) == 0)
    assert parse_category(print_category(poset)) == poset


# -- expressions ---------------------------------------------------------------------------------

PI_BASE = T.pi_base()
GENS = [GenMor(g) for g in PI_BASE.generators()]


def _random_obj(rng: random.Random, depth: int):
    choices = ["gen", "one"] + (["pb", "ihom", "poly"] if depth else [])
    kind = rng.choice(choices)
    if kind == "gen":
        return Gen(rng.choice(PI_BASE.objects))
    if kind == "one":
        return Terminal()
    if kind == "pb":
        f = rng.choice(GENS)
        others = [g for g in GENS if PI_BASE.cod(g.name) == PI_BASE.cod(f.name)]
        return Pullback(f, rng.choice(others))
    if kind == "ihom":
        return IHom(_random_obj(rng, depth - 1), _random_obj(rng, depth - 1))
    return Poly(GenMor("El"), _random_obj(rng, depth - 1))


def _random_mor(rng: random.Random, depth: int):
    kind = rng.choice(["gen", "id", "bang", "proj", "comp", "tuple"] if depth else ["gen", "id"])
    if kind == "gen":
        return rng.choice(GENS)
    if kind == "id":
        return Id(_random_obj(rng, 1))
    if kind == "bang":
        return Bang(_random_obj(rng, 1))
    if kind == "proj":
        P = _random_obj(rng, 1)
        if not isinstance(P, Pullback):
            P = Pullback(GenMor("El"), GenMor("pi"))
        return rng.choice([PbProj1, PbProj2])(P)
    if kind == "tuple":
        return PbTuple(Pullback(GenMor("El"), GenMor("pi")), GenMor("lam"), GenMor("El_Pi"))
    f = _random_mor(rng, depth - 1)
    g = _random_mor(rng, depth - 1)
    return Comp(g, f)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_object_expression_round_trip(seed):
    x = _random_obj(random.Random(seed), 2)
    assert parse_expression(print_obj(PI_BASE, x), PI_BASE) == x


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_morphism_expression_round_trip(seed):
    e = _random_mor(random.Random(seed), 3)
    try:
        dom, cod = infer_boundary(PI_BASE, e)
    except IllTyped:
        return
    back = parse_expression(print_mor(PI_BASE, e), PI_BASE)
    got = infer_boundary(PI_BASE, back)
    assert same_obj(PI_BASE, got[0], dom) and same_obj(PI_BASE, got[1], cod)
    assert back == e


def test_bare_projections_need_context():
    with pytest.raises(IllTyped):
        parse_expression("p1", PI_BASE)
    e = parse_expression("El . p1[pb(El; pi)]", PI_BASE)
    assert e == Comp(GenMor("El"), PbProj1(Pullback(GenMor("El"), GenMor("pi"))))


def test_keyword_generator_names_are_quoted():
    assert print_mor(PI_BASE, Comp(GenMor("El"), GenMor("lam"))) == 'El . "lam"'
    assert parse_expression('El . lam', PI_BASE) == Comp(GenMor("El"), GenMor("lam"))


# -- errors ------------------------------------------------------------------------------------


@pytest.mark.parametrize("text,line,col", [
    ("category {\n  object A\n  arrow f : A -> B\n}", 3, 18),
    ("category {\n  object A\n  object\n}", 4, 1),
    ("category {\n  object A\n", 3, 1),
    ("category {\n  object A $\n}", 2, 12),
])
def test_parse_error_positions(text, line, col):
    with pytest.raises(ParseError) as err:
        parse_sketch(text, "x.skt")
    assert (err.value.line, err.value.col) == (line, col)
    assert str(err.value).startswith(f"x.skt:{line}:{col}:")


def test_unbound_generator():
    with pytest.raises(UnboundGenerator):
        parse_model("set A = {0, 1}\nset B = {0}\n", T.injection_category())


def test_function_outside_its_codomain():
    with pytest.raises(ParseError):
        parse_model("set A = {0}\nset B = {0}\nfun f : A -> B = {0 |-> 7}\n", T.injection_category())


def test_comments_and_strings_tokenize():
    toks = tokenize('# note\nobject "two words" # trailing\n')
    assert [(t.kind, t.value) for t in toks] == [("ident", "object"), ("string", "two words"), ("eof", "")]
