"""Worked sketches: the walking type theory, dependent products, and booleans.

Each constructor returns a fresh :class:`~lccsketch.sketch.Sketch`; the
``*_model`` helpers build the finite-set models used in tests and in the
fixture corpus.
"""

from __future__ import annotations

from .fincat import Cone, FinCategory, Functor, commutative_square, present
from .finset import FinSetMor, FinSetObj, SetFunctor
from .lexpr import (
    Gen,
    GenMor,
    Id,
    IHom,
    Lim,
    LimLeg,
    LimTuple,
    PbProj1,
    PbProj2,
    PbTuple,
    Poly,
    PolyMor,
    Postcompose,
    Precompose,
    Pullback,
    Terminal,
)
from .sketch import Marking, Sketch, mark_limit_cone


def _eta(c: FinCategory) -> dict:
    out: dict = {o: Gen(o) for o in c.objects}
    out.update({u: GenMor(u) for u in c.generators()})
    return out


def set_model(base: FinCategory, sets: dict, funs: dict) -> SetFunctor:
    """A diagram on ``base`` from element lists and generator tables (dicts)."""
    objs = {o: FinSetObj(v) for o, v in sets.items()}
    gens = {}
    for g in base.generators():
        d, c = base.morphisms[g]
        gens[g] = FinSetMor.from_map(objs[d], objs[c], funs[g])
    return SetFunctor.from_generators(base, objs, gens)


# -- walking type theory -----------------------------------------------------------------


def walking_tt() -> Sketch:
    """One generating map ``El : EL -> TY`` and no markings."""
    return Sketch(present(["EL", "TY"], [("El", "EL", "TY")]))


def empty_base() -> Sketch:
    return Sketch(FinCategory.empty())


def terminal_mark() -> Sketch:
    """A single object ``X`` marked as the apex of a limit of the empty diagram."""
    base = present(["X"], [])
    s = Sketch(base)
    empty = FinCategory.empty()
    cone = Cone(empty, Functor(empty, base, {}, {}), "X", {})
    s.markings.append(mark_limit_cone(s, cone, "terminal", shape_ref="empty"))
    return s


# -- dependent products ---------------------------------------------------------------------


def pi_base() -> FinCategory:
    return present(
        ["EL_Pi", "TY_Pi", "EL", "TY"],
        [("lam", "EL_Pi", "EL"), ("El_Pi", "EL_Pi", "TY_Pi"), ("El", "EL", "TY"), ("pi", "TY_Pi", "TY")],
        [("lam.El", "El_Pi.pi")],
    )


def pi_sketch() -> Sketch:
    """The square ``lam, El_Pi, El, pi`` marked as a pullback, and ``El_Pi`` marked as ``P_El(El)``."""
    base = pi_base()

    cospan = present(["ne", "sw", "se"], [("e", "ne", "se"), ("s", "sw", "se")])
    square = commutative_square()
    square.name = None
    j1 = Functor.from_generators(cospan, square, {o: o for o in cospan.objects}, {"e": "e", "s": "s"})
    P = Pullback(GenMor("e"), GenMor("s"))
    k1 = _eta(cospan)
    k1.update({"nw": P, "n": PbProj1(P), "w": PbProj2(P)})
    phi1 = Functor.from_generators(
        square, base, {"nw": "EL_Pi", "ne": "EL", "sw": "TY_Pi", "se": "TY"},
        {"n": "lam", "w": "El_Pi", "e": "El", "s": "pi"})
    pullback_marking = Marking("pi-pullback", cospan, square, j1, k1, phi1)

    arrow = present(["s", "t"], [("f", "s", "t")])
    pair = present(["u", "v", "s", "t"], [("g", "u", "v"), ("f", "s", "t")])
    j2 = Functor.from_generators(arrow, pair, {"s": "s", "t": "t"}, {"f": "f"})
    f = GenMor("f")
    k2 = _eta(arrow)
    k2.update({"u": Poly(f, Gen("s")), "v": Poly(f, Gen("t")), "g": PolyMor(f, f)})
    phi2 = Functor.from_generators(
        pair, base, {"u": "EL_Pi", "v": "TY_Pi", "s": "EL", "t": "TY"}, {"g": "El_Pi", "f": "El"})
    poly_marking = Marking("pi-poly", arrow, pair, j2, k2, phi2)
    return Sketch(base, [pullback_marking, poly_marking])


PROP_SETS = {
    "TY": ["bot", "top"],
    "EL": ["star"],
    "TY_Pi": ["A_bot", "A_top_bot", "A_top_top"],
    "EL_Pi": ["l_bot", "l_top"],
}
PROP_FUNS = {
    "El": {"star": "top"},
    "lam": {"l_bot": "star", "l_top": "star"},
    "El_Pi": {"l_bot": "A_bot", "l_top": "A_top_top"},
    "pi": {"A_bot": "top", "A_top_bot": "bot", "A_top_top": "top"},
}


def prop_universe_model() -> SetFunctor:
    """Two truth values as types, one proof of ``top``; ``pi`` is implication."""
    return set_model(pi_base(), PROP_SETS, PROP_FUNS)


def broken_lam_model() -> SetFunctor:
    """``EL_Pi`` enlarged by a third element, so ``(lam, El_Pi)`` is not a pullback."""
    sets = dict(PROP_SETS, EL_Pi=["l_bot", "l_top", "l_extra"])
    funs = dict(PROP_FUNS)
    funs["lam"] = {"l_bot": "star", "l_top": "star", "l_extra": "star"}
    funs["El_Pi"] = {"l_bot": "A_bot", "l_top": "A_top_top", "l_extra": "A_top_top"}
    return set_model(pi_base(), sets, funs)


def trivial_universe_model() -> SetFunctor:
    one = ["o"]
    return set_model(pi_base(), {o: one for o in ("TY", "EL", "TY_Pi", "EL_Pi")},
                     {g: {"o": "o"} for g in ("El", "lam", "El_Pi", "pi")})


# -- booleans ---------------------------------------------------------------------------------


def bool_base(strict: bool) -> FinCategory:
    relations = [("tt.El", "bool"), ("ff.El", "bool"), ("s.r", "id(Elim)")]
    if strict:
        relations.append(("r.s", "id(EL/bool)"))
    return present(
        ["1", "EL", "TY", "EL/bool", "TY/bool", "Elim"],
        [("tt", "1", "EL"), ("ff", "1", "EL"), ("bool", "1", "TY"), ("El", "EL", "TY"),
         ("p", "Elim", "TY/bool"), ("q0", "Elim", "EL"), ("q1", "Elim", "EL"),
         ("h0", "TY/bool", "TY"), ("h1", "TY/bool", "TY"),
         ("h0'", "EL/bool", "EL"), ("h1'", "EL/bool", "EL"),
         ("r", "EL/bool", "Elim"), ("s", "Elim", "EL/bool")],
        relations,
    )


def bool_generators() -> FinCategory:
    """``1 --tt, ff--> EL --El--> TY`` with ``bool = El . tt = El . ff``."""
    return present(
        ["1", "EL", "TY"],
        [("tt", "1", "EL"), ("ff", "1", "EL"), ("bool", "1", "TY"), ("El", "EL", "TY")],
        [("tt.El", "bool"), ("ff.El", "bool")],
    )


def elim_shape() -> FinCategory:
    """The diagram whose limit is ``Elim``: two copies of ``El`` under the two restrictions."""
    return present(
        ["u", "a0", "a1", "e0", "e1"],
        [("h0", "u", "a0"), ("h1", "u", "a1"), ("el0", "e0", "a0"), ("el1", "e1", "a1")],
    )


def bool_sketch(strict: bool = False) -> Sketch:
    """Booleans with a weak eliminator (``s`` a section of ``r``), or a strict one."""
    base = bool_base(strict)

    terminal_marking = Marking(
        "terminal", FinCategory.empty(), present(["pt"], []),
        Functor(FinCategory.empty(), present(["pt"], []), {}, {}),
        {"pt": Terminal()},
        Functor(present(["pt"], []), base, {"pt": "1"}, {"id(pt)": "id(1)"}))

    c = bool_generators()
    d = present(
        ["1", "EL", "TY", "Elim", "TY/bool", "EL0", "EL1", "TY0", "TY1", "EL/bool"],
        [("tt", "1", "EL"), ("ff", "1", "EL"), ("bool", "1", "TY"), ("El", "EL", "TY"),
         ("p", "Elim", "TY/bool"), ("q0", "Elim", "EL0"), ("q1", "Elim", "EL1"),
         ("El0", "EL0", "TY0"), ("El1", "EL1", "TY1"),
         ("h0", "TY/bool", "TY0"), ("h1", "TY/bool", "TY1"),
         ("h0'", "EL/bool", "EL0"), ("h1'", "EL/bool", "EL1"), ("r", "EL/bool", "Elim")],
        [("tt.El", "bool"), ("ff.El", "bool")],
    )
    j = Functor.from_generators(c, d, {o: o for o in c.objects}, {u: u for u in c.generators()})

    one, EL, TY = Gen("1"), Gen("EL"), Gen("TY")
    El = GenMor("El")
    fiber = Pullback(GenMor("bool"), El)
    point_tt = PbTuple(fiber, Id(one), GenMor("tt"))
    point_ff = PbTuple(fiber, Id(one), GenMor("ff"))
    shape = elim_shape()
    L = Lim(shape, "W", (
        ("u", IHom(fiber, TY)), ("a0", IHom(one, TY)), ("a1", IHom(one, TY)),
        ("e0", IHom(one, EL)), ("e1", IHom(one, EL)),
    ), (
        ("h0", Precompose(point_tt, TY)), ("h1", Precompose(point_ff, TY)),
        ("el0", Postcompose(El, one)), ("el1", Postcompose(El, one)),
    ))
    k = _eta(c)
    k.update({
        "Elim": L, "TY/bool": IHom(fiber, TY), "EL/bool": IHom(fiber, EL),
        "EL0": IHom(one, EL), "EL1": IHom(one, EL), "TY0": IHom(one, TY), "TY1": IHom(one, TY),
        "p": LimLeg(L, "u"), "q0": LimLeg(L, "e0"), "q1": LimLeg(L, "e1"),
        "El0": Postcompose(El, one), "El1": Postcompose(El, one),
        "h0": Precompose(point_tt, TY), "h1": Precompose(point_ff, TY),
        "h0'": Precompose(point_tt, EL), "h1'": Precompose(point_ff, EL),
        "r": LimTuple(L, (("u", Postcompose(El, fiber)), ("e0", Precompose(point_tt, EL)),
                          ("e1", Precompose(point_ff, EL)))),
    })
    obj_map = {o: o for o in c.objects}
    obj_map.update({"Elim": "Elim", "TY/bool": "TY/bool", "EL/bool": "EL/bool",
                    "EL0": "EL", "EL1": "EL", "TY0": "TY", "TY1": "TY"})
    gen_map = {u: u for u in c.generators()}
    gen_map.update({"p": "p", "q0": "q0", "q1": "q1", "El0": "El", "El1": "El", "h0": "h0", "h1": "h1",
                    "h0'": "h0'", "h1'": "h1'", "r": "r"})
    phi = Functor.from_generators(d, base, obj_map, gen_map)
    elim_marking = Marking("elim", c, d, j, k, phi)
    return Sketch(base, [terminal_marking, elim_marking], shapes={"W": shape})


_PAIRS = ["tt_tt", "tt_ff", "ff_tt", "ff_ff"]


def bool_model(strict: bool = True, el: tuple = ("tt", "ff")) -> SetFunctor:
    """``TY = {b}``, ``EL = el``, and ``Elim = EL/bool`` the four pairs of values.

    With a one-element ``el`` both booleans collapse while ``Elim`` keeps four
    elements; that model is not a model of the eliminator marking.
    """
    name = {"tt": el[0], "ff": el[-1]}
    funs = {
        "tt": {"pt": name["tt"]}, "ff": {"pt": name["ff"]}, "bool": {"pt": "b"},
        "El": {e: "b" for e in el},
        "p": {x: "c" for x in _PAIRS}, "h0": {"c": "b"}, "h1": {"c": "b"},
        "q0": {x: name[x[:2]] for x in _PAIRS}, "q1": {x: name[x[3:]] for x in _PAIRS},
        "h0'": {x: name[x[:2]] for x in _PAIRS}, "h1'": {x: name[x[3:]] for x in _PAIRS},
        "r": {x: x for x in _PAIRS}, "s": {x: x for x in _PAIRS},
    }
    sets = {"1": ["pt"], "EL": list(el), "TY": ["b"], "TY/bool": ["c"], "EL/bool": _PAIRS, "Elim": _PAIRS}
    return set_model(bool_base(strict), sets, funs)


def walking_tt_model() -> SetFunctor:
    """Two terms of a single type."""
    base = walking_tt().base
    return set_model(base, {"EL": [0, 1], "TY": [0]}, {"El": {0: 0, 1: 0}})


# -- algebra and evaluation fixtures ---------------------------------------------------------


def divisor_poset(n: int) -> FinCategory:
    """Divisors of ``n`` ordered by divisibility, presented by its Hasse diagram."""
    divs = [d for d in range(1, n + 1) if n % d == 0]
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    arrows = [(f"d{d}_{d * p}", str(d), str(d * p)) for d in divs for p in primes if n % (d * p) == 0]
    rels = []
    for d in divs:
        for i, p in enumerate(primes):
            for q in primes[i + 1:]:
                if n % (d * p * q) == 0:
                    rels.append((f"d{d}_{d * p}.d{d * p}_{d * p * q}", f"d{d}_{d * q}.d{d * q}_{d * p * q}"))
    return present([str(d) for d in divs], arrows, rels, name=f"div{n}")


def divisor12_algebra():
    """The divisor lattice of 12 with its chosen top and meets."""
    from .dsl.formats import AlgebraSpec

    return AlgebraSpec(divisor_poset(12), derive="lex")


def discrete2_algebra():
    """Two objects and no maps; every operation is forced to stay at its input."""
    from .dsl.formats import AlgebraSpec

    carrier = FinCategory.discrete(["a", "b"])
    tables: dict = {"trm": {(): {"T": "a"}}, "arr": {}, "pb": {}, "gap": {}}
    for o in carrier.objects:
        tables["arr"][(("x", o),)] = {"dom": o, "cod": o}
        tables["pb"][tuple((c, o) for c in "xyz")] = {c: o for c in "pxyz"}
        tables["gap"][tuple((c, o) for c in "qxyz")] = {c: o for c in "wpxyz"}
    return AlgebraSpec(carrier, tables)


def injection_category() -> FinCategory:
    return present(["A", "B"], [("f", "A", "B")])


def injection_model() -> SetFunctor:
    """``f : {0, 1} -> {0, 1, 2}`` injective, for kernel-pair checks."""
    return set_model(injection_category(), {"A": [0, 1], "B": [0, 1, 2]}, {"f": {0: 0, 1: 2}})


__all__ = [
    "PROP_FUNS", "PROP_SETS", "bool_base", "bool_generators", "bool_model", "bool_sketch", "broken_lam_model",
    "elim_shape", "empty_base", "pi_base", "pi_sketch", "prop_universe_model", "set_model", "terminal_mark",
    "trivial_universe_model", "walking_tt", "walking_tt_model", "divisor_poset", "divisor12_algebra",
    "discrete2_algebra", "injection_category", "injection_model",
]
