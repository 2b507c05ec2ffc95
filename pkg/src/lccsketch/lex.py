"""The presentation of finitely complete categories, plus algebra search.

Operations: ``trm`` (no input, one object), ``arr`` (an object to its map into
the terminal object), ``pb`` (a cospan to a commuting square) and ``gap`` (a
commuting square to its comparison map into the chosen square).  Equations
pin down boundaries, force ``arr`` at the terminal object and the gap map of
the chosen square to be identities, and fix the components of the induced
transformations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .fincat import (
    FinCategory,
    Functor,
    NatTransformation,
    arrow_category,
    limits_in,
    present,
)
from .sigalg import (
    Algebra,
    Equation,
    EquationSet,
    OpMor,
    OpObj,
    Operation,
    Signature,
    TComp,
    TId,
    Var,
    identity_comps,
)

# -- shapes ---------------------------------------------------------------------------


def lex_shapes() -> dict[str, FinCategory]:
    """Named arities and result categories of the presentation."""
    empty = FinCategory.empty()
    point = FinCategory.discrete(["x"])
    term = FinCategory.discrete(["T"])
    arr = present(["dom", "cod"], [("bang", "dom", "cod")])
    arrow = present(["a", "b"], [("f", "a", "b")])
    cospan = present(["x", "y", "z"], [("f", "x", "z"), ("g", "y", "z")])
    square_c = present(
        ["p", "x", "y", "z"],
        [("p1", "p", "x"), ("p2", "p", "y"), ("f", "x", "z"), ("g", "y", "z")],
        [("p1.f", "p2.g")],
    )
    square_q = present(
        ["q", "x", "y", "z"],
        [("q1", "q", "x"), ("q2", "q", "y"), ("f", "x", "z"), ("g", "y", "z")],
        [("q1.f", "q2.g")],
    )
    gap = present(
        ["w", "p", "x", "y", "z"],
        [("m", "w", "p"), ("w1", "w", "x"), ("w2", "w", "y"),
         ("p1", "p", "x"), ("p2", "p", "y"), ("f", "x", "z"), ("g", "y", "z")],
        [("m.p1", "w1"), ("m.p2", "w2"), ("p1.f", "p2.g")],
    )
    shapes = {
        "EMPTY": empty, "POINT": point, "TERM": term, "ARR": arr, "ARROW": arrow,
        "COSPAN": cospan, "C": square_c, "SQUARE": square_q, "D": gap,
        "COSPAN2": arrow_category(cospan), "SQUARE2": arrow_category(square_q),
    }
    for name, cat in shapes.items():
        cat.name = name
    return shapes


def _arg(d: FinCategory, objs: dict, mors: dict) -> tuple:
    return tuple((o, objs[o]) for o in d.objects) + tuple((u, mors[u]) for u in d.generators())


def lex_signature(enrichment: str = "cat") -> tuple[Signature, EquationSet]:
    """The signature and equations presenting finitely complete categories.

    With ``enrichment="grpd"`` operations need only act on invertible
    transformations, so the commuting square relating ``arr`` at the two ends
    of a map is added as the equation ``t/eq/f-nat``.
    """
    sh = lex_shapes()
    sig = Signature((
        Operation("trm", sh["EMPTY"], sh["TERM"], "EMPTY", "TERM"),
        Operation("arr", sh["POINT"], sh["ARR"], "POINT", "ARR"),
        Operation("pb", sh["COSPAN"], sh["C"], "COSPAN", "C"),
        Operation("gap", sh["SQUARE"], sh["D"], "SQUARE", "D"),
    ), enrichment)

    T = OpObj("trm", "T", ())
    eqs: list[Equation] = []

    def eq(name, ref, lhs, rhs):
        eqs.append(Equation(name, ref, sh[ref], lhs, rhs))

    # terminal object
    pa, pb_ = (("x", Var("a")),), (("x", Var("b")),)
    eq("t/eq/f-dom", "ARROW", OpMor("arr", "id(dom)", pa, pb_, (("x", Var("f")),)), Var("f"))
    eq("t/eq/f-cod", "ARROW", OpMor("arr", "id(cod)", pa, pb_, (("x", Var("f")),)), TId(T))
    at_t = (("x", T),)
    eq("t/eq/uniq", "EMPTY", OpMor("arr", "bang", at_t, at_t, (("x", TId(T)),)), TId(T))
    if enrichment == "grpd":
        eq("t/eq/f-nat", "ARROW",
           TComp(OpMor("arr", "bang", pb_, pb_, (("x", TId(Var("b"))),)), Var("f")),
           OpMor("arr", "bang", pa, pa, (("x", TId(Var("a"))),)))

    # pullbacks
    K = sh["COSPAN"]
    argK = _arg(K, {o: Var(o) for o in K.objects}, {u: Var(u) for u in ("f", "g")})

    def pbm(cell, arg):
        return OpMor("pb", cell, arg, arg, identity_comps(K, arg))

    eq("pb/eq/f", "COSPAN", pbm("f", argK), Var("f"))
    eq("pb/eq/g", "COSPAN", pbm("g", argK), Var("g"))
    Q = sh["SQUARE"]
    chosen = _arg(
        Q,
        {"q": OpObj("pb", "p", argK), "x": OpObj("pb", "x", argK),
         "y": OpObj("pb", "y", argK), "z": OpObj("pb", "z", argK)},
        {"q1": pbm("p1", argK), "q2": pbm("p2", argK), "f": pbm("f", argK), "g": pbm("g", argK)},
    )
    eq("pb/eq/gap-id", "COSPAN",
       OpMor("gap", "m", chosen, chosen, identity_comps(Q, chosen)), TId(OpObj("pb", "p", argK)))

    lvl = {lv: _arg(K, {o: Var(f"{o}_{lv}") for o in K.objects}, {u: Var(f"{u}_{lv}") for u in ("f", "g")})
           for lv in ("0", "1")}
    comps = tuple((o, Var(f"t_{o}")) for o in K.objects)
    for o in K.objects:
        eq(f"pb/eq/nat-{o}", "COSPAN2", OpMor("pb", f"id({o})", lvl["0"], lvl["1"], comps), Var(f"t_{o}"))

    # gap maps
    argQ = _arg(Q, {o: Var(o) for o in Q.objects}, {u: Var(u) for u in ("q1", "q2", "f", "g")})

    def gapm(cell):
        return OpMor("gap", cell, argQ, argQ, identity_comps(Q, argQ))

    eq("gap/eq/w1", "SQUARE", gapm("w1"), Var("q1"))
    eq("gap/eq/w2", "SQUARE", gapm("w2"), Var("q2"))
    eq("gap/eq/f", "SQUARE", gapm("f"), Var("f"))
    eq("gap/eq/g", "SQUARE", gapm("g"), Var("g"))
    argQK = _arg(K, {o: Var(o) for o in K.objects}, {"f": Var("f"), "g": Var("g")})
    eq("gap/eq/p1", "SQUARE", gapm("p1"), pbm("p1", argQK))
    eq("gap/eq/p2", "SQUARE", gapm("p2"), pbm("p2", argQK))

    Q2lvl = {lv: _arg(Q, {o: Var(f"{o}_{lv}") for o in Q.objects},
                      {u: Var(f"{u}_{lv}") for u in ("q1", "q2", "f", "g")}) for lv in ("0", "1")}
    qcomps = tuple((o, Var(f"t_{o}")) for o in Q.objects)
    for cell, o in (("w", "q"), ("x", "x"), ("y", "y"), ("z", "z")):
        eq(f"gap/eq/nat-{cell}", "SQUARE2",
           OpMor("gap", f"id({cell})", Q2lvl["0"], Q2lvl["1"], qcomps), Var(f"t_{o}"))
    klvl = {lv: _arg(K, {o: Var(f"{o}_{lv}") for o in K.objects},
                     {"f": Var(f"f_{lv}"), "g": Var(f"g_{lv}")}) for lv in ("0", "1")}
    eq("gap/eq/nat-p", "SQUARE2",
       OpMor("gap", "id(p)", Q2lvl["0"], Q2lvl["1"], qcomps),
       OpMor("pb", "id(p)", klvl["0"], klvl["1"], tuple((o, Var(f"t_{o}")) for o in K.objects)))
    return sig, EquationSet(tuple(eqs))


# -- algebras from chosen limits ----------------------------------------------------------


@dataclass
class LexChoice:
    """A chosen terminal object, maps into it, pullback squares and gap maps.

    ``pullbacks`` is keyed by the cospan ``(f, g)``; ``gaps`` by the cospan
    and a cone ``(apex, leg_x, leg_y)`` over it.
    """

    terminal: str
    arr: dict
    pullbacks: dict = field(default_factory=dict)
    gaps: dict = field(default_factory=dict)


class _Trm:
    def __init__(self, sh, a, ch):
        self.sh, self.a, self.ch = sh, a, ch

    def on_object(self, F):
        T = self.ch.terminal
        return Functor(self.sh["TERM"], self.a, {"T": T}, {"id(T)": self.a.id(T)})

    def on_morphism(self, t):
        F = self.on_object(t.source)
        return NatTransformation(F, F, {"T": self.a.id(self.ch.terminal)})


class _Arr:
    def __init__(self, sh, a, ch):
        self.sh, self.a, self.ch = sh, a, ch

    def on_object(self, F):
        x, T = F.obj("x"), self.ch.terminal
        return Functor.from_generators(self.sh["ARR"], self.a, {"dom": x, "cod": T}, {"bang": self.ch.arr[x]})

    def on_morphism(self, t):
        return NatTransformation(self.on_object(t.source), self.on_object(t.target),
                                 {"dom": t.components["x"], "cod": self.a.id(self.ch.terminal)})


class _Pb:
    def __init__(self, sh, a, ch):
        self.sh, self.a, self.ch = sh, a, ch

    def on_object(self, F):
        key = (F.mor("f"), F.mor("g"))
        p, p1, p2 = self.ch.pullbacks[key]
        return Functor.from_generators(
            self.sh["C"], self.a,
            {"p": p, "x": F.obj("x"), "y": F.obj("y"), "z": F.obj("z")},
            {"p1": p1, "p2": p2, "f": key[0], "g": key[1]})

    def induced(self, t) -> str:
        a = self.a
        src = (t.source.mor("f"), t.source.mor("g"))
        tgt = (t.target.mor("f"), t.target.mor("g"))
        p, p1, p2 = self.ch.pullbacks[src]
        cone = (p, a.comp(t.components["x"], p1), a.comp(t.components["y"], p2))
        return self.ch.gaps[(tgt, cone)]

    def on_morphism(self, t):
        comps = dict(t.components)
        comps["p"] = self.induced(t)
        return NatTransformation(self.on_object(t.source), self.on_object(t.target), comps)


class _Gap:
    def __init__(self, sh, a, ch, pb: _Pb):
        self.sh, self.a, self.ch, self.pb = sh, a, ch, pb

    def _cospan(self, Q):
        return Functor.from_generators(
            self.sh["COSPAN"], self.a, {o: Q.obj(o) for o in ("x", "y", "z")},
            {"f": Q.mor("f"), "g": Q.mor("g")})

    def on_object(self, Q):
        key = (Q.mor("f"), Q.mor("g"))
        p, p1, p2 = self.ch.pullbacks[key]
        m = self.ch.gaps[(key, (Q.obj("q"), Q.mor("q1"), Q.mor("q2")))]
        return Functor.from_generators(
            self.sh["D"], self.a,
            {"w": Q.obj("q"), "p": p, "x": Q.obj("x"), "y": Q.obj("y"), "z": Q.obj("z")},
            {"m": m, "w1": Q.mor("q1"), "w2": Q.mor("q2"), "p1": p1, "p2": p2, "f": key[0], "g": key[1]})

    def on_morphism(self, t):
        Ks, Kt = self._cospan(t.source), self._cospan(t.target)
        restricted = NatTransformation(Ks, Kt, {o: t.components[o] for o in ("x", "y", "z")})
        comps = {"w": t.components["q"], "p": self.pb.induced(restricted)}
        comps.update({o: t.components[o] for o in ("x", "y", "z")})
        return NatTransformation(self.on_object(t.source), self.on_object(t.target), comps)


def lex_algebra(sig: Signature, carrier: FinCategory, choice: LexChoice) -> Algebra:
    sh = {o.arity_ref: o.arity for o in sig.operations}
    sh.update({o.result_ref: o.result for o in sig.operations})
    sh.update(lex_shapes())
    pb = _Pb(sh, carrier, choice)
    return Algebra(sig, carrier, {
        "trm": _Trm(sh, carrier, choice),
        "arr": _Arr(sh, carrier, choice),
        "pb": pb,
        "gap": _Gap(sh, carrier, choice, pb),
    })


# -- search --------------------------------------------------------------------------------


def terminal_choices(a: FinCategory) -> Iterator[tuple[str, dict]]:
    """Every ``(T, arr)`` making ``arr`` natural with ``arr_T`` the identity."""
    objs = list(a.objects)
    for T in objs:
        chosen: dict[str, str] = {}

        def ok(x):
            for f, (d, cd) in a.morphisms.items():
                if d in chosen and cd in chosen and (d == x or cd == x):
                    if a.comp(chosen[cd], f) != chosen[d]:
                        return False
            return True

        def rec(i):
            if i == len(objs):
                yield T, dict(chosen)
                return
            x = objs[i]
            options = [a.id(T)] if x == T else a.hom(x, T)
            for m in options:
                chosen[x] = m
                if ok(x):
                    yield from rec(i + 1)
                del chosen[x]

        yield from rec(0)


def cospans(a: FinCategory) -> list[tuple[str, str]]:
    return [(f, g) for f in a.morphisms for g in a.morphisms if a.cod(f) == a.cod(g)]


def cones_over(a: FinCategory, f: str, g: str) -> list[tuple[str, str, str]]:
    out = []
    x, y = a.dom(f), a.dom(g)
    for p in a.objects:
        for lx in a.hom(p, x):
            for ly in a.hom(p, y):
                if a.comp(f, lx) == a.comp(g, ly):
                    out.append((p, lx, ly))
    return out


def pullback_choices(a: FinCategory, f: str, g: str) -> Iterator[tuple[tuple, dict]]:
    """Chosen squares over ``(f, g)`` with a coherent gap map for every cone.

    Gap maps must be cone morphisms into the chosen square, the gap of the
    chosen square is its identity, and gaps are compatible with every cone
    morphism.
    """
    cones = cones_over(a, f, g)
    morphs: dict = {}
    for q in cones:
        for r in cones:
            for u in a.hom(q[0], r[0]):
                if a.comp(r[1], u) == q[1] and a.comp(r[2], u) == q[2]:
                    morphs.setdefault(q, []).append((u, r))
    for s in cones:
        order = [s] + [q for q in cones if q != s]
        candidates = {}
        for q in cones:
            if q == s:
                candidates[q] = [a.id(s[0])]
            else:
                candidates[q] = [u for u, r in morphs.get(q, []) if r == s]
        gaps: dict = {}

        def consistent(q):
            for u, r in morphs.get(q, []):
                if r in gaps and a.comp(gaps[r], u) != gaps[q]:
                    return False
            for q2 in gaps:
                for u, r in morphs.get(q2, []):
                    if r == q and a.comp(gaps[q], u) != gaps[q2]:
                        return False
            return True

        def rec(i):
            if i == len(order):
                yield s, dict(gaps)
                return
            q = order[i]
            for m in candidates[q]:
                gaps[q] = m
                if consistent(q):
                    yield from rec(i + 1)
                del gaps[q]

        yield from rec(0)


def find_lex_choice(a: FinCategory) -> LexChoice | None:
    """First choice of terminal object and pullbacks found by search, if any."""
    term = next(terminal_choices(a), None)
    if term is None:
        return None
    choice = LexChoice(term[0], term[1])
    for f, g in cospans(a):
        found = next(pullback_choices(a, f, g), None)
        if found is None:
            return None
        square, gaps = found
        choice.pullbacks[(f, g)] = square
        for q, m in gaps.items():
            choice.gaps[((f, g), q)] = m
    return choice


def derive_lex_algebra(a: FinCategory, enrichment: str = "cat") -> Algebra | None:
    sig, _ = lex_signature(enrichment)
    choice = find_lex_choice(a)
    if choice is None:
        return None
    return lex_algebra(sig, a, choice)


# -- independent oracle -----------------------------------------------------------------------


def has_terminal(a: FinCategory) -> bool:
    return any(all(len(a.hom(x, t)) == 1 for x in a.objects) for t in a.objects)


def is_finitely_complete(a: FinCategory) -> bool:
    """Terminal object plus a limiting cone over every cospan, by brute force."""
    if not a.objects:
        return False
    if not has_terminal(a):
        return False
    cospan = lex_shapes()["COSPAN"]
    for f, g in cospans(a):
        x, y, z = a.dom(f), a.dom(g), a.cod(f)
        D = Functor.from_generators(cospan, a, {"x": x, "y": y, "z": z}, {"f": f, "g": g})
        if not limits_in(cospan, D):
            return False
    return True
