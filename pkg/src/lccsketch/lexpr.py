"""Expressions for the free locally Cartesian closed structure over a category.

Object and morphism expressions are built from the objects and morphisms of a
generator category ``c``.  They are never quotiented: equality is syntactic.
Meaning comes only from :func:`eval_obj` / :func:`eval_mor`, which send every
expression into finite sets once the generators are interpreted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import BoundaryMismatch, EvaluationError, IllTyped
from .fincat import FinCategory
from .finset import (
    DependentProduct,
    FinSetMor,
    FinSetObj,
    FinSetStructure,
    SetFunctor,
    check_set_functor,
    find_set_functor_violation,
    function_space,
    polynomial,
    polynomial_map,
    postcompose,
    precompose,
    pullback,
    terminal,
)

# -- syntax -------------------------------------------------------------------------


class ObjExpr:
    __slots__ = ()

    def __str__(self):
        return fmt_obj(self)


class MorExpr:
    __slots__ = ()

    def __str__(self):
        return fmt_morexpr(self)


@dataclass(frozen=True)
class Gen(ObjExpr):
    name: str


@dataclass(frozen=True)
class Terminal(ObjExpr):
    pass


@dataclass(frozen=True)
class Pullback(ObjExpr):
    """Pullback of the cospan ``dom f --f--> . <--g-- dom g``."""

    f: MorExpr
    g: MorExpr


@dataclass(frozen=True)
class Pi(ObjExpr):
    """Dependent product of ``g : Z -> X`` along ``f : X -> Y`` (its total object)."""

    f: MorExpr
    g: MorExpr


@dataclass(frozen=True)
class IHom(ObjExpr):
    x: ObjExpr
    y: ObjExpr


@dataclass(frozen=True)
class Poly(ObjExpr):
    f: MorExpr
    x: ObjExpr


@dataclass(frozen=True)
class Lim(ObjExpr):
    """Limit of a diagram ``shape -> T{c}`` given on objects and generating morphisms."""

    shape: FinCategory
    shape_ref: str
    objs: tuple[tuple[str, ObjExpr], ...]
    mors: tuple[tuple[str, MorExpr], ...] = ()

    def obj(self, i: str) -> ObjExpr:
        return dict(self.objs)[i]


@dataclass(frozen=True)
class GenMor(MorExpr):
    name: str


@dataclass(frozen=True)
class Id(MorExpr):
    x: ObjExpr


@dataclass(frozen=True)
class Comp(MorExpr):
    """``g . f``: apply ``f`` first."""

    g: MorExpr
    f: MorExpr


@dataclass(frozen=True)
class Bang(MorExpr):
    x: ObjExpr


@dataclass(frozen=True)
class PbProj1(MorExpr):
    p: Pullback


@dataclass(frozen=True)
class PbProj2(MorExpr):
    p: Pullback


@dataclass(frozen=True)
class PbTuple(MorExpr):
    p: Pullback
    h: MorExpr
    k: MorExpr


@dataclass(frozen=True)
class PiDisplay(MorExpr):
    """The display map ``Pi(f, g) -> cod f``."""

    f: MorExpr
    g: MorExpr


@dataclass(frozen=True)
class PiTranspose(MorExpr):
    """lambda: ``h : Pullback(p, f) -> Z`` over ``X`` gives ``dom p -> Pi(f, g)``."""

    g: MorExpr
    h: MorExpr


@dataclass(frozen=True)
class PiUntranspose(MorExpr):
    """lambda-bar: ``k : dom p -> Pi(f, g)`` gives ``Pullback(p, f) -> Z``."""

    p: MorExpr
    k: MorExpr


@dataclass(frozen=True)
class LimLeg(MorExpr):
    lim: Lim
    i: str


@dataclass(frozen=True)
class LimTuple(MorExpr):
    """Map into a limit from legs at some shape objects; the others are derived."""

    lim: Lim
    legs: tuple[tuple[str, MorExpr], ...]


@dataclass(frozen=True)
class Precompose(MorExpr):
    """``IHom(X, Y) -> IHom(X', Y)`` for ``h : X' -> X``."""

    h: MorExpr
    y: ObjExpr


@dataclass(frozen=True)
class Postcompose(MorExpr):
    """``IHom(X, Y) -> IHom(X, Y')`` for ``h : Y -> Y'``."""

    h: MorExpr
    x: ObjExpr


@dataclass(frozen=True)
class PolyMor(MorExpr):
    f: MorExpr
    h: MorExpr


Expr = Union[ObjExpr, MorExpr]


def eta_embed(c: FinCategory) -> dict[str, Expr]:
    """Generators of ``c`` as expressions: objects to ``Gen``, morphisms to ``GenMor``."""
    out: dict[str, Expr] = {o: Gen(o) for o in c.objects}
    out.update({f: GenMor(f) for f in c.morphisms})
    return out


def desugar_ihom(x: ObjExpr, y: ObjExpr) -> ObjExpr:
    """``IHom(x, y)`` as a dependent product along ``x -> 1``."""
    return Pi(Bang(x), PbProj2(Pullback(Bang(y), Bang(x))))


def desugar_poly(f: MorExpr, x: ObjExpr, dom_f: ObjExpr) -> ObjExpr:
    """``Poly(f, x)`` as the total object of ``f_*(x * dom f -> dom f)``."""
    return Pi(f, PbProj2(Pullback(Bang(x), Bang(dom_f))))


# -- normal forms and boundaries ---------------------------------------------------------


def _flatten(e: MorExpr, out: list):
    if isinstance(e, Comp):
        _flatten(e.f, out)
        _flatten(e.g, out)
    elif not isinstance(e, Id):
        out.append(e)


def norm_mor(c: FinCategory, e: MorExpr) -> tuple:
    """A syntactic normal form: the diagrammatic list of non-identity factors.

    Adjacent generators are composed in ``c`` and generator identities dropped,
    so composites that hold in ``c`` compare equal.
    """
    factors: list = []
    _flatten(e, factors)
    out: list = []
    for x in factors:
        x = _norm_inner(c, x)
        if isinstance(x, GenMor):
            if x.name in c.morphisms and c.is_identity(x.name):
                continue
            if out and isinstance(out[-1], GenMor):
                prev = out.pop()
                x = GenMor(c.comp(x.name, prev.name))
                if c.is_identity(x.name):
                    continue
        out.append(x)
    return tuple(out)


def _norm_inner(c, x):
    if isinstance(x, (PbProj1, PbProj2)):
        return type(x)(norm_obj(c, x.p))
    return x


def norm_obj(c: FinCategory, x: ObjExpr):
    if isinstance(x, Pullback):
        return ("pb", norm_mor(c, x.f), norm_mor(c, x.g))
    if isinstance(x, Pi):
        return ("pi", norm_mor(c, x.f), norm_mor(c, x.g))
    if isinstance(x, IHom):
        return ("ihom", norm_obj(c, x.x), norm_obj(c, x.y))
    if isinstance(x, Poly):
        return ("poly", norm_mor(c, x.f), norm_obj(c, x.x))
    return x


def same_obj(c: FinCategory, x: ObjExpr, y: ObjExpr) -> bool:
    return x == y or norm_obj(c, x) == norm_obj(c, y)


def _expect(c, subterm, got: ObjExpr, want: ObjExpr, what: str):
    if not same_obj(c, got, want):
        raise IllTyped(subterm, f"{what}: expected {fmt_obj(want)}, got {fmt_obj(got)}")


def check_obj(c: FinCategory, x: ObjExpr) -> ObjExpr:
    """Validate an object expression recursively; returns it unchanged."""
    if isinstance(x, Gen):
        if x.name not in c.objects:
            raise IllTyped(x, f"{x.name} is not an object of the generators")
    elif isinstance(x, Terminal):
        pass
    elif isinstance(x, Pullback):
        (_, cf), (_, cg) = infer_boundary(c, x.f), infer_boundary(c, x.g)
        _expect(c, x, cg, cf, "pullback legs must share a codomain")
    elif isinstance(x, Pi):
        (df, _), (_, cg) = infer_boundary(c, x.f), infer_boundary(c, x.g)
        _expect(c, x, cg, df, "the family must land in the domain of the base map")
    elif isinstance(x, IHom):
        check_obj(c, x.x)
        check_obj(c, x.y)
    elif isinstance(x, Poly):
        infer_boundary(c, x.f)
        check_obj(c, x.x)
    elif isinstance(x, Lim):
        shape = x.shape
        assigned = dict(x.objs)
        if set(assigned) != set(shape.objects):
            raise IllTyped(x, "every object of the shape needs an expression")
        for o in shape.objects:
            check_obj(c, assigned[o])
        mors = dict(x.mors)
        for u in shape.generators():
            if u not in mors:
                raise IllTyped(x, f"generating morphism {u} of the shape is not assigned")
        for u, m in x.mors:
            if u not in shape.morphisms:
                raise IllTyped(x, f"{u} is not a morphism of the shape")
            d, cd = infer_boundary(c, m)
            i, j = shape.morphisms[u]
            _expect(c, m, d, assigned[i], f"domain of the image of {u}")
            _expect(c, m, cd, assigned[j], f"codomain of the image of {u}")
    else:
        raise IllTyped(x, "not an object expression")
    return x


def _pullback_cod(c, p: Pullback):
    check_obj(c, p)
    return infer_boundary(c, p.f), infer_boundary(c, p.g)


def _pi_parts(c, x: ObjExpr, subterm):
    if not isinstance(x, Pi):
        raise IllTyped(subterm, f"expected a dependent product, got {fmt_obj(x)}")
    return x


_BOUNDARY_CACHE: dict = {}


def infer_boundary(c: FinCategory, e: MorExpr) -> tuple[ObjExpr, ObjExpr]:
    """``(dom, cod)`` of a morphism expression, or :class:`IllTyped`."""
    key = (id(c), e)
    hit = _BOUNDARY_CACHE.get(key)
    if hit is not None and hit[0] is c:
        return hit[1]
    result = _infer(c, e)
    if len(_BOUNDARY_CACHE) > 50000:
        _BOUNDARY_CACHE.clear()
    _BOUNDARY_CACHE[key] = (c, result)
    return result


def _infer(c: FinCategory, e: MorExpr) -> tuple[ObjExpr, ObjExpr]:
    if isinstance(e, GenMor):
        if e.name not in c.morphisms:
            raise IllTyped(e, f"{e.name} is not a morphism of the generators")
        d, cd = c.morphisms[e.name]
        return Gen(d), Gen(cd)
    if isinstance(e, Id):
        return check_obj(c, e.x), e.x
    if isinstance(e, Comp):
        df, cf = infer_boundary(c, e.f)
        dg, cg = infer_boundary(c, e.g)
        _expect(c, e, dg, cf, "composite is not composable")
        return df, cg
    if isinstance(e, Bang):
        return check_obj(c, e.x), Terminal()
    if isinstance(e, PbProj1):
        (df, _), _ = _pullback_cod(c, e.p)
        return e.p, df
    if isinstance(e, PbProj2):
        _, (dg, _) = _pullback_cod(c, e.p)
        return e.p, dg
    if isinstance(e, PbTuple):
        (df, _), (dg, _) = _pullback_cod(c, e.p)
        wh, ch = infer_boundary(c, e.h)
        wk, ck = infer_boundary(c, e.k)
        _expect(c, e, wk, wh, "tuple legs must share a domain")
        _expect(c, e.h, ch, df, "first leg")
        _expect(c, e.k, ck, dg, "second leg")
        left = norm_mor(c, Comp(e.p.f, e.h))
        right = norm_mor(c, Comp(e.p.g, e.k))
        if left != right and _pure(left) and _pure(right):
            raise IllTyped(e, "legs do not commute with the cospan")
        return wh, e.p
    if isinstance(e, PiDisplay):
        x = Pi(e.f, e.g)
        check_obj(c, x)
        return x, infer_boundary(c, e.f)[1]
    if isinstance(e, PiTranspose):
        dh, ch = infer_boundary(c, e.h)
        if not isinstance(dh, Pullback):
            raise IllTyped(e, "lam needs a map out of a pullback")
        dg, cg = infer_boundary(c, e.g)
        _expect(c, e, ch, dg, "the map must land in the family's domain")
        x = Pi(dh.g, e.g)
        check_obj(c, x)
        return infer_boundary(c, dh.f)[0], x
    if isinstance(e, PiUntranspose):
        dk, ck = infer_boundary(c, e.k)
        x = _pi_parts(c, ck, e)
        dp, cp = infer_boundary(c, e.p)
        _expect(c, e, dp, dk, "the test family must start at the map's domain")
        _expect(c, e, cp, infer_boundary(c, x.f)[1], "the test family must land in the base")
        p = Pullback(e.p, x.f)
        check_obj(c, p)
        return p, infer_boundary(c, x.g)[0]
    if isinstance(e, LimLeg):
        check_obj(c, e.lim)
        if e.i not in e.lim.shape.objects:
            raise IllTyped(e, f"{e.i} is not an object of the limit's shape")
        return e.lim, e.lim.obj(e.i)
    if isinstance(e, LimTuple):
        check_obj(c, e.lim)
        shape = e.lim.shape
        if not e.legs:
            if shape.objects:
                raise IllTyped(e, "a tuple into a nonempty limit needs a leg")
            raise IllTyped(e, "the domain of a tuple into an empty limit is not determined")
        dom = None
        given = set()
        for i, m in e.legs:
            if i not in shape.objects:
                raise IllTyped(e, f"{i} is not an object of the limit's shape")
            d, cd = infer_boundary(c, m)
            if dom is None:
                dom = d
            _expect(c, m, d, dom, "legs must share a domain")
            _expect(c, m, cd, e.lim.obj(i), f"leg at {i}")
            given.add(i)
        for j in shape.objects:
            if j not in given and not any(shape.hom(i, j) for i in given):
                raise IllTyped(e, f"leg at {j} is neither given nor derivable")
        return dom, e.lim
    if isinstance(e, Precompose):
        d, cd = infer_boundary(c, e.h)
        check_obj(c, e.y)
        return IHom(cd, e.y), IHom(d, e.y)
    if isinstance(e, Postcompose):
        d, cd = infer_boundary(c, e.h)
        check_obj(c, e.x)
        return IHom(e.x, d), IHom(e.x, cd)
    if isinstance(e, PolyMor):
        infer_boundary(c, e.f)
        d, cd = infer_boundary(c, e.h)
        return Poly(e.f, d), Poly(e.f, cd)
    raise IllTyped(e, "not a morphism expression")


def _pure(nf: tuple) -> bool:
    return len(nf) <= 1 and all(isinstance(x, GenMor) for x in nf)


# -- evaluation ---------------------------------------------------------------------------


class Interpretation:
    """Generators interpreted in finite sets; expressions evaluated through chosen structure.

    ``base`` is a diagram ``c -> FinSet``.  Results are memoized per expression.
    """

    def __init__(self, base: SetFunctor, structure: FinSetStructure | None = None, check: bool = True):
        if check:
            check_set_functor(base)
        self.base = base
        self.c = base.shape
        self.structure = structure or FinSetStructure()
        self._objs: dict = {}
        self._mors: dict = {}
        self._aux: dict = {}

    @property
    def ceiling(self):
        return self.structure.ceiling

    def pullback_cone(self, p: Pullback):
        key = ("pb", p)
        if key not in self._aux:
            self._aux[key] = pullback(eval_mor(self, p.f), eval_mor(self, p.g), self.ceiling)
        return self._aux[key]

    def dependent_product(self, f: MorExpr, g: MorExpr) -> DependentProduct:
        key = ("pi", f, g)
        if key not in self._aux:
            try:
                self._aux[key] = DependentProduct(eval_mor(self, f), eval_mor(self, g), self.ceiling)
            except BoundaryMismatch as err:
                raise EvaluationError(str(err)) from None
        return self._aux[key]

    def limit_cone(self, x: Lim):
        key = ("lim", x)
        if key not in self._aux:
            objs = {i: eval_obj(self, e) for i, e in x.objs}
            gens = {u: eval_mor(self, m) for u, m in x.mors}
            try:
                diagram = SetFunctor.from_generators(x.shape, objs, gens)
            except BoundaryMismatch as err:
                raise EvaluationError(f"limit diagram does not compose: {err}") from None
            problem = find_set_functor_violation(diagram)
            if problem is not None:
                raise EvaluationError(f"limit diagram is not functorial: {problem}")
            self._aux[key] = self.structure.limit(x.shape, diagram)
        return self._aux[key]


def eval_obj(i: Interpretation, x: ObjExpr) -> FinSetObj:
    hit = i._objs.get(x)
    if hit is not None:
        return hit
    if isinstance(x, Gen):
        out = i.base.obj(x.name)
    elif isinstance(x, Terminal):
        out = terminal()
    elif isinstance(x, Pullback):
        out = i.pullback_cone(x).apex
    elif isinstance(x, Pi):
        out = i.dependent_product(x.f, x.g).total
    elif isinstance(x, IHom):
        out = function_space(eval_obj(i, x.x), eval_obj(i, x.y), i.ceiling)
    elif isinstance(x, Poly):
        out = polynomial(eval_mor(i, x.f), eval_obj(i, x.x), i.ceiling)
    elif isinstance(x, Lim):
        out = i.limit_cone(x).apex
    else:
        raise IllTyped(x, "not an object expression")
    i._objs[x] = out
    return out


def eval_mor(i: Interpretation, e: MorExpr) -> FinSetMor:
    hit = i._mors.get(e)
    if hit is not None:
        return hit
    try:
        out = _eval_mor(i, e)
    except BoundaryMismatch as err:
        raise EvaluationError(f"{fmt_morexpr(e)}: {err}") from None
    i._mors[e] = out
    return out


def _eval_mor(i: Interpretation, e: MorExpr) -> FinSetMor:
    c = i.c
    if isinstance(e, GenMor):
        return i.base.mor(e.name)
    if isinstance(e, Id):
        return FinSetMor.identity(eval_obj(i, e.x))
    if isinstance(e, Comp):
        return eval_mor(i, e.f).then(eval_mor(i, e.g))
    if isinstance(e, Bang):
        x = eval_obj(i, e.x)
        return FinSetMor(x, terminal(), tuple(() for _ in x.elements))
    if isinstance(e, PbProj1):
        return i.pullback_cone(e.p).legs["a"]
    if isinstance(e, PbProj2):
        return i.pullback_cone(e.p).legs["b"]
    if isinstance(e, PbTuple):
        h, k = eval_mor(i, e.h), eval_mor(i, e.k)
        f, g = eval_mor(i, e.p.f), eval_mor(i, e.p.g)
        apex = i.pullback_cone(e.p).apex
        images = []
        for w in h.dom.elements:
            a, b = h(w), k(w)
            if f(a) != g(b):
                raise EvaluationError(f"{fmt_morexpr(e)}: legs disagree over the cospan")
            images.append((("a", a), ("b", b), ("c", f(a))))
        return FinSetMor(h.dom, apex, tuple(images))
    if isinstance(e, PiDisplay):
        return i.dependent_product(e.f, e.g).display
    if isinstance(e, PiTranspose):
        dh, _ = infer_boundary(c, e.h)
        dp = i.dependent_product(dh.g, e.g)
        return dp.transpose(eval_mor(i, dh.f), eval_mor(i, e.h))
    if isinstance(e, PiUntranspose):
        _, ck = infer_boundary(c, e.k)
        dp = i.dependent_product(ck.f, ck.g)
        return dp.untranspose(eval_mor(i, e.p), eval_mor(i, e.k))
    if isinstance(e, LimLeg):
        return i.limit_cone(e.lim).legs[e.i]
    if isinstance(e, LimTuple):
        cone = i.limit_cone(e.lim)
        shape = e.lim.shape
        legs = {j: eval_mor(i, m) for j, m in e.legs}
        for j in shape.objects:
            if j not in legs:
                src = next(s for s, _ in e.legs if shape.hom(s, j))
                u = shape.hom(src, j)[0]
                legs[j] = legs[src].then(cone.diagram.mor(u))
        dom = next(iter(legs.values())).dom
        order = sorted(shape.objects)
        images = []
        for w in dom.elements:
            fam = tuple((j, legs[j](w)) for j in order)
            if fam not in cone.apex:
                raise EvaluationError(f"{fmt_morexpr(e)}: legs do not form a cone")
            images.append(fam)
        return FinSetMor(dom, cone.apex, tuple(images))
    if isinstance(e, Precompose):
        return precompose(eval_mor(i, e.h), eval_obj(i, e.y), i.ceiling)
    if isinstance(e, Postcompose):
        return postcompose(eval_mor(i, e.h), eval_obj(i, e.x), i.ceiling)
    if isinstance(e, PolyMor):
        return polynomial_map(eval_mor(i, e.f), eval_mor(i, e.h), i.ceiling)
    raise IllTyped(e, "not a morphism expression")


def ihom_terminal_iso(i: Interpretation, x: ObjExpr) -> FinSetMor:
    """The bijection ``IHom(1, x) -> x`` sending a function to its value at the point."""
    src = eval_obj(i, IHom(Terminal(), x))
    dst = eval_obj(i, x)
    iso = FinSetMor(src, dst, tuple(phi(()) for phi in src.elements))
    if not iso.is_bijective():
        raise EvaluationError("evaluation at the point is not bijective")
    return iso


# -- printing ----------------------------------------------------------------------------------

IDENT = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_'/]*(?:-[A-Za-z0-9_'/]+)*\Z")
MOR_KEYWORDS = frozenset({
    "p1", "p2", "id", "bang", "tuple", "lam", "unlam", "leg", "ltuple", "pre", "post", "polym", "disp",
})


def fmt_name(name: str, keywords=frozenset()) -> str:
    if IDENT.match(name) and name not in keywords:
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def fmt_obj(x: ObjExpr) -> str:
    if isinstance(x, Gen):
        return f"gen({fmt_name(x.name)})"
    if isinstance(x, Terminal):
        return "1"
    if isinstance(x, Pullback):
        return f"pb({fmt_morexpr(x.f)}; {fmt_morexpr(x.g)})"
    if isinstance(x, Pi):
        return f"pi({fmt_morexpr(x.f)}; {fmt_morexpr(x.g)})"
    if isinstance(x, IHom):
        return f"ihom({fmt_obj(x.x)}, {fmt_obj(x.y)})"
    if isinstance(x, Poly):
        return f"poly({fmt_morexpr(x.f)}; {fmt_obj(x.x)})"
    if isinstance(x, Lim):
        parts = [f"{fmt_name(o)} = {fmt_obj(e)}" for o, e in x.objs]
        parts += [f"{fmt_name(u)} = {fmt_morexpr(m)}" for u, m in x.mors]
        return f"lim{{{fmt_name(x.shape_ref)}: {', '.join(parts)}}}"
    raise TypeError(f"not an object expression: {x!r}")


def fmt_morexpr(e: MorExpr, nested: bool = False) -> str:
    if isinstance(e, GenMor):
        return fmt_name(e.name, MOR_KEYWORDS)
    if isinstance(e, Id):
        return f"id({fmt_obj(e.x)})"
    if isinstance(e, Comp):
        text = f"{fmt_morexpr(e.g, True)} . {fmt_morexpr(e.f, True)}"
        return f"({text})" if nested else text
    if isinstance(e, Bang):
        return f"bang({fmt_obj(e.x)})"
    if isinstance(e, PbProj1):
        return f"p1[{fmt_obj(e.p)}]"
    if isinstance(e, PbProj2):
        return f"p2[{fmt_obj(e.p)}]"
    if isinstance(e, PbTuple):
        return f"tuple[{fmt_obj(e.p)}]({fmt_morexpr(e.h)}; {fmt_morexpr(e.k)})"
    if isinstance(e, PiDisplay):
        return f"disp({fmt_morexpr(e.f)}; {fmt_morexpr(e.g)})"
    if isinstance(e, PiTranspose):
        return f"lam[{fmt_morexpr(e.g)}]({fmt_morexpr(e.h)})"
    if isinstance(e, PiUntranspose):
        return f"unlam[{fmt_morexpr(e.p)}]({fmt_morexpr(e.k)})"
    if isinstance(e, LimLeg):
        return f"leg[{fmt_obj(e.lim)}]({fmt_name(e.i)})"
    if isinstance(e, LimTuple):
        legs = ", ".join(f"{fmt_name(j)}: {fmt_morexpr(m)}" for j, m in e.legs)
        return f"ltuple[{fmt_obj(e.lim)}]({legs})"
    if isinstance(e, Precompose):
        return f"pre[{fmt_obj(e.y)}]({fmt_morexpr(e.h)})"
    if isinstance(e, Postcompose):
        return f"post[{fmt_obj(e.x)}]({fmt_morexpr(e.h)})"
    if isinstance(e, PolyMor):
        return f"polym({fmt_morexpr(e.f)}; {fmt_morexpr(e.h)})"
    raise TypeError(f"not a morphism expression: {e!r}")


def fmt_expr(e: Expr) -> str:
    return fmt_obj(e) if isinstance(e, ObjExpr) else fmt_morexpr(e)
