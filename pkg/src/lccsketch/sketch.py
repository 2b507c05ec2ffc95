"""Generalized sketches: a base category with marked quadruples ``(c, d, j, k)``.

A marking realizes a diagram shape ``d`` inside the free structure over its
generators ``c`` (the assignment ``k``) and places that shape in the base via
``phi``.  A model is a diagram ``base -> FinSet`` for which every evaluated
``k``-diagram is naturally isomorphic to ``f . phi``, by an isomorphism that is
the identity on the image of ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .errors import (
    CategoryError,
    EtaViolation,
    EvaluationError,
    GuardrailExceeded,
    IllTyped,
    IllTypedMarking,
    InvalidFunctor,
)
from .fincat import Cone, FinCategory, Functor, cone_shape, find_cone_violation, find_functor_violation
from .finset import (
    FinSetMor,
    FinSetObj,
    FinSetStructure,
    SetFunctor,
    all_functions,
    find_set_functor_violation,
    fmt_value,
)
from .lexpr import (
    Comp,
    Expr,
    Gen,
    GenMor,
    Id,
    Interpretation,
    Lim,
    LimLeg,
    MorExpr,
    ObjExpr,
    check_obj,
    eval_mor,
    eval_obj,
    fmt_expr,
    infer_boundary,
    same_obj,
)

DEFAULT_MODEL_CEILING = 10**6


@dataclass(eq=False)
class Marking:
    """A quadruple ``(c, d, j, k)`` together with ``phi : d -> base``.

    ``realize`` gives ``k`` on every object of ``d`` and on (at least) every
    generating morphism of ``d``; other morphisms are realized as composites
    along their paths.
    """

    name: str
    c: FinCategory
    d: FinCategory
    j: Functor
    realize: dict
    phi: Functor
    c_ref: str | None = None
    d_ref: str | None = None

    def k(self, cell: str) -> Expr:
        if cell in self.realize:
            return self.realize[cell]
        if cell in self.d.objects:
            raise IllTypedMarking(self.name, cell, "object of the shape is not realized")
        if self.d.is_identity(cell):
            return Id(self.k(self.d.dom(cell)))
        if self.d.paths is None:
            raise IllTypedMarking(self.name, cell, "morphism of the shape is not realized")
        expr: MorExpr | None = None
        for u in self.d.path_of(cell):
            step = self.k(u)
            expr = step if expr is None else Comp(step, expr)
        return expr

    def key(self):
        return (self.name, self.c, self.d, self.j, tuple(sorted(self.realize.items(), key=lambda kv: kv[0])),
                self.phi)

    def __eq__(self, other):
        return isinstance(other, Marking) and self.key() == other.key()

    def __hash__(self):
        return hash(self.name)


@dataclass(eq=False)
class Sketch:
    base: FinCategory
    markings: list = field(default_factory=list)
    base_ref: str | None = None
    shapes: dict = field(default_factory=dict)

    def marking(self, name: str) -> Marking:
        for m in self.markings:
            if m.name == name:
                return m
        raise KeyError(name)

    def __eq__(self, other):
        return (isinstance(other, Sketch) and self.base == other.base
                and list(self.markings) == list(other.markings))

    def __hash__(self):
        return hash(self.base)


# -- validation ---------------------------------------------------------------------------


def validate_marking(base: FinCategory, m: Marking) -> Marking:
    for what, F, src, tgt in (("embed", m.j, m.c, m.d), ("image", m.phi, m.d, base)):
        if F.source != src or F.target != tgt:
            raise InvalidFunctor(m.name, what, "functor has the wrong source or target")
        problem = find_functor_violation(F)
        if problem is not None:
            raise InvalidFunctor(m.name, what, problem)
    for x in m.c.objects:
        got = m.realize.get(m.j.obj(x))
        if got != Gen(x):
            raise EtaViolation(m.name, x, f"k(j({x})) must be gen({x}), got {fmt_expr(got) if got else 'nothing'}")
    for u in m.c.generators():
        got = m.realize.get(m.j.mor(u))
        if got != GenMor(u):
            raise EtaViolation(m.name, u, f"k(j({u})) must be {u}, got {fmt_expr(got) if got else 'nothing'}")
    for cell in m.realize:
        if cell not in m.d.objects and cell not in m.d.morphisms:
            raise IllTypedMarking(m.name, cell, "not a cell of the shape")
    for x in m.d.objects:
        e = m.k(x)
        if not isinstance(e, ObjExpr):
            raise IllTypedMarking(m.name, x, "an object must be realized by an object expression")
        try:
            check_obj(m.c, e)
        except IllTyped as err:
            raise IllTypedMarking(m.name, x, str(err)) from None
    for u in m.d.morphisms:
        if m.d.is_identity(u) and u not in m.realize:
            continue
        e = m.k(u)
        if not isinstance(e, MorExpr):
            raise IllTypedMarking(m.name, u, "a morphism must be realized by a morphism expression")
        try:
            dom, cod = infer_boundary(m.c, e)
        except IllTyped as err:
            raise IllTypedMarking(m.name, u, str(err)) from None
        want_dom, want_cod = m.k(m.d.dom(u)), m.k(m.d.cod(u))
        if not same_obj(m.c, dom, want_dom):
            raise IllTypedMarking(m.name, u, f"domain is {fmt_expr(dom)}, shape needs {fmt_expr(want_dom)}")
        if not same_obj(m.c, cod, want_cod):
            raise IllTypedMarking(m.name, u, f"codomain is {fmt_expr(cod)}, shape needs {fmt_expr(want_cod)}")
    return m


def validate_sketch(s: Sketch) -> Sketch:
    """Check every marking; returns the sketch or raises naming the marking and cell."""
    for m in s.markings:
        validate_marking(s.base, m)
    return s


# -- model checking -------------------------------------------------------------------------


@dataclass
class MarkingResult:
    marking: str
    found: bool
    alpha: dict | None = None
    alphas: list = field(default_factory=list)
    reason: str = ""

    def nontrivial_components(self) -> list[str]:
        if self.alpha is None:
            return []
        return [x for x, a in self.alpha.items() if a != FinSetMor.identity(a.dom)]


@dataclass
class ModelReport:
    results: list

    @property
    def ok(self) -> bool:
        return all(r.found for r in self.results)

    def result(self, name: str) -> MarkingResult:
        return next(r for r in self.results if r.marking == name)


def restrict(f: SetFunctor, F: Functor) -> SetFunctor:
    """``f . F`` for a functor ``F`` into the shape of ``f``."""
    return SetFunctor(F.source, {x: f.obj(F.obj(x)) for x in F.source.objects},
                      {u: f.mor(F.mor(u)) for u in F.source.morphisms})


def evaluate_marking(m: Marking, f: SetFunctor, structure: FinSetStructure | None = None) -> SetFunctor:
    """The ``k``-diagram of ``m`` evaluated with generators sent along ``f . phi . j``."""
    interp = Interpretation(restrict(f, m.j.then(m.phi)), structure, check=False)
    objs = {x: eval_obj(interp, m.k(x)) for x in m.d.objects}
    mors = {}
    for u in m.d.morphisms:
        if m.d.is_identity(u) and u not in m.realize:
            mors[u] = FinSetMor.identity(objs[m.d.dom(u)])
        else:
            mors[u] = eval_mor(interp, m.k(u))
    return SetFunctor(m.d, objs, mors)


class _AlphaSearch:
    """Element-by-element search for a natural bijection ``K => G`` fixed on ``fixed``."""

    def __init__(self, d: FinCategory, K: SetFunctor, G: SetFunctor, fixed):
        self.d, self.K, self.G = d, K, G
        self.cells = [(x, e) for x in d.objects if x not in fixed for e in K.obj(x).elements]
        self.value = {}
        for x in fixed:
            for e in K.obj(x).elements:
                self.value[(x, e)] = e
        self.used = {x: set() for x in d.objects}
        self.arrows = [u for u in d.morphisms if not d.is_identity(u)]
        self.out_of = {x: [u for u in self.arrows if d.dom(u) == x] for x in d.objects}
        self.into = {x: [u for u in self.arrows if d.cod(u) == x] for x in d.objects}
        self.conflict: tuple | None = None
        self.depth = -1

    def _ok(self, x, e) -> tuple | None:
        K, G, v = self.K, self.G, self.value
        a = v[(x, e)]
        for u in self.out_of[x]:
            y = self.d.cod(u)
            b = v.get((y, K.mor(u)(e)))
            if b is not None and G.mor(u)(a) != b:
                return (u, e)
        for u in self.into[x]:
            w = self.d.dom(u)
            for e0 in K.obj(w).elements:
                if K.mor(u)(e0) == e:
                    a0 = v.get((w, e0))
                    if a0 is not None and G.mor(u)(a0) != a:
                        return (u, e0)
        return None

    def initial_conflict(self) -> tuple | None:
        for (x, e) in list(self.value):
            bad = self._ok(x, e)
            if bad is not None:
                return bad
        return None

    def run(self) -> Iterator[dict]:
        yield from self._rec(0)

    def _rec(self, n) -> Iterator[dict]:
        if n == len(self.cells):
            yield {x: FinSetMor(self.K.obj(x), self.G.obj(x),
                                tuple(self.value[(x, e)] for e in self.K.obj(x).elements))
                   for x in self.d.objects}
            return
        x, e = self.cells[n]
        for a in self.G.obj(x).elements:
            if a in self.used[x]:
                continue
            self.value[(x, e)] = a
            bad = self._ok(x, e)
            if bad is None:
                self.used[x].add(a)
                yield from self._rec(n + 1)
                self.used[x].discard(a)
            elif n >= self.depth:
                self.depth, self.conflict = n, bad
            del self.value[(x, e)]


def _fmt_witness(K: SetFunctor, u: str, e) -> str:
    return f"naturality fails at {u} on element {fmt_value(e)}"


def check_marking(m: Marking, f: SetFunctor, structure: FinSetStructure | None = None,
                  all_alphas: bool = False) -> MarkingResult:
    try:
        K = evaluate_marking(m, f, structure)
    except (EvaluationError, CategoryError) as err:
        return MarkingResult(m.name, False, reason=f"evaluation failed: {err}")
    problem = find_set_functor_violation(K)
    if problem is not None:
        return MarkingResult(m.name, False, reason=f"realized diagram is not functorial: {problem}")
    G = restrict(f, m.phi)
    for x in m.d.objects:
        if len(K.obj(x)) != len(G.obj(x)):
            return MarkingResult(m.name, False, reason=(
                f"no isomorphism candidate at {x}: realized size {len(K.obj(x))}, model size {len(G.obj(x))}"))
    fixed = sorted({m.j.obj(y) for y in m.c.objects})
    for x in fixed:
        if K.obj(x) != G.obj(x):
            return MarkingResult(m.name, False, reason=f"generator image {x} is not realized strictly")
    search = _AlphaSearch(m.d, K, G, fixed)
    bad = search.initial_conflict()
    if bad is not None:
        return MarkingResult(m.name, False, reason=_fmt_witness(K, *bad))
    found = []
    for alpha in search.run():
        found.append(alpha)
        if not all_alphas:
            break
    if not found:
        u, e = search.conflict if search.conflict else ("?", ())
        return MarkingResult(m.name, False, reason=_fmt_witness(K, u, e))
    return MarkingResult(m.name, True, alpha=found[0], alphas=found)


def check_model(s: Sketch, f: SetFunctor, structure: FinSetStructure | None = None,
                all_alphas: bool = False) -> ModelReport:
    """Per marking: FOUND with a natural isomorphism strict on generators, or FAIL with a reason."""
    if f.shape != s.base:
        raise InvalidFunctor("-", "model", "model is not a diagram on the base category")
    problem = find_set_functor_violation(f)
    if problem is not None:
        raise InvalidFunctor("-", "model", problem)
    return ModelReport([check_marking(m, f, structure, all_alphas) for m in s.markings])


@dataclass
class Model:
    functor: SetFunctor
    alphas: dict


def _size_vectors(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    return product(range(bound + 1), repeat=n)


def count_candidates(base: FinCategory, bound: int) -> int:
    """How many generator assignments a bounded enumeration inspects."""
    gens = base.generators()
    total = 0
    for sizes in _size_vectors(len(base.objects), bound):
        size = dict(zip(base.objects, sizes))
        n = 1
        for g in gens:
            n *= size[base.cod(g)] ** size[base.dom(g)]
        total += n
    return total


def candidate_functors(base: FinCategory, bound: int) -> Iterator[SetFunctor]:
    """Every functor ``base -> FinSet`` with objects sent to ``range(n)``, ``n <= bound``."""
    gens = base.generators()
    for sizes in _size_vectors(len(base.objects), bound):
        objs = {o: FinSetObj.range(n) for o, n in zip(base.objects, sizes)}
        choices = [list(all_functions(objs[base.dom(g)], objs[base.cod(g)])) for g in gens]
        for pick in product(*choices):
            F = SetFunctor.from_generators(base, objs, dict(zip(gens, pick)))
            if find_set_functor_violation(F) is None:
                yield F


def enumerate_models(s: Sketch, bound: int, ceiling: int = DEFAULT_MODEL_CEILING,
                     structure: FinSetStructure | None = None) -> list[Model]:
    """All models with object images among canonical sets of size at most ``bound``."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    n = count_candidates(s.base, bound)
    if n > ceiling:
        raise GuardrailExceeded("candidate models", n, ceiling)
    out = []
    for F in candidate_functors(s.base, bound):
        report = check_model(s, F, structure)
        if report.ok:
            out.append(Model(F, {r.marking: r.alpha for r in report.results}))
    return out


# -- finite limit sketches ---------------------------------------------------------------------


def mark_limit_cone(s: Sketch, cone: Cone, name: str, shape_ref: str = "d") -> Marking:
    """The marking asking that ``cone`` (a cone in the base) be sent to a limit."""
    d = cone.shape
    if cone.diagram.target != s.base or cone.diagram.source != d:
        raise IllTyped(cone, "the cone's diagram must land in the base")
    problem = find_cone_violation(cone)
    if problem is not None:
        raise IllTyped(cone, f"not a cone: {problem}")
    shape, inclusion = cone_shape(d)
    lim = Lim(d, shape_ref, tuple((o, Gen(o)) for o in d.objects),
              tuple((u, GenMor(u)) for u in d.generators()))
    realize: dict = {o: Gen(o) for o in d.objects}
    realize.update({u: GenMor(u) for u in d.generators()})
    realize[shape.apex] = lim
    for o, leg in shape.legs.items():
        realize[leg] = LimLeg(lim, o)
    obj_map = {o: cone.diagram.obj(o) for o in d.objects}
    obj_map[shape.apex] = cone.apex
    mor_map = {u: cone.diagram.mor(u) for u in d.morphisms}
    mor_map[shape.id(shape.apex)] = s.base.id(cone.apex)
    for o, leg in shape.legs.items():
        mor_map[leg] = cone.legs[o]
    phi = Functor(shape, s.base, obj_map, mor_map)
    return Marking(name, d, shape, inclusion, realize, phi, c_ref=shape_ref)


__all__ = [
    "Marking", "MarkingResult", "Model", "ModelReport", "Sketch", "candidate_functors", "check_marking",
    "check_model", "count_candidates", "enumerate_models", "evaluate_marking", "mark_limit_cone", "restrict",
    "validate_marking", "validate_sketch",
]
