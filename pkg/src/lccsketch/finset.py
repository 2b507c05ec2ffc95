"""Finite sets with chosen limits, exponentials and dependent products.

Elements are canonical values: ints, strings, tuples of values, and
:class:`Fn` (a tabulated function, stored as its sorted graph).  Every set
keeps its elements in canonical order, so equal inputs always produce
identical outputs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Iterable, Iterator, Mapping

from .errors import BoundaryMismatch, FunctorialityViolation, GuardrailExceeded, NotACone
from .fincat import FinCategory, LimitCertificate, walking_cospan

DEFAULT_CEILING = 10**6


# -- canonical values ------------------------------------------------------------


def ckey(v):
    """Sort key giving a total order on canonical values of mixed kinds."""
    if isinstance(v, Fn):
        return (3, tuple((ckey(a), ckey(b)) for a, b in v))
    if isinstance(v, tuple):
        return (2, tuple(ckey(x) for x in v))
    if isinstance(v, bool):
        raise TypeError("booleans are not canonical values")
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    raise TypeError(f"not a canonical value: {v!r}")


class Fn(tuple):
    """A function value: its graph as (argument, value) pairs sorted by argument."""

    def __new__(cls, pairs: Iterable[tuple] = ()):
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        return super().__new__(cls, tuple(sorted(pairs, key=lambda p: ckey(p[0]))))

    def __eq__(self, other):
        return isinstance(other, Fn) and tuple.__eq__(self, other)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(("Fn", tuple.__hash__(self)))

    def __call__(self, x):
        for a, b in self:
            if a == x:
                return b
        raise KeyError(x)

    def as_dict(self) -> dict:
        return dict(self)

    def __repr__(self):
        return f"Fn({tuple(self)!r})"


_BARE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def fmt_value(v) -> str:
    if isinstance(v, Fn):
        return "{" + ", ".join(f"{fmt_value(a)} |-> {fmt_value(b)}" for a, b in v) + "}"
    if isinstance(v, tuple):
        if len(v) == 1:
            return f"({fmt_value(v[0])},)"
        return "(" + ", ".join(fmt_value(x) for x in v) + ")"
    if isinstance(v, int):
        return str(v)
    if _BARE.match(v):
        return v
    return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'


# -- objects and morphisms ----------------------------------------------------------


def _guard(what: str, size: int, ceiling: int | None):
    limit = DEFAULT_CEILING if ceiling is None else ceiling
    if size > limit:
        raise GuardrailExceeded(what, size, limit)


class FinSetObj:
    """A finite set of canonical values in canonical order."""

    __slots__ = ("elements", "_index")

    def __init__(self, elements: Iterable = ()):
        elems = sorted(set(elements), key=ckey)
        self.elements: tuple = tuple(elems)
        self._index = None

    @classmethod
    def range(cls, n: int) -> "FinSetObj":
        return cls(range(n))

    def index(self, x) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return self._index[x]

    def __contains__(self, x):
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return x in self._index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, FinSetObj) and self.elements == other.elements

    def __hash__(self):
        return hash(("FinSetObj", self.elements))

    def __repr__(self):
        return f"FinSetObj({fmt_set(self)})"


def fmt_set(x: FinSetObj) -> str:
    return "{" + ", ".join(fmt_value(e) for e in x.elements) + "}"


class FinSetMor:
    """A total function between finite sets, tabulated in domain order."""

    __slots__ = ("dom", "cod", "images", "_table")

    def __init__(self, dom: FinSetObj, cod: FinSetObj, images: tuple):
        self.dom = dom
        self.cod = cod
        self.images = tuple(images)
        self._table = None

    @classmethod
    def from_map(cls, dom: FinSetObj, cod: FinSetObj, fn) -> "FinSetMor":
        """Tabulate ``fn`` (a callable or a mapping) and check it lands in ``cod``."""
        get = fn.__getitem__ if isinstance(fn, Mapping) else fn
        images = []
        for x in dom.elements:
            try:
                y = get(x)
            except KeyError:
                raise BoundaryMismatch(x, "function is not total on its domain") from None
            if y not in cod:
                raise BoundaryMismatch(x, f"image {fmt_value(y)} is not in the codomain")
            images.append(y)
        return cls(dom, cod, tuple(images))

    @classmethod
    def identity(cls, x: FinSetObj) -> "FinSetMor":
        return cls(x, x, x.elements)

    def __call__(self, x):
        if self._table is None:
            self._table = dict(zip(self.dom.elements, self.images))
        return self._table[x]

    def then(self, g: "FinSetMor") -> "FinSetMor":
        """``g . self``."""
        if g.dom != self.cod:
            raise BoundaryMismatch((g, self), "codomain and domain differ")
        return FinSetMor(self.dom, g.cod, tuple(g(y) for y in self.images))

    def fiber(self, y) -> list:
        return [x for x, fx in zip(self.dom.elements, self.images) if fx == y]

    def is_bijective(self) -> bool:
        return len(self.dom) == len(self.cod) and len(set(self.images)) == len(self.cod)

    def inverse(self) -> "FinSetMor":
        if not self.is_bijective():
            raise ValueError("not a bijection")
        back = dict(zip(self.images, self.dom.elements))
        return FinSetMor(self.cod, self.dom, tuple(back[y] for y in self.cod.elements))

    def graph(self) -> Fn:
        return Fn(zip(self.dom.elements, self.images))

    def __eq__(self, other):
        return (isinstance(other, FinSetMor) and self.images == other.images
                and self.dom == other.dom and self.cod == other.cod)

    def __hash__(self):
        return hash(("FinSetMor", self.images))

    def __repr__(self):
        return f"FinSetMor({fmt_mor(self)})"


def compose(g: FinSetMor, f: FinSetMor) -> FinSetMor:
    return f.then(g)


def fmt_mor(f: FinSetMor) -> str:
    return fmt_value(f.graph())


def all_functions(x: FinSetObj, y: FinSetObj, ceiling: int | None = None) -> Iterator[FinSetMor]:
    _guard("function space", len(y) ** len(x), ceiling)
    for images in product(y.elements, repeat=len(x)):
        yield FinSetMor(x, y, images)


def terminal() -> FinSetObj:
    return FinSetObj([()])


# -- diagrams and cones -----------------------------------------------------------


class SetFunctor:
    """A diagram ``shape -> FinSet``."""

    def __init__(self, shape: FinCategory, objs: Mapping[str, FinSetObj], mors: Mapping[str, FinSetMor]):
        self.shape = shape
        self.objs = dict(objs)
        self.mors = dict(mors)

    @classmethod
    def from_generators(cls, shape, objs, gens) -> "SetFunctor":
        mors = {}
        for f, (d, _) in shape.morphisms.items():
            if f in gens:
                mors[f] = gens[f]
                continue
            path = shape.path_of(f)
            if not path:
                mors[f] = FinSetMor.identity(objs[d])
                continue
            h = gens[path[0]]
            for g in path[1:]:
                h = h.then(gens[g])
            mors[f] = h
        return cls(shape, objs, mors)

    def obj(self, x):
        return self.objs[x]

    def mor(self, f):
        return self.mors[f]

    def __eq__(self, other):
        return isinstance(other, SetFunctor) and self.objs == other.objs and self.mors == other.mors

    def __hash__(self):
        return hash(tuple(sorted(self.objs)))


def find_set_functor_violation(F: SetFunctor) -> str | None:
    c = F.shape
    for f, (d, cd) in c.morphisms.items():
        m = F.mors.get(f)
        if m is None or m.dom != F.objs[d] or m.cod != F.objs[cd]:
            return f"{f} is unmapped or has the wrong boundary"
    for o in c.objects:
        if F.mors[c.id(o)] != FinSetMor.identity(F.objs[o]):
            return f"identity of {o} is not preserved"
    for (g, f), h in c.compose_table.items():
        if F.mors[f].then(F.mors[g]) != F.mors[h]:
            return f"composite {g} . {f} = {h} is not preserved"
    return None


def check_set_functor(F: SetFunctor) -> SetFunctor:
    problem = find_set_functor_violation(F)
    if problem is not None:
        raise FunctorialityViolation(problem, problem)
    return F


@dataclass
class SetCone:
    """A cone in FinSet: ``legs[i] : apex -> diagram.obj(i)``."""

    shape: FinCategory
    diagram: SetFunctor
    apex: FinSetObj
    legs: dict = field(default_factory=dict)


def find_set_cone_violation(cone: SetCone) -> str | None:
    for i in cone.shape.objects:
        leg = cone.legs.get(i)
        if leg is None or leg.dom != cone.apex or leg.cod != cone.diagram.obj(i):
            return f"leg at {i} is missing or has the wrong boundary"
    for u, (i, j) in cone.shape.morphisms.items():
        if cone.legs[i].then(cone.diagram.mor(u)) != cone.legs[j]:
            return f"leg at {j} does not factor through {u}"
    return None


def matching_families(shape: FinCategory, diagram: SetFunctor, ceiling: int | None = None) -> list[tuple]:
    """All families ``(x_i)`` with ``F(u)(x_i) = x_j``, as sorted association tuples."""
    objs = list(shape.objects)
    pos = {o: k for k, o in enumerate(objs)}
    checks: list[list[tuple[str, str, str]]] = [[] for _ in objs]
    for u, (i, j) in shape.morphisms.items():
        if shape.is_identity(u):
            continue
        checks[max(pos[i], pos[j])].append((u, i, j))
    order = sorted(objs)
    found: list[tuple] = []
    chosen: dict[str, object] = {}
    limit = DEFAULT_CEILING if ceiling is None else ceiling

    def rec(k):
        if k == len(objs):
            found.append(tuple((o, chosen[o]) for o in order))
            if len(found) > limit:
                raise GuardrailExceeded("limit", len(found), limit)
            return
        o = objs[k]
        for x in diagram.obj(o).elements:
            chosen[o] = x
            if all(diagram.mor(u)(chosen[i]) == chosen[j] for u, i, j in checks[k]):
                rec(k + 1)
        chosen.pop(o, None)

    rec(0)
    return found


def limit(shape: FinCategory, diagram: SetFunctor, ceiling: int | None = None) -> SetCone:
    """The chosen limit: matching families with projection legs."""
    apex = FinSetObj(matching_families(shape, diagram, ceiling))
    legs = {}
    for i in shape.objects:
        legs[i] = FinSetMor(apex, diagram.obj(i), tuple(dict(e)[i] for e in apex.elements))
    return SetCone(shape, diagram, apex, legs)


def discrete_shape(n: int) -> FinCategory:
    return FinCategory.discrete([str(k) for k in range(n)])


def product_cone(sets: list[FinSetObj], ceiling: int | None = None) -> SetCone:
    shape = discrete_shape(len(sets))
    _guard("product", prod(len(s) for s in sets), ceiling)
    objs = {str(k): s for k, s in enumerate(sets)}
    return limit(shape, SetFunctor.from_generators(shape, objs, {}), ceiling)


_COSPAN = None


def cospan_shape() -> FinCategory:
    global _COSPAN
    if _COSPAN is None:
        _COSPAN = walking_cospan()
    return _COSPAN


def cospan_diagram(f: FinSetMor, g: FinSetMor) -> SetFunctor:
    if f.cod != g.cod:
        raise BoundaryMismatch((f, g), "cospan legs have different codomains")
    shape = cospan_shape()
    return SetFunctor.from_generators(shape, {"a": f.dom, "b": g.dom, "c": f.cod}, {"f": f, "g": g})


def pullback(f: FinSetMor, g: FinSetMor, ceiling: int | None = None) -> SetCone:
    """Chosen pullback of ``a --f--> c <--g-- b``; legs ``a`` and ``b`` are the projections."""
    return limit(cospan_shape(), cospan_diagram(f, g), ceiling)


def mediating(c: SetCone, l: SetCone) -> FinSetMor:
    """The map ``apex(c) -> apex(l)`` commuting with the legs (``l`` a limit cone)."""
    problem = find_set_cone_violation(c)
    if problem is not None:
        raise NotACone(problem)
    objs = sorted(c.shape.objects)
    index = {}
    for y in l.apex.elements:
        index.setdefault(tuple(l.legs[i](y) for i in objs), []).append(y)
    images = []
    for x in c.apex.elements:
        key = tuple(c.legs[i](x) for i in objs)
        ys = index.get(key, [])
        if len(ys) != 1:
            raise NotACone(f"the second cone is not limiting: {len(ys)} candidates over {fmt_value(x)}")
        images.append(ys[0])
    return FinSetMor(c.apex, l.apex, tuple(images))


def is_limiting_set(cone: SetCone, max_apex: int | None = None) -> LimitCertificate:
    """Certify a FinSet cone against every competing cone.

    A competing cone with apex ``A`` is the same thing as a function from ``A``
    to the set of matching families, and its mediators are chosen pointwise,
    so it suffices to examine one-point cones (plus the empty cone).  Passing
    ``max_apex`` additionally enumerates every cone whose apex is a canonical
    set of size up to ``max_apex`` and counts its mediators.
    """
    problem = find_set_cone_violation(cone)
    if problem is not None:
        raise NotACone(problem)
    objs = sorted(cone.shape.objects)
    families = matching_families(cone.shape, cone.diagram)
    over: dict[tuple, list] = {}
    for x in cone.apex.elements:
        over.setdefault(tuple(cone.legs[i](x) for i in objs), []).append(x)
    point = terminal()
    mediators = []
    for fam in families:
        values = tuple(v for _, v in fam)
        found = over.get(values, [])
        point_cone = SetCone(cone.shape, cone.diagram, point,
                             {i: FinSetMor(point, cone.diagram.obj(i), (v,)) for i, v in fam})
        if len(found) != 1:
            return LimitCertificate(False, witness=(point_cone, [FinSetMor(point, cone.apex, (x,)) for x in found]))
        mediators.append((point_cone, FinSetMor(point, cone.apex, (found[0],))))
    if max_apex is not None:
        for n in range(max_apex + 1):
            apex = FinSetObj.range(n)
            _guard("competing cones", len(families) ** n, None)
            for choice in product(families, repeat=n):
                legs = {i: FinSetMor(apex, cone.diagram.obj(i), tuple(dict(fam)[i] for fam in choice))
                        for i in objs}
                other = SetCone(cone.shape, cone.diagram, apex, legs)
                options = [over.get(tuple(v for _, v in fam), []) for fam in choice]
                count = prod(len(o) for o in options)
                if count != 1:
                    return LimitCertificate(False, witness=(other, [
                        FinSetMor(apex, cone.apex, imgs) for imgs in product(*options)]))
                mediators.append((other, FinSetMor(apex, cone.apex, tuple(o[0] for o in options))))
    return LimitCertificate(True, mediators=mediators)


# -- exponentials --------------------------------------------------------------------


@dataclass
class Exponential:
    obj: FinSetObj
    evaluation: FinSetMor
    product: SetCone


def function_space(x: FinSetObj, y: FinSetObj, ceiling: int | None = None) -> FinSetObj:
    _guard("exponential", len(y) ** len(x), ceiling)
    return FinSetObj(Fn(zip(x.elements, imgs)) for imgs in product(y.elements, repeat=len(x)))


def exponential(x: FinSetObj, y: FinSetObj, ceiling: int | None = None) -> Exponential:
    """``y ** x`` with evaluation ``y**x * x -> y`` out of the chosen product."""
    e = function_space(x, y, ceiling)
    cone = product_cone([e, x], ceiling)
    ev = FinSetMor(cone.apex, y, tuple(dict(p)["0"](dict(p)["1"]) for p in cone.apex.elements))
    return Exponential(e, ev, cone)


def precompose(h: FinSetMor, y: FinSetObj, ceiling: int | None = None) -> FinSetMor:
    """``y**X -> y**X'`` for ``h : X' -> X``, sending ``phi`` to ``phi . h``."""
    src = function_space(h.cod, y, ceiling)
    dst = function_space(h.dom, y, ceiling)
    return FinSetMor(src, dst, tuple(Fn((a, phi(h(a))) for a in h.dom.elements) for phi in src.elements))


def postcompose(h: FinSetMor, x: FinSetObj, ceiling: int | None = None) -> FinSetMor:
    """``Y**x -> Y'**x`` for ``h : Y -> Y'``, sending ``phi`` to ``h . phi``."""
    src = function_space(x, h.dom, ceiling)
    dst = function_space(x, h.cod, ceiling)
    return FinSetMor(src, dst, tuple(Fn((a, h(b)) for a, b in phi) for phi in src.elements))


# -- dependent products ---------------------------------------------------------------


def sections(f: FinSetMor, g: FinSetMor, y) -> list[Fn]:
    """Sections over ``f^-1(y)``: maps ``s`` with ``g(s(x)) = x`` for each ``x``."""
    fib = f.fiber(y)
    choices = [g.fiber(x) for x in fib]
    return [Fn(zip(fib, zs)) for zs in product(*choices)]


class DependentProduct:
    """The pushforward ``f_* g`` of ``g : Z -> X`` along ``f : X -> Y``.

    Elements of ``total`` are pairs ``(y, s)`` with ``s`` a section of ``g``
    over the fiber ``f^-1(y)``; ``display`` projects to ``y``.
    """

    def __init__(self, f: FinSetMor, g: FinSetMor, ceiling: int | None = None):
        if g.cod != f.dom:
            raise BoundaryMismatch((f, g), "g must land in the domain of f")
        self.f, self.g, self.ceiling = f, g, ceiling
        size = sum(prod(len(g.fiber(x)) for x in f.fiber(y)) for y in f.cod.elements)
        _guard("dependent product", size, ceiling)
        self.total = FinSetObj((y, s) for y in f.cod.elements for s in sections(f, g, y))
        self.display = FinSetMor(self.total, f.cod, tuple(e[0] for e in self.total.elements))

    def pullback_of(self, p: FinSetMor) -> SetCone:
        """``p* f``: the chosen pullback of ``W --p--> Y <--f-- X``."""
        return pullback(p, self.f, self.ceiling)

    def transpose(self, p: FinSetMor, h: FinSetMor) -> FinSetMor:
        """lambda: a map ``p* f -> Z`` over ``X`` becomes a map ``W -> f_* g`` over ``Y``."""
        pb = self.pullback_of(p)
        if h.dom != pb.apex or h.cod != self.g.dom:
            raise BoundaryMismatch(h, "expected a map out of the pullback into Z")
        if h.then(self.g) != pb.legs["b"]:
            raise BoundaryMismatch(h, "map is not over X")
        images = []
        for w in p.dom.elements:
            y = p(w)
            s = Fn((x, h((("a", w), ("b", x), ("c", y)))) for x in self.f.fiber(y))
            images.append((y, s))
        return FinSetMor(p.dom, self.total, tuple(images))

    def untranspose(self, p: FinSetMor, k: FinSetMor) -> FinSetMor:
        """lambda-bar: the inverse of :meth:`transpose`."""
        if k.dom != p.dom or k.cod != self.total or k.then(self.display) != p:
            raise BoundaryMismatch(k, "expected a map W -> f_* g over Y")
        pb = self.pullback_of(p)
        images = tuple(k(dict(e)["a"])[1](dict(e)["b"]) for e in pb.apex.elements)
        return FinSetMor(pb.apex, self.g.dom, images)

    def left_homs(self, p: FinSetMor) -> list[FinSetMor]:
        """Every map ``p* f -> Z`` over ``X``."""
        pb = self.pullback_of(p)
        choices = [self.g.fiber(dict(e)["b"]) for e in pb.apex.elements]
        return [FinSetMor(pb.apex, self.g.dom, imgs) for imgs in product(*choices)]

    def right_homs(self, p: FinSetMor) -> list[FinSetMor]:
        """Every map ``W -> f_* g`` over ``Y``."""
        choices = [self.display.fiber(p(w)) for w in p.dom.elements]
        return [FinSetMor(p.dom, self.total, imgs) for imgs in product(*choices)]


def dependent_product(f: FinSetMor, g: FinSetMor, ceiling: int | None = None) -> DependentProduct:
    return DependentProduct(f, g, ceiling)


# -- polynomial functors ---------------------------------------------------------------


def polynomial(f: FinSetMor, x: FinSetObj, ceiling: int | None = None) -> FinSetObj:
    """``P_f(x) = sum over A in cod f of x ** f^-1(A)``, elements ``(A, phi)``."""
    size = sum(len(x) ** len(f.fiber(a)) for a in f.cod.elements)
    _guard("polynomial", size, ceiling)
    elems = []
    for a in f.cod.elements:
        fib = f.fiber(a)
        for imgs in product(x.elements, repeat=len(fib)):
            elems.append((a, Fn(zip(fib, imgs))))
    return FinSetObj(elems)


def polynomial_map(f: FinSetMor, h: FinSetMor, ceiling: int | None = None) -> FinSetMor:
    """``P_f(h)``: postcompose ``h`` in every component."""
    src = polynomial(f, h.dom, ceiling)
    dst = polynomial(f, h.cod, ceiling)
    return FinSetMor(src, dst, tuple((a, Fn((k, h(v)) for k, v in phi)) for a, phi in src.elements))


# -- bundled structure --------------------------------------------------------------------


@dataclass(frozen=True)
class FinSetStructure:
    """The chosen finite limits, exponentials and pushforwards on finite sets."""

    ceiling: int = DEFAULT_CEILING

    def terminal(self) -> FinSetObj:
        return terminal()

    def limit(self, shape: FinCategory, diagram: SetFunctor) -> SetCone:
        return limit(shape, diagram, self.ceiling)

    def pullback(self, f: FinSetMor, g: FinSetMor) -> SetCone:
        return pullback(f, g, self.ceiling)

    def exponential(self, x: FinSetObj, y: FinSetObj) -> Exponential:
        return exponential(x, y, self.ceiling)

    def dependent_product(self, f: FinSetMor, g: FinSetMor) -> DependentProduct:
        return dependent_product(f, g, self.ceiling)

    def polynomial(self, f: FinSetMor, x: FinSetObj) -> FinSetObj:
        return polynomial(f, x, self.ceiling)


__all__ = [
    "DEFAULT_CEILING", "DependentProduct", "Exponential", "FinSetMor", "FinSetObj",
    "FinSetStructure", "Fn", "SetCone", "SetFunctor", "all_functions", "check_set_functor", "ckey",
    "compose", "dependent_product", "exponential", "find_set_cone_violation",
    "find_set_functor_violation", "fmt_mor", "fmt_set", "fmt_value", "function_space",
    "is_limiting_set", "limit", "matching_families", "mediating", "polynomial", "polynomial_map",
    "postcompose", "precompose", "product_cone", "pullback", "sections", "terminal",
]
