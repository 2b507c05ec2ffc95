"""Finite categories, functors, natural transformations, presentations and cones.

Everything here is exhaustive: laws are checked on every composable pair or
triple, functor categories are built by enumerating all functors, and limit
cones are certified by enumerating every competing cone.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    AssociativityViolation,
    BoundaryMismatch,
    BoundExceeded,
    CategoryError,
    FunctorialityViolation,
    IdentityLawViolation,
    IllTypedRelation,
    NaturalityViolation,
    NotACone,
)


def identity_name(obj: str) -> str:
    return f"id({obj})"


def _fresh(name: str, taken) -> str:
    while name in taken:
        name += "'"
    return name


class FinCategory:
    """A finite category given by explicit tables.

    ``morphisms`` maps a morphism id to ``(dom, cod)``; ``compose`` maps
    ``(g, f)`` to ``g . f`` for every pair with ``cod f == dom g``.  Categories
    built from a :class:`Presentation` also carry ``paths``, the shortlex-least
    generator path of every morphism, which lets functors be specified on
    generators alone.
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Mapping[str, tuple[str, str]],
        identity: Mapping[str, str],
        compose: Mapping[tuple[str, str], str],
        *,
        paths: Mapping[str, tuple[str, ...]] | None = None,
        presentation: "Presentation | None" = None,
        name: str | None = None,
    ):
        self.objects: tuple[str, ...] = tuple(objects)
        self.morphisms: dict[str, tuple[str, str]] = dict(morphisms)
        self.identity: dict[str, str] = dict(identity)
        self.compose_table: dict[tuple[str, str], str] = dict(compose)
        self.paths = dict(paths) if paths is not None else None
        self.presentation = presentation
        self.name = name
        self._key = None
        self._homs: dict[tuple[str, str], list[str]] | None = None
        self._identities = None

    # -- basic queries ------------------------------------------------------

    def dom(self, f: str) -> str:
        return self.morphisms[f][0]

    def cod(self, f: str) -> str:
        return self.morphisms[f][1]

    def id(self, obj: str) -> str:
        return self.identity[obj]

    def comp(self, g: str, f: str) -> str:
        """``g . f`` (apply ``f`` first)."""
        try:
            return self.compose_table[(g, f)]
        except KeyError:
            raise BoundaryMismatch((g, f), "not composable") from None

    def comp_path(self, fs: Sequence[str], start: str | None = None) -> str:
        """Compose a diagrammatic path ``f1, f2, ...`` (``f1`` applied first)."""
        if not fs:
            if start is None:
                raise ValueError("empty path needs a start object")
            return self.identity[start]
        h = fs[0]
        for g in fs[1:]:
            h = self.comp(g, h)
        return h

    def is_identity(self, f: str) -> bool:
        if self._identities is None:
            self._identities = frozenset(self.identity.values())
        return f in self._identities

    def hom(self, a: str, b: str) -> list[str]:
        if self._homs is None:
            homs: dict[tuple[str, str], list[str]] = {}
            for f, (d, c) in self.morphisms.items():
                homs.setdefault((d, c), []).append(f)
            self._homs = homs
        return self._homs.get((a, b), [])

    def non_identity(self) -> list[str]:
        return [f for f in self.morphisms if not self.is_identity(f)]

    def generators(self) -> list[str]:
        """Morphisms from which every other morphism is a composite."""
        if self.paths is not None:
            return [f for f in self.morphisms if len(self.paths[f]) == 1 and self.paths[f][0] == f]
        return self.non_identity()

    def path_of(self, f: str) -> tuple[str, ...]:
        if self.paths is not None:
            return self.paths[f]
        return () if self.is_identity(f) else (f,)

    def is_iso(self, f: str) -> bool:
        return self.inverse(f) is not None

    def inverse(self, f: str) -> str | None:
        d, c = self.morphisms[f]
        for g in self.hom(c, d):
            if self.comp(g, f) == self.identity[d] and self.comp(f, g) == self.identity[c]:
                return g
        return None

    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self._all_homs().values())

    def _all_homs(self):
        self.hom(self.objects[0], self.objects[0]) if self.objects else None
        return self._homs or {}

    # -- identity -----------------------------------------------------------

    def key(self):
        if self._key is None:
            self._key = (
                tuple(sorted(self.objects)),
                tuple(sorted(self.morphisms.items())),
                tuple(sorted(self.identity.items())),
                tuple(sorted(self.compose_table.items())),
            )
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinCategory{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    # -- small constructors -------------------------------------------------

    @classmethod
    def empty(cls) -> "FinCategory":
        return cls((), {}, {}, {}, paths={}, name="empty")

    @classmethod
    def discrete(cls, names: Iterable[str]) -> "FinCategory":
        names = list(names)
        return present(names, [], [])

    @classmethod
    def terminal(cls, name: str = "pt") -> "FinCategory":
        return cls.discrete([name])

    @classmethod
    def walking_arrow(cls, a: str = "a", b: str = "b", f: str = "f") -> "FinCategory":
        return present([a, b], [(f, a, b)], [])

    @classmethod
    def from_poset(cls, elements: Sequence[str], leq) -> "FinCategory":
        """The thin category of a finite partial order (``leq`` must be one)."""
        morphisms = {}
        identity = {}
        for a in elements:
            for b in elements:
                if leq(a, b):
                    m = identity_name(a) if a == b else f"{a}<={b}"
                    morphisms[m] = (a, b)
            identity[a] = identity_name(a)
        by_pair = {v: k for k, v in morphisms.items()}
        compose = {}
        for f, (a, b) in morphisms.items():
            for g, (b2, c) in morphisms.items():
                if b2 == b:
                    compose[(g, f)] = by_pair[(a, c)]
        return cls(elements, morphisms, identity, compose)


# -- validation -----------------------------------------------------------------


def validate_category(raw) -> FinCategory:
    """Check the category laws exhaustively and return a :class:`FinCategory`.

    ``raw`` is either a FinCategory or a mapping with keys ``objects``,
    ``morphisms``, ``identity`` and ``compose``.  The first violated law is
    raised.
    """
    if isinstance(raw, FinCategory):
        cat = raw
    else:
        cat = FinCategory(raw["objects"], raw["morphisms"], raw["identity"], raw["compose"])
    objects = set(cat.objects)
    if len(objects) != len(cat.objects):
        raise BoundaryMismatch("objects", "duplicate object ids")
    for f, (d, c) in cat.morphisms.items():
        if d not in objects or c not in objects:
            raise BoundaryMismatch(f, f"endpoint of {d} -> {c} is not an object")
    for o in cat.objects:
        i = cat.identity.get(o)
        if i is None or cat.morphisms.get(i) != (o, o):
            raise IdentityLawViolation(str(i), f"identity of {o} missing or mis-typed")
    for (g, f), h in cat.compose_table.items():
        if f not in cat.morphisms or g not in cat.morphisms or h not in cat.morphisms:
            raise BoundaryMismatch((g, f), "unknown morphism in table")
        if cat.cod(f) != cat.dom(g):
            raise BoundaryMismatch((g, f), "entry for a non-composable pair")
        if cat.morphisms[h] != (cat.dom(f), cat.cod(g)):
            raise BoundaryMismatch((g, f), f"{h} has boundary {cat.morphisms[h]}")
    for f, (d, c) in cat.morphisms.items():
        for g in cat.morphisms:
            if cat.dom(g) == c and (g, f) not in cat.compose_table:
                raise BoundaryMismatch((g, f), "missing composite")
    for f, (d, c) in cat.morphisms.items():
        if cat.compose_table[(cat.identity[c], f)] != f:
            raise IdentityLawViolation(f, f"id({c}) . {f} != {f}")
        if cat.compose_table[(f, cat.identity[d])] != f:
            raise IdentityLawViolation(f, f"{f} . id({d}) != {f}")
    out: dict[str, list[str]] = {}
    for f, (d, c) in cat.morphisms.items():
        out.setdefault(d, []).append(f)
    table = cat.compose_table
    for f, (_, b) in cat.morphisms.items():
        for g in out.get(b, ()):
            gf = table[(g, f)]
            for h in out.get(cat.cod(g), ()):
                if table[(h, gf)] != table[(table[(h, g)], f)]:
                    raise AssociativityViolation(h, g, f)
    return cat


# -- presentations ----------------------------------------------------------------

Path = tuple[str, tuple[str, ...]]


@dataclass(frozen=True)
class Presentation:
    """Generators and relations.  A path is ``(start, (f1, f2, ...))``, diagrammatic."""

    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]
    relations: tuple[tuple[Path, Path], ...] = ()
    saturation_bound: int = 32


class _Enumeration:
    """Coset-style enumeration of the morphisms out of one vertex."""

    def __init__(self, source, out, relations_at, cod, bound):
        self.out = out
        self.relations_at = relations_at
        self.cod = cod
        self.bound = bound
        self.source = source
        self.obj: list[str] = []
        self.depth: list[int] = []
        self.table: list[dict[str, int]] = []
        self.parent: list[int] = []

    def find(self, i):
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def new(self, obj, depth):
        if depth > self.bound:
            raise BoundExceeded(self.bound, self.source)
        self.obj.append(obj)
        self.depth.append(depth)
        self.table.append({})
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def follow(self, s, arrow):
        s = self.find(s)
        t = self.table[s].get(arrow)
        if t is None:
            t = self.new(self.cod[arrow], self.depth[s] + 1)
            self.table[s][arrow] = t
        return self.find(t)

    def trace(self, s, path):
        for a in path:
            s = self.follow(s, a)
        return self.find(s)

    def merge(self, a, b):
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            keep, dead = min(a, b), max(a, b)
            self.parent[dead] = keep
            self.depth[keep] = min(self.depth[keep], self.depth[dead])
            for arrow, t in self.table[dead].items():
                mine = self.table[keep].get(arrow)
                if mine is None:
                    self.table[keep][arrow] = t
                else:
                    queue.append((mine, t))
            self.table[dead] = {}

    def run(self):
        self.new(self.source, 0)
        changed = True
        while changed:
            changed = False
            i = 0
            while i < len(self.parent):
                if self.find(i) == i:
                    for p, q in self.relations_at.get(self.obj[i], ()):
                        a, b = self.trace(i, p), self.trace(i, q)
                        if a != b:
                            self.merge(a, b)
                            changed = True
                        if self.find(i) != i:
                            break
                    if self.find(i) == i:
                        before = len(self.parent)
                        for arrow in self.out.get(self.obj[i], ()):
                            self.follow(i, arrow)
                        changed = changed or len(self.parent) != before
                i += 1

    def shortlex(self):
        """Map live state -> shortlex-least path, by BFS over sorted arrows."""
        root = self.find(0)
        names = {root: ()}
        queue = deque([root])
        while queue:
            s = queue.popleft()
            for arrow in sorted(self.out.get(self.obj[s], ())):
                t = self.find(self.table[s][arrow])
                if t not in names:
                    names[t] = names[s] + (arrow,)
                    queue.append(t)
        return names


def _check_path(p: Presentation, path: Path, arrows) -> str:
    start, fs = path
    if start not in p.vertices:
        raise IllTypedRelation(f"path starts at unknown vertex {start}")
    here = start
    for f in fs:
        if f not in arrows:
            raise IllTypedRelation(f"unknown arrow {f}")
        d, c = arrows[f]
        if d != here:
            raise IllTypedRelation(f"arrow {f} : {d} -> {c} does not continue a path at {here}")
        here = c
    return here


def present_category(p: Presentation) -> FinCategory:
    """Quotient of the free path category by the relations.

    Raises :class:`BoundExceeded` if some vertex keeps producing distinct
    morphisms up to ``p.saturation_bound`` path length.
    """
    if p.saturation_bound < 1:
        raise ValueError("saturation_bound must be >= 1")
    arrows = {}
    for name, d, c in p.arrows:
        if d not in p.vertices or c not in p.vertices:
            raise IllTypedRelation(f"arrow {name} has an endpoint outside the vertices")
        if name in arrows:
            raise IllTypedRelation(f"duplicate arrow {name}")
        arrows[name] = (d, c)
    relations_at: dict[str, list] = {}
    for lhs, rhs in p.relations:
        if lhs[0] != rhs[0] or _check_path(p, lhs, arrows) != _check_path(p, rhs, arrows):
            raise IllTypedRelation(f"relation sides are not parallel: {lhs} = {rhs}")
        relations_at.setdefault(lhs[0], []).append((lhs[1], rhs[1]))
    out: dict[str, list[str]] = {}
    for name, (d, _) in arrows.items():
        out.setdefault(d, []).append(name)
    cod = {name: c for name, (_, c) in arrows.items()}

    runs = {}
    for v in p.vertices:
        e = _Enumeration(v, out, relations_at, cod, p.saturation_bound)
        e.run()
        runs[v] = (e, e.shortlex())

    def mor_name(v, path):
        return identity_name(v) if not path else ".".join(path)

    morphisms = {}
    paths = {}
    state_name = {}
    for v in p.vertices:
        e, names = runs[v]
        for s, path in sorted(names.items(), key=lambda kv: (len(kv[1]), kv[1])):
            m = mor_name(v, path)
            morphisms[m] = (v, e.obj[s])
            paths[m] = path
            state_name[(v, s)] = m
    compose = {}
    for v in p.vertices:
        e, names = runs[v]
        for s in names:
            f = state_name[(v, s)]
            a = e.obj[s]
            _, names_a = runs[a]
            for _, path_g in names_a.items():
                g = mor_name(a, path_g)
                t = s
                for arrow in path_g:
                    t = e.find(e.table[t][arrow])
                compose[(g, f)] = state_name[(v, t)]
    identity = {v: identity_name(v) for v in p.vertices}
    cat = FinCategory(p.vertices, morphisms, identity, compose, paths=paths, presentation=p)
    return validate_category(cat)


def present(vertices, arrows, relations=(), bound: int = 32, name: str | None = None) -> FinCategory:
    """Shorthand: relations given as pairs of dotted strings, e.g. ``("n.e", "w.s")``."""
    arrow_dom = {a: d for a, d, _ in arrows}

    def parse(text):
        text = text.strip()
        if text.startswith("id(") and text.endswith(")"):
            return (text[3:-1], ())
        fs = tuple(x.strip() for x in text.split("."))
        if fs[0] not in arrow_dom:
            raise IllTypedRelation(f"unknown arrow {fs[0]}")
        return (arrow_dom[fs[0]], fs)

    rels = tuple((parse(a) if isinstance(a, str) else a, parse(b) if isinstance(b, str) else b)
                 for a, b in relations)
    pres = Presentation(tuple(vertices), tuple(tuple(a) for a in arrows), rels, bound)
    cat = present_category(pres)
    cat.name = name
    return cat


# -- functors and natural transformations ----------------------------------------


class Functor:
    """A functor between finite categories, tabulated on every morphism."""

    def __init__(self, source: FinCategory, target: FinCategory,
                 obj_map: Mapping[str, str], mor_map: Mapping[str, str]):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        self._key = None

    @classmethod
    def from_generators(cls, source, target, obj_map, gen_map) -> "Functor":
        """Extend an assignment on generators along ``source.paths``."""
        mor_map = {}
        for f in source.morphisms:
            if f in gen_map:
                mor_map[f] = gen_map[f]
                continue
            path = source.path_of(f)
            if not path:
                mor_map[f] = target.id(obj_map[source.dom(f)])
                continue
            images = []
            for g in path:
                if g not in gen_map:
                    raise FunctorialityViolation(f"generator {g} is not mapped", g)
                images.append(gen_map[g])
            try:
                mor_map[f] = target.comp_path(images)
            except BoundaryMismatch:
                raise FunctorialityViolation(f"images along the path of {f} do not compose", f) from None
        return cls(source, target, obj_map, mor_map)

    def obj(self, x: str) -> str:
        return self.obj_map[x]

    def mor(self, f: str) -> str:
        return self.mor_map[f]

    def key(self):
        if self._key is None:
            self._key = (tuple(sorted(self.obj_map.items())), tuple(sorted(self.mor_map.items())))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return self.key() == other.key() and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        objs = ", ".join(f"{k}->{v}" for k, v in sorted(self.obj_map.items()))
        return f"Functor({objs})"

    def then(self, g: "Functor") -> "Functor":
        """``g . self``."""
        return Functor(self.source, g.target,
                       {x: g.obj(y) for x, y in self.obj_map.items()},
                       {f: g.mor(h) for f, h in self.mor_map.items()})

    @classmethod
    def identity(cls, c: FinCategory) -> "Functor":
        return cls(c, c, {o: o for o in c.objects}, {f: f for f in c.morphisms})

    @classmethod
    def constant(cls, c: FinCategory, a: FinCategory, obj: str) -> "Functor":
        return cls(c, a, {o: obj for o in c.objects}, {f: a.id(obj) for f in c.morphisms})


def find_functor_violation(F: Functor) -> str | None:
    """Return a description of the first functor law that fails, or ``None``."""
    c, a = F.source, F.target
    for o in c.objects:
        if o not in F.obj_map or F.obj_map[o] not in a.identity:
            return f"object {o} is not mapped to an object"
    for f, (d, cd) in c.morphisms.items():
        g = F.mor_map.get(f)
        if g is None or g not in a.morphisms:
            return f"morphism {f} is not mapped to a morphism"
        if a.morphisms[g] != (F.obj_map[d], F.obj_map[cd]):
            return f"{f} : {d} -> {cd} is sent to {g} : {a.dom(g)} -> {a.cod(g)}"
    for o in c.objects:
        if F.mor_map[c.id(o)] != a.id(F.obj_map[o]):
            return f"identity of {o} is not preserved"
    for (g, f), h in c.compose_table.items():
        if a.comp(F.mor_map[g], F.mor_map[f]) != F.mor_map[h]:
            return f"composite {g} . {f} = {h} is not preserved"
    return None


def check_functor(F: Functor) -> Functor:
    problem = find_functor_violation(F)
    if problem is not None:
        raise FunctorialityViolation(problem, problem)
    return F


class NatTransformation:
    """Components ``source.obj(x) -> target.obj(x)`` in the common target category."""

    def __init__(self, source: Functor, target: Functor, components: Mapping[str, str]):
        self.source = source
        self.target = target
        self.components = dict(components)
        self._key = None

    def key(self):
        if self._key is None:
            self._key = (self.source.key(), self.target.key(), tuple(sorted(self.components.items())))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, NatTransformation):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        comps = ", ".join(f"{k}:{v}" for k, v in sorted(self.components.items()))
        return f"Nat({comps})"

    def then(self, other: "NatTransformation") -> "NatTransformation":
        """Vertical composite ``other . self``."""
        a = self.source.target
        comps = {x: a.comp(other.components[x], m) for x, m in self.components.items()}
        return NatTransformation(self.source, other.target, comps)

    @classmethod
    def identity(cls, F: Functor) -> "NatTransformation":
        return cls(F, F, {x: F.target.id(y) for x, y in F.obj_map.items()})


def find_naturality_violation(t: NatTransformation) -> str | None:
    F, G = t.source, t.target
    c, a = F.source, F.target
    for x in c.objects:
        m = t.components.get(x)
        if m is None or a.morphisms.get(m) != (F.obj(x), G.obj(x)):
            return f"component at {x} is missing or has the wrong boundary"
    for f, (x, y) in c.morphisms.items():
        if a.comp(G.mor(f), t.components[x]) != a.comp(t.components[y], F.mor(f)):
            return f"naturality square at {f} does not commute"
    return None


def check_natural(t: NatTransformation) -> NatTransformation:
    problem = find_naturality_violation(t)
    if problem is not None:
        raise NaturalityViolation(problem, problem)
    return t


# -- enumeration ----------------------------------------------------------------------


def _generator_plan(c: FinCategory):
    """Order generators and record, per step, which table entries become checkable."""
    gens = c.generators()
    gen_index = {g: i for i, g in enumerate(gens)}
    end = len(gens)
    obj_ready = {}
    for i, g in enumerate(gens):
        for o in c.morphisms[g]:
            obj_ready.setdefault(o, i)
    for o in c.objects:
        obj_ready.setdefault(o, end)
    ready = {}
    composites: list[list[str]] = [[] for _ in range(end + 1)]
    for f in c.morphisms:
        if c.is_identity(f):
            ready[f] = obj_ready[c.dom(f)]
        elif f in gen_index:
            ready[f] = gen_index[f]
        else:
            path = c.path_of(f)
            r = max(gen_index[g] for g in path)
            ready[f] = r
            composites[r].append(f)
    checks: list[list[tuple[str, str, str]]] = [[] for _ in range(end + 1)]
    for (g, f), h in c.compose_table.items():
        if c.is_identity(f) or c.is_identity(g):
            continue
        checks[max(ready[g], ready[f], ready[h])].append((g, f, h))
    loose = [o for o in c.objects if obj_ready[o] == end]
    return gens, composites, checks, loose


def enumerate_functors(c: FinCategory, a: FinCategory) -> Iterator[Functor]:
    """All functors ``c -> a`` in a deterministic order."""
    gens, composites, checks, loose = _generator_plan(c)
    obj_img: dict[str, str] = {}
    mor_img: dict[str, str] = {}
    out_of: dict[str, list[str]] = {}
    for f, (d, _) in a.morphisms.items():
        out_of.setdefault(d, []).append(f)

    def image(f):
        if c.is_identity(f):
            return a.id(obj_img[c.dom(f)])
        return mor_img[f]

    def settle(step) -> bool:
        for f in composites[step]:
            mor_img[f] = a.comp_path([mor_img[g] for g in c.path_of(f)])
        for g, f, h in checks[step]:
            if a.comp(mor_img[g], mor_img[f]) != image(h):
                return False
        return True

    def finish():
        for objs in product(a.objects, repeat=len(loose)):
            for o, x in zip(loose, objs):
                obj_img[o] = x
            ok = settle(len(gens))
            if ok:
                full = dict(mor_img)
                for o in c.objects:
                    full[c.id(o)] = a.id(obj_img[o])
                yield Functor(c, a, dict(obj_img), full)
            for o in loose:
                obj_img.pop(o, None)

    def rec(i):
        if i == len(gens):
            yield from finish()
            return
        g = gens[i]
        d, cd = c.morphisms[g]
        if d in obj_img:
            candidates = out_of.get(obj_img[d], [])
        else:
            candidates = list(a.morphisms)
        for m in candidates:
            md, mc = a.morphisms[m]
            new = []
            if d in obj_img:
                if obj_img[d] != md:
                    continue
            else:
                obj_img[d] = md
                new.append(d)
            if cd in obj_img:
                if obj_img[cd] != mc:
                    for o in new:
                        del obj_img[o]
                    continue
            else:
                obj_img[cd] = mc
                new.append(cd)
            mor_img[g] = m
            if settle(i):
                yield from rec(i + 1)
            del mor_img[g]
            for f in composites[i]:
                mor_img.pop(f, None)
            for o in new:
                del obj_img[o]

    yield from rec(0)


def enumerate_transformations(F: Functor, G: Functor) -> Iterator[NatTransformation]:
    c, a = F.source, F.target
    objs = list(c.objects)
    pos = {o: i for i, o in enumerate(objs)}
    checks: list[list[str]] = [[] for _ in objs]
    for f in c.generators():
        x, y = c.morphisms[f]
        checks[max(pos[x], pos[y])].append(f)
    comps: dict[str, str] = {}

    def rec(i):
        if i == len(objs):
            yield NatTransformation(F, G, dict(comps))
            return
        x = objs[i]
        for m in a.hom(F.obj(x), G.obj(x)):
            comps[x] = m
            ok = True
            for f in checks[i]:
                s, t = c.morphisms[f]
                if a.comp(G.mor(f), comps[s]) != a.comp(comps[t], F.mor(f)):
                    ok = False
                    break
            if ok:
                yield from rec(i + 1)
        comps.pop(x, None)

    yield from rec(0)


def functor_id(F: Functor) -> str:
    gens = F.source.generators()
    objs = ",".join(f"{k}:{F.obj_map[k]}" for k in F.source.objects)
    mors = ",".join(f"{g}:{F.mor_map[g]}" for g in gens)
    return f"[{objs}|{mors}]" if mors else f"[{objs}]"


class FunctorCategory(FinCategory):
    """``[c, a]`` with lookup tables from ids back to functors and transformations."""

    functors: dict[str, Functor]
    transformations: dict[str, NatTransformation]


def functor_category(c: FinCategory, a: FinCategory) -> FunctorCategory:
    functors = list(enumerate_functors(c, a))
    fid = {F: functor_id(F) for F in functors}
    by_id = {fid[F]: F for F in functors}
    morphisms = {}
    trans = {}
    ident = {}
    by_trans = {}
    for F in functors:
        for G in functors:
            for t in enumerate_transformations(F, G):
                comps = ",".join(t.components[o] for o in c.objects)
                name = f"{fid[F]}=>{fid[G]}<{comps}>"
                morphisms[name] = (fid[F], fid[G])
                trans[name] = t
                by_trans[t] = name
                if F is G and all(a.is_identity(m) for m in t.components.values()):
                    ident[fid[F]] = name
    compose = {}
    out: dict[str, list[str]] = {}
    for name, (d, _) in morphisms.items():
        out.setdefault(d, []).append(name)
    for f, (_, b) in morphisms.items():
        for g in out.get(b, ()):
            compose[(g, f)] = by_trans[trans[f].then(trans[g])]
    cat = FunctorCategory(list(by_id), morphisms, ident, compose)
    cat.functors = by_id
    cat.transformations = trans
    return cat


# -- cones and limits ---------------------------------------------------------------------


def cone_shape(d: FinCategory) -> tuple[FinCategory, Functor]:
    """``d`` with a freely adjoined initial object, plus the inclusion of ``d``."""
    taken = set(d.objects) | set(d.morphisms)
    apex = _fresh("apex", taken)
    objects = (apex,) + d.objects
    morphisms = {identity_name(apex): (apex, apex)}
    taken.add(identity_name(apex))
    legs = {}
    for o in d.objects:
        legs[o] = _fresh(f"leg_{o}", taken)
        taken.add(legs[o])
    for o in d.objects:
        morphisms[legs[o]] = (apex, o)
    morphisms.update(d.morphisms)
    identity = dict(d.identity)
    identity[apex] = identity_name(apex)
    compose = dict(d.compose_table)
    ida = identity[apex]
    compose[(ida, ida)] = ida
    for o in d.objects:
        compose[(legs[o], ida)] = legs[o]
        for g in d.morphisms:
            if d.dom(g) == o:
                compose[(g, legs[o])] = legs[d.cod(g)]
    paths = None
    if d.paths is not None:
        paths = dict(d.paths)
        paths[ida] = ()
        for o in d.objects:
            paths[legs[o]] = (legs[o],)
    if d.presentation is not None:
        # Keep the result presented so that its generators are those of ``d`` plus the legs.
        p = d.presentation
        rels = list(p.relations)
        for u, s, t in p.arrows:
            rels.append(((apex, (legs[s], u)), (apex, (legs[t],))))
        arrows = tuple((legs[o], apex, o) for o in d.objects) + tuple(p.arrows)
        cat = present_category(Presentation(objects, arrows, tuple(rels), p.saturation_bound))
        if cat.key() != FinCategory(objects, morphisms, identity, compose).key():
            raise AssertionError("presented cone shape disagrees with the direct construction")
    else:
        cat = validate_category(FinCategory(objects, morphisms, identity, compose, paths=paths))
    cat.apex = apex
    cat.legs = legs
    inclusion = Functor(d, cat, {o: o for o in d.objects}, {f: f for f in d.morphisms})
    return cat, inclusion


@dataclass
class Cone:
    """A cone over ``diagram : shape -> A`` with the given apex and legs."""

    shape: FinCategory
    diagram: Functor
    apex: str
    legs: dict[str, str]

    @property
    def target(self) -> FinCategory:
        return self.diagram.target


def find_cone_violation(cone: Cone) -> str | None:
    a = cone.target
    for i in cone.shape.objects:
        leg = cone.legs.get(i)
        if leg is None or a.morphisms.get(leg) != (cone.apex, cone.diagram.obj(i)):
            return f"leg at {i} is missing or has the wrong boundary"
    for u, (i, j) in cone.shape.morphisms.items():
        if a.comp(cone.diagram.mor(u), cone.legs[i]) != cone.legs[j]:
            return f"leg at {j} does not factor through {u}"
    return None


@dataclass
class LimitCertificate:
    """Outcome of :func:`is_limiting`.

    When ``limiting`` holds, ``mediators`` pairs every competing cone with its
    unique mediating morphism.  Otherwise ``witness`` is a competing cone and
    the (empty or plural) list of its mediators.
    """

    limiting: bool
    mediators: list = field(default_factory=list)
    witness: tuple | None = None

    def __bool__(self):
        return self.limiting


def enumerate_cones(shape: FinCategory, diagram: Functor) -> Iterator[Cone]:
    a = diagram.target
    objs = list(shape.objects)
    for x in a.objects:
        choices = [a.hom(x, diagram.obj(i)) for i in objs]
        for legs in product(*choices):
            cone = Cone(shape, diagram, x, dict(zip(objs, legs)))
            if find_cone_violation(cone) is None:
                yield cone


def is_limiting(cone) -> LimitCertificate:
    """Certify that ``cone`` is a limit cone by checking every competing cone.

    Cones into a finite category are checked against all cones over the same
    diagram.  Cones of finite sets are delegated to :mod:`lccsketch.finset`.
    """
    if not isinstance(cone, Cone):
        from .finset import is_limiting_set

        return is_limiting_set(cone)
    problem = find_cone_violation(cone)
    if problem is not None:
        raise NotACone(problem)
    a = cone.target
    mediators = []
    for other in enumerate_cones(cone.shape, cone.diagram):
        found = [
            m for m in a.hom(other.apex, cone.apex)
            if all(a.comp(cone.legs[i], m) == other.legs[i] for i in cone.shape.objects)
        ]
        if len(found) != 1:
            return LimitCertificate(False, witness=(other, found))
        mediators.append((other, found[0]))
    return LimitCertificate(True, mediators=mediators)


def limits_in(shape: FinCategory, diagram: Functor) -> list[Cone]:
    """Every limiting cone over ``diagram`` (brute force)."""
    return [c for c in enumerate_cones(shape, diagram) if is_limiting(c)]


# -- a few standard shapes -------------------------------------------------------------


def walking_cospan() -> FinCategory:
    """``a --f--> c <--g-- b``."""
    return present(["a", "b", "c"], [("f", "a", "c"), ("g", "b", "c")], name="cospan")


def commutative_square() -> FinCategory:
    """``nw --n--> ne --e--> se`` and ``nw --w--> sw --s--> se`` with ``n.e = w.s``."""
    return present(
        ["nw", "ne", "sw", "se"],
        [("n", "nw", "ne"), ("w", "nw", "sw"), ("e", "ne", "se"), ("s", "sw", "se")],
        [("n.e", "w.s")],
        name="square",
    )


def arrow_category(d: FinCategory) -> FinCategory:
    """``d x {0 -> 1}``: a functor out of it is a natural transformation of ``d``-diagrams."""
    arrows = []
    relations = []
    for o in d.objects:
        arrows.append((f"t_{o}", f"{o}_0", f"{o}_1"))
    gens = d.generators()
    for g in gens:
        x, y = d.morphisms[g]
        arrows.append((f"{g}_0", f"{x}_0", f"{y}_0"))
        arrows.append((f"{g}_1", f"{x}_1", f"{y}_1"))
        relations.append((f"{g}_0.t_{y}", f"t_{x}.{g}_1"))
    if d.presentation is not None:
        for (s1, p1), (s2, p2) in d.presentation.relations:
            for lvl in ("0", "1"):
                lhs = (f"{s1}_{lvl}", tuple(f"{a}_{lvl}" for a in p1))
                rhs = (f"{s2}_{lvl}", tuple(f"{a}_{lvl}" for a in p2))
                relations.append((lhs, rhs))
    elif gens:
        raise CategoryError("arrow_category needs a presented category")
    objects = [f"{o}_{lvl}" for lvl in ("0", "1") for o in d.objects]
    return present(objects, arrows, relations)


def level_inclusion(d: FinCategory, arrow_cat: FinCategory, level: str) -> Functor:
    """The inclusion ``d -> d x {0 -> 1}`` at level ``0`` or ``1``."""
    obj_map = {o: f"{o}_{level}" for o in d.objects}
    gen_map = {g: f"{g}_{level}" for g in d.generators()}
    return Functor.from_generators(d, arrow_cat, obj_map, gen_map)
