"""Operation signatures, derived operations, algebras and equation checking.

A signature assigns to each operation an arity category ``d`` and a result
category ``S(d)``.  An algebra on a finite category ``A`` turns every diagram
``d -> A`` into a diagram ``S(d) -> A``, functorially in natural
transformations.  Derived terms nest operations; an equation compares two
derived terms in every environment ``c -> A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Protocol

from .errors import CategoryError, FunctorialityViolation, GuardrailExceeded, SketchError
from .fincat import (
    FinCategory,
    Functor,
    NatTransformation,
    enumerate_functors,
    enumerate_transformations,
    find_functor_violation,
    find_naturality_violation,
    functor_category,
)

ENRICHMENTS = ("cat", "grpd")


class AlgebraError(SketchError):
    pass


@dataclass(frozen=True)
class Operation:
    name: str
    arity: FinCategory
    result: FinCategory
    arity_ref: str = ""
    result_ref: str = ""


@dataclass(frozen=True)
class Signature:
    operations: tuple[Operation, ...]
    enrichment: str = "cat"

    def __post_init__(self):
        if self.enrichment not in ENRICHMENTS:
            raise ValueError(f"enrichment must be one of {ENRICHMENTS}")

    def op(self, name: str) -> Operation:
        for o in self.operations:
            if o.name == name:
                return o
        raise KeyError(name)

    @property
    def names(self) -> list[str]:
        return [o.name for o in self.operations]


# -- derived terms --------------------------------------------------------------------


class DerivedTerm:
    __slots__ = ()

    def __str__(self):
        return fmt_term(self)


Arg = tuple  # ((cell, DerivedTerm), ...) over objects and generating morphisms of the arity


@dataclass(frozen=True)
class Var(DerivedTerm):
    """A free variable: an object or morphism of the environment's shape."""

    cell: str


@dataclass(frozen=True)
class OpObj(DerivedTerm):
    """The object ``nu_op(arg)(cell)``."""

    op: str
    cell: str
    arg: Arg


@dataclass(frozen=True)
class OpMor(DerivedTerm):
    """``nu_op(theta)_{cod cell} . nu_op(src)(cell)`` for ``theta : src => tgt``."""

    op: str
    cell: str
    src: Arg
    tgt: Arg
    comps: tuple  # ((object of the arity, DerivedTerm), ...)


@dataclass(frozen=True)
class TComp(DerivedTerm):
    """Composite ``g . f`` computed in the carrier."""

    g: DerivedTerm
    f: DerivedTerm


@dataclass(frozen=True)
class TId(DerivedTerm):
    """Identity on an object term."""

    t: DerivedTerm


def stage(t: DerivedTerm) -> int:
    if isinstance(t, Var):
        return 0
    if isinstance(t, OpObj):
        return 1 + max((stage(x) for _, x in t.arg), default=0)
    if isinstance(t, OpMor):
        parts = [x for _, x in t.src] + [x for _, x in t.tgt] + [x for _, x in t.comps]
        return 1 + max((stage(x) for x in parts), default=0)
    if isinstance(t, TComp):
        return max(stage(t.g), stage(t.f))
    if isinstance(t, TId):
        return stage(t.t)
    raise TypeError(t)


def is_morphism_term(t: DerivedTerm, c: FinCategory, sig: Signature) -> bool:
    if isinstance(t, Var):
        if t.cell in c.morphisms:
            return True
        if t.cell in c.objects:
            return False
        raise AlgebraError(f"variable {t.cell} is not a cell of the arity")
    if isinstance(t, OpObj):
        return False
    return True


def _fmt_name(name):
    from .lexpr import fmt_name

    return fmt_name(name)


def _fmt_arg(arg: Arg) -> str:
    return ", ".join(f"{_fmt_name(k)} = {fmt_term(v)}" for k, v in arg)


def fmt_term(t: DerivedTerm) -> str:
    if isinstance(t, Var):
        return f"var({_fmt_name(t.cell)})"
    if isinstance(t, OpObj):
        return f"op({_fmt_name(t.op)}:{_fmt_name(t.cell)}; {_fmt_arg(t.arg)})"
    if isinstance(t, OpMor):
        if t.src == t.tgt and all(isinstance(v, TId) for _, v in t.comps):
            return f"op({_fmt_name(t.op)}:{_fmt_name(t.cell)}; {_fmt_arg(t.src)})"
        return (f"op({_fmt_name(t.op)}:{_fmt_name(t.cell)}; {_fmt_arg(t.src)} => "
                f"{_fmt_arg(t.tgt)}; {_fmt_arg(t.comps)})")
    if isinstance(t, TComp):
        return f"comp({fmt_term(t.g)}; {fmt_term(t.f)})"
    if isinstance(t, TId):
        return f"id({fmt_term(t.t)})"
    raise TypeError(t)


def identity_comps(d: FinCategory, arg: Arg) -> tuple:
    objs = dict(arg)
    return tuple((o, TId(objs[o])) for o in d.objects)


def op_mor(sig: Signature, op: str, cell: str, src: Arg, tgt: Arg | None = None, comps=None) -> OpMor:
    """Build an :class:`OpMor`; omitted ``tgt``/``comps`` mean the identity transformation."""
    d = sig.op(op).arity
    if tgt is None:
        tgt = src
    if comps is None:
        comps = identity_comps(d, src)
    return OpMor(op, cell, tuple(src), tuple(tgt), tuple(comps))


# -- algebras ---------------------------------------------------------------------------


class OperationImpl(Protocol):
    def on_object(self, F: Functor) -> Functor: ...

    def on_morphism(self, t: NatTransformation) -> NatTransformation: ...


class TabulatedOperation:
    """An operation on a thin carrier given by its action on objects.

    ``table`` maps the sorted object assignment of an argument diagram to the
    object assignment of the result diagram; morphisms are forced by thinness.
    """

    def __init__(self, op: Operation, carrier: FinCategory, table: Mapping[tuple, Mapping[str, str]]):
        self.op = op
        self.carrier = carrier
        self.table = {tuple(sorted(k)): dict(v) for k, v in table.items()}

    def _unique(self, a, b):
        homs = self.carrier.hom(a, b)
        if len(homs) != 1:
            raise AlgebraError(f"carrier is not thin at {a} -> {b} ({len(homs)} maps)")
        return homs[0]

    def on_object(self, F: Functor) -> Functor:
        key = tuple(sorted(F.obj_map.items()))
        if key not in self.table:
            raise AlgebraError(f"operation {self.op.name} has no value at {dict(key)}")
        objs = self.table[key]
        s = self.op.result
        mors = {}
        for f, (x, y) in s.morphisms.items():
            homs = self.carrier.hom(objs[x], objs[y])
            if not homs:
                raise AlgebraError(f"operation {self.op.name}: no map for {f} at {dict(key)}")
            mors[f] = homs[0]
        return Functor(s, self.carrier, objs, mors)

    def on_morphism(self, t: NatTransformation) -> NatTransformation:
        F, G = self.on_object(t.source), self.on_object(t.target)
        comps = {}
        for s in self.op.result.objects:
            homs = self.carrier.hom(F.obj(s), G.obj(s))
            if not homs:
                raise AlgebraError(f"operation {self.op.name}: no component at {s}")
            comps[s] = homs[0]
        return NatTransformation(F, G, comps)


class Algebra:
    """A carrier category with an implementation of every operation of ``sig``."""

    def __init__(self, sig: Signature, carrier: FinCategory, nu: Mapping[str, OperationImpl]):
        self.signature = sig
        self.carrier = carrier
        self.nu = dict(nu)
        missing = [o.name for o in sig.operations if o.name not in self.nu]
        if missing:
            raise AlgebraError(f"no implementation for {', '.join(missing)}")
        self._obj_cache: dict = {}
        self._mor_cache: dict = {}

    def apply(self, op: str, F: Functor) -> Functor:
        key = (op, F.key())
        hit = self._obj_cache.get(key)
        if hit is None:
            hit = self.nu[op].on_object(F)
            self._obj_cache[key] = hit
        return hit

    def apply_mor(self, op: str, t: NatTransformation) -> NatTransformation:
        key = (op, t.key())
        hit = self._mor_cache.get(key)
        if hit is None:
            hit = self.nu[op].on_morphism(t)
            self._mor_cache[key] = hit
        return hit


def _is_iso_trans(t: NatTransformation) -> bool:
    a = t.source.target
    return all(a.is_iso(m) for m in t.components.values())


def validate_algebra(alg: Algebra, max_checks: int | None = None) -> list[str]:
    """Exhaustively check that every ``nu`` is a functor between functor categories.

    Under groupoid enrichment only invertible transformations are checked.
    Returns the list of problems (empty when valid).
    """
    problems = []
    a = alg.carrier
    grpd = alg.signature.enrichment == "grpd"
    checks = 0
    for op in alg.signature.operations:
        functors = list(enumerate_functors(op.arity, a))
        images = {}
        for F in functors:
            try:
                G = alg.apply(op.name, F)
            except SketchError as err:
                problems.append(f"{op.name}: {err}")
                continue
            problem = find_functor_violation(G)
            if problem is not None or G.source != op.result:
                problems.append(f"{op.name} at {dict(F.obj_map)}: result is not a diagram: {problem}")
                continue
            images[F.key()] = G
        trans = {}
        for F in functors:
            for G in functors:
                for t in enumerate_transformations(F, G):
                    if grpd and not _is_iso_trans(t):
                        continue
                    if F.key() not in images or G.key() not in images:
                        continue
                    checks += 1
                    if max_checks is not None and checks > max_checks:
                        raise GuardrailExceeded("algebra validation", checks, max_checks)
                    try:
                        u = alg.apply_mor(op.name, t)
                    except SketchError as err:
                        problems.append(f"{op.name}: {err}")
                        continue
                    if u.source.key() != images[F.key()].key() or u.target.key() != images[G.key()].key():
                        problems.append(f"{op.name}: transformation has the wrong boundary")
                        continue
                    problem = find_naturality_violation(u)
                    if problem is not None:
                        problems.append(f"{op.name}: image of a transformation is not natural: {problem}")
                    trans[t.key()] = (t, u)
        for F in functors:
            if F.key() not in images:
                continue
            ident = NatTransformation.identity(F)
            if ident.key() in trans and trans[ident.key()][1] != NatTransformation.identity(images[F.key()]):
                problems.append(f"{op.name}: identity at {dict(F.obj_map)} is not preserved")
        by_src: dict = {}
        for key, (t, u) in trans.items():
            by_src.setdefault(t.source.key(), []).append((t, u))
        for key, (t, u) in trans.items():
            for t2, u2 in by_src.get(t.target.key(), []):
                comp = t.then(t2)
                if comp.key() in trans and trans[comp.key()][1] != u.then(u2):
                    problems.append(f"{op.name}: composition of transformations is not preserved")
                    break
    return problems


# -- evaluation of derived terms ------------------------------------------------------------


class Evaluator:
    """Evaluate derived terms over one environment ``c -> carrier``."""

    def __init__(self, alg: Algebra, env: Functor):
        self.alg = alg
        self.env = env
        self.c = env.source
        self.carrier = alg.carrier
        self.grpd = alg.signature.enrichment == "grpd"
        self._memo: dict = {}

    def arg_functor(self, op: str, arg: Arg) -> Functor:
        d = self.alg.signature.op(op).arity
        assigned = dict(arg)
        objs = {o: self.value(assigned[o]) for o in d.objects}
        gens = {u: self.value(assigned[u]) for u in d.generators()}
        for u, m in gens.items():
            x, y = d.morphisms[u]
            if self.carrier.morphisms.get(m) != (objs[x], objs[y]):
                raise AlgebraError(f"argument of {op}: {u} evaluates with the wrong boundary")
        try:
            F = Functor.from_generators(d, self.carrier, objs, gens)
        except (CategoryError, KeyError) as err:
            raise AlgebraError(f"argument of {op} is not a diagram: {err}") from None
        problem = find_functor_violation(F)
        if problem is not None:
            raise AlgebraError(f"argument of {op} is not a diagram: {problem}")
        return F

    def value(self, t: DerivedTerm) -> str:
        hit = self._memo.get(t)
        if hit is not None:
            return hit
        out = self._value(t)
        self._memo[t] = out
        return out

    def _value(self, t: DerivedTerm) -> str:
        a = self.carrier
        if isinstance(t, Var):
            if t.cell in self.c.objects:
                return self.env.obj(t.cell)
            return self.env.mor(t.cell)
        if isinstance(t, OpObj):
            return self.alg.apply(t.op, self.arg_functor(t.op, t.arg)).obj(t.cell)
        if isinstance(t, OpMor):
            op = self.alg.signature.op(t.op)
            F = self.arg_functor(t.op, t.src)
            G = self.arg_functor(t.op, t.tgt)
            comps = {o: self.value(m) for o, m in t.comps}
            theta = NatTransformation(F, G, comps)
            problem = find_naturality_violation(theta)
            if problem is not None:
                raise AlgebraError(f"transformation argument of {t.op} is not natural: {problem}")
            if self.grpd and not _is_iso_trans(theta):
                raise NotInvertible(t.op)
            nu_f = self.alg.apply(t.op, F)
            if F.key() == G.key() and all(a.is_identity(m) for m in comps.values()):
                return nu_f.mor(t.cell)
            nu_t = self.alg.apply_mor(t.op, theta)
            return a.comp(nu_t.components[op.result.cod(t.cell)], nu_f.mor(t.cell))
        if isinstance(t, TComp):
            g, f = self.value(t.g), self.value(t.f)
            if a.cod(f) != a.dom(g):
                raise AlgebraError(f"{fmt_term(t)} is not composable in the carrier")
            return a.comp(g, f)
        if isinstance(t, TId):
            return a.id(self.value(t.t))
        raise TypeError(t)


class NotInvertible(AlgebraError):
    """A transformation argument is not invertible under groupoid enrichment."""


# -- derived operations ---------------------------------------------------------------------


def _var_category(c: FinCategory):
    obj_term = {f"var({o})": Var(o) for o in c.objects}
    mor_term = {f"var({f})": Var(f) for f in c.morphisms}
    return obj_term, mor_term


@dataclass
class DerivedOps:
    """``S^n(c)`` with the term denoted by every cell."""

    category: FinCategory
    n: int
    obj_terms: dict
    mor_terms: dict

    def cell(self, t: DerivedTerm) -> str:
        return fmt_term(t)


def derived_ops(sig: Signature, c: FinCategory, n: int, ceiling: int = 20000) -> DerivedOps:
    """``S^0(c) = c``; ``S^{k+1}(c) = c + sum_d S(d) x [d, S^k(c)]``, built literally."""
    if n < 0:
        raise ValueError("stage must be >= 0")
    objects = [f"var({o})" for o in c.objects]
    morphisms = {f"var({f})": (f"var({d})", f"var({cd})") for f, (d, cd) in c.morphisms.items()}
    identity = {f"var({o})": f"var({c.id(o)})" for o in c.objects}
    compose = {(f"var({g})", f"var({f})"): f"var({h})" for (g, f), h in c.compose_table.items()}
    obj_terms = {f"var({o})": Var(o) for o in c.objects}
    mor_terms = {f"var({f})": Var(f) for f in c.morphisms}
    current = FinCategory(objects, morphisms, identity, compose)
    for _ in range(n):
        objects = [f"var({o})" for o in c.objects]
        morphisms = {f"var({f})": (f"var({d})", f"var({cd})") for f, (d, cd) in c.morphisms.items()}
        identity = {f"var({o})": f"var({c.id(o)})" for o in c.objects}
        compose = {(f"var({g})", f"var({f})"): f"var({h})" for (g, f), h in c.compose_table.items()}
        new_obj_terms = {f"var({o})": Var(o) for o in c.objects}
        new_mor_terms = {f"var({f})": Var(f) for f in c.morphisms}
        for op in sig.operations:
            d, s = op.arity, op.result
            fc = functor_category(d, current)
            if len(objects) + len(fc.objects) * len(s.objects) > ceiling:
                raise GuardrailExceeded("derived operations", len(objects) + len(fc.objects) * len(s.objects), ceiling)
            args = {}
            for fid, F in fc.functors.items():
                args[fid] = tuple((x, obj_terms[F.obj(x)]) for x in d.objects) + tuple(
                    (u, mor_terms[F.mor(u)]) for u in d.generators())
            obj_name = {}
            for fid in fc.objects:
                for x in s.objects:
                    t = OpObj(op.name, x, args[fid])
                    name = fmt_term(t)
                    obj_name[(x, fid)] = name
                    objects.append(name)
                    new_obj_terms[name] = t
            mor_name = {}
            for tid, (fa, fb) in fc.morphisms.items():
                theta = fc.transformations[tid]
                comps = tuple((o, mor_terms[theta.components[o]]) for o in d.objects)
                for sigma, (x, y) in s.morphisms.items():
                    if fa == fb and fc.identity[fa] == tid:
                        comps_t = identity_comps(d, args[fa])
                    else:
                        comps_t = comps
                    t = OpMor(op.name, sigma, args[fa], args[fb], comps_t)
                    name = fmt_term(t)
                    mor_name[(sigma, tid)] = name
                    morphisms[name] = (obj_name[(x, fa)], obj_name[(y, fb)])
                    new_mor_terms[name] = t
            for fid in fc.objects:
                for x in s.objects:
                    identity[obj_name[(x, fid)]] = mor_name[(s.id(x), fc.identity[fid])]
            for (t2, t1), t3 in fc.compose_table.items():
                for (s2, s1), s3 in s.compose_table.items():
                    compose[(mor_name[(s2, t2)], mor_name[(s1, t1)])] = mor_name[(s3, t3)]
        current = FinCategory(objects, morphisms, identity, compose)
        obj_terms, mor_terms = new_obj_terms, new_mor_terms
    return DerivedOps(current, n, obj_terms, mor_terms)


def stage_inclusion(lower: DerivedOps, upper: DerivedOps) -> Functor:
    """The canonical map ``S^n(c) -> S^{n+1}(c)``: every term denotes itself."""
    a, b = lower.category, upper.category
    missing = [x for x in a.objects if x not in b.identity]
    if missing:
        raise CategoryError(f"terms of the lower stage are missing above: {missing[:3]}")
    F = Functor(a, b, {x: x for x in a.objects}, {f: f for f in a.morphisms})
    problem = find_functor_violation(F)
    if problem is not None:
        raise FunctorialityViolation(problem, problem)
    return F


def extend_algebra(alg: Algebra, ops: DerivedOps, env: Functor) -> Functor:
    """The functor ``S^n(c) -> carrier`` induced by ``env : c -> carrier``."""
    ev = Evaluator(alg, env)
    obj_map = {x: ev.value(t) for x, t in ops.obj_terms.items()}
    mor_map = {f: ev.value(t) for f, t in ops.mor_terms.items()}
    return Functor(ops.category, alg.carrier, obj_map, mor_map)


# -- equations -------------------------------------------------------------------------------


@dataclass(frozen=True)
class Equation:
    name: str
    arity_ref: str
    arity: FinCategory
    lhs: DerivedTerm
    rhs: DerivedTerm

    @property
    def stage(self) -> int:
        return max(stage(self.lhs), stage(self.rhs))


@dataclass
class EquationSet:
    """Equations grouped by arity.

    Each equation is one cell of the equation category ``E(d)``: a point when
    both sides are object terms, a walking arrow when they are morphism terms.
    """

    equations: tuple[Equation, ...] = ()

    def arities(self) -> list[tuple[str, FinCategory]]:
        seen = {}
        for e in self.equations:
            seen.setdefault(e.arity_ref, e.arity)
        return list(seen.items())

    def at(self, ref: str) -> list[Equation]:
        return [e for e in self.equations if e.arity_ref == ref]

    def equation_category(self, ref: str, sig: Signature) -> FinCategory:
        from .fincat import present

        vertices, arrows = [], []
        for e in self.at(ref):
            if is_morphism_term(e.lhs, e.arity, sig):
                vertices += [f"{e.name}/0", f"{e.name}/1"]
                arrows.append((e.name, f"{e.name}/0", f"{e.name}/1"))
            else:
                vertices.append(e.name)
        return present(vertices, arrows)


def check_equations(sig: Signature, eqs: EquationSet) -> list[str]:
    """Static checks: variables belong to the arity; both sides have the same kind."""
    problems = []
    names = set()
    for e in eqs.equations:
        if e.name in names:
            problems.append(f"duplicate equation {e.name}")
        names.add(e.name)
        try:
            if is_morphism_term(e.lhs, e.arity, sig) != is_morphism_term(e.rhs, e.arity, sig):
                problems.append(f"{e.name}: one side is an object, the other a morphism")
        except AlgebraError as err:
            problems.append(f"{e.name}: {err}")
    return problems


@dataclass(frozen=True)
class Failure:
    arity: str
    environment: tuple
    equation: str
    lhs: str
    rhs: str


@dataclass
class SatReport:
    failures: list = field(default_factory=list)
    environments: int = 0
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def fmt_env(env: Functor) -> tuple:
    gens = env.source.generators()
    return tuple(sorted(env.obj_map.items())) + tuple((g, env.mor(g)) for g in gens)


def satisfies(alg: Algebra, eqs: EquationSet, *, first_failure_only: bool = False,
              environments: Callable[[str, FinCategory], Iterator[Functor]] | None = None) -> SatReport:
    """Evaluate every equation in every environment and compare on the nose.

    Under groupoid enrichment, equations whose terms apply an operation to a
    non-invertible transformation are skipped (the value does not exist).
    """
    report = SatReport()
    for ref, arity in eqs.arities():
        envs = environments(ref, arity) if environments else enumerate_functors(arity, alg.carrier)
        for env in envs:
            report.environments += 1
            ev = Evaluator(alg, env)
            for e in eqs.at(ref):
                try:
                    lv, rv = ev.value(e.lhs), ev.value(e.rhs)
                except NotInvertible:
                    report.skipped += 1
                    continue
                except SketchError as err:
                    lv, rv = f"error: {err}", "-"
                if lv != rv:
                    report.failures.append(Failure(ref, fmt_env(env), e.name, lv, rv))
                    if first_failure_only:
                        return report
    return report


__all__ = [
    "Algebra", "AlgebraError", "Arg", "DerivedOps", "DerivedTerm", "Equation", "EquationSet",
    "Evaluator", "Failure", "NotInvertible", "OpMor", "OpObj", "Operation", "SatReport", "Signature",
    "TComp", "TId", "TabulatedOperation", "Var", "check_equations", "derived_ops", "extend_algebra",
    "fmt_env", "fmt_term", "identity_comps", "op_mor", "satisfies", "stage", "stage_inclusion",
    "validate_algebra",
]
