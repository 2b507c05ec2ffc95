"""Acceptance criteria 1-9.

Each test records a one-line verdict (see ``acceptance_log``); the lines are
repeated in the pytest terminal summary and printed when this file is run
directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import random
import time
from functools import lru_cache
from itertools import product

from acceptance_log import report

from lccsketch import theories as T
from lccsketch.cli import main
from lccsketch.corpus import path as corpus_path
from lccsketch.errors import InvalidFunctor
from lccsketch.fincat import FinCategory, commutative_square, present, walking_cospan
from lccsketch.finset import (
    DependentProduct,
    FinSetMor,
    FinSetObj,
    SetCone,
    SetFunctor,
    find_set_functor_violation,
    is_limiting_set,
    limit,
    mediating,
)
from lccsketch.fixtures import MODELS, SIGNATURES, ALGEBRAS, SKETCHES
from lccsketch.lex import find_lex_choice, is_finitely_complete, lex_algebra, lex_signature, terminal_choices
from lccsketch.sigalg import satisfies
from lccsketch.sketch import check_marking, check_model, enumerate_models
from lccsketch.smallcats import enumerate_categories


# -- criterion 1: limits of random diagrams ---------------------------------------------------


def _random_free_shape(rng: random.Random) -> FinCategory:
    k = rng.randint(1, 4)
    objs = [f"x{i}" for i in range(k)]
    arrows = []
    for n in range(rng.randint(0, 4)):
        i, j = sorted(rng.sample(range(k), 2)) if k > 1 else (0, 0)
        if i == j:
            continue
        arrows.append((f"u{n}", objs[i], objs[j]))
    return present(objs, arrows)


_RELATED = [
    commutative_square(),
    walking_cospan(),
    present(["x"], [("e", "x", "x")], [("e.e", "e")]),
    present(["x"], [("e", "x", "x")], [("e.e", "id(x)")]),
    present(["x", "y"], [("s", "x", "y"), ("r", "y", "x")], [("s.r", "id(x)")]),
]


@lru_cache(maxsize=None)
def _small_categories() -> list:
    return [c for c in enumerate_categories(3, 5) if c.objects]


def _random_diagram(rng: random.Random) -> SetFunctor:
    pick = rng.random()
    if pick < 0.5:
        shape = _random_free_shape(rng)
    elif pick < 0.75:
        shape = rng.choice(_RELATED)
    else:
        shape = rng.choice(_small_categories())
    gens = shape.generators()
    for _ in range(200):
        objs = {o: FinSetObj.range(rng.randint(0, 4)) for o in shape.objects}
        maps = {}
        for g in gens:
            src, dst = objs[shape.dom(g)], objs[shape.cod(g)]
            if len(dst) == 0 and len(src) > 0:
                break
            maps[g] = FinSetMor(src, dst, tuple(rng.choice(dst.elements) for _ in src.elements))
        else:
            F = SetFunctor.from_generators(shape, objs, maps)
            if find_set_functor_violation(F) is None:
                return F
    n = FinSetObj.range(rng.randint(0, 4))
    return SetFunctor.from_generators(shape, {o: n for o in shape.objects},
                                      {g: FinSetMor.identity(n) for g in gens})


def _families_oracle(F: SetFunctor) -> list[dict]:
    shape = F.shape
    objs = list(shape.objects)
    out = []
    for values in product(*(F.obj(o).elements for o in objs)):
        fam = dict(zip(objs, values))
        if all(F.mor(u)(fam[i]) == fam[j] for u, (i, j) in shape.morphisms.items()):
            out.append(fam)
    return out


def _check_limit(F: SetFunctor, rng: random.Random) -> str | None:
    shape = F.shape
    cone = limit(shape, F)
    families = _families_oracle(F)
    if len(cone.apex) != len(families):
        return f"apex has {len(cone.apex)} elements, oracle counts {len(families)}"
    cert = is_limiting_set(cone, max_apex=1)
    if not cert:
        return "canonical limit rejected"
    for _ in range(3):
        n = rng.randint(0, 3)
        apex = FinSetObj.range(n)
        picks = [rng.choice(families) for _ in range(n)] if families else []
        if n and not families:
            continue
        other = SetCone(shape, F, apex, {
            i: FinSetMor(apex, F.obj(i), tuple(fam[i] for fam in picks)) for i in shape.objects})
        count = 1
        for x in apex.elements:
            count *= sum(all(cone.legs[i](y) == other.legs[i](x) for i in shape.objects)
                         for y in cone.apex.elements)
        if count != 1:
            return f"competing cone with apex {n} has {count} mediators"
        m = mediating(other, cone)
        if any(m.then(cone.legs[i]) != other.legs[i] for i in shape.objects):
            return "mediator does not commute"
    return None


def test_criterion_1_random_limits():
    rng = random.Random(20261016)
    start = time.perf_counter()
    failures = []
    runs = 500
    for n in range(runs):
        F = _random_diagram(rng)
        problem = _check_limit(F, rng)
        if problem:
            failures.append((n, problem))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    report(1, ok, f"{runs} random diagrams, {len(failures)} failures, {elapsed:.1f}s (limit 60s)")
    assert not failures, failures[:3]
    assert elapsed < 60


# -- criteria 2 and 3: the finite-limit presentation over a corpus of categories -------------------


@lru_cache(maxsize=None)
def lex_corpus() -> list[FinCategory]:
    """Categories with at most 4 objects: every one up to 5 morphisms, plus up to 12 morphisms
    when every endomorphism monoid is trivial."""
    seen = {}
    for args in [(4, 5, None), (4, 12, 1)]:
        for c in enumerate_categories(*args):
            seen.setdefault(c.key(), c)
    return list(seen.values())


@lru_cache(maxsize=None)
def lex_verdicts() -> list[tuple[FinCategory, bool, bool, object]]:
    sig, eqs = lex_signature()
    out = []
    for c in lex_corpus():
        choice = find_lex_choice(c)
        alg = None if choice is None else lex_algebra(sig, c, choice)
        algebraic = alg is not None and satisfies(alg, eqs, first_failure_only=True).ok
        out.append((c, algebraic, is_finitely_complete(c), choice))
    return out


def test_criterion_2_lex_presentation():
    start = time.perf_counter()
    verdicts = lex_verdicts()
    bad = [c for c, alg, oracle, _ in verdicts if alg != oracle]
    complete = sum(oracle for _, _, oracle, _ in verdicts)
    report(2, not bad, f"{len(verdicts)} categories ({complete} finitely complete), "
                       f"{len(bad)} disagreements, {time.perf_counter() - start:.1f}s")
    assert not bad, bad[:3]


def test_criterion_3_uniqueness_replay():
    exceptions = []
    algebras = 0
    checked = 0
    for c, algebraic, _, choice in lex_verdicts():
        if not algebraic:
            continue
        algebras += 1
        options = [(choice.terminal, choice.arr)] + list(terminal_choices(c))
        for T_, arr in options:
            for x in c.objects:
                for m in c.hom(x, T_):
                    checked += 1
                    if m != arr[x]:
                        exceptions.append((c, T_, x, m))
    report(3, not exceptions, f"{algebras} satisfying algebras, {checked} maps into chosen terminals, "
                              f"{len(exceptions)} exceptions")
    assert not exceptions


# -- criterion 4: walking type theory -------------------------------------------------------------


def _walking_tt_oracle(bound: int) -> set[tuple]:
    """Every (EL, TY, El) with canonical sets of size <= bound, by direct enumeration."""
    out = set()
    for e in range(bound + 1):
        for t in range(bound + 1):
            for images in product(range(t), repeat=e):
                out.add((e, t, images))
    return out


def _cli(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_criterion_4_walking_tt_count():
    s = T.walking_tt()
    results = {}
    for bound, want in [(2, 11), (1, 3)]:
        models = enumerate_models(s, bound)
        found = {(len(m.functor.obj("EL")), len(m.functor.obj("TY")), m.functor.mor("El").images)
                 for m in models}
        oracle = _walking_tt_oracle(bound)
        code, text = _cli("enumerate", str(corpus_path("walking_tt.skt")), "--bound", str(bound),
                          "--format", "machine")
        cli_count = int(text.strip().splitlines()[-1].split("=")[1])
        results[bound] = (len(models), len(oracle), cli_count, found == oracle, code)
    pairs = sorted({(e, t) for e, t, _ in _walking_tt_oracle(1)})
    ok = (all(r[0] == r[1] == r[2] == want and r[3] and r[4] == 0
              for r, want in [(results[2], 11), (results[1], 3)]) and pairs == [(0, 0), (0, 1), (1, 1)])
    report(4, ok, f"bound 2: {results[2][0]} models, bound 1: {results[1][0]} models; "
                  f"oracle {results[2][1]}/{results[1][1]}, cli {results[2][2]}/{results[1][2]}")
    assert ok


# -- criterion 5: the dependent product sketch ---------------------------------------------------


def _mutate(funs: dict, gen: str, x: str, y: str) -> dict:
    out = {k: dict(v) for k, v in funs.items()}
    out[gen][x] = y
    return out


PROP_MUTATIONS = [
    ("pi", "A_top_bot", "top"),
    ("El_Pi", "l_bot", "A_top_top"),
    ("El_Pi", "l_top", "A_bot"),
    ("El", "star", "bot"),
]


def test_criterion_5_pi_sketch():
    start = time.perf_counter()
    s = T.pi_sketch()
    base = T.pi_base()
    model = T.prop_universe_model()
    sizes = {o: len(model.obj(o)) for o in base.objects}
    good = check_model(s, model)
    lines = []
    all_fail = True
    for gen, x, y in PROP_MUTATIONS:
        m = T.set_model(base, T.PROP_SETS, _mutate(T.PROP_FUNS, gen, x, y))
        per_marking = {mk.name: check_marking(mk, m).found for mk in s.markings}
        try:
            whole = "FAIL" if not check_model(s, m).ok else "FOUND"
        except InvalidFunctor:
            whole = "not a functor"
        failed = not all(per_marking.values())
        all_fail &= failed
        lines.append(f"{gen}({x})->{y}: {whole}")
    elapsed = time.perf_counter() - start
    ok = (good.ok and all_fail and elapsed < 10
          and sizes == {"TY": 2, "EL": 1, "TY_Pi": 3, "EL_Pi": 2})
    report(5, ok, f"model {'FOUND' if good.ok else 'FAIL'}; mutations: {'; '.join(lines)}; {elapsed:.2f}s")
    assert ok


# -- criteria 6 and 7: booleans, strict and weak -------------------------------------------------


def test_criterion_6_bool_sketch():
    strict = check_model(T.bool_sketch(strict=True), T.bool_model(strict=True))
    weak = check_model(T.bool_sketch(strict=False), T.bool_model(strict=False))
    collapsed_model = T.bool_model(strict=True, el=("e",))
    collapsed = check_model(T.bool_sketch(strict=True), collapsed_model)
    sizes = {o: len(T.bool_model().obj(o)) for o in ("EL", "TY", "Elim")}
    ok = (strict.ok and weak.ok and not collapsed.result("elim").found
          and sizes == {"EL": 2, "TY": 1, "Elim": 4} and len(collapsed_model.obj("EL")) == 1)
    report(6, ok, f"strict {'FOUND' if strict.ok else 'FAIL'}, weak {'FOUND' if weak.ok else 'FAIL'}, "
                  f"|EL|=1 elim {'FOUND' if collapsed.result('elim').found else 'FAIL'}")
    assert ok


PASSING = [
    ("walking_tt", T.walking_tt, T.walking_tt_model),
    ("prop_universe", T.pi_sketch, T.prop_universe_model),
    ("trivial_universe", T.pi_sketch, T.trivial_universe_model),
    ("bool_strict", lambda: T.bool_sketch(strict=True), lambda: T.bool_model(strict=True)),
    ("bool_weak", lambda: T.bool_sketch(strict=False), lambda: T.bool_model(strict=False)),
]


def test_criterion_7_alpha_components():
    nontrivial = []
    strict_violations = []
    alphas = 0
    for name, sketch, model in PASSING:
        s = sketch()
        rep = check_model(s, model(), all_alphas=True)
        assert rep.ok, name
        for m, r in zip(s.markings, rep.results):
            generator_images = {m.j.obj(y) for y in m.c.objects}
            for alpha in r.alphas:
                alphas += 1
                for x, a in alpha.items():
                    ident = a == FinSetMor.identity(a.dom)
                    if x in generator_images and not ident:
                        strict_violations.append((name, m.name, x))
                    if not ident:
                        nontrivial.append((name, m.name, x))
    bool_nontrivial = [t for t in nontrivial if t[0].startswith("bool")]
    ok = bool(bool_nontrivial) and not strict_violations
    shown = sorted({f"{a}/{b}@{x}" for a, b, x in bool_nontrivial})[:3]
    report(7, ok, f"{alphas} alphas; non-identity components e.g. {', '.join(shown)}; "
                  f"{len(strict_violations)} non-identity components on generator images")
    assert ok


# -- criterion 8: dependent product adjunction ------------------------------------------------------


def _random_map(rng, dom: FinSetObj, cod: FinSetObj) -> FinSetMor:
    return FinSetMor(dom, cod, tuple(rng.choice(cod.elements) for _ in dom.elements))


def _random_triple(rng):
    while True:
        X, Y, Z, W = (FinSetObj.range(rng.randint(0, 3)) for _ in range(4))
        if (len(X) and not len(Y)) or (len(Z) and not len(X)) or (len(W) and not len(Y)):
            continue
        return _random_map(rng, X, Y), _random_map(rng, Z, X), _random_map(rng, W, Y)


def test_criterion_8_adjunction_counts():
    rng = random.Random(8)
    failures = []
    runs = 250
    homs = 0
    for n in range(runs):
        f, g, p = _random_triple(rng)
        dp = DependentProduct(f, g)
        left, right = dp.left_homs(p), dp.right_homs(p)
        pb = dp.pullback_of(p)
        oracle = 1
        for e in pb.apex.elements:
            oracle *= len(g.fiber(pb.legs["b"](e)))
        if not (len(left) == len(right) == oracle):
            failures.append((n, len(left), len(right), oracle))
            continue
        for h in left:
            homs += 1
            if dp.untranspose(p, dp.transpose(p, h)) != h:
                failures.append((n, "untranspose . transpose", h))
        for k in right:
            homs += 1
            if dp.transpose(p, dp.untranspose(p, k)) != k:
                failures.append((n, "transpose . untranspose", k))
        if len({dp.transpose(p, h) for h in left}) != len(left):
            failures.append((n, "transpose is not injective"))
    report(8, not failures, f"{runs} triples, {homs} round trips, {len(failures)} failures")
    assert not failures, failures[:3]


# -- criterion 9: deterministic machine output ----------------------------------------------------


EVALS = [
    ("pi_base.cat", "prop_universe.int", "1"),
    ("pi_base.cat", "prop_universe.int", "EL"),
    ("pi_base.cat", "prop_universe.int", "pb(El; pi)"),
    ("pi_base.cat", "prop_universe.int", "poly(El; gen(EL))"),
    ("pi_base.cat", "prop_universe.int", "El . lam"),
    ("injection.cat", "injection.int", "pb(f; f)"),
    ("injection.cat", "injection.int", "f"),
]


def cli_commands() -> list[list[str]]:
    p = lambda name: str(corpus_path(name))  # noqa: E731
    cmds = []
    for skt in sorted(SKETCHES):
        cmds.append(["validate", p(skt)])
        cmds.append(["enumerate", p(skt), "--bound", "2"])
    for mdl, (skt, _) in sorted(MODELS.items()):
        cmds.append(["check", p(skt), p(mdl)])
    for cat, interp, expr in EVALS:
        cmds.append(["eval", p(cat), p(interp), expr])
    for sig in sorted(SIGNATURES):
        for alg in sorted(ALGEBRAS):
            cmds.append(["check-algebra", p(sig), p(alg)])
    return [c + ["--format", "machine"] for c in cmds]


def test_criterion_9_determinism():
    differing = []
    cmds = cli_commands()
    for argv in cmds:
        first = _cli(*argv)
        second = _cli(*argv)
        if first != second or not first[1]:
            differing.append(argv)
    report(9, not differing, f"{len(cmds)} commands run twice, {len(differing)} with differing output")
    assert not differing, differing


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
