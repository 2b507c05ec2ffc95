"""Enumerate all small finite categories up to isomorphism.

Categories are generated from a hom-size matrix by solving for composition
tables (identity laws fixed, associativity checked as soon as a triple is
decided).  Each new table contributes its whole orbit under relabelling to a
seen-set, so later isomorphic tables are skipped by lookup.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator

from .fincat import FinCategory, validate_category


def _matrices(k: int, max_mor: int, max_endo: int | None = None) -> Iterator[tuple[tuple[int, ...], ...]]:
    cells = [(i, j) for i in range(k) for j in range(k)]
    sizes = [0] * len(cells)

    def rec(idx, total):
        if idx == len(cells):
            yield tuple(tuple(sizes[i * k + j] for j in range(k)) for i in range(k))
            return
        i, j = cells[idx]
        lo = 1 if i == j else 0
        hi = max_mor - total
        if i == j and max_endo is not None:
            hi = min(hi, max_endo)
        for n in range(lo, hi + 1):
            sizes[idx] = n
            yield from rec(idx + 1, total + n)
        sizes[idx] = 0

    yield from rec(0, 0)


def _canonical_matrix(m) -> bool:
    k = len(m)
    for perm in permutations(range(k)):
        other = tuple(tuple(m[perm[i]][perm[j]] for j in range(k)) for i in range(k))
        if other < m:
            return False
    return True


def _closed(m) -> bool:
    k = len(m)
    return all(m[i][l] > 0 for i in range(k) for j in range(k) for l in range(k) if m[i][j] and m[j][l])


def _tables(m) -> Iterator[tuple[list, dict]]:
    """All associative composition tables for hom sizes ``m``.

    Morphism ``(i, j, a)`` is the ``a``-th map ``i -> j``; ``(i, i, 0)`` is the
    identity.
    """
    k = len(m)
    mors = [(i, j, a) for i in range(k) for j in range(k) for a in range(m[i][j])]
    out_of = {i: [x for x in mors if x[0] == i] for i in range(k)}
    table: dict = {}
    slots = []
    for f in mors:
        for g in out_of[f[1]]:
            if f[0] == f[1] and f[2] == 0:
                table[(g, f)] = g
            elif g[0] == g[1] and g[2] == 0:
                table[(g, f)] = f
            else:
                slots.append((g, f))
    index = {s: n for n, s in enumerate(slots)}
    triples_at: list[list] = [[] for _ in slots]
    for f in mors:
        for g in out_of[f[1]]:
            for h in out_of[g[1]]:
                deps = [(g, f), (h, g)]
                pos = max((index[s] for s in deps if s in index), default=-1)
                if pos >= 0:
                    triples_at[pos].append((h, g, f))

    def rec(n):
        if n == len(slots):
            for h, g, f in [(h, g, f) for f in mors for g in out_of[f[1]] for h in out_of[g[1]]]:
                if table[(h, table[(g, f)])] != table[(table[(h, g)], f)]:
                    return
            yield mors, dict(table)
            return
        g, f = slots[n]
        for a in range(m[f[0]][g[1]]):
            table[(g, f)] = (f[0], g[1], a)
            ok = True
            for h2, g2, f2 in triples_at[n]:
                gf, hg = table[(g2, f2)], table[(h2, g2)]
                x, y = table.get((h2, gf)), table.get((hg, f2))
                if x is not None and y is not None and x != y:
                    ok = False
                    break
            if ok:
                # triples whose outer composites were decided by this slot
                for h2, g2, f2 in _outer.get((g, f), ()):
                    gf, hg = table.get((g2, f2)), table.get((h2, g2))
                    if gf is None or hg is None:
                        continue
                    x, y = table.get((h2, gf)), table.get((hg, f2))
                    if x is not None and y is not None and x != y:
                        ok = False
                        break
            if ok:
                yield from rec(n + 1)
        del table[(g, f)]

    _outer: dict = {}
    for f in mors:
        for g in out_of[f[1]]:
            for h in out_of[g[1]]:
                for a in range(m[f[0]][g[1]]):
                    _outer.setdefault((h, (f[0], g[1], a)), []).append((h, g, f))
                for a in range(m[g[0]][h[1]]):
                    _outer.setdefault(((g[0], h[1], a), f), []).append((h, g, f))
    yield from rec(0)


def _relabellings(m, mors) -> list[dict]:
    """Generators of the relabelling group: hom-wise transpositions and matrix automorphisms."""
    k = len(m)
    gens = []
    for i in range(k):
        for j in range(k):
            lo = 1 if i == j else 0
            for a in range(lo, m[i][j] - 1):
                sigma = {f: f for f in mors}
                sigma[(i, j, a)], sigma[(i, j, a + 1)] = (i, j, a + 1), (i, j, a)
                gens.append(sigma)
    for perm in permutations(range(k)):
        if all(m[i][j] == m[perm[i]][perm[j]] for i in range(k) for j in range(k)):
            gens.append({f: (perm[f[0]], perm[f[1]], f[2]) for f in mors})
    return gens


def _orbit(key: tuple, slots: list, gens: list[dict]) -> set:
    """All encodings of tables isomorphic to ``key``, by breadth-first closure."""
    index = {s: n for n, s in enumerate(slots)}
    seen = {key}
    frontier = [key]
    while frontier:
        nxt = []
        for t in frontier:
            for sigma in gens:
                out = [None] * len(slots)
                for n, (g, f) in enumerate(slots):
                    out[index[(sigma[g], sigma[f])]] = sigma[t[n]]
                u = tuple(out)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen


def enumerate_categories(max_objects: int, max_morphisms: int,
                         max_endo: int | None = None) -> Iterator[FinCategory]:
    """Every finite category with at most the given sizes, one per isomorphism class.

    ``max_endo`` optionally bounds the size of every endomorphism monoid.

    Includes the empty category.  Objects are named ``o0, o1, ...``; maps
    ``i -> j`` are ``a<i><j>_<n>`` with identities ``id(o<i>)``.
    """
    yield FinCategory.empty()
    for k in range(1, max_objects + 1):
        for m in _matrices(k, max_morphisms, max_endo):
            if not _closed(m) or not _canonical_matrix(m):
                continue
            seen: set = set()
            gens = None
            for mors, table in _tables(m):
                slots = sorted(table)
                key = tuple(table[s] for s in slots)
                if key in seen:
                    continue
                if gens is None:
                    gens = _relabellings(m, mors)
                seen |= _orbit(key, slots, gens)
                yield _build(k, mors, table)


def _build(k, mors, table) -> FinCategory:
    def name(x):
        i, j, a = x
        if i == j and a == 0:
            return f"id(o{i})"
        return f"a{i}{j}_{a}"

    objects = [f"o{i}" for i in range(k)]
    morphisms = {name(x): (f"o{x[0]}", f"o{x[1]}") for x in mors}
    identity = {f"o{i}": f"id(o{i})" for i in range(k)}
    compose = {(name(g), name(f)): name(h) for (g, f), h in table.items()}
    return validate_category(FinCategory(objects, morphisms, identity, compose))
