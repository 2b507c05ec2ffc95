from __future__ import annotations

from collections import Counter
from itertools import permutations, product

import pytest

from lccsketch.fincat import validate_category
from lccsketch.smallcats import enumerate_categories


def _hom_matrices(k: int, total: int):
    cells = [(i, j) for i in range(k) for j in range(k)]
    for sizes in product(range(total + 1), repeat=len(cells)):
        if sum(sizes) != total:
            continue
        m = dict(zip(cells, sizes))
        if all(m[(i, i)] >= 1 for i in range(k)):
            yield m


def _brute_force_classes(k: int, total: int) -> int:
    """Isomorphism classes of categories with ``k`` objects and ``total`` morphisms, the slow way."""
    keys = set()
    for m in _hom_matrices(k, total):
        mors = [(i, j, n) for (i, j), size in m.items() for n in range(size)]
        ident = {i: (i, i, 0) for i in range(k)}
        pairs = [(g, f) for f in mors for g in mors if f[1] == g[0]]
        free = [(g, f) for g, f in pairs if g != ident[g[0]] and f != ident[f[0]]]
        options = [[x for x in mors if x[0] == f[0] and x[1] == g[1]] for g, f in free]
        for values in product(*options):
            table = dict(zip(free, values))
            for g, f in pairs:
                if g == ident[g[0]]:
                    table[(g, f)] = f
                elif f == ident[f[0]]:
                    table[(g, f)] = g
            if not all(table[(h, table[(g, f)])] == table[(table[(h, g)], f)]
                       for g, f in pairs for h in mors if h[0] == g[1]):
                continue
            keys.add(_canonical(k, m, mors, table))
    return len(keys)


def _canonical(k, m, mors, table):
    best = None
    for perm in permutations(range(k)):
        homs = {}
        for (i, j), size in m.items():
            homs[(perm[i], perm[j])] = size
        groups = []
        for (i, j), size in sorted(m.items()):
            arr = [x for x in mors if x[:2] == (i, j)]
            if i == j:
                groups.append([[arr[0]] + list(p) for p in permutations(arr[1:])])
            else:
                groups.append([list(p) for p in permutations(arr)])
        for choice in product(*groups):
            rename = {}
            for arr in choice:
                for n, x in enumerate(arr):
                    rename[x] = (perm[x[0]], perm[x[1]], n)
            # identities must stay first in their hom set, which the grouping guarantees
            key = (tuple(sorted(homs.items())),
                   tuple(sorted((rename[g], rename[f], rename[h]) for (g, f), h in table.items())))
            if best is None or key < best:
                best = key
    return best


def test_monoid_counts():
    counts = Counter(len(c.morphisms) for c in enumerate_categories(1, 4) if c.objects)
    assert [counts[n] for n in (1, 2, 3, 4)] == [1, 2, 7, 35]


@pytest.mark.parametrize("k,total", [(1, 3), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (3, 5)])
def test_counts_match_brute_force(k, total):
    ours = sum(1 for c in enumerate_categories(k, total)
               if len(c.objects) == k and len(c.morphisms) == total)
    assert ours == _brute_force_classes(k, total)


def test_every_enumerated_category_is_valid():
    for c in enumerate_categories(3, 5):
        validate_category(c)


def test_empty_category_comes_first():
    first = next(enumerate_categories(2, 2))
    assert first.objects == () and first.morphisms == {}


def test_endomorphism_bound():
    for c in enumerate_categories(2, 6, max_endo=1):
        for o in c.objects:
            assert c.hom(o, o) == [c.id(o)]


def test_keys_are_distinct():
    cats = list(enumerate_categories(3, 5))
    assert len({c.key() for c in cats}) == len(cats)
