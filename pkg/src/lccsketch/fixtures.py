"""Constructors behind every corpus file, keyed by file name.

``expected(name)`` rebuilds the value a corpus file must parse to and
``render(name)`` the exact text it must contain.
"""

from __future__ import annotations

from . import theories as T
from .dsl import formats as F
from .lex import lex_signature
from .sigalg import EquationSet, Signature

SKETCHES = {
    "walking_tt.skt": T.walking_tt,
    "pi.skt": T.pi_sketch,
    "bool_strict.skt": lambda: T.bool_sketch(strict=True),
    "bool_weak.skt": lambda: T.bool_sketch(strict=False),
    "empty_base.skt": T.empty_base,
    "terminal_mark.skt": T.terminal_mark,
}

# model file -> (sketch file, constructor)
MODELS = {
    "walking_tt.mdl": ("walking_tt.skt", T.walking_tt_model),
    "prop_universe.mdl": ("pi.skt", T.prop_universe_model),
    "broken_lam.mdl": ("pi.skt", T.broken_lam_model),
    "trivial_universe.mdl": ("pi.skt", T.trivial_universe_model),
    "bool_strict.mdl": ("bool_strict.skt", lambda: T.bool_model(strict=True)),
    "bool_weak.mdl": ("bool_weak.skt", lambda: T.bool_model(strict=False)),
    "bool_collapsed.mdl": ("bool_strict.skt", lambda: T.bool_model(strict=True, el=("e",))),
}

CATEGORIES = {
    "pi_base.cat": T.pi_base,
    "injection.cat": T.injection_category,
}

# interpretation file -> (category file, constructor)
INTERPRETATIONS = {
    "prop_universe.int": ("pi_base.cat", T.prop_universe_model),
    "injection.int": ("injection.cat", T.injection_model),
}

SIGNATURES = {
    "lex.sig": lambda: lex_signature("cat"),
    "lex_grpd.sig": lambda: lex_signature("grpd"),
    "empty.sig": lambda: (Signature(()), EquationSet(())),
}

ALGEBRAS = {
    "divisor12.alg": T.divisor12_algebra,
    "discrete2.alg": T.discrete2_algebra,
}


def expected(name: str):
    for table in (SKETCHES, CATEGORIES, SIGNATURES, ALGEBRAS):
        if name in table:
            return table[name]()
    for table in (MODELS, INTERPRETATIONS):
        if name in table:
            return table[name][1]()
    raise KeyError(name)


def render(name: str) -> str:
    value = expected(name)
    if name in SKETCHES:
        return F.print_sketch(value)
    if name in CATEGORIES:
        return F.print_category(value)
    if name in SIGNATURES:
        return F.print_signature(*value)
    if name in ALGEBRAS:
        return F.print_algebra(value)
    return F.print_model(value)


def all_names() -> list[str]:
    names = []
    for table in (SKETCHES, MODELS, CATEGORIES, INTERPRETATIONS, SIGNATURES, ALGEBRAS):
        names += list(table)
    return sorted(names)


def write_corpus(directory) -> list[str]:
    """Regenerate every corpus file under ``directory``."""
    from pathlib import Path

    out = []
    for name in all_names():
        p = Path(directory) / name
        p.write_text(render(name))
        out.append(name)
    return out
