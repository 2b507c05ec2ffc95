"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class SketchError(Exception):
    """Base class for every error raised by this package."""


# -- categories ---------------------------------------------------------------

class CategoryError(SketchError):
    pass


class IdentityLawViolation(CategoryError):
    def __init__(self, f: str, detail: str = ""):
        self.morphism = f
        super().__init__(f"identity law fails at {f}" + (f": {detail}" if detail else ""))


class AssociativityViolation(CategoryError):
    def __init__(self, h: str, g: str, f: str):
        self.triple = (h, g, f)
        super().__init__(f"associativity fails for ({h}, {g}, {f})")


class BoundaryMismatch(CategoryError):
    def __init__(self, entry, detail: str = ""):
        self.entry = entry
        super().__init__(f"boundary mismatch at {entry}" + (f": {detail}" if detail else ""))


class BoundExceeded(CategoryError):
    def __init__(self, bound: int, source: str):
        self.bound = bound
        self.source = source
        super().__init__(
            f"path saturation from {source} still produces new morphisms at length {bound}"
        )


class IllTypedRelation(CategoryError):
    pass


class FunctorialityViolation(CategoryError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NaturalityViolation(CategoryError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NotACone(CategoryError):
    pass


class SearchSpaceUnbounded(SketchError):
    pass


class GuardrailExceeded(SketchError):
    def __init__(self, what: str, size: int, ceiling: int):
        self.size = size
        self.ceiling = ceiling
        super().__init__(f"{what}: {size} elements exceeds ceiling {ceiling}")


# -- expressions --------------------------------------------------------------

class IllTyped(SketchError):
    def __init__(self, subterm, reason: str):
        self.subterm = subterm
        self.reason = reason
        super().__init__(f"ill-typed {subterm!s}: {reason}")


class EvaluationError(SketchError):
    """A deferred obligation (commuting legs, functoriality) failed at evaluation."""


# -- sketches -----------------------------------------------------------------

class SketchValidationError(SketchError):
    def __init__(self, marking: str, cell, reason: str):
        self.marking = marking
        self.cell = cell
        super().__init__(f"marking {marking}, cell {cell}: {reason}")


class EtaViolation(SketchValidationError):
    pass


class IllTypedMarking(SketchValidationError):
    pass


class InvalidFunctor(SketchValidationError):
    pass


# -- text formats -------------------------------------------------------------

class ParseError(SketchError):
    def __init__(self, message: str, line: int = 0, col: int = 0, source: str = "<input>"):
        self.line = line
        self.col = col
        self.source = source
        super().__init__(f"{source}:{line}:{col}: {message}")


class UnboundGenerator(SketchError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"model does not bind generator {name}")
