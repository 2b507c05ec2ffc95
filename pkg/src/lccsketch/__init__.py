"""Finite categories, operation signatures, generalized sketches and their models in finite sets.

The most common entry points are re-exported here; the submodules hold the rest.
"""

from .errors import (
    GuardrailExceeded,
    IllTyped,
    ParseError,
    SketchError,
    SketchValidationError,
    UnboundGenerator,
)
from .fincat import Cone, FinCategory, Functor, NatTransformation, cone_shape, present
from .finset import FinSetMor, FinSetObj, FinSetStructure, SetFunctor
from .lexpr import Interpretation, eval_mor, eval_obj, infer_boundary
from .sigalg import Algebra, EquationSet, Signature, satisfies
from .sketch import (
    Marking,
    Sketch,
    check_marking,
    check_model,
    enumerate_models,
    mark_limit_cone,
    validate_sketch,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra", "Cone", "EquationSet", "FinCategory", "FinSetMor", "FinSetObj", "FinSetStructure",
    "Functor", "GuardrailExceeded", "IllTyped", "Interpretation", "Marking", "NatTransformation",
    "ParseError", "SetFunctor", "Signature", "Sketch", "SketchError", "SketchValidationError",
    "UnboundGenerator", "check_marking", "check_model", "cone_shape", "enumerate_models", "eval_mor",
    "eval_obj", "infer_boundary", "mark_limit_cone", "present", "satisfies", "validate_sketch",
]
