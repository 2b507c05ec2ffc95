"""Text formats: tokenizer, expression syntax, and file readers/writers."""

from .exprs import NeedsContext, elaborate, parse_expression, print_mor, print_obj
from .formats import (
    AlgebraSpec,
    build_algebra,
    parse_algebra,
    parse_category,
    parse_category_file,
    parse_model,
    parse_signature,
    parse_sketch,
    parse_value,
    print_algebra,
    print_category,
    print_model,
    print_signature,
    print_sketch,
)
from .lexer import Token, TokenStream, tokenize

__all__ = [
    "AlgebraSpec", "NeedsContext", "Token", "TokenStream", "build_algebra", "elaborate",
    "parse_algebra", "parse_category", "parse_category_file", "parse_expression", "parse_model",
    "parse_signature", "parse_sketch", "parse_value", "print_algebra", "print_category",
    "print_model", "print_mor", "print_obj", "print_signature", "print_sketch", "tokenize",
]
