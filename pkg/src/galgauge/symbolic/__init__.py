"""Exact symbolic algebra: trees, canonical forms, calculus and the parser."""

from .calculus import diff, diff_multi, equals_modulo_cofactor, relabel, split_by_i, substitute
from .canonical import CanonicalForm, Monomial, formal_partial, normalize, simplify
from .expr import (
    COORDS,
    I,
    ONE,
    ZERO,
    Coord,
    Expr,
    Field,
    FrameError,
    ImaginaryUnit,
    Param,
    Power,
    Product,
    Rational,
    Sum,
    coord,
    field,
)
from .parser import ParseError, UnknownIdentifierError, parse
from .printer import print_canonical

__all__ = [
    "COORDS", "I", "ONE", "ZERO", "CanonicalForm", "Coord", "Expr", "Field", "FrameError",
    "ImaginaryUnit", "Monomial", "Param", "ParseError", "Power", "Product", "Rational", "Sum",
    "UnknownIdentifierError", "coord", "diff", "diff_multi", "equals_modulo_cofactor", "field",
    "formal_partial", "normalize", "parse", "print_canonical", "relabel", "simplify",
    "split_by_i", "substitute",
]
