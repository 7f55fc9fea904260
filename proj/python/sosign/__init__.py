"""Exact sign of sums of products of floating-point numbers.

An expression is a list of terms, each term a list of factors:
``[[a, b], [-c, d]]`` stands for ``a*b - c*d``.
"""

from ._sosign import (
    CapacityError,
    DomainError,
    Error,
    NonFiniteError,
    OverflowError,
    ParseError,
    capacity_load,
    constants,
    exact_sign,
    format_expression,
    generate,
    hardware_rounding_available,
    incircle,
    orient2d,
    orient3d,
    parse,
    quick_sign,
    robust_sign,
    sign,
    split_prod,
    split_sub,
)

__all__ = [name for name in dir() if not name.startswith("_")]
