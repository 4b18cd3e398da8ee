"""Tiny prefix expression trees for exact closed-form constants.

A tree is either a leaf or a list ``[op, arg, ...]``:

* leaves: Python ``int``, a rational string ``"p/q"`` (or ``"p"``), or one of
  the symbols ``"alpha"`` (golden ratio), ``"beta"`` (its conjugate),
  ``"delta"`` (silver ratio);
* unary ops: ``sqrt ln arctan artanh arccot arccoth neg``;
* binary ops: ``add sub mul div``.

Trees round-trip through JSON unchanged, which is how the registry stores its
expected constants.  Evaluation happens under a
:class:`~cbcseries.precision.PrecisionContext`, one rounding per operation,
so the same tree yields more digits in a bigger context.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .precision import PrecisionContext, UsageError, constants, elementary_real

Expr = Union[int, str, list, tuple]

_UNARY = ("sqrt", "ln", "arctan", "artanh", "arccot", "arccoth", "neg")
_BINARY = ("add", "sub", "mul", "div")
_SYMBOLS = ("alpha", "beta", "delta")
_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def validate_expression(expr: Expr) -> None:
    """Raise :class:`UsageError` unless ``expr`` is a well-formed tree."""
    if isinstance(expr, bool):
        raise UsageError("booleans are not expression leaves")
    if isinstance(expr, int):
        return
    if isinstance(expr, str):
        if expr in _SYMBOLS:
            return
        if _RATIONAL_RE.match(expr):
            try:
                Fraction(expr)
            except ZeroDivisionError:
                raise UsageError(f"zero denominator in leaf {expr!r}")
            return
        raise UsageError(f"unknown expression leaf {expr!r}")
    if isinstance(expr, (list, tuple)) and expr:
        op = expr[0]
        if op in _UNARY and len(expr) == 2:
            validate_expression(expr[1])
            return
        if op in _BINARY and len(expr) == 3:
            validate_expression(expr[1])
            validate_expression(expr[2])
            return
        raise UsageError(f"malformed expression node {expr!r}")
    raise UsageError(f"cannot interpret {expr!r} as an expression")


def evaluate(expr: Expr, ctx: PrecisionContext):
    """Evaluate a tree to a Real under ``ctx`` (deterministic)."""
    validate_expression(expr)
    with ctx.workprec():
        return _eval(expr, ctx, constants(ctx))


def _eval(expr, ctx, cs):
    if isinstance(expr, int):
        return ctx.real(expr)
    if isinstance(expr, str):
        if expr == "alpha":
            return cs.alpha
        if expr == "beta":
            return cs.beta
        if expr == "delta":
            return cs.delta
        return ctx.real(Fraction(expr))
    op = expr[0]
    if op == "neg":
        return -_eval(expr[1], ctx, cs)
    args = [_eval(a, ctx, cs) for a in expr[1:]]
    return elementary_real(op, args, ctx)


def to_text(expr: Expr) -> str:
    """Compact infix rendering, for human-facing listings."""
    if isinstance(expr, int):
        return str(expr)
    if isinstance(expr, str):
        return expr
    op = expr[0]
    if op == "neg":
        return f"-{_atom(expr[1])}"
    if op in _UNARY:
        return f"{op}({to_text(expr[1])})"
    a, b = expr[1], expr[2]
    symbol = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}[op]
    if op in ("add", "sub"):
        return f"{to_text(a)}{symbol}{to_text(b)}"
    return f"{_atom(a)}{symbol}{_atom(b)}"


def _atom(expr: Expr) -> str:
    """Render, parenthesizing sums so products read unambiguously."""
    text = to_text(expr)
    if isinstance(expr, (list, tuple)) and expr[0] in ("add", "sub", "div", "mul", "neg"):
        return f"({text})"
    return text
