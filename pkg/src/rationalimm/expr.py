"""Infix expressions for algebra elements and the plain-text algebra dump.

Expressions use ``+ - * ^``, integer literals and ``p/q`` rationals, and
generator names, e.g. ``p1^2 - 1/2*ek*ebar``.

The dump format has one generator per line::

    name degree differential

where the differential is an expression (``0`` for closed generators).
Blank lines and text after ``#`` are ignored.
"""

from __future__ import annotations

import ast
from fractions import Fraction

from .cgda import Element, FreeCGDA, FreeGCA
from .errors import ParseError


def parse_expr(text: str, ring: FreeGCA) -> Element:
    """Read an expression over the generators of ``ring``."""
    src = text.strip().replace("^", "**")
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return _eval(tree.body, ring, text)


def _eval(node, ring: FreeGCA, text: str):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return ring.scalar(node.value)
    if isinstance(node, ast.Name):
        if node.id not in ring.index:
            raise ParseError(f"unknown generator {node.id!r} in {text!r}")
        return ring.gen(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, ring, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _eval(node.left, ring, text)
            exp = _constant(node.right, text)
            if exp.denominator != 1 or exp < 0:
                raise ParseError(f"exponent must be a non-negative integer in {text!r}")
            return base ** int(exp)
        if isinstance(node.op, ast.Div):
            den = _constant(node.right, text)
            if den == 0:
                raise ParseError(f"division by zero in {text!r}")
            return _eval(node.left, ring, text) * (1 / den)
        left = _eval(node.left, ring, text)
        right = _eval(node.right, ring, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
    raise ParseError(f"unsupported syntax in {text!r}")


def _constant(node, text: str) -> Fraction:
    """Evaluate a purely numeric subexpression."""
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_constant(node.operand, text)
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
        return _constant(node.left, text) / _constant(node.right, text)
    raise ParseError(f"expected a number in {text!r}")


def dump(A: FreeCGDA) -> str:
    """Text form of an algebra, one generator per line."""
    return "".join(f"{g.name} {g.degree} {A.d(g.name)}\n" for g in A.generators)


def parse_dump(text: str) -> FreeCGDA:
    """Inverse of :func:`dump`."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 2)
        if len(parts) < 3:
            raise ParseError(f"line {lineno}: expected 'name degree differential'")
        name, deg, expr = parts
        try:
            degree = int(deg)
        except ValueError:
            raise ParseError(f"line {lineno}: degree {deg!r} is not an integer") from None
        rows.append((name, degree, expr))
    try:
        ring = FreeGCA([(n, d) for n, d, _ in rows])
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return FreeCGDA(ring, {n: parse_expr(e, ring) for n, _, e in rows})
