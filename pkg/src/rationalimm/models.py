"""Minimal models of a few standard spaces."""

from __future__ import annotations

from .cgda import FreeCGDA


def sphere_model(n: int, suffix: str = "") -> FreeCGDA:
    """S^n: Λ(u_n) for odd n, Λ(x_n, y_{2n-1}) with dy = x^2 for even n."""
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    if n % 2:
        return FreeCGDA([(f"u{suffix}", n)])
    x, y = f"x{suffix}", f"y{suffix}"
    return FreeCGDA([(x, n), (y, 2 * n - 1)], {y: f"{x}^2"})


def projective_model(n: int, suffix: str = "") -> FreeCGDA:
    """CP^n: Λ(x_2, y_{2n+1}) with dy = x^{n+1}."""
    if n < 1:
        raise ValueError("CP^n needs n >= 1")
    x, y = f"x{suffix}", f"y{suffix}"
    return FreeCGDA([(x, 2), (y, 2 * n + 1)], {y: f"{x}^{n + 1}"})
