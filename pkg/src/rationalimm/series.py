"""Exact graded dimensions, truncated power series and rational functions.

Everything here works over the rationals with :class:`fractions.Fraction`;
nothing is ever converted to floating point.

>>> s = TruncatedSeries.from_coeffs([1, 1, 1], 4)
>>> series_inverse(s).coeffs
(Fraction(1, 1), Fraction(-1, 1), Fraction(0, 1), Fraction(1, 1), Fraction(-1, 1))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ZeroConstantTerm

Poly = tuple  # integer coefficients, lowest degree first


@dataclass(frozen=True)
class GradedDims:
    """Finitely supported map degree -> positive dimension."""

    items: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for deg, dim in self.items:
            if deg < 0 or dim <= 0:
                raise ValueError(f"bad graded dimension entry {deg}:{dim}")

    @classmethod
    def from_mapping(cls, dims: Mapping[int, int]) -> GradedDims:
        for deg, dim in dims.items():
            if dim < 0:
                raise ValueError(f"negative dimension {dim} in degree {deg}")
        return cls(tuple(sorted((d, n) for d, n in dims.items() if n)))

    @classmethod
    def from_list(cls, dims: Sequence[int]) -> GradedDims:
        return cls.from_mapping(dict(enumerate(dims)))

    @property
    def dims(self) -> dict[int, int]:
        return dict(self.items)

    def __getitem__(self, degree: int) -> int:
        for d, n in self.items:
            if d == degree:
                return n
        return 0

    @property
    def max_degree(self) -> int:
        return self.items[-1][0] if self.items else -1

    def as_list(self, top: int | None = None) -> list[int]:
        top = self.max_degree if top is None else top
        return [self[i] for i in range(top + 1)]

    def total(self) -> int:
        return sum(n for _, n in self.items)

    def __str__(self):
        return "{" + ", ".join(f"{d}:{n}" for d, n in self.items) + "}"


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series sum c_i x^i known exactly for 0 <= i <= truncation."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, truncation: int | None = None) -> TruncatedSeries:
        cs = [Fraction(c) for c in coeffs]
        if truncation is None:
            truncation = max(len(cs) - 1, 0)
        cs = cs[: truncation + 1] + [Fraction(0)] * (truncation + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def from_terms(cls, terms: Mapping[int, object], truncation: int) -> TruncatedSeries:
        cs = [Fraction(0)] * (truncation + 1)
        for d, c in terms.items():
            if 0 <= d <= truncation:
                cs[d] += Fraction(c)
        return cls(tuple(cs))

    @classmethod
    def one(cls, truncation: int) -> TruncatedSeries:
        return cls.from_coeffs([1], truncation)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        if i > self.truncation:
            raise IndexError(f"coefficient {i} beyond truncation {self.truncation}")
        return Fraction(0)

    def truncate(self, n: int) -> TruncatedSeries:
        if n > self.truncation:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: n + 1])

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.truncation, other.truncation)
        return TruncatedSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        c = Fraction(other)
        return TruncatedSeries(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def nonzero(self) -> list[tuple[int, Fraction]]:
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def format_pairs(self) -> str:
        """Space separated ``degree:coefficient`` pairs of the nonzero terms."""
        return " ".join(f"{i}:{c}" for i, c in self.nonzero())

    def __str__(self):
        terms = self.nonzero()
        if not terms:
            return f"0 + O(x^{self.truncation + 1})"
        return poly_str({i: c for i, c in terms}) + f" + O(x^{self.truncation + 1})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the smaller of the two truncations."""
    n = min(a.truncation, b.truncation)
    out = [Fraction(0)] * (n + 1)
    for i, ai in enumerate(a.coeffs[: n + 1]):
        if not ai:
            continue
        for j in range(n + 1 - i):
            bj = b.coeffs[j]
            if bj:
                out[i + j] += ai * bj
    return TruncatedSeries(tuple(out))


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse to the same truncation.

    Raises ZeroConstantTerm when a(0) = 0.
    """
    a0 = a.coeffs[0]
    if a0 == 0:
        raise ZeroConstantTerm("series with zero constant term has no inverse")
    inv = [Fraction(1) / a0]
    for n in range(1, a.truncation + 1):
        s = sum((a.coeffs[j] * inv[n - j] for j in range(1, n + 1)), Fraction(0))
        inv.append(-s / a0)
    return TruncatedSeries(tuple(inv))


# -- integer polynomials ---------------------------------------------------


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly(*coeffs) -> Poly:
    return _trim(coeffs)


def x_pow(n: int, c: int = 1) -> Poly:
    if n < 0:
        raise ValueError("negative exponent")
    return _trim([0] * n + [c])


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def poly_neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_neg(q))


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_prod(factors: Iterable[Poly]) -> Poly:
    out: Poly = (1,)
    for f in factors:
        out = poly_mul(out, f)
    return out


def poly_str(p) -> str:
    """Render a polynomial given as a coefficient sequence or a degree map."""
    items = sorted(p.items()) if isinstance(p, Mapping) else list(enumerate(p))
    parts = []
    for i, c in items:
        if not c:
            continue
        mag = abs(c)
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of products of integer polynomials.

    Factors are kept as given (no cancellation), so a closed form reads back the
    way it was written.  ``numerator_poly`` and ``denominator_poly`` give the
    multiplied-out polynomials.
    """

    numerator: tuple[Poly, ...]
    denominator: tuple[Poly, ...] = ()

    def __post_init__(self):
        if poly_prod(self.denominator) == ():
            raise ZeroDivisionError("zero denominator")

    @classmethod
    def from_polys(cls, num: Poly, den: Poly = (1,)) -> RationalFunction:
        return cls((_trim(num),), (_trim(den),))

    @property
    def numerator_poly(self) -> Poly:
        return poly_prod(self.numerator)

    @property
    def denominator_poly(self) -> Poly:
        return poly_prod(self.denominator)

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.numerator + other.numerator, self.denominator + other.denominator)

    def __add__(self, other: RationalFunction) -> RationalFunction:
        d1, d2 = self.denominator_poly, other.denominator_poly
        n1, n2 = self.numerator_poly, other.numerator_poly
        if d1 == d2:
            return RationalFunction((poly_add(n1, n2),), self.denominator)
        return RationalFunction((poly_add(poly_mul(n1, d2), poly_mul(n2, d1)),), (poly_mul(d1, d2),))

    def equals(self, other: RationalFunction) -> bool:
        """Equality as rational functions (cross multiplication)."""
        return poly_mul(self.numerator_poly, other.denominator_poly) == poly_mul(
            other.numerator_poly, self.denominator_poly
        )

    def __str__(self):
        def fmt(factors):
            factors = [f for f in factors if f != (1,)]
            if not factors:
                return "1"
            out = []
            for f in factors:
                s = poly_str(f)
                nonzero = sum(1 for c in f if c)
                out.append(s if nonzero == 1 and not s.startswith("-") else f"({s})")
            return "*".join(out)

        if not self.numerator_poly:
            return "0"
        num = fmt(self.numerator)
        if poly_prod(self.denominator) == (1,):
            return num
        return f"{num}/{fmt(self.denominator)}"


def expand(rf: RationalFunction, max_degree: int) -> TruncatedSeries:
    """Taylor expansion at 0 through ``max_degree``."""
    den = rf.denominator_poly
    if not den or den[0] == 0:
        raise ZeroConstantTerm("denominator vanishes at 0")
    num = TruncatedSeries.from_coeffs(rf.numerator_poly or (0,), max_degree)
    return series_mul(num, series_inverse(TruncatedSeries.from_coeffs(den, max_degree)))


def poincare_polynomial(manifold, truncation: int | None = None) -> TruncatedSeries:
    """P_M(x) = sum b_i x^i of a manifold (anything with ``betti`` and ``dim``)."""
    betti = manifold.betti
    if isinstance(betti, GradedDims):
        betti = betti.as_list(manifold.dim)
    top = manifold.dim if truncation is None else truncation
    return TruncatedSeries.from_coeffs(betti, top)


def dims_to_series(dims: GradedDims, truncation: int) -> TruncatedSeries:
    return TruncatedSeries.from_terms(dims.dims, truncation)


def series_to_dims(s: TruncatedSeries) -> GradedDims:
    for i, c in s.nonzero():
        if c < 0 or c.denominator != 1:
            raise ValueError(f"coefficient {c} at degree {i} is not a dimension")
    return GradedDims.from_mapping({i: int(c) for i, c in s.nonzero()})
