"""Free graded-commutative differential algebras over Q.

An algebra is a polynomial algebra on even generators tensored with an
exterior algebra on odd generators.  Monomials are stored in a canonical
form: a tuple of ``(generator id, exponent)`` pairs sorted by id.  Writing a
product in canonical order costs a Koszul sign, which is the parity of the
number of odd factors that had to be moved past each other.

>>> A = FreeCGDA([("x", 2), ("y", 3)], {"y": "x^2"})
>>> x, y = A.gen("x"), A.gen("y")
>>> print(apply_differential(A, x * y))
x^3
>>> print(cohomology_dims(A, 8))
{0:1, 2:1}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from . import _linalg
from .errors import BadPartition, DegreeCapExceeded, InvalidDegrees, MixedAlgebras
from .series import GradedDims

Monomial = tuple  # ((id, exp), ...) sorted by id
ONE: Monomial = ()

MAX_COHOMOLOGY_DEGREE = 30
DEFAULT_COHOMOLOGY_DEGREE = 20


@dataclass(frozen=True)
class Generator:
    id: int
    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise InvalidDegrees(f"generator {self.name} has degree {self.degree}; degrees must be >= 1")
        if not self.name.isidentifier():
            raise ValueError(f"generator name {self.name!r} is not an identifier")

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


class FreeGCA:
    """Free graded-commutative algebra on a finite list of generators."""

    def __init__(self, generators: Iterable):
        gens = []
        for i, g in enumerate(generators):
            if isinstance(g, Generator):
                name, deg = g.name, g.degree
            else:
                name, deg = g
            gens.append(Generator(i, name, int(deg)))
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.index = {g.name: g.id for g in self.generators}
        if len(self.index) != len(self.generators):
            raise ValueError("generator names must be unique")
        self._odd = tuple(g.odd for g in self.generators)
        self._basis_cache: dict[int, list[Monomial]] = {}

    def __eq__(self, other):
        return isinstance(other, FreeGCA) and self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    @property
    def signature(self) -> tuple:
        return tuple((g.name, g.degree) for g in self.generators)

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def generator(self, name: str) -> Generator:
        try:
            return self.generators[self.index[name]]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def gen(self, name: str) -> Element:
        return Element(self, {((self.generator(name).id, 1),): Fraction(1)})

    def one(self) -> Element:
        return Element(self, {ONE: Fraction(1)})

    def zero(self) -> Element:
        return Element(self, {})

    def scalar(self, c) -> Element:
        c = Fraction(c)
        return Element(self, {ONE: c} if c else {})

    def mono_degree(self, mono: Monomial) -> int:
        return sum(self.generators[i].degree * e for i, e in mono)

    def mono_str(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        parts = []
        for i, e in mono:
            n = self.generators[i].name
            parts.append(n if e == 1 else f"{n}^{e}")
        return "*".join(parts)

    def basis(self, n: int) -> list[Monomial]:
        """All canonical monomials of degree n."""
        if n in self._basis_cache:
            return self._basis_cache[n]
        out: list[Monomial] = []
        gens = self.generators

        def rec(i, left, acc):
            if left == 0:
                out.append(tuple(acc))
                return
            if i == len(gens):
                return
            g = gens[i]
            top = 1 if g.odd else left // g.degree
            for e in range(top, 0, -1):
                if e * g.degree <= left:
                    acc.append((g.id, e))
                    rec(i + 1, left - e * g.degree, acc)
                    acc.pop()
            rec(i + 1, left, acc)

        if n >= 0:
            rec(0, n, [])
        out.sort()
        self._basis_cache[n] = out
        return out

    def mono_mul(self, a: Monomial, b: Monomial) -> tuple[int, Monomial]:
        """Product of two canonical monomials as (sign, monomial); sign 0 means zero."""
        return _mono_mul(self._odd, a, b)

    def __repr__(self):
        return "FreeGCA(" + ", ".join(f"{g.name}:{g.degree}" for g in self.generators) + ")"


@lru_cache(maxsize=1 << 16)
def _mono_mul(odd: tuple, a: Monomial, b: Monomial) -> tuple[int, Monomial]:
    if not a:
        return 1, b
    if not b:
        return 1, a
    # sign: each odd factor of b passes every larger odd factor of a
    swaps = 0
    odd_a = [i for i, _ in a if odd[i]]
    for j, _ in b:
        if odd[j]:
            swaps += sum(1 for i in odd_a if i > j)
    merged = dict(a)
    for j, e in b:
        if j in merged:
            if odd[j]:
                return 0, ONE
            merged[j] += e
        else:
            merged[j] = e
    return (-1 if swaps % 2 else 1), tuple(sorted(merged.items()))


class Element:
    """Finite rational combination of canonical monomials."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: FreeGCA, terms: Mapping[Monomial, object] | None = None):
        self.ring = ring
        self.terms: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[m] = c

    def _coerce(self, other) -> Element:
        if isinstance(other, Element):
            if other.ring is not self.ring and other.ring != self.ring:
                raise MixedAlgebras("elements live in different algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Element(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Element(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return elem_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == self.ring.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.ring.mono_degree(m) for m in self.terms}

    @property
    def degree(self) -> int | None:
        """Degree of a nonzero homogeneous element, None for zero."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise InvalidDegrees(f"{self} is not homogeneous")
        return ds.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def generators_used(self) -> set[str]:
        return {self.ring.generators[i].name for m in self.terms for i, _ in m}

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m in sorted(self.terms, key=lambda m: (self.ring.mono_degree(m), m)):
            c = self.terms[m]
            mag = abs(c)
            ms = self.ring.mono_str(m)
            if not m:
                body = str(mag)
            elif mag == 1:
                body = ms
            else:
                body = f"{mag}*{ms}"
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Element({self})"


def elem_mul(a: Element, b: Element) -> Element:
    """Graded-commutative product."""
    if a.ring is not b.ring and a.ring != b.ring:
        raise MixedAlgebras("elements live in different algebras")
    ring = a.ring
    out: dict[Monomial, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            s, m = ring.mono_mul(ma, mb)
            if s:
                out[m] = out.get(m, 0) + s * ca * cb
    return Element(ring, out)


def as_element(ring: FreeGCA, value) -> Element:
    if isinstance(value, Element):
        if value.ring != ring:
            raise MixedAlgebras("differential value lives in a different algebra")
        return value if value.ring is ring else Element(ring, value.terms)
    if isinstance(value, (int, Fraction)):
        return ring.scalar(value)
    if isinstance(value, str):
        from .expr import parse_expr

        return parse_expr(value, ring)
    raise TypeError(f"cannot read {value!r} as an element")


def ring_map(source: FreeGCA, target: FreeGCA, images: Mapping[int, Element], e: Element) -> Element:
    """Image of e under the algebra map sending generator id i to images[i].

    Canonical monomials are products of their factors in id order, so the
    images are multiplied in that same order and the signs come out right.
    """
    if e.ring != source:
        raise MixedAlgebras("element is not in the source algebra")
    out = target.zero()
    for m, c in e.terms.items():
        term = target.scalar(c)
        for i, k in m:
            img = images[i]
            for _ in range(k):
                term = term * img
                if not term:
                    break
            if not term:
                break
        out = out + term
    return out


class FreeCGDA:
    """Free graded-commutative algebra with a degree +1 derivation.

    ``differential`` maps generator names to elements (or expression strings,
    or 0).  Missing names get d = 0.
    """

    def __init__(self, generators, differential: Mapping[str, object] | None = None):
        self.ring = generators if isinstance(generators, FreeGCA) else FreeGCA(generators)
        differential = dict(differential or {})
        unknown = set(differential) - set(self.ring.index)
        if unknown:
            raise KeyError(f"differential given for unknown generators {sorted(unknown)}")
        self._d: list[Element] = []
        for g in self.ring.generators:
            dg = as_element(self.ring, differential.get(g.name, 0))
            for m in dg.terms:
                if self.ring.mono_degree(m) != g.degree + 1:
                    raise InvalidDegrees(
                        f"d({g.name}) = {dg} is not of degree {g.degree + 1}"
                    )
            self._d.append(dg)
        self._mono_d: dict[Monomial, Element] = {}

    # -- access ----------------------------------------------------------

    @property
    def generators(self) -> tuple[Generator, ...]:
        return self.ring.generators

    @property
    def names(self) -> list[str]:
        return self.ring.names

    def gen(self, name: str) -> Element:
        return self.ring.gen(name)

    def degree(self, name: str) -> int:
        return self.ring.generator(name).degree

    def d(self, name: str) -> Element:
        return self._d[self.ring.index[name]]

    @property
    def differential(self) -> dict[str, Element]:
        return {g.name: self._d[g.id] for g in self.ring.generators}

    def parse(self, text: str) -> Element:
        return as_element(self.ring, text)

    def __eq__(self, other):
        if not isinstance(other, FreeCGDA):
            return NotImplemented
        return self.ring == other.ring and all(
            a.terms == b.terms for a, b in zip(self._d, other._d)
        )

    def __hash__(self):
        return hash(self.ring)

    def __repr__(self):
        return f"FreeCGDA({', '.join(f'{g.name}:{g.degree}' for g in self.generators)})"

    # -- derived algebras --------------------------------------------------

    def with_differential(self, updates: Mapping[str, object]) -> FreeCGDA:
        """Same generators with some differentials replaced."""
        diff = {n: e for n, e in self.differential.items()}
        for n, v in updates.items():
            if n not in self.ring.index:
                raise KeyError(f"unknown generator {n!r}")
            diff[n] = as_element(self.ring, v)
        return FreeCGDA(self.ring, diff)

    def extend(self, generators: Iterable[tuple[str, int]], differential: Mapping[str, object]) -> FreeCGDA:
        """Add generators; existing differentials are carried over."""
        ring = FreeGCA(list(self.signature_pairs()) + list(generators))
        images = {i: ring.gen(g.name) for i, g in enumerate(self.generators)}
        diff = {g.name: ring_map(self.ring, ring, images, self._d[g.id]) for g in self.generators}
        for n, v in differential.items():
            diff[n] = as_element(ring, v)
        return FreeCGDA(ring, diff)

    def signature_pairs(self):
        return [(g.name, g.degree) for g in self.generators]

    # -- differential ----------------------------------------------------

    def d_monomial(self, mono: Monomial) -> Element:
        cached = self._mono_d.get(mono)
        if cached is not None:
            return cached
        ring = self.ring
        out = ring.zero()
        for pos, (i, e) in enumerate(mono):
            dg = self._d[i]
            if not dg:
                continue
            prefix = Element(ring, {mono[:pos]: 1})
            suffix = Element(ring, {mono[pos + 1:]: 1})
            rest = ((i, e - 1),) if e > 1 else ONE
            middle = Element(ring, {rest: e}) * dg
            sign = -1 if ring.mono_degree(mono[:pos]) % 2 else 1
            out = out + (prefix * middle * suffix) * sign
        self._mono_d[mono] = out
        return out


def apply_differential(A: FreeCGDA, e: Element) -> Element:
    """d extended to all of A as a derivation."""
    if e.ring != A.ring:
        raise MixedAlgebras("element does not belong to this algebra")
    out: dict[Monomial, Fraction] = {}
    for m, c in e.terms.items():
        for m2, c2 in A.d_monomial(m).terms.items():
            out[m2] = out.get(m2, 0) + c * c2
    return Element(A.ring, out)


@dataclass
class CheckReport:
    """Outcome of a generator-by-generator check; truthy when it passed."""

    passed: bool
    failures: dict[str, Element] = field(default_factory=dict)
    checked: int = 0

    def __bool__(self):
        return self.passed

    def __str__(self):
        if self.passed:
            return f"pass ({self.checked} generators)"
        lines = [f"fail ({len(self.failures)} of {self.checked} generators)"]
        lines += [f"  {n}: residual {r}" for n, r in self.failures.items()]
        return "\n".join(lines)


def check_d_squared(A: FreeCGDA) -> CheckReport:
    """d(d(g)) = 0 for each generator; enough by the Leibniz rule."""
    failures = {}
    for g in A.generators:
        r = apply_differential(A, A.d(g.name))
        if r:
            failures[g.name] = r
    return CheckReport(not failures, failures, len(A.generators))


class CgdaMorphism:
    """Algebra map out of a free algebra, given on generators."""

    def __init__(self, source: FreeCGDA, target: FreeCGDA, assignment: Mapping[str, object]):
        self.source = source
        self.target = target
        unknown = set(assignment) - set(source.names)
        if unknown:
            raise KeyError(f"assignment for unknown generators {sorted(unknown)}")
        images: dict[int, Element] = {}
        for g in source.generators:
            if g.name not in assignment:
                raise KeyError(f"no image given for {g.name}")
            img = as_element(target.ring, assignment[g.name])
            for m in img.terms:
                if target.ring.mono_degree(m) != g.degree:
                    raise InvalidDegrees(f"image of {g.name} is {img}, not of degree {g.degree}")
            images[g.id] = img
        self._images = images

    @classmethod
    def identity(cls, A: FreeCGDA) -> CgdaMorphism:
        return cls(A, A, {n: A.gen(n) for n in A.names})

    def image(self, name: str) -> Element:
        return self._images[self.source.ring.index[name]]

    @property
    def assignment(self) -> dict[str, Element]:
        return {g.name: self._images[g.id] for g in self.source.generators}

    def __call__(self, e: Element) -> Element:
        return ring_map(self.source.ring, self.target.ring, self._images, e)


def check_morphism(phi: CgdaMorphism) -> CheckReport:
    """phi(d g) = d(phi g) for each source generator g."""
    failures = {}
    for g in phi.source.generators:
        lhs = phi(phi.source.d(g.name))
        rhs = apply_differential(phi.target, phi.image(g.name))
        if lhs != rhs:
            failures[g.name] = lhs - rhs
    return CheckReport(not failures, failures, len(phi.source.generators))


def _d_ranks(A: FreeCGDA, top: int) -> list[int]:
    ranks = []
    for n in range(top + 1):
        rows = (A.d_monomial(m).terms for m in A.ring.basis(n))
        ranks.append(_linalg.rank(rows))
    return ranks


def cohomology_dims(A: FreeCGDA, max_degree: int = DEFAULT_COHOMOLOGY_DEGREE) -> GradedDims:
    """dim H^n(A) for 0 <= n <= max_degree, by exact elimination."""
    if max_degree > MAX_COHOMOLOGY_DEGREE:
        raise DegreeCapExceeded(
            f"cohomology requested through degree {max_degree}; the cap is {MAX_COHOMOLOGY_DEGREE}"
        )
    if max_degree < 0:
        return GradedDims()
    ranks = _d_ranks(A, max_degree)
    dims = {}
    for n in range(max_degree + 1):
        dims[n] = len(A.ring.basis(n)) - ranks[n] - (ranks[n - 1] if n else 0)
    return GradedDims.from_mapping(dims)


def _tensor_with_maps(A: FreeCGDA, B: FreeCGDA):
    clash = set(A.names) & set(B.names)
    left = [(g.name + "_L" if g.name in clash else g.name, g.degree) for g in A.generators]
    right = [(g.name + "_R" if g.name in clash else g.name, g.degree) for g in B.generators]
    ring = FreeGCA(left + right)
    imA = {g.id: ring.gen(left[g.id][0]) for g in A.generators}
    imB = {g.id: ring.gen(right[g.id][0]) for g in B.generators}
    diff = {}
    for g in A.generators:
        diff[left[g.id][0]] = ring_map(A.ring, ring, imA, A.d(g.name))
    for g in B.generators:
        diff[right[g.id][0]] = ring_map(B.ring, ring, imB, B.d(g.name))
    C = FreeCGDA(ring, diff)
    incA = CgdaMorphism(A, C, {g.name: imA[g.id] for g in A.generators})
    incB = CgdaMorphism(B, C, {g.name: imB[g.id] for g in B.generators})
    return C, incA, incB


def tensor(A: FreeCGDA, B: FreeCGDA) -> FreeCGDA:
    """A (x) B; clashing names get suffixes _L and _R."""
    return _tensor_with_maps(A, B)[0]


def is_split_trivial(A: FreeCGDA, base_generators, fiber_generators) -> bool:
    """True when d of every fiber generator avoids the base generators."""
    base, fiber = set(base_generators), set(fiber_generators)
    names = set(A.names)
    if base & fiber:
        raise BadPartition(f"generators in both parts: {sorted(base & fiber)}")
    if base | fiber != names:
        missing = sorted(names - base - fiber)
        extra = sorted((base | fiber) - names)
        raise BadPartition(f"not a partition of the generators (missing {missing}, unknown {extra})")
    base_ids = {A.ring.index[n] for n in base}
    for n in fiber:
        for m in A.d(n).terms:
            if any(i in base_ids for i, _ in m):
                return False
    return True


def substitute_zero(A: FreeCGDA, names: Iterable[str]) -> FreeCGDA:
    """Quotient by closed generators: drop them and set them to 0 elsewhere."""
    names = set(names)
    for n in names:
        if n not in A.ring.index:
            raise KeyError(f"unknown generator {n!r}")
        if A.d(n):
            raise ValueError(f"{n} is not closed (d{n} = {A.d(n)}); only closed generators may be set to 0")
    kept = [(g.name, g.degree) for g in A.generators if g.name not in names]
    ring = FreeGCA(kept)
    images = {
        g.id: (ring.zero() if g.name in names else ring.gen(g.name)) for g in A.generators
    }
    diff = {n: ring_map(A.ring, ring, images, A.d(n)) for n, _ in kept}
    return FreeCGDA(ring, diff)

