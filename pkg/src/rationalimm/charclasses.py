"""Pontryagin, dual Pontryagin and Euler classes as symbolic elements.

A total class 1 + c_1 + c_2 + ... is stored as its components c_i (degree 4i)
in some free graded-commutative algebra.  Manifolds known only through Betti
numbers carry a :class:`ClassVanishingProfile` instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .cgda import Element, FreeGCA, as_element
from .errors import IndexOutOfRange, InvalidDegrees


@dataclass(frozen=True)
class ClassVanishingProfile:
    """Vanishing facts about the characteristic classes of a tangent bundle.

    ``dual_p_zero_from = d`` asserts that the dual classes vanish from index d
    on; ``p_zero_all`` asserts all Pontryagin classes vanish.
    """

    euler_zero: bool = False
    dual_p_zero_from: int | None = None
    p_zero_all: bool = False

    def __post_init__(self):
        if self.dual_p_zero_from is not None and self.dual_p_zero_from < 1:
            raise ValueError("dual_p_zero_from must be >= 1")

    def dual_p_zero(self, i: int) -> bool:
        """Is the i-th dual class known to vanish?"""
        if self.p_zero_all:
            return True
        return self.dual_p_zero_from is not None and i >= self.dual_p_zero_from


class TotalClass:
    """Components 1..max_index of a total characteristic class."""

    def __init__(self, ring: FreeGCA, components: Mapping[int, Element], max_index: int):
        self.ring = ring
        self.max_index = max_index
        self.components: dict[int, Element] = {}
        for i, c in components.items():
            if not 1 <= i <= max_index:
                raise IndexOutOfRange(f"component index {i} outside 1..{max_index}")
            if c.ring != ring:
                raise ValueError("component lives in a different algebra")
            for m in c.terms:
                if ring.mono_degree(m) != 4 * i:
                    raise InvalidDegrees(f"component {i} = {c} is not of degree {4 * i}")
            if c:
                self.components[i] = c

    @classmethod
    def one(cls, ring: FreeGCA, max_index: int) -> TotalClass:
        return cls(ring, {}, max_index)

    def __getitem__(self, i: int) -> Element:
        if i == 0:
            return self.ring.one()
        return self.components.get(i, self.ring.zero())

    def truncate(self, up_to: int) -> TotalClass:
        return TotalClass(self.ring, {i: c for i, c in self.components.items() if i <= up_to}, up_to)

    def is_one(self) -> bool:
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, TotalClass):
            return NotImplemented
        n = min(self.max_index, other.max_index)
        return all(self[i] == other[i] for i in range(1, n + 1))

    def __str__(self):
        parts = ["1"] + [f"({self.components[i]})" for i in sorted(self.components)]
        return " + ".join(parts)


def universal_pontryagin(n: int, prefix: str = "p") -> TotalClass:
    """1 + p_1 + ... + p_n with independent symbols p_i of degree 4i."""
    ring = FreeGCA([(f"{prefix}{i}", 4 * i) for i in range(1, n + 1)])
    return TotalClass(ring, {i: ring.gen(f"{prefix}{i}") for i in range(1, n + 1)}, n)


def dual_total_class(p: TotalClass, up_to: int) -> TotalClass:
    """Inverse total class: dual_i = -p_i - sum_{j<i} p_j dual_{i-j}."""
    if up_to < 1:
        raise ValueError("up_to must be >= 1")
    dual: dict[int, Element] = {}
    zero = p.ring.zero()
    for i in range(1, up_to + 1):
        acc = -p[i] if i <= p.max_index else zero
        for j in range(1, min(i - 1, p.max_index) + 1):
            if j in p.components and i - j in dual:
                acc = acc - p.components[j] * dual[i - j]
        dual[i] = acc
    return TotalClass(p.ring, dual, up_to)


def whitney_sum_total(pA: TotalClass, pB: TotalClass, up_to: int) -> TotalClass:
    """Total class of a Whitney sum: component i is sum_{t+j=i} pA_t pB_j."""
    if pA.ring != pB.ring:
        raise ValueError("total classes live in different algebras")
    out = {}
    for i in range(1, up_to + 1):
        acc = pA.ring.zero()
        for t in range(0, i + 1):
            a = pA[t] if t <= pA.max_index else None
            b = pB[i - t] if i - t <= pB.max_index else None
            if a and b:
                acc = acc + a * b
        out[i] = acc
    return TotalClass(pA.ring, out, up_to)


@dataclass(frozen=True)
class ObstructionReport:
    """Dual classes that would have to vanish for an immersion to exist."""

    m: int
    k: int
    indices: tuple[int, ...]

    def __bool__(self):
        return False

    def __str__(self):
        idx = ", ".join(str(i) for i in self.indices)
        return (
            f"dual Pontryagin classes with index > {(self.k - 1) // 2} are nonzero "
            f"(indices {idx}); they must vanish for an immersion of codimension {self.k}"
        )


def normal_bundle_classes(m: int, k: int, dual_p_of_M: TotalClass) -> TotalClass | ObstructionReport:
    """Pontryagin classes of the normal bundle of an immersion M^m -> R^{m+k}.

    They equal the dual classes of M up to index (k-1)//2.  Components of
    degree above m vanish in H*(M) and are ignored.
    """
    if k < 1:
        raise ValueError("codimension must be >= 1")
    top = (k - 1) // 2
    bad = tuple(
        i for i, c in sorted(dual_p_of_M.components.items()) if c and 4 * i <= m and i > top
    )
    if bad:
        return ObstructionReport(m, k, bad)
    comps = {i: c for i, c in dual_p_of_M.components.items() if i <= top and 4 * i <= m}
    return TotalClass(dual_p_of_M.ring, comps, max(top, 1))


@dataclass
class AhlReport:
    """Result of checking one relation between a_i, f_i and dual classes."""

    m: int
    k: int
    ell: int
    variant: str
    lhs: Element
    rhs: Element
    residual: Element = field(init=False)

    def __post_init__(self):
        self.residual = self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()

    def __bool__(self):
        return self.passed

    def __str__(self):
        status = "pass" if self.passed else f"fail, residual {self.residual}"
        return f"(m={self.m}, k={self.k}, l={self.ell}) {self.variant}: {status}"


def ahl_range(m: int, k: int) -> range:
    """Admissible indices: ceil(k/2) <= l <= floor((m+k-1)/2)."""
    return range((k + 1) // 2, (m + k - 1) // 2 + 1)


def ahl_ring(m: int, k: int) -> FreeGCA:
    """Polynomial algebra on a_i, p_t, b_j (and e_k for even k)."""
    gens = [(f"a{i}", 4 * i) for i in range(1, (m + k - 1) // 2 + 1)]
    gens += [(f"p{t}", 4 * t) for t in range(1, (m - 1) // 2 + 1)]
    gens += [(f"b{j}", 4 * j) for j in range(1, (k - 1) // 2 + 1)]
    if k % 2 == 0 and k > 0:
        gens.append(("ek", k))
    return FreeGCA(gens)


def _classes(ring: FreeGCA, prefix: str, top: int) -> dict[int, Element]:
    return {i: ring.gen(f"{prefix}{i}") for i in range(1, top + 1) if f"{prefix}{i}" in ring.index}


def verify_ahl_identity(
    m: int,
    k: int,
    ell: int,
    *,
    variant: str = "corrected",
    perturb: Mapping[int, object] | None = None,
) -> AhlReport:
    """Check the relation expressing a_l - f_l data through dual classes.

    With f_i = a_i - sum_{t+j=i} p_t b_j (b_{k/2} = e_k^2 for even k) the
    right-hand side is -sum_{j=1}^{l} dual_{l-j} (a_j - f_j).  The left-hand
    side is dual_l - B_l, where B_l = e_k^2 if l = k/2 and 0 otherwise
    (``variant="corrected"``), or a_l - dual_l, resp. a_l - e_k^2 - dual_l
    (``variant="printed"``).

    ``perturb`` maps an index i to an expression added to f_i.
    """
    if ell not in ahl_range(m, k):
        raise IndexOutOfRange(
            f"l = {ell} outside [{(k + 1) // 2}, {(m + k - 1) // 2}] for m={m}, k={k}"
        )
    if variant not in ("corrected", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    ring = ahl_ring(m, k)
    a = _classes(ring, "a", ell)
    p = TotalClass(ring, _classes(ring, "p", ell), ell)
    b_comps = _classes(ring, "b", ell)
    square = None
    if k % 2 == 0:
        square = ring.gen("ek") ** 2
        if k // 2 <= ell:
            b_comps[k // 2] = square
    b = TotalClass(ring, b_comps, ell)
    pb = whitney_sum_total(p, b, ell)
    f = {i: a[i] - pb[i] for i in range(1, ell + 1)}
    for i, extra in (perturb or {}).items():
        f[i] = f[i] + as_element(ring, extra)
    dual = dual_total_class(p, ell)
    rhs = ring.zero()
    for j in range(1, ell + 1):
        rhs = rhs - dual[ell - j] * (a[j] - f[j])
    half = k % 2 == 0 and ell == k // 2
    if variant == "corrected":
        lhs = dual[ell] - (square if half else 0)
    else:
        lhs = a[ell] - dual[ell] - (square if half else 0)
    return AhlReport(m, k, ell, variant, lhs, rhs)
