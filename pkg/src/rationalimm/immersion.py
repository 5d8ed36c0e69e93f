"""Rational homotopy of components of immersion spaces.

For a simply connected M^m and codimension k the component of Imm(M, R^{m+k})
is rationally a product of Eilenberg-MacLane spaces (odd k), or such a product
times a component of Map(M, S^k) (even k, under vanishing hypotheses).  Each
factor K(Q, n) of the fibre V_m(R^{m+k}) contributes, after mapping M into it,
the factors K(H^{n-q}(M), q) for 1 <= q <= n.

The EM expansion is the reference for rank series; closed forms are derived
from it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .descriptors import ComponentDescriptor, EMFactor, merge_factors
from .errors import HypothesisViolation, NegativeCoefficientWarning
from .manifolds import ManifoldData
from .series import (
    GradedDims,
    RationalFunction,
    TruncatedSeries,
    expand,
    poly_sub,
    x_pow,
)
from .stiefel import stiefel_manifold_em_type

FLAG_ORDER = (
    "k_parity",
    "simply_connected",
    "euler_ok",
    "dual_p_ok",
    "target_p_ok",
    "codim_bound_ok",
    "closed_ok",
    "hk_zero",
)


@dataclass(frozen=True)
class Flag:
    name: str
    ok: bool
    message: str

    def __str__(self):
        return f"{self.name}: {'ok' if self.ok else 'FAILED'} ({self.message})"


@dataclass
class HypothesisReport:
    """Each flag records one hypothesis; ``required`` lists those the
    applicable theorem needs, ``series_required`` those the rank series needs."""

    m: int
    k: int
    flags: dict[str, Flag]
    applicable_theorem: str
    required: tuple[str, ...]
    series_required: tuple[str, ...] = field(default=())

    def __getitem__(self, name: str) -> Flag:
        return self.flags[name]

    def failed(self, names=None) -> list[Flag]:
        names = self.required if names is None else names
        return [self.flags[n] for n in names if not self.flags[n].ok]

    @property
    def ok(self) -> bool:
        return not self.failed()

    @property
    def series_ok(self) -> bool:
        return not self.failed(self.series_required)

    def raise_if_failed(self, names=None) -> None:
        bad = self.failed(names)
        if bad:
            raise HypothesisViolation(bad[0].name, f"{bad[0].name} failed: {bad[0].message}")

    def format(self) -> str:
        lines = [f"theorem: {self.applicable_theorem}"]
        for n in FLAG_ORDER:
            f = self.flags[n]
            tag = "required" if n in self.required else ("series" if n in self.series_required else "info")
            lines.append(f"{n}: {'ok' if f.ok else 'FAILED'} [{tag}] {f.message}")
        return "\n".join(lines) + "\n"


def _dual_half_vanishes(M: ManifoldData, k: int) -> bool:
    """Is the dual class of index k/2 zero, by the profile or by degree?"""
    half = k // 2
    return 4 * half > M.dim or M.profile.dual_p_zero(half)


def check_hypotheses(M: ManifoldData, k: int, target: ManifoldData | None = None) -> HypothesisReport:
    """Evaluate the hypotheses of the structure theorems for (M, k).

    ``target=None`` means R^{m+k}; otherwise ``target`` is a general N.
    """
    m = M.dim
    odd = k % 2 == 1
    flags = {}
    flags["k_parity"] = Flag(
        "k_parity",
        odd and k >= 3,
        f"k = {k} is odd and >= 3" if odd and k >= 3 else f"k = {k} is not an odd integer >= 3",
    )
    sc = M.simply_connected and (target is None or target.simply_connected)
    flags["simply_connected"] = Flag(
        "simply_connected",
        sc,
        "M simply connected" + ("" if target is None else " and N simply connected")
        if sc
        else "simple connectivity required",
    )
    flags["euler_ok"] = Flag(
        "euler_ok",
        M.profile.euler_zero,
        "e(τ_M) = 0" if M.profile.euler_zero else "e(τ_M) ≠ 0 required by Theorem (even codim)",
    )
    if odd:
        dual_ok, msg = True, "not needed for odd k"
    else:
        dual_ok = _dual_half_vanishes(M, k)
        msg = f"p̃_{k // 2}(τ_M) = 0" if dual_ok else f"p̃_{k // 2}(τ_M) = 0 not asserted"
    flags["dual_p_ok"] = Flag("dual_p_ok", dual_ok, msg)
    if target is None:
        flags["target_p_ok"] = Flag("target_p_ok", True, "target is euclidean")
    else:
        ok = target.profile.p_zero_all
        flags["target_p_ok"] = Flag(
            "target_p_ok",
            ok,
            f"all Pontryagin classes of {target.name} vanish"
            if ok
            else f"Pontryagin classes of {target.name} are not known to vanish",
        )
    flags["codim_bound_ok"] = Flag(
        "codim_bound_ok", 2 * k >= m + 2, f"k = {k} {'>=' if 2 * k >= m + 2 else '<'} m/2 + 1 = {m / 2 + 1:g}"
    )
    flags["closed_ok"] = Flag("closed_ok", M.closed, "M closed" if M.closed else "M is not closed")
    bk = M.b(k)
    flags["hk_zero"] = Flag("hk_zero", bk == 0, f"dim H^{k}(M) = {bk}")

    if k < 2:
        theorem, required = "none", ("k_parity",)
    elif target is not None:
        theorem = "general-target"
        required = ("simply_connected", "target_p_ok") + (() if odd else ("euler_ok", "dual_p_ok"))
    elif odd:
        theorem, required = "odd-codim", ("k_parity", "simply_connected")
    else:
        theorem, required = "even-codim", ("simply_connected", "euler_ok", "dual_p_ok")
    series = ("closed_ok", "codim_bound_ok") + (() if odd else ("hk_zero",))
    return HypothesisReport(m, k, flags, theorem, required, required + series)


def moller_factors(betti: GradedDims, n: int) -> list[EMFactor]:
    """Factors K(Q^{b_{n-q}}, q), 1 <= q <= n, of a component of Map(M, K(Q, n))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [EMFactor(betti[n - q], q) for q in range(1, n + 1) if betti[n - q] > 0]


def _odd_range(m: int, k: int) -> range:
    top = (m + k) // 2 if m % 2 == 0 else (m + k - 1) // 2
    return range((k + 1) // 2, top + 1)


def _even_range(m: int, k: int) -> range:
    return range(k // 2 + 1, (m + k - 1) // 2 + 1)


def imm_component_odd(M: ManifoldData, k: int) -> ComponentDescriptor:
    """EM decomposition of a component of Imm(M, R^{m+k}) for odd k >= 3."""
    report = check_hypotheses(M, k)
    report.raise_if_failed(("k_parity", "simply_connected"))
    m = M.dim
    factors: list[EMFactor] = []
    for i in _odd_range(m, k):
        factors += moller_factors(M.betti, 4 * i - 1)
    if m % 2 == 1:
        factors += moller_factors(M.betti, m + k - 1)
    return ComponentDescriptor(
        em_factors=merge_factors(factors),
        component_independent=True,
        applicable_theorem="odd-codim",
    )


def imm_component_even(M: ManifoldData, k: int) -> ComponentDescriptor:
    """EM factors times Map(M, S^k) for even k, when e(τ_M) and the dual class vanish."""
    if k % 2 == 1 or k < 2:
        raise HypothesisViolation("k_parity", f"k_parity failed: k = {k} is not an even integer >= 2")
    report = check_hypotheses(M, k)
    report.raise_if_failed(("simply_connected", "euler_ok", "dual_p_ok"))
    m = M.dim
    if m == 0:
        return ComponentDescriptor(
            component_independent=True, applicable_theorem="even-codim", notes=("M is a point",)
        )
    factors: list[EMFactor] = []
    for i in _even_range(m, k):
        factors += moller_factors(M.betti, 4 * i - 1)
    if m % 2 == 0:
        factors += moller_factors(M.betti, m + k - 1)
    independent = M.b(k) == 0
    notes = () if independent else (
        f"H^{k}(M) ≠ 0: the Map(M,S^{k}) factor depends on the component",
    )
    return ComponentDescriptor(
        em_factors=merge_factors(factors),
        sphere_factor=k,
        component_independent=independent,
        applicable_theorem="even-codim",
        notes=notes,
    )


def imm_component(M: ManifoldData, k: int) -> ComponentDescriptor:
    """Dispatch on the parity of k."""
    return imm_component_odd(M, k) if k % 2 == 1 else imm_component_even(M, k)


def sphere_map_poly(M: ManifoldData, k: int) -> dict[int, int]:
    """Coefficients of R(x) = sum_{i>=1} (b_{k-i} - b_{2k-i-1}) x^i."""
    out = {}
    for i in range(1, 2 * k):
        c = M.b(k - i) - M.b(2 * k - i - 1)
        if c:
            out[i] = c
    return out


def _warn_negative(M: ManifoldData, k: int, coeffs: dict[int, int]) -> list[str]:
    neg = {i: c for i, c in coeffs.items() if c < 0}
    if not neg:
        return []
    text = ", ".join(f"{i}:{c}" for i, c in sorted(neg.items()))
    msg = f"R(x) for {M.name}, k={k} has negative coefficients ({text}); these are not ranks"
    warnings.warn(msg, NegativeCoefficientWarning, stacklevel=3)
    return [msg]


def rank_series_expansion(M: ManifoldData, k: int, max_degree: int) -> TruncatedSeries:
    """sum_d rank pi_d x^d of an immersion component, through max_degree."""
    desc = imm_component(M, k)
    terms = dict(desc.rank_by_degree())
    if k % 2 == 0 and M.dim > 0:
        check_hypotheses(M, k).raise_if_failed(("hk_zero",))
        r = sphere_map_poly(M, k)
        _warn_negative(M, k, r)
        for i, c in r.items():
            terms[i] = terms.get(i, 0) + c
    return TruncatedSeries.from_terms(terms, max_degree)


def _geometric(lo: int, count: int, m: int) -> RationalFunction:
    """sum_{i=lo}^{lo+count-1} x^{4i-1-m} = x^{4lo-1-m} (1 - x^{4count}) / (1 - x^4)."""
    if count <= 0:
        return RationalFunction(((),), ((1,),))
    return RationalFunction((x_pow(4 * lo - 1 - m), poly_sub((1,), x_pow(4 * count))), (poly_sub((1,), x_pow(4)),))


def _series_checks(M: ManifoldData, k: int) -> HypothesisReport:
    report = check_hypotheses(M, k)
    report.raise_if_failed(report.series_required)
    return report


def closed_form_series(M: ManifoldData, k: int, variant: str = "corrected") -> RationalFunction:
    """Rank series of an immersion component as a rational function.

    ``corrected`` sums x^{4i-1-m} P_M(x) over the exact integer range of i,
    adds x^{k-1} P_M(x) for the extra factor K(Q, m+k-1) and, for even k, R(x).
    ``paper`` returns the printed closed forms unchanged.
    """
    if variant not in ("corrected", "paper"):
        raise ValueError(f"unknown variant {variant!r}")
    _series_checks(M, k)
    m = M.dim
    P = tuple(M.betti_list)
    one_minus_x4 = poly_sub((1,), x_pow(4))
    R = None
    if k % 2 == 0:
        coeffs = sphere_map_poly(M, k)
        _warn_negative(M, k, coeffs)
        R = tuple(coeffs.get(i, 0) for i in range(max(coeffs, default=0) + 1)) if coeffs else ()

    if variant == "paper":
        if k % 2 == 1:
            if m % 2 == 0:
                num = (x_pow(2 * k - m - 1), poly_sub((1,), x_pow(2 * m + 2)), P)
            else:
                num = (x_pow(3 * k - m - 2), poly_sub((1,), x_pow(2 * m + 2)), P, P)
        else:
            if m % 2 == 1:
                num = (x_pow(2 * k - m - 1), poly_sub((1,), x_pow(2 * m)), P, R)
            else:
                num = (x_pow(3 * k - m - 2), poly_sub((1,), x_pow(2 * m)), P, P, R)
        return RationalFunction(num, (one_minus_x4,))

    if m == 0:
        return RationalFunction(((),), ((1,),))
    if k % 2 == 1:
        rng = _odd_range(m, k)
    else:
        rng = _even_range(m, k)
    em = _geometric(rng.start, len(rng), m)
    em = RationalFunction(em.numerator + (P,), em.denominator)
    extra = m % 2 == 1 if k % 2 == 1 else m % 2 == 0
    out = em
    if extra:
        out = out + RationalFunction((x_pow(k - 1), P), ((1,),))
    if R is not None:
        out = out + RationalFunction((R,), ((1,),))
    return out


@dataclass(frozen=True)
class Discrepancy:
    """Comparison of the printed closed form with the corrected one."""

    differs: bool
    predicted_relation: str
    relation_holds: bool


def paper_discrepancy(M: ManifoldData, k: int) -> Discrepancy:
    """Check that the printed odd-k closed form is off by the predicted factor.

    m even: paper * x^2 (1 - x^{2m}) = corrected * (1 - x^{2m+2}).
    m odd:  paper * x^2 (1 - x^{2m-2}) = EM part * (1 - x^{2m+2}) * x^{k-1} P_M.
    """
    if k % 2 == 0:
        raise ValueError("the predicted relation concerns odd k")
    m = M.dim
    paper = closed_form_series(M, k, "paper")
    corrected = closed_form_series(M, k, "corrected")
    P = tuple(M.betti_list)
    lhs_num = paper.numerator_poly
    if m % 2 == 0:
        lhs = RationalFunction((lhs_num, x_pow(2), poly_sub((1,), x_pow(2 * m))), paper.denominator)
        rhs = RationalFunction(
            (corrected.numerator_poly, poly_sub((1,), x_pow(2 * m + 2))), corrected.denominator
        )
        text = "paper * x^2 (1 - x^{2m}) = corrected * (1 - x^{2m+2})"
    else:
        rng = _odd_range(m, k)
        em = _geometric(rng.start, len(rng), m)
        lhs = RationalFunction((lhs_num, x_pow(2), poly_sub((1,), x_pow(2 * m - 2))), paper.denominator)
        rhs = RationalFunction(
            em.numerator + (P, poly_sub((1,), x_pow(2 * m + 2)), x_pow(k - 1), P), em.denominator
        )
        text = "paper * x^2 (1 - x^{2m-2}) = EM part * (1 - x^{2m+2}) * x^{k-1} P_M"
    return Discrepancy(not paper.equals(corrected), text, lhs.equals(rhs))


def imm_general_descriptor(M: ManifoldData, N: ManifoldData, k: int) -> ComponentDescriptor:
    """Rational type of a component of Imm(M, N) for a target with vanishing Pontryagin classes."""
    if N.dim != M.dim + k:
        raise ValueError(f"dim N = {N.dim} but m + k = {M.dim + k}")
    report = check_hypotheses(M, k, target=N)
    if k < 2:
        report.raise_if_failed(("k_parity",))
    report.raise_if_failed()
    if N.is_rationally_trivial():
        desc = imm_component(M, k)
        return desc
    if not N.profile.euler_zero:
        return ComponentDescriptor(
            component_independent=k % 2 == 1 or M.b(k) == 0,
            applicable_theorem="general-target",
            mapping_factors=("Map(M,V_m(τ_N))",),
            notes=(f"e(τ_{N.name}) ≠ 0: no product splitting",),
        )
    stiefel = stiefel_manifold_em_type(M.dim, k)
    factors: list[EMFactor] = []
    for f in stiefel.em_factors:
        for _ in range(f.rank):
            factors += moller_factors(M.betti, f.degree)
    return ComponentDescriptor(
        em_factors=merge_factors(factors),
        sphere_factor=stiefel.sphere_factor,
        component_independent=k % 2 == 1 or M.b(k) == 0,
        applicable_theorem="general-target",
        mapping_factors=("Map(M,N)",),
    )


def series_report(M: ManifoldData, k: int, max_degree: int, variant: str | None = None) -> list[str]:
    """Lines printed by the ``series`` command."""
    oracle = rank_series_expansion(M, k, max_degree)
    lines = [oracle.format_pairs()]
    if variant is None:
        return lines
    rf = closed_form_series(M, k, variant)
    cf = expand(rf, max_degree)
    lines.append(f"closed form ({variant}): {rf}")
    lines.append(f"closed form expansion: {cf.format_pairs()}")
    if cf != oracle:
        diff = cf - oracle
        lines.append(f"DIFF closed form minus expansion: {diff.format_pairs()}")
        if k % 2 == 1 and variant == "paper":
            d = paper_discrepancy(M, k)
            lines.append(
                f"DIFF predicted relation {d.predicted_relation}: {'holds' if d.relation_holds else 'fails'}"
            )
    return lines
