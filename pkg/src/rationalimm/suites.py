"""Invariant suites run by ``verify``.  Each returns pass/fail counts."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import product

from .cgda import check_d_squared, check_morphism, cohomology_dims, MAX_COHOMOLOGY_DEGREE
from .charclasses import ClassVanishingProfile, ahl_range, verify_ahl_identity
from .errors import NegativeCoefficientWarning
from .immersion import check_hypotheses, closed_form_series, rank_series_expansion
from .manifolds import catalog
from .series import expand
from .stiefel import (
    abar_range,
    build_stiefel_model,
    build_universal_model,
    check_rational_triviality,
    em_type_cohomology,
    fiber_model,
)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, label: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(label)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def format(self) -> str:
        lines = [f"suite {self.name}: {self.passed} passed, {self.failed} failed"]
        lines += [f"  FAIL {f}" for f in self.failures]
        return "\n".join(lines) + "\n"


def _mk_grid(grid: int, m_min: int = 0):
    return [(m, k) for m in range(m_min, grid + 1) for k in range(2, grid + 1)]


def suite_d_squared(grid: int = 6, **_) -> SuiteResult:
    res = SuiteResult("d-squared")
    for m, k in _mk_grid(grid):
        A1, A1p, _phi = build_universal_model(m, k)
        for label, A in (("stiefel", build_stiefel_model(m, k).full_model), ("A1", A1), ("A1'", A1p)):
            r = check_d_squared(A)
            res.record(bool(r), f"(m={m}, k={k}) {label}: {r}")
    return res


def suite_ahl(grid: int = 8, variant: str = "corrected", **_) -> SuiteResult:
    res = SuiteResult("ahl" if variant == "corrected" else f"ahl ({variant})")
    for m, k in _mk_grid(grid):
        for ell in ahl_range(m, k):
            r = verify_ahl_identity(m, k, ell, variant=variant)
            res.record(r.passed, str(r))
    return res


def suite_phi(grid: int = 6, variant: str = "corrected", **_) -> SuiteResult:
    res = SuiteResult("phi" if variant == "corrected" else f"phi ({variant})")
    for m, k in _mk_grid(grid):
        _, _, phi = build_universal_model(m, k, variant)
        r = check_morphism(phi)
        res.record(bool(r), f"(m={m}, k={k}): {r}")
    return res


def triviality_expected(m: int, k: int, profile: ClassVanishingProfile) -> bool:
    """Vanishing of the dual classes over the abar range, and k odd or e(xi) = 0."""
    dual_ok = all(profile.dual_p_zero(l) for l in abar_range(m, k))
    euler_ok = k % 2 == 1 or m % 2 == 1 or profile.euler_zero
    return dual_ok and euler_ok


def triviality_profiles(k: int):
    """All 2^3 combinations of the three vanishing flags."""
    for euler, dual, pall in product((False, True), repeat=3):
        yield ClassVanishingProfile(euler, (k + 1) // 2 if dual else None, pall)


def suite_triviality(grid: int = 6, **_) -> SuiteResult:
    res = SuiteResult("triviality")
    for m, k in _mk_grid(grid, m_min=1):
        spec = build_stiefel_model(m, k)
        for prof in triviality_profiles(k):
            got = check_rational_triviality(spec, prof)
            want = triviality_expected(m, k, prof)
            res.record(got == want, f"(m={m}, k={k}) {prof}: got {got}, expected {want}")
    return res


def suite_fiber_em(grid: int = 6, **_) -> SuiteResult:
    res = SuiteResult("fiber-em")
    for m, k in _mk_grid(grid):
        top = min(2 * (m + k), MAX_COHOMOLOGY_DEGREE)
        got = cohomology_dims(fiber_model(m, k), top).dims
        want = em_type_cohomology(m, k, top)
        res.record(got == want, f"(m={m}, k={k}): cohomology {got}, expected {want}")
    return res


def suite_series_consistency(grid: int = 8, **_) -> SuiteResult:
    """Corrected closed form against the EM expansion on the catalog."""
    res = SuiteResult("series-consistency")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NegativeCoefficientWarning)
        for M in catalog():
            m = M.dim
            if m > grid:
                continue
            for k in range(2, m + 4):
                if not check_hypotheses(M, k).series_ok:
                    continue
                top = 4 * (m + k)
                got = expand(closed_form_series(M, k, "corrected"), top)
                want = rank_series_expansion(M, k, top)
                res.record(got == want, f"{M.name}, k={k}: closed form {got.format_pairs()} vs {want.format_pairs()}")
    return res


SUITES = {
    "d-squared": suite_d_squared,
    "ahl": suite_ahl,
    "phi": suite_phi,
    "triviality": suite_triviality,
    "fiber-em": suite_fiber_em,
    "series-consistency": suite_series_consistency,
}


def run_suite(name: str, grid: int | None = None, variant: str = "corrected") -> SuiteResult:
    fn = SUITES[name]
    kwargs = {"variant": variant}
    if grid is not None:
        kwargs["grid"] = grid
    return fn(**kwargs)
