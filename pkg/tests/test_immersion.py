import warnings

import pytest
from hypothesis import given, settings, strategies as st

from rationalimm.charclasses import ClassVanishingProfile
from rationalimm.descriptors import EMFactor, merge_factors
from rationalimm.errors import HypothesisViolation, NegativeCoefficientWarning
from rationalimm.immersion import (
    _even_range,
    _odd_range,
    check_hypotheses,
    closed_form_series,
    imm_component,
    imm_component_even,
    imm_component_odd,
    imm_general_descriptor,
    moller_factors,
    paper_discrepancy,
    rank_series_expansion,
    series_report,
    sphere_map_poly,
)
from rationalimm.manifolds import ManifoldData, catalog, lookup
from rationalimm.series import RationalFunction, expand, poly_mul, x_pow
from rationalimm.stiefel import stiefel_manifold_em_type

ODD_CASES = [
    (M, k)
    for M in catalog()
    if M.dim > 0
    for k in range(3, M.dim + 4, 2)
    if 2 * k >= M.dim + 2
]


# -- hypotheses ---------------------------------------------------------------------


def test_hypotheses_s2_k3():
    r = check_hypotheses(lookup("S2"), 3)
    assert r.ok and r.applicable_theorem == "odd-codim"


def test_hypotheses_cp2_k2():
    r = check_hypotheses(lookup("CP2"), 2)
    assert [f.name for f in r.failed()] == ["euler_ok", "dual_p_ok"]
    with pytest.raises(HypothesisViolation) as info:
        r.raise_if_failed()
    assert info.value.flag == "euler_ok"
    assert str(info.value) == "euler_ok failed: e(τ_M) ≠ 0 required by Theorem (even codim)"


def test_hypotheses_s3xs3_k4():
    r = check_hypotheses(lookup("S3xS3"), 4)
    assert r.ok and r.series_ok and r.applicable_theorem == "even-codim"


def test_dual_class_vanishing_by_degree():
    # CP3 only asserts dual classes vanish from index 2, but p̃_2 has degree 8 > 6
    assert check_hypotheses(lookup("CP3"), 4)["dual_p_ok"].ok
    assert not check_hypotheses(lookup("CP4"), 2)["dual_p_ok"].ok


def test_k_parity_flag():
    r = check_hypotheses(lookup("S3"), 1)
    assert not r.ok and r.failed()[0].name == "k_parity"


# -- Möller factors -------------------------------------------------------------------


def test_moller_examples():
    assert [f.as_pair() for f in moller_factors(lookup("point").betti, 7)] == [(1, 7)]
    assert sorted(f.as_pair() for f in moller_factors(lookup("S2").betti, 7)) == [(1, 5), (1, 7)]
    assert sorted(f.as_pair() for f in moller_factors(lookup("CP2").betti, 11)) == [(1, 7), (1, 9), (1, 11)]


def test_em_factor_ranks_positive():
    with pytest.raises(ValueError):
        EMFactor(0, 3)


@pytest.mark.parametrize("M", [M for M in catalog() if M.dim > 0], ids=lambda M: M.name)
def test_duality_shift(M):
    m = M.dim
    P = M.betti_list
    ns = [4 * i - 1 for k in range(2, m + 4) for i in (_odd_range(m, k) if k % 2 else _even_range(m, k))]
    ns += [m + k - 1 for k in range(2, m + 4)]
    for n in ns:
        if n - m < m:
            continue
        got = {f.degree: f.rank for f in moller_factors(M.betti, n)}
        want = {n - m + j: c for j, c in enumerate(P) if c}
        assert got == want


# -- component descriptors ----------------------------------------------------------


def test_odd_examples():
    assert imm_component_odd(lookup("S2"), 3).pairs() == [(1, 5), (1, 7)]
    assert imm_component_odd(lookup("CP2"), 3).pairs() == [(1, 3), (1, 5), (2, 7), (1, 9), (1, 11)]
    assert imm_component_odd(lookup("S3"), 3).pairs() == [(1, 2), (1, 4), (1, 5), (1, 7)]


def test_even_examples():
    d = imm_component_even(lookup("S3xS3"), 4)
    assert d.sphere_factor == 4 and d.component_independent
    want = merge_factors(
        moller_factors(lookup("S3xS3").betti, 11)
        + moller_factors(lookup("S3xS3").betti, 15)
        + moller_factors(lookup("S3xS3").betti, 9)
    )
    assert d.em_factors == want
    d = imm_component_even(lookup("S3"), 2)
    assert d.pairs() == [(1, 4), (1, 7)] and d.sphere_factor == 2 and d.component_independent


def test_even_rejects_nonzero_euler():
    with pytest.raises(HypothesisViolation) as info:
        imm_component_even(lookup("CP2"), 2)
    assert info.value.flag == "euler_ok"


# b4 = 1 and chi = 0, so the even gate passes but H^4 is nonzero
WITH_H4 = ManifoldData("W6", 6, [1, 0, 1, 4, 1, 0, 1], True, True, ClassVanishingProfile(True, 1, True))


def test_even_component_dependence_noted():
    d = imm_component_even(WITH_H4, 4)
    assert not d.component_independent and d.notes


def test_odd_rejects_even_k():
    with pytest.raises(HypothesisViolation):
        imm_component_odd(lookup("S3"), 4)


def test_point_gives_empty_components():
    assert imm_component(lookup("point"), 3).em_factors == ()
    assert rank_series_expansion(lookup("point"), 3, 10).format_pairs() == ""


@pytest.mark.parametrize("M,k", ODD_CASES, ids=lambda v: getattr(v, "name", str(v)))
def test_odd_component_is_moller_expansion_of_stiefel_type(M, k):
    stiefel = stiefel_manifold_em_type(M.dim, k)
    factors = []
    for f in stiefel.em_factors:
        for _ in range(f.rank):
            factors += moller_factors(M.betti, f.degree)
    assert imm_component_odd(M, k).em_factors == merge_factors(factors)


@st.composite
def variants(draw):
    M = draw(st.sampled_from([M for M in catalog() if M.dim > 0]))
    prof = ClassVanishingProfile(draw(st.booleans()), draw(st.one_of(st.none(), st.integers(1, 4))), draw(st.booleans()))
    return M, M.with_changes(name=draw(st.text("abcXYZ", min_size=1, max_size=6)), profile=prof)


@settings(max_examples=60, deadline=None)
@given(variants(), st.sampled_from([3, 5, 7]))
def test_odd_component_depends_only_on_betti(pair, k):
    M, N = pair
    assert imm_component_odd(M, k) == imm_component_odd(N, k)


# -- rank series --------------------------------------------------------------------


@pytest.mark.parametrize(
    "name,k,want",
    [("S2", 3, "5:1 7:1"), ("CP2", 3, "3:1 5:1 7:2 9:1 11:1"), ("S3", 3, "2:1 4:1 5:1 7:1")],
)
def test_series_examples(name, k, want):
    M = lookup(name)
    assert rank_series_expansion(M, k, 20).format_pairs() == want
    assert expand(closed_form_series(M, k), 20).format_pairs() == want


def test_cp2_corrected_closed_form():
    rf = closed_form_series(lookup("CP2"), 3)
    target = RationalFunction.from_polys(poly_mul(x_pow(3), poly_mul((1, 0, 0, 0, 1), (1, 0, 1, 0, 1))))
    assert rf.equals(target)


def test_cp2_paper_closed_form_differs():
    M = lookup("CP2")
    paper = expand(closed_form_series(M, 3, "paper"), 20)
    assert paper != rank_series_expansion(M, 3, 20)
    assert paper.format_pairs().startswith("1:1")


def test_point_closed_form_is_zero():
    assert expand(closed_form_series(lookup("point"), 3), 10).format_pairs() == ""


@pytest.mark.parametrize("M,k", ODD_CASES, ids=lambda v: getattr(v, "name", str(v)))
def test_corrected_closed_form_matches_expansion(M, k):
    top = 4 * (M.dim + k)
    assert expand(closed_form_series(M, k), top) == rank_series_expansion(M, k, top)


@pytest.mark.parametrize("M,k", ODD_CASES, ids=lambda v: getattr(v, "name", str(v)))
def test_paper_discrepancy_is_predicted(M, k):
    d = paper_discrepancy(M, k)
    assert d.differs and d.relation_holds


def test_sphere_map_poly_negative_warning():
    M = lookup("S3xS3")
    assert sphere_map_poly(M, 4) == {1: 1, 4: -1, 7: -1}
    with pytest.warns(NegativeCoefficientWarning, match="4:-1, 7:-1"):
        rank_series_expansion(M, 4, 20)


def test_even_closed_form_matches_expansion():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NegativeCoefficientWarning)
        for name, k in [("S3xS3", 4), ("S2xS3", 4), ("S5", 4), ("S3xS4", 6)]:
            M = lookup(name)
            top = 4 * (M.dim + k)
            assert expand(closed_form_series(M, k), top) == rank_series_expansion(M, k, top)


def test_series_refuses_nonzero_hk():
    with pytest.raises(HypothesisViolation) as info:
        rank_series_expansion(WITH_H4, 4, 20)
    assert info.value.flag == "hk_zero"


def test_series_report_lines():
    lines = series_report(lookup("CP2"), 3, 12, "paper")
    assert lines[0] == "3:1 5:1 7:2 9:1 11:1"
    assert any(l.startswith("DIFF closed form minus expansion") for l in lines)
    assert lines[-1].endswith("holds")
    assert not any("DIFF" in l for l in series_report(lookup("CP2"), 3, 12, "corrected"))


# -- general targets ------------------------------------------------------------------


def test_general_target_euclidean_reduces():
    M = lookup("S2")
    assert imm_general_descriptor(M, lookup("R5"), 3) == imm_component(M, 3)


def test_general_target_euler_zero():
    d = imm_general_descriptor(lookup("S2"), lookup("S2xS3"), 3)
    assert d.mapping_factors == ("Map(M,N)",)
    assert d.pairs() == [(1, 5), (1, 7)]


def test_general_target_nonzero_euler():
    d = imm_general_descriptor(lookup("S3"), lookup("S2xS4"), 3)
    assert d.mapping_factors == ("Map(M,V_m(τ_N))",) and d.em_factors == ()


def test_general_target_needs_vanishing_pontryagin():
    N = lookup("CP2").with_changes(name="N5", dim=5, betti=[1, 0, 0, 0, 0, 1], profile=ClassVanishingProfile())
    with pytest.raises(HypothesisViolation) as info:
        imm_general_descriptor(lookup("S2"), N, 3)
    assert info.value.flag == "target_p_ok"


def test_general_target_dimension_check():
    with pytest.raises(ValueError):
        imm_general_descriptor(lookup("S2"), lookup("S3xS3"), 3)
