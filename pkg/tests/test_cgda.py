import random

import pytest
from hypothesis import given, settings, strategies as st

from rationalimm.cgda import (
    CgdaMorphism,
    Element,
    FreeCGDA,
    FreeGCA,
    apply_differential,
    check_d_squared,
    check_morphism,
    cohomology_dims,
    elem_mul,
    is_split_trivial,
    substitute_zero,
    tensor,
)
from rationalimm.errors import BadPartition, DegreeCapExceeded, InvalidDegrees, MixedAlgebras, ParseError
from rationalimm.expr import dump, parse_dump, parse_expr
from rationalimm.models import projective_model, sphere_model
from rationalimm.series import GradedDims


def S2():
    return FreeCGDA([("x", 2), ("y", 3)], {"y": "x^2"})


# -- products -----------------------------------------------------------------


def test_odd_generators_anticommute():
    R = FreeGCA([("u", 3), ("v", 5)])
    u, v = R.gen("u"), R.gen("v")
    assert (u * v + v * u).is_zero()
    assert (u * u).is_zero()


def test_odd_square_inside_product():
    R = FreeGCA([("p", 4), ("u", 3)])
    p, u = R.gen("p"), R.gen("u")
    assert ((p * u) * u).is_zero()


def test_koszul_sign_three_odd_factors():
    R = FreeGCA([("a", 1), ("b", 1), ("c", 1)])
    a, b, c = (R.gen(n) for n in "abc")
    # c*b*a reverses three odd letters: three transpositions
    assert c * b * a == -(a * b * c)
    assert b * a * c == -(a * b * c)


def test_even_powers_accumulate():
    R = FreeGCA([("x", 2), ("u", 3)])
    x, u = R.gen("x"), R.gen("u")
    assert str(x * u * x) == "x^2*u"
    assert (x**3).degree == 6


def test_mixed_algebras_rejected():
    A = FreeGCA([("x", 2)])
    B = FreeGCA([("y", 2)])
    with pytest.raises(MixedAlgebras):
        elem_mul(A.gen("x"), B.gen("y"))


def test_equal_signatures_share_elements():
    A = FreeGCA([("x", 2)])
    B = FreeGCA([("x", 2)])
    assert A.gen("x") * B.gen("x") == A.gen("x") ** 2


def test_generator_degree_must_be_positive():
    with pytest.raises(InvalidDegrees):
        FreeGCA([("x", 0)])


# -- differential -----------------------------------------------------------


def test_d_of_unit_and_leibniz_example():
    A = S2()
    x, y = A.gen("x"), A.gen("y")
    assert apply_differential(A, A.ring.one()).is_zero()
    assert apply_differential(A, x * y) == x**3
    assert apply_differential(A, y * y).is_zero()


def test_d_sign_on_odd_prefix():
    A = FreeCGDA([("u", 3), ("x", 2), ("y", 3)], {"y": "x^2"})
    u, x, y = A.gen("u"), A.gen("x"), A.gen("y")
    assert apply_differential(A, u * y) == -(u * x**2)


def test_wrong_degree_differential():
    with pytest.raises(InvalidDegrees):
        FreeCGDA([("x", 2), ("y", 3)], {"y": "x"})


def test_d_squared_passes_on_models():
    assert check_d_squared(S2())
    B = FreeCGDA([("x", 2), ("y", 3), ("z", 4)], {"y": "x^2"})
    assert check_d_squared(B.with_differential({"y": "x^2 + z"}))


def test_d_squared_detects_failure():
    A = FreeCGDA([("x", 2), ("u", 3), ("w", 4), ("y", 3)], {"w": "x*u", "y": "x^2 + w"})
    r = check_d_squared(A)
    assert not r
    assert set(r.failures) == {"y"}
    assert r.failures["y"] == A.gen("x") * A.gen("u")


def test_identity_morphism():
    A = S2()
    assert check_morphism(CgdaMorphism.identity(A))


def test_broken_morphism_reports_generator():
    A = S2()
    B = FreeCGDA([("x", 2), ("y", 3), ("t", 2)], {"y": "x^2"})
    phi = CgdaMorphism(A, B, {"x": "x + t", "y": "y"})
    r = check_morphism(phi)
    assert not r and set(r.failures) == {"y"}


def test_morphism_degree_check():
    A = S2()
    with pytest.raises(InvalidDegrees):
        CgdaMorphism(A, A, {"x": "y", "y": "y"})


# -- cohomology ---------------------------------------------------------------


def test_cohomology_examples():
    assert cohomology_dims(S2(), 8).dims == {0: 1, 2: 1}
    assert cohomology_dims(FreeCGDA([("u", 3)]), 8).dims == {0: 1, 3: 1}
    A = FreeCGDA([("e", 2), ("abar", 3)], {"abar": "-e^2"})
    assert cohomology_dims(A, 10).dims == {0: 1, 2: 1}


def test_cohomology_cap():
    with pytest.raises(DegreeCapExceeded):
        cohomology_dims(S2(), 31)
    cohomology_dims(FreeCGDA([("u", 3)]), 30)


def test_cohomology_of_projective_space():
    assert cohomology_dims(projective_model(3), 12).dims == {0: 1, 2: 1, 4: 1, 6: 1}


# -- tensor ---------------------------------------------------------------


def kunneth(a: GradedDims, b: GradedDims, top: int) -> dict:
    out = {}
    for i, x in a.items:
        for j, y in b.items:
            if i + j <= top:
                out[i + j] = out.get(i + j, 0) + x * y
    return out


def test_tensor_with_unit():
    A = S2()
    T = tensor(A, FreeCGDA([]))
    assert T.names == A.names and T == A


def test_tensor_sphere_product():
    T = tensor(S2(), sphere_model(3))
    assert cohomology_dims(T, 8).dims == {0: 1, 2: 1, 3: 1, 5: 1}


def test_tensor_renames_on_collision():
    T = tensor(S2(), S2())
    assert T.names == ["x_L", "y_L", "x_R", "y_R"]
    assert T.d("y_R") == T.gen("x_R") ** 2


CATALOG_MODELS = [sphere_model(2), sphere_model(3), sphere_model(4), projective_model(2), projective_model(3)]


@pytest.mark.parametrize("i", range(len(CATALOG_MODELS)))
@pytest.mark.parametrize("j", range(len(CATALOG_MODELS)))
def test_kunneth_on_catalog_models(i, j):
    A, B = CATALOG_MODELS[i], CATALOG_MODELS[j]
    T = tensor(A, B)
    want = kunneth(cohomology_dims(A, 12), cohomology_dims(B, 12), 12)
    assert cohomology_dims(T, 12).dims == want


def test_tensor_basis_counts_multiply():
    A, B = S2(), sphere_model(3)
    T = tensor(A, B)
    for n in range(12):
        want = sum(len(A.ring.basis(i)) * len(B.ring.basis(n - i)) for i in range(n + 1))
        assert len(T.ring.basis(n)) == want


def test_cohomology_independent_of_generator_order():
    A = tensor(projective_model(2), sphere_model(2, "s"))
    gens = list(A.signature_pairs())
    rng = random.Random(7)
    for _ in range(4):
        rng.shuffle(gens)
        B = FreeCGDA(gens, {n: str(A.d(n)) for n, _ in gens})
        assert cohomology_dims(B, 12) == cohomology_dims(A, 12)


# -- splitting and substitution -------------------------------------------------


def test_is_split_trivial():
    A = FreeCGDA([("p", 4), ("q", 4), ("a", 3), ("b", 7)], {"a": "0", "b": "q^2"})
    assert is_split_trivial(A, {"p"}, {"q", "a", "b"})
    B = A.with_differential({"b": "p*q"})
    assert not is_split_trivial(B, {"p"}, {"q", "a", "b"})
    assert is_split_trivial(A, set(A.names), set())


def test_bad_partition():
    A = S2()
    with pytest.raises(BadPartition):
        is_split_trivial(A, {"x"}, set())
    with pytest.raises(BadPartition):
        is_split_trivial(A, {"x", "y"}, {"y"})


def test_substitute_zero():
    A = FreeCGDA([("p", 4), ("e", 2), ("a", 3)], {"a": "e^2 - p"})
    B = substitute_zero(A, ["p"])
    assert B.names == ["e", "a"] and str(B.d("a")) == "e^2"
    with pytest.raises(ValueError):
        substitute_zero(A, ["a"])


# -- text formats ---------------------------------------------------------------


def test_parse_expr():
    R = FreeGCA([("x", 2), ("u", 3), ("v", 3)])
    e = parse_expr("3/2*x^2 - u*v + 2", R)
    assert str(e) == "2 + 3/2*x^2 - u*v"
    assert parse_expr("v*u", R) == -parse_expr("u*v", R)
    for bad in ["x +", "q", "x/y", "x^u", "x.y", "2**-1*x"]:
        with pytest.raises(ParseError):
            parse_expr(bad, R)


def test_dump_round_trip():
    A = tensor(projective_model(2), FreeCGDA([("e", 2), ("abar", 3)], {"abar": "-1/2*e^2"}))
    assert parse_dump(dump(A)) == A
    text = "# comment\nx 2 0\n\ny 3 x^2  # tail\n"
    assert parse_dump(text) == S2()


def test_parse_dump_errors():
    with pytest.raises(ParseError):
        parse_dump("x two 0\n")
    with pytest.raises(ParseError):
        parse_dump("x 2\n")


# -- properties ---------------------------------------------------------------

GENS = [("x", 2), ("y", 3), ("z", 4), ("u", 5), ("v", 3), ("w", 1)]
RING = FreeGCA(GENS)
LEIBNIZ_ALG = FreeCGDA(RING, {"y": "x^2", "u": "x*z + y*v", "v": "w*y", "z": "x*y"})
CLOSED_ALG = FreeCGDA(RING, {"y": "x^2", "u": "x*z", "v": "x^2"})


@st.composite
def homogeneous(draw, ring=RING, max_degree=9):
    while True:
        d = draw(st.integers(0, max_degree))
        basis = ring.basis(d)
        if basis:
            break
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(basis), max_size=len(basis)))
    return Element(ring, dict(zip(basis, coeffs)))


def deg(e):
    return e.degree or 0


@settings(max_examples=150, deadline=None)
@given(homogeneous(), homogeneous())
def test_graded_commutativity(a, b):
    assert a * b == (b * a) * (-1) ** (deg(a) * deg(b))


@settings(max_examples=80, deadline=None)
@given(homogeneous(), homogeneous(), homogeneous(max_degree=5))
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=150, deadline=None)
@given(homogeneous(), homogeneous())
def test_leibniz(a, b):
    A = LEIBNIZ_ALG
    lhs = apply_differential(A, a * b)
    rhs = apply_differential(A, a) * b + a * apply_differential(A, b) * (-1) ** deg(a)
    assert lhs == rhs


def test_closed_algebra_passes_d_squared():
    assert check_d_squared(CLOSED_ALG)


@settings(max_examples=150, deadline=None)
@given(homogeneous())
def test_d_squared_on_random_elements(a):
    A = CLOSED_ALG
    assert apply_differential(A, apply_differential(A, a)).is_zero()
