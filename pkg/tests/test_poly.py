import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahmass.gaussian import GaussianRational
from ahmass.poly import (
    ExactPoly,
    euler_degree,
    hyperboloid_normal_form,
    minkowski_norm_poly,
    monomials_of_degree,
    sphere_integral,
    sphere_monomial_integral,
    sphere_restrict,
    vanishes_on_sphere,
    wave_operator,
)


def X(nv, i):
    return ExactPoly.variable(nv, i)


# ---------------------------------------------------------------------------
# wave operator
# ---------------------------------------------------------------------------


def test_wave_operator_mixed_term():
    p = X(4, 0) * X(4, 1)
    assert wave_operator(p).is_zero()


def test_wave_operator_time_square():
    p = X(4, 0) ** 2
    assert wave_operator(p) == ExactPoly.constant(4, -2)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_wave_operator_norm(n):
    p = minkowski_norm_poly(n + 1)
    assert wave_operator(p) == ExactPoly.constant(n + 1, 2 * (n + 1))


def test_wave_operator_needs_two_vars():
    with pytest.raises(ValueError):
        wave_operator(ExactPoly.variable(1, 0))


# ---------------------------------------------------------------------------
# sphere integrals; oracle = divergence-theorem recursion
# ---------------------------------------------------------------------------


def sphere_integral_oracle(exponents):
    """int x^a / Vol via the recursion I(a) = (a_i-1)/(n+|a|-2) I(a-2e_i)."""
    n = len(exponents)
    if any(a % 2 for a in exponents):
        return Fraction(0)
    total = sum(exponents)
    if total == 0:
        return Fraction(1)
    i = next(j for j, a in enumerate(exponents) if a > 0)
    down = list(exponents)
    down[i] -= 2
    return Fraction(exponents[i] - 1, n + total - 2) * sphere_integral_oracle(down)


@pytest.mark.parametrize(
    "alpha,value",
    [
        ((0, 0, 0), Fraction(1)),
        ((2, 0, 0), Fraction(1, 3)),
        ((4, 0, 0), Fraction(1, 5)),
        ((2, 2, 0), Fraction(1, 15)),
        ((1, 0, 0), Fraction(0)),
    ],
)
def test_sphere_monomial_known_values(alpha, value):
    assert sphere_monomial_integral(alpha) == value


@given(
    st.lists(st.integers(min_value=0, max_value=6), min_size=2, max_size=5)
)
@settings(max_examples=200, deadline=None)
def test_closed_form_matches_recursion(alpha):
    assert sphere_monomial_integral(alpha) == sphere_integral_oracle(alpha)


def test_sphere_integral_drops_odd_part():
    p = ExactPoly.constant(3, 1) + X(3, 0)
    assert sphere_integral(p) == 1


def test_sphere_integral_norm_is_one():
    p = sum((X(3, i) ** 2 for i in range(3)), ExactPoly.zero(3))
    assert sphere_integral(p) == 1


def test_vanishes_on_sphere():
    norm_minus_1 = sum((X(3, i) ** 2 for i in range(3)), ExactPoly.zero(3)) - 1
    assert vanishes_on_sphere(norm_minus_1)
    assert not vanishes_on_sphere(X(3, 0))
    assert vanishes_on_sphere(norm_minus_1 * X(3, 0) * X(3, 1))


def test_vanishes_on_sphere_gaussian():
    i = GaussianRational.i()
    p = (X(3, 0) + X(3, 1) * i) * 0
    assert vanishes_on_sphere(p)
    assert not vanishes_on_sphere(X(3, 0) * i)


@given(st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4))
@settings(max_examples=30, deadline=None)
def test_ideal_members_vanish(d0, d1):
    norm_minus_1 = sum((X(3, i) ** 2 for i in range(3)), ExactPoly.zero(3)) - 1
    q = X(3, 0) ** d0 * X(3, 1) ** d1
    assert vanishes_on_sphere(norm_minus_1 * q)


# ---------------------------------------------------------------------------
# hyperboloid normal form
# ---------------------------------------------------------------------------


def test_normal_form_norm_is_minus_one():
    p = minkowski_norm_poly(4)
    assert hyperboloid_normal_form(p) == ExactPoly.constant(4, -1)


def test_normal_form_time_square():
    nv = 4
    expect = ExactPoly.constant(nv, 1)
    for i in range(1, nv):
        expect = expect + X(nv, i) ** 2
    assert hyperboloid_normal_form(X(nv, 0) ** 2) == expect


def random_poly(nv, deg, rng, gaussian=False):
    p = ExactPoly.zero(nv)
    for mono in monomials_of_degree(nv, deg):
        if rng.random() < 0.4:
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            if gaussian:
                c = GaussianRational(c, Fraction(rng.randint(-3, 3)))
            p = p + ExactPoly.monomial(nv, mono, c)
    return p


def test_normal_form_idempotent_and_kills_ideal():
    rng = random.Random(0)
    ideal_gen = minkowski_norm_poly(4) + 1
    for _ in range(10):
        p = random_poly(4, 3, rng)
        nf = hyperboloid_normal_form(p)
        assert hyperboloid_normal_form(nf) == nf
        assert max((e[0] for e in nf.terms), default=0) <= 1
        assert hyperboloid_normal_form(p * ideal_gen).is_zero()


# ---------------------------------------------------------------------------
# misc polynomial mechanics
# ---------------------------------------------------------------------------


def test_substitute_and_restrict():
    nv = 4
    p = X(nv, 0) ** 2 - X(nv, 1) * X(nv, 2)
    r = sphere_restrict(p)
    assert r.nvars == 3
    assert r == ExactPoly.constant(3, 1) - X(3, 0) * X(3, 1)


def test_euler_degree_operator():
    p = X(4, 0) ** 2 * X(4, 3)
    assert euler_degree(p) == 3 * p


def test_gaussian_coefficients_arithmetic():
    i = GaussianRational.i()
    p = X(4, 2) + X(4, 3) * i
    q = p * p.conjugate()
    assert q == X(4, 2) ** 2 + X(4, 3) ** 2


def test_evaluate_exact():
    p = X(3, 0) ** 2 + 2 * X(3, 1)
    val = p.evaluate([Fraction(1, 2), Fraction(3), Fraction(0)])
    assert val == Fraction(1, 4) + 6
