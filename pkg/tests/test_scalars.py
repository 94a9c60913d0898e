from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fourierbasis.scalars import Cyclo, DEGREE, ONE, ZERO, _PHI, is_nonneg_real


def theta(j=1):
    return Cyclo.root_of_unity(3, j)


def zeta5(j=1):
    return Cyclo.root_of_unity(5, j)


def test_minimal_polynomial_is_the_known_degree_16_one():
    # x^16 + x^14 - x^10 - x^8 - x^6 + x^2 + 1
    expect = [0] * 17
    for k, c in [(16, 1), (14, 1), (10, -1), (8, -1), (6, -1), (2, 1), (0, 1)]:
        expect[k] = c
    assert _PHI == expect
    assert DEGREE == 16


def test_i_squared_is_minus_one():
    i = Cyclo.root_of_unity(4)
    assert i * i == Cyclo.from_rational(-1)
    assert i ** 4 == ONE


def test_primitive_fifth_roots_sum_to_minus_one():
    s = zeta5(1) + zeta5(2) + zeta5(3) + zeta5(4)
    assert s == Cyclo.from_rational(-1)


def test_conjugate_of_theta_is_theta_squared():
    assert theta().conjugate() == theta(2)


def test_halves_add_up():
    half = Cyclo.from_rational(Fraction(1, 2))
    assert half * theta() + half * theta() == theta()


def test_sixth_root_relations():
    z6 = Cyclo.root_of_unity(6)
    assert z6 == -theta(2)
    assert z6 ** 3 == Cyclo.from_rational(-1)
    assert z6 ** 2 == theta()


def test_nonneg_real_classification():
    golden = zeta5(1) + zeta5(4)  # (sqrt(5)-1)/2 > 0, irrational real
    assert golden.is_real()
    assert not golden.is_rational()
    assert is_nonneg_real(golden)
    assert not is_nonneg_real(theta() + theta(2))  # equals -1
    assert not is_nonneg_real(theta())  # not real at all
    assert is_nonneg_real(Cyclo.from_rational(0))
    assert not is_nonneg_real(Cyclo.from_rational(Fraction(-1, 10 ** 12)))


def test_rational_fast_paths():
    a = Cyclo.from_rational(Fraction(3, 7))
    assert (a * theta() / a) == theta()
    assert a.as_fraction() == Fraction(3, 7)
    with pytest.raises(ValueError):
        theta().as_fraction()


def test_inverse_of_roots():
    for n in (2, 3, 4, 5, 6, 60):
        z = Cyclo.root_of_unity(n)
        assert z * z.inverse() == ONE
        assert z.inverse() == z.conjugate()  # |z| = 1


def test_division_round_trip():
    a = theta() + 2 * zeta5() - Cyclo.from_rational(Fraction(1, 3))
    b = zeta5(2) - theta(2) + 1
    assert (a / b) * b == a


def test_serialization_round_trip():
    a = Cyclo.from_rational(Fraction(-5, 4)) + 3 * Cyclo.root_of_unity(60, 7)
    data = a.serialize()
    assert all(len(t) == 3 for t in data)
    assert Cyclo.deserialize(data) == a
    assert Cyclo.from_rational(2).serialize() == [[0, 2, 1]]


small_rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


@st.composite
def cyclo_elements(draw):
    n_terms = draw(st.integers(min_value=0, max_value=4))
    coeffs = {}
    for _ in range(n_terms):
        k = draw(st.integers(min_value=0, max_value=DEGREE - 1))
        coeffs[k] = draw(small_rationals)
    return Cyclo(coeffs)


@given(cyclo_elements(), cyclo_elements())
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@given(cyclo_elements())
def test_self_minus_self_is_canonical_zero(a):
    assert a - a == ZERO
    assert hash(a - a) == hash(ZERO)


@given(cyclo_elements(), cyclo_elements())
def test_evaluate_is_a_ring_hom_numerically(a, b):
    lhs = (a * b).evaluate()
    rhs = a.evaluate() * b.evaluate()
    assert abs(lhs - rhs) < 1e-9


@given(cyclo_elements())
def test_conjugation_matches_complex_conjugation(a):
    assert abs(a.conjugate().evaluate() - a.evaluate().conjugate()) < 1e-9
