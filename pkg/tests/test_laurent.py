from hypothesis import given, strategies as st

from knotfield.laurent import LaurentPolynomial

coeffs = st.dictionaries(st.integers(-10, 10), st.integers(-50, 50), max_size=6)


def test_basic_arithmetic():
    p = LaurentPolynomial({1: 1, -1: 1})
    q = LaurentPolynomial({0: 2})
    assert (p + q).coeffs == {1: 1, -1: 1, 0: 2}
    assert (p * q).coeffs == {1: 2, -1: 2}
    assert (p - p) == LaurentPolynomial.zero()
    assert p * LaurentPolynomial.one() == p


def test_monomial_and_mirror():
    m = LaurentPolynomial.monomial(-3, 2)
    assert m.coeffs == {-3: 2}
    assert m.mirror().coeffs == {3: 2}


def test_evaluate():
    p = LaurentPolynomial({2: 1, 0: -1, -2: 1})
    assert p.evaluate(2.0) == 4 - 1 + 0.25
    assert p.evaluate(-1.0) == 1.0


def test_json_roundtrip():
    p = LaurentPolynomial({-8: -1, -6: 1, -2: 1})
    obj = p.to_json("s")
    assert obj["variable"] == "s"
    assert LaurentPolynomial.from_json(obj) == p


def test_pretty_readable():
    p = LaurentPolynomial({-8: -1, -6: 1, -2: 1})
    assert p.pretty("s") == "-s^-8 + s^-6 + s^-2"
    assert LaurentPolynomial.one().pretty("s") == "1"


@given(coeffs, coeffs)
def test_mul_commutes(a, b):
    p, q = LaurentPolynomial(a), LaurentPolynomial(b)
    assert p * q == q * p


@given(coeffs, coeffs, coeffs)
def test_mul_distributes(a, b, c):
    p, q, r = LaurentPolynomial(a), LaurentPolynomial(b), LaurentPolynomial(c)
    assert p * (q + r) == p * q + p * r


@given(coeffs)
def test_scale_exponents_involution(a):
    p = LaurentPolynomial(a)
    assert p.scale_exponents(-1).scale_exponents(-1) == p
