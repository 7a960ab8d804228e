from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from goldencalc.errors import EvaluationAtZero, InvalidOrder
from goldencalc.goldenfield import ComplexQuadratic, QuadraticNumber, golden_power, silver_power
from goldencalc.qcalculus import (
    GoldenPolynomial,
    NumericFunction,
    exp_sign,
    golden_binomial,
    golden_binomial_expansion,
    golden_derivative_fn,
    golden_derivative_poly,
    golden_taylor,
    golden_translate,
    taylor_resum,
)
from goldencalc.sequences import fib_divisor, fibonomial
from goldencalc.series import BivariatePolynomial

small = st.integers(-6, 6)
gauss = st.builds(lambda a, b, c: ComplexQuadratic(QuadraticNumber(a, b), c), small, small, small)
polys = st.lists(gauss, max_size=9).map(GoldenPolynomial)
orders = st.integers(-5, 5).filter(bool)
X = GoldenPolynomial.x()


def test_derivative_examples():
    x3 = GoldenPolynomial.monomial(3)
    assert golden_derivative_poly(2, x3) == GoldenPolynomial.monomial(2, 8)
    assert golden_derivative_poly(-2, x3) == GoldenPolynomial.monomial(2, 8)
    assert golden_derivative_poly(4, GoldenPolynomial([1])).is_zero()
    with pytest.raises(InvalidOrder):
        golden_derivative_poly(0, x3)


def test_zero_polynomial_degree():
    assert GoldenPolynomial().degree == 0
    assert GoldenPolynomial([0, 0]).is_zero()


@given(polys, polys, orders)
def test_leibniz_rule(f, g, k):
    lhs = golden_derivative_poly(k, f * g)
    rhs = golden_derivative_poly(k, f) * g.scale_argument(golden_power(k)) + \
        f.scale_argument(silver_power(k)) * golden_derivative_poly(k, g)
    assert lhs == rhs


@given(polys, orders)
def test_derivative_matches_difference_quotient(p, k):
    # exact difference quotient evaluated at a rational point
    x0 = Fraction(3, 7)
    lhs = golden_derivative_poly(k, p)(x0)
    num = p(golden_power(k) * x0) - p(silver_power(k) * x0)
    den = (golden_power(k) - silver_power(k)) * x0
    assert lhs == num / ComplexQuadratic(den)


def _quotient_check(k, prec):
    f = NumericFunction(lambda z: mpmath.exp(z) + z**2, "f")
    g = NumericFunction(lambda z: 2 + mpmath.cos(z), "g")
    q = NumericFunction(lambda z: f(z) / g(z), "f/g")
    with mpmath.workprec(prec + 40):
        x = mpmath.mpf("0.37")
        pk = golden_power(k).to_real(prec + 40)
        qk = silver_power(k).to_real(prec + 40)
        df = golden_derivative_fn(k, f, x, prec + 20)
        dg = golden_derivative_fn(k, g, x, prec + 20)
        rhs = (df * g(qk * x) - f(qk * x) * dg) / (g(pk * x) * g(qk * x))
        lhs = golden_derivative_fn(k, q, x, prec + 20)
        return abs(lhs - rhs) / abs(rhs)


@pytest.mark.parametrize("k", [1, 2, -3])
def test_quotient_rule_numeric(k):
    prec = 100
    assert _quotient_check(k, prec) < mpmath.mpf(2) ** -(prec - 12)


def test_numeric_derivative_examples():
    prec = 120
    d = golden_derivative_fn(1, NumericFunction(mpmath.exp, "exp"), 1, prec)
    with mpmath.workprec(prec):
        h = mpmath.sqrt(5) / 2
        ref = mpmath.exp(mpmath.mpf(1) / 2) * mpmath.sinh(h) / h
        assert abs(d - ref) < mpmath.mpf(2) ** -(prec - 8)
    ident = NumericFunction(lambda z: z, "id")
    assert abs(golden_derivative_fn(5, ident, 2, prec) - 1) < mpmath.mpf(2) ** -(prec - 8)
    with pytest.raises(EvaluationAtZero):
        golden_derivative_fn(1, ident, 0)


def test_numeric_derivative_deterministic():
    f = NumericFunction(mpmath.sin, "sin")
    assert golden_derivative_fn(3, f, "0.4", 90) == golden_derivative_fn(3, f, "0.4", 90)


log_periodic = NumericFunction(
    lambda z: mpmath.sin(mpmath.pi * mpmath.log(abs(z)) / mpmath.log(mpmath.phi)), "periodic"
)


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("x", ["1.7", "-0.3", "5.2"])
def test_golden_periodic_function_is_annihilated(k, x):
    assert abs(golden_derivative_fn(k, log_periodic, x, 100)) < mpmath.mpf(2) ** -80


def test_non_periodic_counterexample():
    f = NumericFunction(
        lambda z: mpmath.sin(mpmath.pi * mpmath.log(abs(z)) / mpmath.log(mpmath.phi**2)), "half"
    )
    assert abs(golden_derivative_fn(1, f, "1.7", 100)) > 0.01


def test_binomial_examples():
    # k=1: (x - phi a)(x - phi' a) = x^2 - a x - a^2, at a = 2
    assert golden_binomial(1, 2, 2) == GoldenPolynomial([-4, -2, 1])
    assert golden_binomial(3, 0, 5) == GoldenPolynomial([1])
    assert golden_binomial(1, 2, 1, "+") == GoldenPolynomial([-1, 1, 1])
    with pytest.raises(ValueError):
        golden_binomial(1, 2, 1, "*")


@pytest.mark.parametrize("k", [k for k in range(-5, 6) if k])
def test_expansion_theorem(k):
    for n in range(13):
        for y in (1, QuadraticNumber(Fraction(1, 2), 3), ComplexQuadratic(2, -1)):
            assert golden_binomial(k, n, y, "+") == golden_binomial_expansion(k, n, y)


def test_expansion_identity_at_one():
    for k in (1, 2, 3):
        for n in range(8):
            total = sum(fibonomial(n, m, k) * exp_sign(k, m) for m in range(n + 1))
            assert golden_binomial(k, n, 1, "+")(1) == total


def bivariate_binomial(k, n, sign):
    out = BivariatePolynomial({(0, 0): 1})
    for j in range(n):
        c = golden_power(k * (n - 1 - j)) * silver_power(k * j)
        out = out * BivariatePolynomial({(1, 0): 1, (0, 1): c * sign})
    return out


@pytest.mark.parametrize("k", [k for k in range(-4, 5) if k])
def test_binomial_derivative_lemmas(k):
    for n in range(1, 11):
        f = fib_divisor(n, k)
        plus, minus = bivariate_binomial(k, n, 1), bivariate_binomial(k, n, -1)
        assert plus.derivative(k, "x") == bivariate_binomial(k, n - 1, 1).scale(f)
        s = -1 if k % 2 else 1
        assert plus.derivative(k, "y") == bivariate_binomial(k, n - 1, s).scale(f)
        assert minus.derivative(k, "y") == bivariate_binomial(k, n - 1, -s).scale(-f)


@pytest.mark.parametrize("k", [1, -2, 3])
def test_factorization_property(k):
    a = QuadraticNumber(2, -1)
    for total in range(11):
        for n in range(total + 1):
            m = total - n
            whole = golden_binomial(k, total, a)
            assert whole == golden_binomial(k, n, golden_power(k * m) * a) * golden_binomial(k, m, silver_power(k * n) * a)
            assert whole == golden_binomial(k, m, golden_power(k * n) * a) * golden_binomial(k, n, silver_power(k * m) * a)


def test_taylor_worked_example():
    p = (X + 1) ** 3
    assert golden_taylor(2, p) == [1, 3, 9, 24]
    assert golden_taylor(1, GoldenPolynomial([7])) == [7]
    assert golden_taylor(1, X**2) == [0, 0, 1]


@given(st.lists(gauss, max_size=13).map(GoldenPolynomial), orders)
def test_taylor_round_trip(p, k):
    assert taylor_resum(k, golden_taylor(k, p)) == p


def test_translate_examples():
    assert golden_translate(1, X**2, 1) == GoldenPolynomial([-1, 1, 1])
    p = GoldenPolynomial([1, 2, 3])
    assert golden_translate(2, p, 0) == p


@given(st.integers(0, 9), orders, gauss)
def test_translate_sends_powers_to_binomials(n, k, y):
    assert golden_translate(k, GoldenPolynomial.monomial(n), y) == golden_binomial(k, n, y, "+")
