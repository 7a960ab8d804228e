import pytest
from hypothesis import given, strategies as st

from goldencalc.errors import IndexOutOfRange, InvalidOrder, NegativeIndex
from goldencalc.goldenfield import ComplexQuadratic, golden_power, silver_power
from goldencalc.sequences import (
    SequenceQuery,
    fib_divisor,
    fib_divisor_factorial,
    fib_divisor_row,
    fibonacci,
    fibonomial,
    lucas,
    mod_k_factorial,
    mod_k_fibonacci_factorial,
)

orders = st.integers(min_value=-20, max_value=20).filter(bool)


def sgn(e):
    return -1 if e % 2 else 1


def binet(n, k):
    # independent oracle: exact Binet ratio in Q(sqrt5)
    q = (golden_power(k * n) - silver_power(k * n)) / (golden_power(k) - silver_power(k))
    assert q.is_integer()
    return int(q.a)


def naive_fib(n):
    a, b = 0, 1
    for _ in range(abs(n)):
        a, b = b, a + b
    return a if n >= 0 or n % 2 else -a


def test_small_values():
    assert [fibonacci(n) for n in range(1, 6)] == [1, 1, 2, 3, 5]
    assert fibonacci(0) == 0 and fibonacci(-4) == -3
    assert [lucas(k) for k in (0, 1, 2, 3, -3)] == [2, 1, 3, 4, -4]


@given(st.integers(min_value=-300, max_value=300))
def test_fibonacci_against_iteration(n):
    assert fibonacci(n) == naive_fib(n)


@given(st.integers(min_value=-60, max_value=60))
def test_lucas_binet(k):
    assert lucas(k) == golden_power(k) + silver_power(k)
    assert lucas(k) == fibonacci(k - 1) + fibonacci(k + 1)


@pytest.mark.parametrize(
    "k, expected",
    [(1, [1, 1, 2, 3, 5]), (2, [1, 3, 8, 21, 55]), (3, [1, 4, 17, 72, 305]),
     (4, [1, 7, 48, 329, 2255]), (5, [1, 11, 122, 1353, 15005])],
)
def test_divisor_tables(k, expected):
    assert [fib_divisor(n, k) for n in range(1, 6)] == expected


def test_negative_examples():
    assert fib_divisor(-3, 2) == -8 == fibonacci(-6) // fibonacci(2)


@given(st.integers(min_value=-100, max_value=100), orders)
def test_divisor_is_ratio_and_binet(n, k):
    v = fib_divisor(n, k)
    assert v * fibonacci(k) == fibonacci(n * k)
    assert v == binet(n, k)


@given(st.integers(min_value=0, max_value=20), st.integers(min_value=1, max_value=20))
def test_three_sign_rules(n, k):
    f = fib_divisor(n, k)
    assert fib_divisor(-n, k) == sgn(k * n + 1) * f
    assert fib_divisor(n, -k) == sgn((n + 1) * k) * f
    assert fib_divisor(-n, -k) == sgn(k + 1) * f


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-10, 10).filter(bool))
def test_addition_formula(n, m, k):
    lhs = fib_divisor(n + m, k)
    rhs = fib_divisor(m, k) * fib_divisor(n + 1, k) + sgn(k + 1) * fib_divisor(n, k) * fib_divisor(m - 1, k)
    assert lhs == rhs


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-8, 8).filter(bool))
def test_splitting_identity(n, m, k):
    rhs = golden_power(k * (n - m)) * fib_divisor(m, k) + silver_power(k * m) * fib_divisor(n - m, k)
    assert rhs == fib_divisor(n, k)


@pytest.mark.parametrize("k", range(1, 13))
def test_shifted_recurrence(k):
    L, s = lucas(k), sgn(k - 1)
    for alpha in range(k):
        for n in range(1, 31):
            assert fibonacci(k * (n + 1) + alpha) == L * fibonacci(k * n + alpha) + s * fibonacci(k * (n - 1) + alpha)


@given(st.integers(-50, 50))
def test_lucas_fibonacci_squares(k):
    if k % 2 == 0:
        assert 5 * fibonacci(k) ** 2 + 4 == lucas(k) ** 2
    else:
        assert lucas(k) ** 2 + 4 == 5 * fibonacci(k) ** 2


def test_row_matches_pointwise():
    for k in (-3, -1, 1, 4):
        assert fib_divisor_row(k, 40) == [fib_divisor(n, k) for n in range(41)]


def test_query_rejects_zero_order():
    with pytest.raises(InvalidOrder):
        SequenceQuery(3, 0)
    with pytest.raises(InvalidOrder):
        fib_divisor(3, 0)
    assert SequenceQuery(5, 3).evaluate() == 305


def test_factorials():
    assert fib_divisor_factorial(0, 7) == 1
    assert fib_divisor_factorial(4, 1) == 6
    assert fib_divisor_factorial(3, 2) == 24
    assert mod_k_factorial(3, 2) == 2 * 4 * 6
    with pytest.raises(NegativeIndex):
        fib_divisor_factorial(-1, 2)


@given(st.integers(0, 25), st.integers(-8, 8).filter(bool))
def test_factorial_relation(n, k):
    assert fib_divisor_factorial(n, k) * fibonacci(k) ** n == mod_k_fibonacci_factorial(n, k)


def test_fibonomial_examples():
    assert fibonomial(4, 2, 1) == 6
    assert fibonomial(3, 1, 2) == 8
    assert all(fibonomial(n, 0, k) == 1 for n in range(6) for k in (1, -2, 3))
    with pytest.raises(IndexOutOfRange):
        fibonomial(2, 3, 1)


@given(st.integers(0, 30), st.data(), st.integers(-8, 8).filter(bool))
def test_fibonomial_symmetry_and_pascal(n, data, k):
    m = data.draw(st.integers(0, n))
    assert fibonomial(n, m, k) == fibonomial(n, n - m, k)
    if 1 <= m < n:
        rhs = silver_power(k * m) * fibonomial(n - 1, m, k) + golden_power(k * (n - m)) * fibonomial(n - 1, m - 1, k)
        assert rhs == fibonomial(n, m, k)


def test_fibonomial_pascal_complex_embedding():
    # the same recursion holds for the complexified pair
    n, m, k = 9, 4, 3
    rhs = ComplexQuadratic(silver_power(k * m)) * fibonomial(n - 1, m, k) + ComplexQuadratic(
        golden_power(k * (n - m))
    ) * fibonomial(n - 1, m - 1, k)
    assert rhs == fibonomial(n, m, k)
