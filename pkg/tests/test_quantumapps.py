import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from goldencalc.errors import EvenOrderForState, InvalidOrder, NotHecke, WrongArity
from goldencalc.goldenfield import PHI, QuadraticNumber, golden_power
from goldencalc.quantumapps import (
    PureState,
    TwoByTwoOperator,
    antipodal_qubits,
    bell_coefficients,
    bell_superpositions,
    concurrence_closed,
    concurrence_pure,
    concurrence_wootters,
    fibonacci_multiqubit,
    fibonacci_power_formula,
    hecke_coefficients,
    hecke_defect,
    hecke_power,
    hecke_sample,
    measurement_probabilities,
)
from goldencalc.sequences import fib_divisor, fibonacci, lucas

TOL = mpmath.mpf(10) ** -20


@pytest.mark.parametrize("k", [k for k in range(-30, 31) if k])
def test_antipodal_orthogonal(k):
    u, v, norm = antipodal_qubits(k)
    assert u[0] * v[0] + u[1] * v[1] == 0
    assert u[0] ** 2 + u[1] ** 2 == norm == v[0] ** 2 + v[1] ** 2


def test_antipodal_examples():
    assert antipodal_qubits(1)[2] == 2 + PHI
    with pytest.raises(InvalidOrder):
        antipodal_qubits(0)
    # amplitude ratio 1/phi^k shrinks with k
    ratios = [antipodal_qubits(k)[0][1].inverse() for k in (1, 5, 20)]
    assert ratios[0] > ratios[1] > ratios[2] > 0


def test_multiqubit_examples():
    s = fibonacci_multiqubit(1, 2)
    assert s.amplitudes_unnorm == (0, 1, 1, 1) and s.norm_sq == 3
    s = fibonacci_multiqubit(5, 1)
    assert s.amplitudes_unnorm == (0, 1)
    s = fibonacci_multiqubit(3, 3)
    assert [int(a.a) for a in s.amplitudes_unnorm] == [0, 1, 1, 4, 1, 4, 4, 17]
    assert s.norm_sq == 340
    with pytest.raises(EvenOrderForState):
        fibonacci_multiqubit(2, 2)


def brute_norm(k, n):
    return sum(fib_divisor(bin(i).count("1"), k) ** 2 for i in range(2**n))


@pytest.mark.parametrize("k", [1, 3, 5, 7, 9, -1, -3])
def test_probabilities_exact(k):
    for n in range(1, 11):
        s = fibonacci_multiqubit(k, n)
        probs = s.probabilities()
        assert sum(probs, QuadraticNumber(0)) == 1
        assert s.norm_sq == brute_norm(k, n)
        table = measurement_probabilities(k, n)
        for i, p in enumerate(probs):
            assert p == table[bin(i).count("1")]


def test_pure_state_json_round_trip():
    s = fibonacci_multiqubit(3, 3)
    assert PureState.from_json(s.to_json()) == s
    b = bell_superpositions(2)["P-"]
    assert PureState.from_json(b.to_json()) == b


def test_pure_state_validation():
    with pytest.raises(ValueError):
        PureState(2, (1, 0, 0), 1)
    with pytest.raises(ValueError):
        PureState(1, (1, 1), 3)


def test_concurrence_examples():
    assert concurrence_closed(1) == Fraction(2, 3)
    assert concurrence_closed(3) == Fraction(1, 9)
    assert all(concurrence_closed(k) == concurrence_closed(-k) for k in range(1, 12))
    bell = PureState(2, (1, 0, 0, 1), 2)
    product = PureState(2, (1, 0, 0, 0), 1)
    assert abs(concurrence_wootters(bell) - 1) < TOL
    assert concurrence_wootters(product) < TOL
    with pytest.raises(WrongArity):
        concurrence_wootters(fibonacci_multiqubit(1, 3))


@pytest.mark.parametrize("k", [k for k in range(-15, 16, 2)])
def test_concurrence_closed_vs_wootters(k):
    s = fibonacci_multiqubit(k, 2)
    c = concurrence_closed(k)
    assert concurrence_pure(s) == c
    with mpmath.workprec(128):
        assert abs(concurrence_wootters(s) - mpmath.mpf(c.numerator) / c.denominator) < TOL


def test_concurrence_decreasing():
    vals = [concurrence_closed(k) for k in range(1, 20, 2)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("k", [k for k in range(-10, 11) if k])
def test_bell_states_maximal(k):
    states = bell_superpositions(k)
    for name, s in states.items():
        assert abs(concurrence_wootters(s) - 1) < TOL, name
        assert concurrence_pure(s) == 1
    # P+ and G- do not depend on k
    p, g = states["P+"], states["G-"]
    assert p.amplitudes_unnorm[1] == p.amplitudes_unnorm[2] == 0
    assert p.amplitudes_unnorm[0] == p.amplitudes_unnorm[3]
    assert g.amplitudes_unnorm[1] == -g.amplitudes_unnorm[2] and g.amplitudes_unnorm[0] == 0


@pytest.mark.parametrize("k", [k for k in range(-8, 9) if k])
def test_bell_coefficients(k):
    c1, c2 = bell_coefficients(k)
    assert c1 * c1 + c2 * c2 == 1
    # |P-> = -c1 (|00> - |11>)/sqrt2 + c2 (|01> + |10>)/sqrt2, up to a global sign
    a = bell_superpositions(k)["P-"].amplitudes_unnorm
    ratio = a[1] / a[0]
    assert ratio == c2 / (-c1)
    assert a[3] == -a[0] and a[1] == a[2]


def test_bell_coefficient_example():
    assert bell_coefficients(2) == (QuadraticNumber(0, Fraction(1, 3)), QuadraticNumber(Fraction(2, 3)))


def random_conjugator(seed):
    rng = random.Random(seed)
    while True:
        entries = [QuadraticNumber(rng.randint(-5, 5), rng.randint(-3, 3)) for _ in range(4)]
        M = TwoByTwoOperator(*entries)
        if M.det():
            return M


@pytest.mark.parametrize("k", [k for k in range(-6, 7) if k])
def test_hecke_samples(k):
    for R in (hecke_sample(k), hecke_sample(k, random_conjugator(k))):
        assert hecke_defect(R, k).is_zero()
        P = TwoByTwoOperator.identity()
        for n in range(51):
            assert hecke_power(R, n, k) == P
            P = P @ R


def test_hecke_small_powers():
    R = hecke_sample(3, random_conjugator(1))
    assert hecke_power(R, 0, 3) == TwoByTwoOperator.identity()
    assert hecke_power(R, 1, 3) == R
    assert hecke_power(R, 2, 3) == R.scale(lucas(3)) + TwoByTwoOperator.identity()


@pytest.mark.parametrize("k", [1, 3, 5, -1, -3, -5])
def test_hecke_odd_order_uses_divisors(k):
    R = hecke_sample(k, random_conjugator(7))
    for n in range(30):
        assert fibonacci_power_formula(R, n, k) == R.power(n)
        assert hecke_coefficients(k, n) == (fib_divisor(n, k), fib_divisor(n - 1, k))


@pytest.mark.parametrize("k", [2, 4, -2])
def test_hecke_even_order_trace(k):
    # R^2 = B R + I with B = phi^k - phi^-k = sqrt5 F_k, not L_k
    R = hecke_sample(k)
    B = golden_power(k) - golden_power(-k)
    assert B == QuadraticNumber(0, fibonacci(k))
    assert R.power(2) == R.scale(B) + TwoByTwoOperator.identity()
    assert fibonacci_power_formula(R, 2, k) != R.power(2)


def test_not_hecke():
    with pytest.raises(NotHecke):
        hecke_power(TwoByTwoOperator(1, 2, 3, 4), 3, 1)


@given(st.integers(-6, 6).filter(bool), st.integers(0, 40), st.integers(0, 10**6))
def test_hecke_property(k, n, seed):
    R = hecke_sample(k, random_conjugator(seed))
    assert hecke_power(R, n, k) == R.power(n)
