import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from cbcseries.exact import (
    binomial,
    central_binomial,
    central_binomials,
    fib_lucas,
    fib_lucas_step,
    harmonic,
    harmonic_stream,
)
from cbcseries.precision import UsageError, make_context

from mpmath import mp


def test_binomial_matches_math_comb():
    for n in range(0, 200):
        for k in (0, 1, n // 3, n // 2, n - 1, n):
            if 0 <= k <= n:
                assert binomial(n, k) == math.comb(n, k)
    assert binomial(1000, 500) == math.comb(1000, 500)


def test_binomial_out_of_range_is_zero():
    assert binomial(5, -1) == 0
    assert binomial(5, 7) == 0
    assert binomial(0, 0) == 1
    for n in (-1, -2):
        try:
            binomial(n, 0)
            assert False, "expected UsageError"
        except UsageError:
            pass


def test_central_binomial_matches_binomial_to_1000():
    for n in range(0, 1001, 7):
        assert central_binomial(n) == binomial(2 * n, n)


def test_central_binomial():
    assert [central_binomial(n) for n in range(6)] == [1, 2, 6, 20, 70, 252]
    assert central_binomial(50) == math.comb(100, 50)


def _take(it, count):
    return [next(it) for _ in range(count)]


def test_stream_2n_n():
    got = _take(central_binomials("2n,n"), 300)
    assert got == [math.comb(2 * n, n) for n in range(300)]


def test_stream_4n_2n():
    got = _take(central_binomials("4n,2n"), 300)
    assert got == [math.comb(4 * n, 2 * n) for n in range(300)]
    assert got[:4] == [1, 6, 70, 924]


def test_stream_4n2_2n1():
    got = _take(central_binomials("4n+2,2n+1"), 300)
    assert got == [math.comb(4 * n + 2, 2 * n + 1) for n in range(300)]
    assert got[:3] == [2, 20, 252]


def test_stream_4nm2_2nm1():
    # n = 0 gives C(-2,-1), which the package treats as 0
    got = _take(central_binomials("4n-2,2n-1"), 300)
    assert got[0] == 0
    assert got[1:] == [math.comb(4 * n - 2, 2 * n - 1) for n in range(1, 300)]
    assert got[:4] == [0, 2, 20, 252]


def test_stream_unknown_kind():
    try:
        next(central_binomials("3n,n"))
        assert False, "expected UsageError"
    except UsageError:
        pass


def test_fib_lucas_small():
    fs = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    ls = [2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123]
    for n in range(11):
        assert fib_lucas(n) == (fs[n], ls[n])


def test_fib_lucas_iterative_crosscheck():
    a, b = 0, 1
    for n in range(400):
        f, ell = fib_lucas(n)
        assert f == a
        assert ell == 2 * b - a  # L_n = F_{n-1} + F_{n+1} = 2F_{n+1} - F_n
        a, b = b, a + b


def test_fib_lucas_negative():
    assert fib_lucas(-1) == (1, -1)
    assert fib_lucas(-2) == (-1, 3)
    assert fib_lucas(-5) == (5, -11)
    assert fib_lucas(-6) == (-8, 18)


def test_cassini_and_lucas_relation():
    for n in range(-500, 500):
        fm1, _ = fib_lucas(n - 1)
        fn, ln = fib_lucas(n)
        fp1, _ = fib_lucas(n + 1)
        assert fm1 * fp1 - fn * fn == (-1) ** n
        assert ln == fm1 + fp1


def test_binet_60_digits():
    ctx = make_context(60)
    with ctx.workprec():
        sqrt5 = mp.sqrt(5)
        alpha = (1 + sqrt5) / 2
        beta = (1 - sqrt5) / 2
        for n in range(-60, 61):
            f, ell = fib_lucas(n)
            assert abs((alpha**n - beta**n) / sqrt5 - f) < mp.mpf(10) ** -40
            assert abs(alpha**n + beta**n - ell) < mp.mpf(10) ** -40


@settings(max_examples=60)
@given(st.integers(-80, 80), st.integers(-80, 80))
def test_fib_lucas_step_is_index_addition(k, m):
    fk, lk = fib_lucas(k)
    fm, lm = fib_lucas(m)
    assert fib_lucas_step(fk, lk, fm, lm) == fib_lucas(k + m)


def test_harmonic_values():
    assert harmonic(0) == 0
    assert harmonic(1) == 1
    assert harmonic(4) == Fraction(25, 12)
    assert harmonic(5) == Fraction(137, 60)


def test_harmonic_stream_matches():
    stream = harmonic_stream()
    for n in range(200):
        assert next(stream) == harmonic(n)
