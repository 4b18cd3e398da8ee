from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from cbcseries.exact import central_binomials
from cbcseries.identities import (
    IdentityReport,
    check_binomial_transform,
    check_convolution,
    check_harmonic_integral,
    check_lemma1,
    check_lemma2,
    check_sign_split,
    check_weighted_convolution,
)
from cbcseries.precision import UsageError, make_context

CTX40 = make_context(40)

LEMMA_SAMPLES = [Fraction(7 * (2 * k - 19), 200) for k in range(20)]


def c_prefix(n):
    stream = central_binomials("2n,n")
    return [next(stream) for _ in range(n + 1)]


def test_convolution_sweep():
    assert check_convolution(120).passed


def test_weighted_convolution_sweep():
    assert check_weighted_convolution(120).passed


def test_k_squared_needs_full_range():
    # dropping the k = n term breaks the k^2-weighted identity immediately
    c = c_prefix(2)
    short = sum(k * k * c[k] * c[2 - k] for k in range(2))
    assert short == 4
    full = sum(k * k * c[k] * c[2 - k] for k in range(3))
    assert full == 28 == 2 * (3 * 2 + 1) * 4**2 // 8


def test_binomial_transform_sweep():
    assert check_binomial_transform(40).passed


def test_binomial_transform_small_case_by_hand():
    c = c_prefix(2)
    n, t = 2, -2
    lhs = sum(4 ** (n - k) * comb(n, k) * c[k] * t**k for k in range(n + 1))
    rhs = sum(c[k] * c[n - k] * (1 + t) ** k for k in range(n + 1))
    assert lhs == rhs == 8


def test_sign_split_default_batch():
    assert check_sign_split(n_max=63, count=50).passed


def test_sign_split_difference_form_by_hand():
    report = check_sign_split(sample_sequences=[[Fraction(n) for n in range(7)]])
    assert report.passed
    # for f_n = n the difference form collapses to -2 (1 - 3 + 5)
    assert -2 * (1 - 3 + 5) == -6


@settings(deadline=None, max_examples=50)
@given(
    st.lists(
        st.fractions(min_value=Fraction(-50), max_value=Fraction(50), max_denominator=30),
        min_size=1,
        max_size=40,
    )
)
def test_sign_split_arbitrary_sequences(seq):
    assert check_sign_split(sample_sequences=[seq]).passed


def test_report_semantics():
    ok = IdentityReport("demo", "n <= 3")
    assert ok.status == "pass"
    assert ok.passed
    assert str(ok) == "demo [n <= 3]: pass"
    bad = IdentityReport("demo", "n <= 3", [({"n": 1}, 0, 1), ({"n": 2}, 0, 2)])
    assert bad.status == "fail"
    assert not bad.passed
    assert "2 failure(s)" in str(bad)


def test_lemma1_sweep():
    report = check_lemma1(LEMMA_SAMPLES, CTX40)
    assert report.passed
    assert "20 samples" in report.range


def test_lemma1_spot_value():
    with CTX40.workprec():
        w = mp.asin(mp.mpc(mpf(1) / 2, mpf(1) / 2))
        assert abs(w.real - mpf("0.45227844715")) < mpf("1e-11")
        g = mp.sqrt(2) * mpf(1) / 2 / mp.sqrt(mp.sqrt(mpf(5) / 4) + 1)
        assert abs(w.real - mp.atan(g)) < mpf(10) ** -45
        assert abs(w.imag - mp.atanh(g)) < mpf(10) ** -45


def test_lemma1_rejects_out_of_range():
    with pytest.raises(UsageError):
        check_lemma1([Fraction(3, 4)], CTX40)


def test_lemma2_sweep():
    report = check_lemma2(LEMMA_SAMPLES, CTX40)
    assert report.passed


def test_lemma2_rejects_zero_and_edge():
    with pytest.raises(UsageError):
        check_lemma2([Fraction(0)], CTX40)
    with pytest.raises(UsageError):
        check_lemma2([Fraction(1)], CTX40)


def test_harmonic_integral_sweep():
    assert check_harmonic_integral(100).passed


def test_harmonic_integral_v5_by_hand():
    lhs = sum(Fraction((-1) ** k * comb(4, k), (2 * k + 2) ** 2) for k in range(5))
    assert lhs == Fraction(137, 1200)


def test_range_validation():
    with pytest.raises(UsageError):
        check_convolution(-1)
    with pytest.raises(UsageError):
        check_weighted_convolution(0)
    with pytest.raises(UsageError):
        check_harmonic_integral(0)
    with pytest.raises(UsageError):
        check_binomial_transform(5, t_values=())
