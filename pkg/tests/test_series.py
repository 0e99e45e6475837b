"""Series-engine tests: term sums, global evaluation, conventions, estimates."""

from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr
from hypothesis import given, settings
from hypothesis import strategies as st

from bernzeta import exact, series
from bernzeta.numeric import DomainError, EvalConfig, PoleError, PrecisionComplex

CFG = EvalConfig(max_terms=256)
CFG_BIG = EvalConfig(max_terms=1000)


def err_vs(value: PrecisionComplex, ref) -> float:
    with gmpy2.context(precision=value.precision + 32):
        return float(abs(value.as_mpc() - ref))


def pi():
    return gmpy2.const_pi()


# ---------------------------------------------------------------------------
# S_n term sums

def test_s1_is_one_for_any_s():
    for s in (0, 1, 2.5, complex(2, 3), complex(-4, 0.7)):
        t = series.series_term_riemann(1, s, 128)
        assert t.real == 1 and t.imag == 0


def test_s2_at_one():
    t = series.series_term_riemann(2, 1, 128)
    assert err_vs(t, mpfr("0.5")) < 1e-35


def test_sn_at_zero_vanishes():
    # alternating binomial sum over constant 1
    for n in range(2, 11):
        t = series.series_term_riemann(n, 0, 128)
        assert t.real == 0 and t.imag == 0


def test_s3_of_two_frozen():
    # 1 - 2/4 + 1/9
    want = Fraction(1) - Fraction(2, 4) + Fraction(1, 9)
    t = series.series_term_riemann(3, 2, 192)
    with gmpy2.context(precision=224):
        ref = mpfr(want.numerator) / want.denominator
    assert err_vs(t, ref) < 1e-50


def test_hurwitz_term_reduces_at_x_one():
    for s in (0, 1, complex(2, 3)):
        for n in range(1, 11):
            a = series.series_term_hurwitz(n, s, Fraction(1), 192)
            b = series.series_term_riemann(n, s, 192)
            with gmpy2.context(precision=224):
                assert abs(a.as_mpc() - b.as_mpc()) < mpfr(2) ** -150


def test_hurwitz_term_examples():
    t = series.series_term_hurwitz(2, 2, Fraction(1, 2), 192)
    want = Fraction(4) - Fraction(4, 9)
    with gmpy2.context(precision=224):
        ref = mpfr(want.numerator) / want.denominator
    assert err_vs(t, ref) < 1e-50
    t1 = series.series_term_hurwitz(1, 2, Fraction(1, 2), 192)
    assert err_vs(t1, mpfr(4)) < 1e-50


def test_hurwitz_term_domain():
    with pytest.raises(DomainError):
        series.series_term_hurwitz(2, 2, Fraction(0), 128)
    with pytest.raises(DomainError):
        series.series_term_hurwitz(2, 2, Fraction(3, 2), 128)


# ---------------------------------------------------------------------------
# riemann_zeta

def test_zeta_two():
    r = series.riemann_zeta(2, CFG)
    with gmpy2.context(precision=320):
        assert err_vs(r.value, pi() ** 2 / 6) < 1e-25
    assert r.terms_used <= CFG.max_terms


def test_zeta_zero_and_minus_one_terminate():
    r = series.riemann_zeta(0, CFG)
    assert err_vs(r.value, mpfr("-0.5")) < 1e-70
    assert r.terms_used < 10
    assert r.truncation_estimate == 0.0 or r.truncation_estimate < 1e-60
    r = series.riemann_zeta(-1, CFG)
    with gmpy2.context(precision=320):
        assert err_vs(r.value, mpfr(-1) / 12) < 1e-70


def test_zeta_pole():
    with pytest.raises(PoleError):
        series.riemann_zeta(1, CFG)
    with pytest.raises(PoleError):
        series.riemann_zeta_hasse(1, CFG)


def test_zeta_accepts_string_and_precision_complex():
    r1 = series.riemann_zeta("2", CFG)
    r2 = series.riemann_zeta(PrecisionComplex(2, 0, 64), CFG)
    assert err_vs(r1.value, r2.value.as_mpc()) < 1e-60


# ---------------------------------------------------------------------------
# hasse variant

def test_hasse_classical_values():
    r = series.riemann_zeta_hasse(2, CFG)
    with gmpy2.context(precision=320):
        assert err_vs(r.value, pi() ** 2 / 6) < 1e-25
    r = series.riemann_zeta_hasse(4, CFG)
    with gmpy2.context(precision=320):
        assert err_vs(r.value, pi() ** 4 / 90) < 1e-25


def test_two_series_agreement_spots():
    for s in (2, 3, 0.5, -0.5, complex(2, 3)):
        r1 = series.riemann_zeta(s, CFG)
        r2 = series.riemann_zeta_hasse(s, CFG)
        with gmpy2.context(precision=320):
            diff = abs(r1.value.as_mpc() - r2.value.as_mpc())
            allow = 10 * (
                mpfr(r1.truncation_estimate) * abs(r1.value.as_mpc())
                + mpfr(r2.truncation_estimate) * abs(r2.value.as_mpc())
            ) + mpfr(2) ** -240
            assert diff <= allow, f"s={s}"


# ---------------------------------------------------------------------------
# hurwitz_zeta

def test_hurwitz_reduces_at_x_one():
    for s in (2, 0, -1):
        r1 = series.hurwitz_zeta(s, Fraction(1), CFG)
        r2 = series.riemann_zeta(s, CFG)
        with gmpy2.context(precision=320):
            diff = abs(r1.value.as_mpc() - r2.value.as_mpc())
            allow = 10 * (
                mpfr(r1.truncation_estimate) * abs(r1.value.as_mpc())
                + mpfr(r2.truncation_estimate) * abs(r2.value.as_mpc())
            ) + mpfr(2) ** -200
            assert diff <= allow


def test_hurwitz_dilation_identity():
    # zeta(2, 1/2) = (2^2 - ... ) classical: 3 zeta(2) = pi^2/2
    r = series.hurwitz_zeta(2, Fraction(1, 2), CFG_BIG)
    with gmpy2.context(precision=320):
        assert err_vs(r.value, pi() ** 2 / 2) < 1e-25


def test_hurwitz_negative_integer_value():
    # zeta(-1, 1/2) = -B_2(1/2)/2 = 1/24
    r = series.hurwitz_zeta(-1, Fraction(1, 2), CFG)
    with gmpy2.context(precision=320):
        assert err_vs(r.value, mpfr(1) / 24) < 1e-60


def test_hurwitz_domain_and_pole():
    with pytest.raises(DomainError):
        series.hurwitz_zeta(2, Fraction(-1, 2), CFG)
    with pytest.raises(DomainError):
        series.hurwitz_zeta(2, Fraction(2), CFG)
    with pytest.raises(PoleError):
        series.hurwitz_zeta(1, Fraction(1, 2), CFG)


# ---------------------------------------------------------------------------
# complex-order Bernoulli

def test_bernoulli_complex_spots():
    b = series.bernoulli_complex(1, CFG)
    assert err_vs(b, mpfr("-0.5")) < 1e-60
    b = series.bernoulli_complex(3, CFG)
    assert err_vs(b, mpfr(0)) < 1e-60
    b = series.bernoulli_complex(2, CFG)
    with gmpy2.context(precision=320):
        assert err_vs(b, mpfr(-1) / 6) < 1e-60


def test_bernoulli_complex_limit_at_zero():
    b = series.bernoulli_complex(0, CFG)
    assert b.real == -1 and b.imag == 0


def test_bernoulli_complex_sign_convention():
    # paper's B_s = s zeta(1-s) meets the classical table up to (-1)^(k+1)
    for k in range(1, 16):
        b = series.bernoulli_complex(k, CFG)
        want = (-1) ** (k + 1) * exact.bernoulli_recurrence_oracle(k)
        with gmpy2.context(precision=320):
            ref = mpfr(want.numerator) / want.denominator
            assert err_vs(b, ref) <= float(mpfr(2) ** -240 * max(mpfr(1), abs(ref)))


def test_bernoulli_poly_complex_spots():
    for s in (1, 2, 3):
        a = series.bernoulli_poly_complex(s, Fraction(1), CFG)
        b = series.bernoulli_complex(s, CFG)
        with gmpy2.context(precision=320):
            assert abs(a.as_mpc() - b.as_mpc()) < mpfr(2) ** -200
    b = series.bernoulli_poly_complex(2, Fraction(1, 2), CFG)
    with gmpy2.context(precision=320):
        assert err_vs(b, mpfr(1) / 12) < 1e-60
    b = series.bernoulli_poly_complex(1, Fraction(1, 2), CFG)
    assert err_vs(b, mpfr(0)) < 1e-60
    b = series.bernoulli_poly_complex(0, Fraction(1, 3), CFG)
    assert b.real == -1


def test_bernoulli_poly_complex_domain():
    with pytest.raises(DomainError):
        series.bernoulli_poly_complex(2, Fraction(0), CFG)


# ---------------------------------------------------------------------------
# result metadata and estimate behavior

def test_result_working_precision_matches_guard_policy():
    r = series.riemann_zeta(2, CFG)
    assert r.working_precision_bits == CFG.working_precision()


def test_unreliable_flag_on_budget_exhaustion():
    cfg = EvalConfig(max_terms=48, relative_tolerance=2.0 ** -200, tail_extrapolation=False)
    r = series.riemann_zeta(2, cfg)
    assert not r.reliable
    assert r.truncation_estimate > 0


def test_plain_rule_counts_as_converged():
    cfg = EvalConfig(max_terms=2000, relative_tolerance=1e-6)
    r = series.riemann_zeta(2, cfg)
    assert r.reliable


def test_precision_monotonicity_on_reconciliation_points():
    # doubling target precision never worsens the terminating-point error
    for k in (2, 5, 8, 13):
        want = (-1) ** (k + 1) * exact.bernoulli_recurrence_oracle(k)
        errs = []
        for bits in (128, 256):
            cfg = EvalConfig(target_precision_bits=bits, max_terms=256)
            b = series.bernoulli_complex(k, cfg)
            with gmpy2.context(precision=640):
                ref = mpfr(want.numerator) / want.denominator
                errs.append(abs(b.as_mpc() - ref))
        assert errs[1] <= errs[0] + mpfr(2) ** -600


def test_stopping_rule_soundness_smoke():
    for s in (2, 3.5, complex(2, 3)):
        r1 = series.riemann_zeta(s, EvalConfig(max_terms=200))
        r2 = series.riemann_zeta(s, EvalConfig(max_terms=400))
        with gmpy2.context(precision=320):
            change = abs(r1.value.as_mpc() - r2.value.as_mpc())
            allow = mpfr(r1.truncation_estimate) * abs(r1.value.as_mpc()) + mpfr(2) ** -240
            assert change <= allow, f"s={s}"


def test_deterministic_reproducibility():
    a = series.riemann_zeta(complex(1.5, -2.5), CFG)
    b = series.riemann_zeta(complex(1.5, -2.5), CFG)
    assert a.value.to_text() == b.value.to_text()
    assert a.terms_used == b.terms_used
    assert a.truncation_estimate == b.truncation_estimate


# ---------------------------------------------------------------------------
# PrecisionComplex serialization

@given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
       st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
@settings(max_examples=80, deadline=None)
def test_precision_complex_roundtrip(re, im):
    pc = PrecisionComplex(re, im, 128)
    back = PrecisionComplex.from_text(pc.to_text(), 128)
    assert back.real == pc.real and back.imag == pc.imag


def test_precision_complex_text_forms():
    assert PrecisionComplex.from_text("2", 64).real == 2
    z = PrecisionComplex.from_text("1.5-2.25i", 64)
    assert z.real == mpfr("1.5") and z.imag == mpfr("-2.25")
    z = PrecisionComplex.from_text("3i", 64)
    assert z.real == 0 and z.imag == 3
    assert PrecisionComplex(0.5, 0, 64).to_text() == "0.5"
