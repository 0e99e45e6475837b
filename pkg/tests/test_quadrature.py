"""Kernel, gamma and quadrature-oracle tests.

The kernel checks lean on two independent oracles: central finite
differences of the antiderivative (the kernels are derivatives of simple
closed forms) and Richardson extrapolation toward t = 0.
"""

from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr
from hypothesis import given, settings
from hypothesis import strategies as st

from bernzeta import quadrature, series
from bernzeta.numeric import DomainError, EvalConfig, PoleError

WP = 256


def ctx():
    return gmpy2.context(precision=WP + 64)


# ---------------------------------------------------------------------------
# kernels

def test_phi_limit_at_zero():
    v = quadrature.kernel_phi(1e-30, WP)
    with ctx():
        assert abs(v - mpfr(1) / 2) < 1e-29


def test_phi_at_log_two():
    # e^{-t} = 1/2 there, so phi = 2 ln 2 - 1
    with ctx():
        t = gmpy2.log(2)
        want = 2 * gmpy2.log(2) - 1
        got = quadrature.kernel_phi(t, WP)
        assert abs(got - want) < mpfr(2) ** -200


def test_phi_decays():
    assert abs(quadrature.kernel_phi(50, WP)) < 1e-20


def test_phi_matches_finite_differences():
    # phi = d/dt(-t/(e^t - 1)); central differences at h=1e-6 give O(h^2)
    def g(t):
        return -t / gmpy2.expm1(t)

    with gmpy2.context(precision=320):
        h = mpfr(10) ** -6
        for t0 in (mpfr("0.01"), mpfr("0.1"), mpfr(1), mpfr(5)):
            fd = (g(t0 + h) - g(t0 - h)) / (2 * h)
            got = quadrature.kernel_phi(t0, 320)
            assert abs(got - fd) < mpfr(10) ** -11  # h^2 scale


def test_phi_series_closed_form_consistency():
    # values straddling the switch threshold must agree
    with gmpy2.context(precision=WP + 64):
        below = quadrature.kernel_phi(mpfr(2) ** -11, WP)
        above = quadrature.kernel_phi(mpfr(2) ** -10, WP)
        assert abs(below - above) < 1e-4  # same smooth function, nearby points
        # direct cross-check: series value vs closed form evaluated in higher precision
        t = mpfr(2) ** -11
        hi = quadrature.kernel_phi(t, 2 * WP + 128)
        assert abs(below - hi) < mpfr(2) ** -(WP - 8)


def test_phi_x_reduces_to_phi_at_x_one():
    for t in (0.1, 1, 10):
        a = quadrature.kernel_phi_x(t, 1, WP)
        b = quadrature.kernel_phi(t, WP)
        with ctx():
            assert abs(a - b) < mpfr(2) ** -220


def test_phi_x_limit_by_richardson():
    # the t->0 limit of phi_x is x - 1/2; Richardson from t=1e-6, 1e-7
    for xq in (Fraction(1, 2), Fraction(1, 4), Fraction(9, 10)):
        with gmpy2.context(precision=512):
            f1 = quadrature.kernel_phi_x(mpfr(10) ** -6, xq, 512)
            f2 = quadrature.kernel_phi_x(mpfr(10) ** -7, xq, 512)
            extrap = (10 * f2 - f1) / 9
            want = mpfr(xq.numerator) / xq.denominator - mpfr(1) / 2
            assert abs(extrap - want) < 1e-12


def test_phi_x_decay():
    assert abs(quadrature.kernel_phi_x(50, Fraction(1, 2), WP)) < 1e-9
    assert abs(quadrature.kernel_phi_x(100, Fraction(1, 2), WP)) < 1e-20


def test_phi_x_domain():
    with pytest.raises(DomainError):
        quadrature.kernel_phi_x(1, 0, WP)
    with pytest.raises(DomainError):
        quadrature.kernel_phi_x(1, 2, WP)
    with pytest.raises(DomainError):
        quadrature.kernel_phi_x(-1, Fraction(1, 2), WP)


def test_eta_values():
    with ctx():
        assert abs(quadrature.kernel_eta(gmpy2.log(2), WP) - gmpy2.log(2)) < mpfr(2) ** -200
    assert abs(quadrature.kernel_eta(1e-25, WP) - 1) < 1e-24
    assert abs(quadrature.kernel_eta(100, WP)) < 1e-40


def test_series_kernel_identity():
    # phi(t) = sum_n (1-e^{-t})^(n-1) e^{-t}/(n+1), uniformly on (0, inf)
    with gmpy2.context(precision=320):
        for t in (mpfr("0.5"), mpfr(1), mpfr(2)):
            et = gmpy2.exp(-t)
            y = 1 - et
            acc = mpfr(0)
            yp = mpfr(1)
            for n in range(1, 201):
                acc += yp * et / (n + 1)
                yp *= y
            assert abs(acc - quadrature.kernel_phi(t, 320)) < 1e-20


def test_series_kernel_identity_eta():
    with gmpy2.context(precision=320):
        for t in (mpfr("0.5"), mpfr(1), mpfr(2)):
            et = gmpy2.exp(-t)
            y = 1 - et
            acc = mpfr(0)
            yp = mpfr(1)
            for n in range(0, 201):
                acc += yp * et / (n + 1)
                yp *= y
            assert abs(acc - quadrature.kernel_eta(t, 320)) < 1e-20


def test_series_kernel_identity_phi_x():
    # phi_x(t) = sum_n (1/(n+1) + (x-1)/n) (1-e^{-t})^(n-1) e^{-xt}
    x = Fraction(1, 2)
    with gmpy2.context(precision=320):
        xw = mpfr(1) / 2
        for t in (mpfr("0.5"), mpfr(1), mpfr(2)):
            ext = gmpy2.exp(-xw * t)
            y = 1 - gmpy2.exp(-t)
            acc = mpfr(0)
            yp = mpfr(1)
            for n in range(1, 401):
                w = mpfr(1) / (n + 1) + (xw - 1) / n
                acc += w * yp * ext
                yp *= y
            assert abs(acc - quadrature.kernel_phi_x(t, x, 320)) < 1e-18


# ---------------------------------------------------------------------------
# gamma

def test_gamma_anchor_values():
    with gmpy2.context(precision=WP + 64):
        assert abs(quadrature.gamma_real(1, WP) - 1) < mpfr(2) ** -(WP + 20)
        assert abs(quadrature.gamma_real(2, WP) - 1) < mpfr(2) ** -(WP + 20)
        g = quadrature.gamma_real(Fraction(1, 2), WP)
        assert abs(g - gmpy2.sqrt(gmpy2.const_pi())) < mpfr(2) ** -(WP + 10)
        assert abs(quadrature.gamma_real(6, WP) - 120) < mpfr(2) ** -(WP - 10)


@given(st.floats(min_value=0.1, max_value=20.0, allow_nan=False))
@settings(max_examples=30, deadline=None)
def test_gamma_functional_equation(z):
    with gmpy2.context(precision=WP + 64):
        lhs = quadrature.gamma_real(z + 1, WP)
        rhs = mpfr(z) * quadrature.gamma_real(z, WP)
        assert abs(lhs - rhs) <= abs(rhs) * mpfr(2) ** -(WP - 12)


def test_gamma_domain():
    with pytest.raises(DomainError):
        quadrature.gamma_real(0, WP)
    with pytest.raises(DomainError):
        quadrature.gamma_real(-1.5, WP)


# ---------------------------------------------------------------------------
# assembled oracle

QCFG = EvalConfig(target_precision_bits=192, max_terms=256, relative_tolerance=2.0 ** -120)


def test_quadrature_riemann_vs_series():
    for s in (0.5, 1.5, 2, 3, 6):
        q = quadrature.zeta_by_quadrature(s, "riemann", QCFG)
        z = series.riemann_zeta(s, QCFG)
        with gmpy2.context(precision=256):
            assert abs(q - z.value.as_mpc().real) < 1e-6, f"s={s}"


def test_quadrature_hurwitz_dilation():
    q = quadrature.zeta_by_quadrature(2, "hurwitz", QCFG, x=Fraction(1, 2))
    with gmpy2.context(precision=256):
        assert abs(q - gmpy2.const_pi() ** 2 / 2) < 1e-30


def test_quadrature_hasse_gives_zeta_two():
    q = quadrature.zeta_by_quadrature(1, "hasse", QCFG)
    with gmpy2.context(precision=256):
        assert abs(q - gmpy2.const_pi() ** 2 / 6) < 1e-30


def test_quadrature_hurwitz_reduction():
    for s in (0.5, 2, 3):
        q1 = quadrature.zeta_by_quadrature(s, "hurwitz", QCFG, x=Fraction(1))
        q2 = quadrature.zeta_by_quadrature(s, "riemann", QCFG)
        with gmpy2.context(precision=256):
            assert abs(q1 - q2) < 1e-25


def test_quadrature_domain_and_pole():
    with pytest.raises(PoleError):
        quadrature.zeta_by_quadrature(1, "riemann", QCFG)
    with pytest.raises(DomainError):
        quadrature.zeta_by_quadrature(-2, "riemann", QCFG)
    with pytest.raises(DomainError):
        quadrature.zeta_by_quadrature(2, "hurwitz", QCFG)  # missing x
    with pytest.raises(DomainError):
        quadrature.zeta_by_quadrature(2, "hurwitz", QCFG, x=Fraction(2))
    with pytest.raises(DomainError):
        quadrature.zeta_by_quadrature(2, "nope", QCFG)


def test_partial_sum_integral_examples():
    q = quadrature.partial_sum_integral_check(1, 2, QCFG)
    with gmpy2.context(precision=256):
        assert abs(q - 1) < 1e-30
    q = quadrature.partial_sum_integral_check(2, 1, QCFG)
    with gmpy2.context(precision=256):
        assert abs(q - mpfr(1) / 2) < 1e-30
    q = quadrature.partial_sum_integral_check(3, 2, QCFG)
    want = Fraction(1) - Fraction(2, 4) + Fraction(1, 9)
    with gmpy2.context(precision=256):
        assert abs(q - mpfr(want.numerator) / want.denominator) < 1e-30


def test_partial_sum_integral_matches_series_terms():
    for n in (1, 2, 3, 5, 10):
        for s in (1, 2, 3.5):
            q = quadrature.partial_sum_integral_check(n, s, QCFG)
            t = series.series_term_riemann(n, s, 256)
            with gmpy2.context(precision=256):
                assert abs(q - t.as_mpc().real) < 1e-10, f"n={n} s={s}"
