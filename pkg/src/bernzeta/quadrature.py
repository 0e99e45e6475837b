"""Mellin-type integral cross-checks for the series engines (real s > 0).

The three kernels,

    phi(t)   = d/dt(-t/(e^t - 1))           ->  (s-1) zeta(s)    / Gamma(s)
    phi_x(t) = d/dt(-t e^{-(x-1)t}/(e^t-1)) ->  (s-1) zeta(s,x)  / Gamma(s)
    eta(t)   = t/(e^t - 1)                  ->  s zeta(s+1)      / Gamma(s)

are integrated against t^(s-1) over (0, inf). The quadrature is split at
t0 = 1/4: below, the kernel Taylor series (whose coefficients are exact
Bernoulli rationals) is integrated termwise against t^(s-1); above, a
tanh-sinh rule with level doubling handles the smooth part up to a cutoff
T beyond which |kernel| <= C t e^{-xt} bounds the tail below tolerance.

Gamma is computed in-package (recurrence shift into [1.5, inf) plus
Spouge's approximation), so this oracle shares no code path with the
series engines beyond raw MPFR arithmetic.

Closed forms lose ~2*log2(1/t) bits near t = 0 to the (1 - e^{-t})^2
denominators, hence the series fallback below SMALL_T_SWITCH.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Optional

import gmpy2
from gmpy2 import mpfr

from .exact import bernoulli_recurrence_oracle, binomial, bernoulli_poly_oracle
from .numeric import (
    DEFAULT_CONFIG,
    DomainError,
    EvalConfig,
    PoleError,
    QuadratureError,
    to_mpfr,
)

__all__ = [
    "SMALL_T_SWITCH",
    "kernel_phi",
    "kernel_phi_x",
    "kernel_eta",
    "gamma_real",
    "zeta_by_quadrature",
    "partial_sum_integral_check",
]

SMALL_T_SWITCH = 2.0 ** -10


def _poly_value_at(k: int, y) -> mpfr:
    """B_k(y) for an mpfr y: exact oracle coefficients, Horner at context precision."""
    acc = mpfr(0)
    for j in range(k + 1):
        c = binomial(k, j) * bernoulli_recurrence_oracle(j)
        acc = acc * y + mpfr(c.numerator) / c.denominator
    return acc


def kernel_phi(t, working_precision: int = 256) -> mpfr:
    """phi(t) = t e^{-t}/(1-e^{-t})^2 - e^{-t}/(1-e^{-t}); phi(0+) = 1/2."""
    wp = working_precision
    with gmpy2.context(precision=wp):
        t = to_mpfr(t, wp)
        if t <= 0:
            raise DomainError("t must be positive")
        if t >= SMALL_T_SWITCH:
            et = gmpy2.exp(-t)
            om = 1 - et
            return t * et / (om * om) - et / om
        # phi(t) = -sum_{k>=1} B_k t^(k-1)/(k-1)!
        acc = mpfr(0)
        tp = mpfr(1)
        fact = mpfr(1)
        for k in range(1, max(64, wp // 8)):
            if k > 1:
                fact *= k - 1
                tp *= t
            b = bernoulli_recurrence_oracle(k)
            if b:
                term = -(mpfr(b.numerator) / b.denominator) * tp / fact
                acc += term
                if abs(term) < abs(acc) * mpfr(2) ** (-wp - 8):
                    break
        return acc


def kernel_phi_x(t, x, working_precision: int = 256) -> mpfr:
    """phi_x(t) = t e^{-xt}/(1-e^{-t})^2 - e^{-(x-1)t}/(e^t-1) + (x-1) t e^{-(x-1)t}/(e^t-1).

    This is d/dt(-t e^{-(x-1)t}/(e^t-1)); the first-term denominator must be
    (1-e^{-t})^2, which the derivative identity and the x = 1 reduction to
    kernel_phi both pin down. phi_x(0+) = x - 1/2.
    """
    wp = working_precision
    with gmpy2.context(precision=wp):
        t = to_mpfr(t, wp)
        if t <= 0:
            raise DomainError("t must be positive")
        xw = to_mpfr(x, wp)
        if not (0 < xw <= 1):
            raise DomainError("x must lie in (0, 1]")
        if t >= SMALL_T_SWITCH:
            et = gmpy2.exp(-t)
            om = 1 - et
            em = gmpy2.exp(t) - 1
            e1 = gmpy2.exp(-(xw - 1) * t)
            return t * gmpy2.exp(-xw * t) / (om * om) - e1 / em + (xw - 1) * t * e1 / em
        # phi_x(t) = -sum_{k>=1} B_k(1-x) t^(k-1)/(k-1)!
        y = 1 - xw
        acc = mpfr(0)
        tp = mpfr(1)
        fact = mpfr(1)
        for k in range(1, max(64, wp // 8)):
            if k > 1:
                fact *= k - 1
                tp *= t
            term = -_poly_value_at(k, y) * tp / fact
            acc += term
            if k > 2 and abs(term) < (abs(acc) + mpfr(2) ** (-wp)) * mpfr(2) ** (-wp - 8):
                break
        return acc


def kernel_eta(t, working_precision: int = 256) -> mpfr:
    """eta(t) = t/(e^t - 1); eta(0+) = 1."""
    wp = working_precision
    with gmpy2.context(precision=wp):
        t = to_mpfr(t, wp)
        if t <= 0:
            raise DomainError("t must be positive")
        if t >= SMALL_T_SWITCH:
            return t / gmpy2.expm1(t)
        acc = mpfr(0)
        tp = mpfr(1)
        fact = mpfr(1)
        for k in range(0, max(64, wp // 8)):
            if k > 0:
                fact *= k
                tp *= t
            b = bernoulli_recurrence_oracle(k)
            if b:
                term = (mpfr(b.numerator) / b.denominator) * tp / fact
                acc += term
                if k > 1 and abs(term) < abs(acc) * mpfr(2) ** (-wp - 8):
                    break
        return acc


# ---------------------------------------------------------------------------
# Gamma (real argument)

_SPOUGE_CACHE: dict = {}


def _spouge(a: int, wp: int) -> list:
    key = (a, wp)
    got = _SPOUGE_CACHE.get(key)
    if got is not None:
        return got
    with gmpy2.context(precision=wp):
        coeffs = [gmpy2.sqrt(2 * gmpy2.const_pi())]
        fact = mpfr(1)
        for k in range(1, a):
            if k > 1:
                fact *= k - 1
            c = gmpy2.exp((k - mpfr(1) / 2) * gmpy2.log(mpfr(a - k))) * gmpy2.exp(mpfr(a - k)) / fact
            coeffs.append(c if k % 2 else -c)
    _SPOUGE_CACHE[key] = coeffs
    return coeffs


def gamma_real(z, working_precision: int = 256) -> mpfr:
    """Gamma(z) for real z > 0: recurrence shift into [1.5, inf), then Spouge.

    Relative error of the Spouge sum with a terms is ~ (2 pi)^(-a), so
    a = ceil(0.39 wp) + 8 leaves margin beyond the working precision.
    """
    wp = working_precision
    with gmpy2.context(precision=wp + 64):
        z = to_mpfr(z, wp + 64)
        if z <= 0:
            raise DomainError("gamma_real requires z > 0")
        shift = mpfr(1)
        while z < mpfr(3) / 2:
            shift *= z
            z += 1
        a = int(0.39 * (wp + 64)) + 8
        cs = _spouge(a, wp + 64)
        zm = z - 1
        acc = cs[0]
        for k in range(1, a):
            acc += cs[k] / (zm + k)
        g = gmpy2.exp((zm + mpfr(1) / 2) * gmpy2.log(zm + a) - (zm + a)) * acc
        out = g / shift
    with gmpy2.context(precision=wp):
        return mpfr(out)


# ---------------------------------------------------------------------------
# tanh-sinh quadrature

def _tanh_sinh(f: Callable, a, b, wp: int, tol, max_level: int = 14):
    """Integrate f over [a, b]; returns (value, error_estimate, evals).

    Level doubling with node reuse: level L adds the odd multiples of the
    halved step. Node generation stops when the double-exponential weight
    underflows the tolerance scale.
    """
    with gmpy2.context(precision=wp):
        half = (b - a) / 2
        mid = (a + b) / 2
        pi2 = gmpy2.const_pi() / 2
        tiny = mpfr(2) ** (-wp - 8)
        evals = 0
        total = None
        prev = None
        err = None
        h = mpfr(1)
        for level in range(max_level + 1):
            if level > 0:
                h = h / 2
            acc = mpfr(0)
            k = 0 if level == 0 else 1
            step = 1 if level == 0 else 2
            while True:
                t = k * h
                sh = pi2 * gmpy2.sinh(t)
                w = pi2 * gmpy2.cosh(t) / gmpy2.cosh(sh) ** 2
                if w < tiny:
                    break
                u = gmpy2.tanh(sh)
                du = half * u
                c = f(mid + du)
                evals += 1
                if k > 0:
                    c += f(mid - du)
                    evals += 1
                acc += w * c
                k += step
            total = acc * h * half if level == 0 else total / 2 + acc * h * half
            if prev is not None:
                err = abs(total - prev)
                if err <= tol * max(abs(total), mpfr(1)) and level >= 3:
                    return total, err, evals
            prev = total
        raise QuadratureError(
            f"tanh-sinh did not reach tolerance by level {max_level}",
            estimate=float(err) if err is not None else math.inf,
        )


# ---------------------------------------------------------------------------
# assembled oracle

def _small_t_integral(coeff_fn: Callable[[int], Fraction], s, t0, wp: int, tol,
                      max_terms: int = 220):
    """integral_0^t0 kernel(t) t^(s-1) dt with kernel = sum c_m t^m, termwise."""
    with gmpy2.context(precision=wp):
        acc = mpfr(0)
        small_run = 0
        for m in range(max_terms):
            c = coeff_fn(m)
            if c == 0:
                continue
            cw = mpfr(c.numerator) / c.denominator
            term = cw * gmpy2.exp((m + s) * gmpy2.log(t0)) / (m + s)
            acc += term
            if abs(term) < tol * (abs(acc) + tol):
                small_run += 1
                if small_run >= 3 and m >= 8:
                    return acc
            else:
                small_run = 0
        return acc


def _tail_cutoff(re_s: float, x: float, tol_log2: int) -> float:
    """T with 3 T^s e^{-xT}/x below 2^-tol_log2; floor at spec default max(50, 10(s+1))."""
    T = max(50.0, 10.0 * (re_s + 1.0))
    while (math.log(3.0 / x) + re_s * math.log(T) - x * T) > -tol_log2 * math.log(2.0):
        T += 16.0
    return T


def _variant_parts(variant: str, x: Optional[Fraction], wp: int):
    if variant == "riemann":
        def coeff(m: int) -> Fraction:
            return -bernoulli_recurrence_oracle(m + 1) / Fraction(math.factorial(m))

        return coeff, (lambda t: kernel_phi(t, wp)), 1.0
    if variant == "hurwitz":
        y = 1 - x

        def coeff(m: int) -> Fraction:
            return -bernoulli_poly_oracle(m + 1, y) / Fraction(math.factorial(m))

        return coeff, (lambda t: kernel_phi_x(t, x, wp)), float(x)
    if variant == "hasse":
        def coeff(m: int) -> Fraction:
            return bernoulli_recurrence_oracle(m) / Fraction(math.factorial(m))

        return coeff, (lambda t: kernel_eta(t, wp)), 1.0
    raise DomainError(f"unknown variant {variant!r}")


def zeta_by_quadrature(s, variant: str = "riemann", cfg: EvalConfig | None = None,
                       x=None) -> mpfr:
    """zeta(s) / zeta(s, x) / zeta(s+1) by Mellin-type quadrature, real s > 0.

    riemann:  (s-1) zeta(s)   = (1/Gamma(s)) int phi   t^(s-1)
    hurwitz:  (s-1) zeta(s,x) = (1/Gamma(s)) int phi_x t^(s-1)
    hasse:    s zeta(s+1)     = (1/Gamma(s)) int eta   t^(s-1)
    """
    cfg = cfg or DEFAULT_CONFIG
    wp = cfg.target_precision_bits + 64
    s_f = float(s if not isinstance(s, Fraction) else s.numerator / s.denominator)
    if s_f <= 0:
        raise DomainError("the quadrature oracle covers real s > 0 only")
    if variant in ("riemann", "hurwitz") and s_f == 1.0:
        raise PoleError("zeta has its pole at s = 1")
    xq = None
    if variant == "hurwitz":
        if x is None:
            raise DomainError("hurwitz variant requires x")
        xq = Fraction(x)
        if not (0 < xq <= 1):
            raise DomainError("x must lie in (0, 1]")
    coeff_fn, kfun, decay = _variant_parts(variant, xq, wp)
    with gmpy2.context(precision=wp):
        s_w = to_mpfr(s, wp)
        rtol = max(float(cfg.relative_tolerance), math.ldexp(1.0, -(wp - 80)))
        tol = to_mpfr(Fraction(rtol), wp)
        t0 = mpfr(1) / 4
        small = _small_t_integral(coeff_fn, s_w, t0, wp, tol)
        T = to_mpfr(_tail_cutoff(s_f, decay, wp), wp)
        main, _err, _evals = _tanh_sinh(
            lambda t: kfun(t) * gmpy2.exp((s_w - 1) * gmpy2.log(t)), t0, T, wp, tol
        )
        integral = small + main
        g = gamma_real(s_w, wp)
        if variant == "hasse":
            out = integral / g / s_w
        else:
            out = integral / g / (s_w - 1)
    with gmpy2.context(precision=cfg.target_precision_bits):
        return mpfr(out)


def partial_sum_integral_check(n: int, s, cfg: EvalConfig | None = None) -> mpfr:
    """S_n(s) as (1/Gamma(s)) int_0^inf (1-e^{-t})^(n-1) e^{-t} t^(s-1) dt.

    Must agree with series_term_riemann(n, s) to quadrature tolerance; the
    integrand expands exactly as sum_j (-1)^j C(n-1,j) e^{-(j+1)t}.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    cfg = cfg or DEFAULT_CONFIG
    wp = cfg.target_precision_bits + 64
    s_f = float(s if not isinstance(s, Fraction) else s.numerator / s.denominator)
    if s_f <= 0:
        raise DomainError("requires real s > 0")

    weights = [(-1) ** j * binomial(n - 1, j) for j in range(n)]

    def coeff(m: int) -> Fraction:
        acc = 0
        for j, w in enumerate(weights):
            acc += w * (-(j + 1)) ** m
        return Fraction(acc, math.factorial(m))

    with gmpy2.context(precision=wp):
        s_w = to_mpfr(s, wp)
        rtol = max(float(cfg.relative_tolerance), math.ldexp(1.0, -(wp - 80)))
        tol = to_mpfr(Fraction(rtol), wp)
        t0 = mpfr(1) / 4

        def integrand(t):
            et = gmpy2.exp(-t)
            return (1 - et) ** (n - 1) * et * gmpy2.exp((s_w - 1) * gmpy2.log(t))

        small = _small_t_integral(coeff, s_w, t0, wp, tol, max_terms=260)
        T = to_mpfr(_tail_cutoff(s_f, 1.0, wp), wp)
        main, _err, _evals = _tanh_sinh(integrand, t0, T, wp, tol)
        out = (small + main) / gamma_real(s_w, wp)
    with gmpy2.context(precision=cfg.target_precision_bits):
        return mpfr(out)
