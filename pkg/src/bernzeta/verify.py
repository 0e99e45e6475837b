"""Cross-engine verification suites.

Each suite returns a SuiteResult with a pass flag and, on failure, the
first counterexample (inputs and both values). The CLI `verify` command
runs all of them at reduced default scales; the acceptance tests run them
at the full documented scales. Engine functions are called through their
modules so that fault injection (monkeypatching a module attribute) is
visible here.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from . import exact, quadrature, series
from .numeric import EvalConfig, PrecisionComplex

__all__ = ["SuiteResult", "run_all_suites", "SUITE_BUILDERS"]

SECTION1_TABLE = [
    Fraction(1),
    Fraction(-1, 2),
    Fraction(1, 6),
    Fraction(0),
    Fraction(-1, 30),
    Fraction(0),
    Fraction(1, 42),
    Fraction(0),
    Fraction(-1, 30),
]

POLY_X_GRID = [
    Fraction(0),
    Fraction(1, 4),
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(2, 3),
    Fraction(1),
    Fraction(3, 2),
    Fraction(-1),
]

SYMMETRY_X_GRID = [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    detail: str = ""
    elapsed: float = 0.0
    extras: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        msg = f"{status} {self.name} ({self.checks} checks, {self.elapsed:.2f}s)"
        if not self.passed and self.detail:
            msg += f"\n  counterexample: {self.detail}"
        return msg


def _timed(fn):
    def wrapper(*args, **kwargs) -> SuiteResult:
        t0 = time.perf_counter()
        out = fn(*args, **kwargs)
        out.elapsed = time.perf_counter() - t0
        return out

    wrapper.__name__ = fn.__name__
    return wrapper


@_timed
def value_table() -> SuiteResult:
    """Suite 1: every formula reproduces the classical B_0..B_8 list."""
    checks = 0
    for k, want in enumerate(SECTION1_TABLE):
        got = {"formula_b": exact.bernoulli_formula_b(k), "oracle": exact.bernoulli_recurrence_oracle(k)}
        if k >= 1:
            got["worpitzky"] = exact.bernoulli_worpitzky(k)
            got["formula_a"] = exact.bernoulli_formula_a(k)
        else:
            got["constant"] = exact.B0
        for name, val in got.items():
            checks += 1
            if val != want:
                return SuiteResult(
                    "value_table", False, checks,
                    f"B_{k} via {name}: got {val}, expected {want}",
                )
    return SuiteResult("value_table", True, checks)


@_timed
def four_way_agreement(max_k: int = 50) -> SuiteResult:
    """Suite 2: Worpitzky-weight, 1/(n(n+1)), 1/n^2 and recurrence agree exactly."""
    checks = 0
    for k in range(1, max_k + 1):
        w = exact.bernoulli_worpitzky(k)
        a = exact.bernoulli_formula_a(k)
        b = exact.bernoulli_formula_b(k)
        o = exact.bernoulli_recurrence_oracle(k)
        checks += 3
        if not (w == a == b == o):
            return SuiteResult(
                "four_way_agreement", False, checks,
                f"k={k}: worpitzky={w} a={a} b={b} oracle={o}",
            )
    checks += 1
    if exact.bernoulli_formula_b(0) != exact.B0:
        return SuiteResult("four_way_agreement", False, checks, "formula b disagrees with B0 at k=0")
    return SuiteResult("four_way_agreement", True, checks)


@_timed
def stirling_identity(max_n: int = 50) -> SuiteResult:
    """Suite 3: Delta_n(k) = (-1)^n n! S(k, n) on 1 <= n <= k <= max_n."""
    import math as _m

    checks = 0
    for k in range(1, max_n + 1):
        for n in range(1, k + 1):
            lhs = exact.forward_difference(n, k)
            rhs = (-1) ** n * _m.factorial(n) * exact.stirling2(k, n)
            checks += 1
            if lhs != rhs:
                return SuiteResult(
                    "stirling_identity", False, checks,
                    f"n={n} k={k}: Delta={lhs}, (-1)^n n! S = {rhs}",
                )
    for n in range(2, min(max_n, 20) + 1):
        for k in range(1, n):
            checks += 1
            if exact.forward_difference(n, k) != 0:
                return SuiteResult(
                    "stirling_identity", False, checks,
                    f"n={n} k={k}: expected vanishing difference",
                )
    return SuiteResult("stirling_identity", True, checks)


@_timed
def polynomial_agreement(max_k: int = 30) -> SuiteResult:
    """Suite 4: explicit polynomial formula vs oracle, plus reflection symmetry."""
    checks = 0
    for k in range(1, max_k + 1):
        for x in POLY_X_GRID:
            got = exact.bernoulli_poly_at(k, x)
            want = exact.bernoulli_poly_oracle(k, 1 - x)
            checks += 1
            if got != want:
                return SuiteResult(
                    "polynomial_agreement", False, checks,
                    f"k={k} x={x}: formula={got}, oracle B_k(1-x)={want}",
                )
        for x in SYMMETRY_X_GRID:
            got = exact.bernoulli_poly_at(k, x)
            want = (-1) ** k * exact.bernoulli_poly_oracle(k, x)
            checks += 1
            if got != want:
                return SuiteResult(
                    "polynomial_agreement", False, checks,
                    f"k={k} x={x}: B_k(1-x)={got} but (-1)^k B_k(x)={want}",
                )
    return SuiteResult("polynomial_agreement", True, checks)


def _grid_values(grid_points: int, lo: float, hi: float):
    if grid_points == 1:
        return [lo]
    step = (hi - lo) / (grid_points - 1)
    return [lo + i * step for i in range(grid_points)]


@_timed
def two_series_agreement(grid_points: int = 5, lo: float = -5.0, hi: float = 5.0,
                         cfg: EvalConfig | None = None, collect: bool = False) -> SuiteResult:
    """Suite 5: riemann vs hasse on a grid, within 10x combined estimates."""
    cfg = cfg or EvalConfig(max_terms=160)
    checks = 0
    worst = 0.0
    samples = []
    with gmpy2.context(precision=cfg.target_precision_bits + 16):
        floor = mpfr(2) ** (-(cfg.target_precision_bits - 16))
        for re_s in _grid_values(grid_points, lo, hi):
            for im_s in _grid_values(grid_points, lo, hi):
                if im_s == 0.0 and re_s == 1.0:
                    continue
                s = complex(re_s, im_s)
                r1 = series.riemann_zeta(s, cfg)
                r2 = series.riemann_zeta_hasse(s, cfg)
                v1 = r1.value.as_mpc()
                v2 = r2.value.as_mpc()
                diff = abs(v1 - v2)
                allow = 10 * (
                    mpfr(r1.truncation_estimate) * abs(v1)
                    + mpfr(r2.truncation_estimate) * abs(v2)
                ) + floor * max(abs(v1), abs(v2), mpfr(1))
                checks += 1
                if collect:
                    samples.append((s, r1, r2))
                if diff > allow:
                    return SuiteResult(
                        "two_series_agreement", False, checks,
                        f"s={s}: riemann={r1.value} hasse={r2.value} "
                        f"|diff|={float(diff):.3e} > allowance {float(allow):.3e}",
                    )
                if allow > 0:
                    worst = max(worst, float(diff / allow))
    return SuiteResult("two_series_agreement", True, checks,
                       extras={"worst_ratio": worst, "samples": samples})


def _abs_diff(value: PrecisionComplex, ref) -> float:
    with gmpy2.context(precision=value.precision + 16):
        return float(abs(value.as_mpc() - ref))


@_timed
def classical_spot_values(cfg: EvalConfig | None = None, tol: float = 1e-20) -> SuiteResult:
    """Suite 6: zeta(2), zeta(4), zeta(0), zeta(-1), zeta(2,1/2) at tolerance."""
    cfg = cfg or EvalConfig(max_terms=1000)
    checks = 0
    wp = cfg.target_precision_bits + 16
    with gmpy2.context(precision=wp):
        pi = gmpy2.const_pi()
        cases = [
            ("zeta(2)", lambda: series.riemann_zeta(2, cfg).value, pi ** 2 / 6),
            ("zeta(4)", lambda: series.riemann_zeta(4, cfg).value, pi ** 4 / 90),
            ("zeta(0)", lambda: series.riemann_zeta(0, cfg).value, mpfr(-1) / 2),
            ("zeta(-1)", lambda: series.riemann_zeta(-1, cfg).value, mpfr(-1) / 12),
            ("zeta(2,1/2)", lambda: series.hurwitz_zeta(2, Fraction(1, 2), cfg).value, pi ** 2 / 2),
        ]
    for name, fn, ref in cases:
        got = fn()
        err = _abs_diff(got, ref)
        checks += 1
        if not err <= tol:
            return SuiteResult(
                "classical_spot_values", False, checks,
                f"{name}: got {got}, reference {mpfr(ref):.30e}, |err|={err:.3e} > {tol:.1e}",
            )
    return SuiteResult("classical_spot_values", True, checks)


@_timed
def complex_order_reconciliation(max_k: int = 20, cfg: EvalConfig | None = None,
                                 poly_max_k: int = 12) -> SuiteResult:
    """Suite 7: B_s = s zeta(1-s) equals (-1)^(k+1) B_k at integers (and at x)."""
    cfg = cfg or EvalConfig(max_terms=400)
    bits = cfg.target_precision_bits
    checks = 0
    with gmpy2.context(precision=bits + 16):
        tol_scale = mpfr(2) ** (-(bits - 16))
        for k in range(1, max_k + 1):
            got = series.bernoulli_complex(k, cfg)
            bk = exact.bernoulli_recurrence_oracle(k)
            want = (-1) ** (k + 1) * mpfr(bk.numerator) / bk.denominator
            bound = float(tol_scale * max(mpfr(1), abs(want)))
            err = _abs_diff(got, want)
            checks += 1
            if not err <= bound:
                return SuiteResult(
                    "complex_order_reconciliation", False, checks,
                    f"k={k}: B_s={got}, (-1)^(k+1) B_k={want}, |err|={err:.3e} > {bound:.3e}",
                )
        for k in range(1, poly_max_k + 1):
            for x in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
                got = series.bernoulli_poly_complex(k, x, cfg)
                bk = exact.bernoulli_poly_at(k, x)  # exact B_k(1-x)
                want = (-1) ** (k + 1) * mpfr(bk.numerator) / bk.denominator
                bound = float(tol_scale * max(mpfr(1), abs(want)))
                err = _abs_diff(got, want)
                checks += 1
                if not err <= bound:
                    return SuiteResult(
                        "complex_order_reconciliation", False, checks,
                        f"k={k} x={x}: B_s(1-x)={got}, (-1)^(k+1) B_k(1-x)={want}, "
                        f"|err|={err:.3e} > {bound:.3e}",
                    )
    return SuiteResult("complex_order_reconciliation", True, checks)


@_timed
def quadrature_cross_check(cfg: EvalConfig | None = None, tol: float = 1e-6) -> SuiteResult:
    """Suite 8: Mellin quadrature vs series engines at the documented points."""
    cfg = cfg or EvalConfig(max_terms=400)
    checks = 0
    for s in (0.5, 1.5, 2, 3, 6):
        q = quadrature.zeta_by_quadrature(s, "riemann", cfg)
        z = series.riemann_zeta(s, cfg).value
        err = _abs_diff(z, q)
        checks += 1
        if not err <= tol:
            return SuiteResult(
                "quadrature_cross_check", False, checks,
                f"riemann s={s}: quadrature={q} series={z} |diff|={err:.3e}",
            )
    for x in (Fraction(1, 2), Fraction(1, 3), Fraction(1)):
        q = quadrature.zeta_by_quadrature(2, "hurwitz", cfg, x=x)
        z = series.hurwitz_zeta(2, x, cfg).value
        err = _abs_diff(z, q)
        checks += 1
        if not err <= tol:
            return SuiteResult(
                "quadrature_cross_check", False, checks,
                f"hurwitz s=2 x={x}: quadrature={q} series={z} |diff|={err:.3e}",
            )
    q = quadrature.zeta_by_quadrature(1, "hasse", cfg)
    z = series.riemann_zeta(2, cfg).value
    err = _abs_diff(z, q)
    checks += 1
    if not err <= tol:
        return SuiteResult(
            "quadrature_cross_check", False, checks,
            f"hasse s=1: quadrature={q} series zeta(2)={z} |diff|={err:.3e}",
        )
    # reduction: hurwitz kernel at x=1 must match the riemann kernel route
    for s in (0.5, 2, 3):
        q1 = quadrature.zeta_by_quadrature(s, "hurwitz", cfg, x=Fraction(1))
        q2 = quadrature.zeta_by_quadrature(s, "riemann", cfg)
        with gmpy2.context(precision=cfg.target_precision_bits + 16):
            err = float(abs(q1 - q2))
        checks += 1
        if not err <= tol:
            return SuiteResult(
                "quadrature_cross_check", False, checks,
                f"reduction s={s}: hurwitz(x=1)={q1} riemann={q2} |diff|={err:.3e}",
            )
    return SuiteResult("quadrature_cross_check", True, checks)


@_timed
def partial_sum_integral_identity(cfg: EvalConfig | None = None, tol: float = 1e-8) -> SuiteResult:
    """Suite 9: the integral form of S_n(s) matches direct summation."""
    cfg = cfg or EvalConfig(max_terms=400)
    wp = cfg.target_precision_bits + 64
    checks = 0
    for n in (1, 2, 3, 5, 10):
        for s in (1, 2, 3.5):
            q = quadrature.partial_sum_integral_check(n, s, cfg)
            t = series.series_term_riemann(n, s, wp)
            err = _abs_diff(PrecisionComplex.from_value(t.as_mpc(), cfg.target_precision_bits), q)
            checks += 1
            if not err <= tol:
                return SuiteResult(
                    "partial_sum_integral_identity", False, checks,
                    f"n={n} s={s}: integral={q} sum={t} |diff|={err:.3e}",
                )
    return SuiteResult("partial_sum_integral_identity", True, checks)


SUITE_BUILDERS = [
    ("value_table", lambda opts: value_table()),
    ("four_way_agreement", lambda opts: four_way_agreement(opts.get("max_k", 50))),
    ("stirling_identity", lambda opts: stirling_identity(min(opts.get("max_k", 50), 50))),
    ("polynomial_agreement", lambda opts: polynomial_agreement(min(opts.get("max_k", 50), 30))),
    (
        "two_series_agreement",
        lambda opts: two_series_agreement(
            opts.get("grid_points", 5), opts.get("grid_lo", -5.0), opts.get("grid_hi", 5.0),
            opts.get("grid_cfg"),
        ),
    ),
    ("classical_spot_values", lambda opts: classical_spot_values(opts.get("spot_cfg"))),
    (
        "complex_order_reconciliation",
        lambda opts: complex_order_reconciliation(min(opts.get("max_k", 20), 20), opts.get("cfg")),
    ),
    ("quadrature_cross_check", lambda opts: quadrature_cross_check(opts.get("cfg"))),
    ("partial_sum_integral_identity", lambda opts: partial_sum_integral_identity(opts.get("cfg"))),
]


def run_all_suites(options: dict | None = None) -> list[SuiteResult]:
    opts = options or {}
    return [build(opts) for _name, build in SUITE_BUILDERS]
