"""Command-line front end.

Subcommands: bern, poly, bcomplex, zeta, hurwitz, verify.

Exit codes: 0 success, 2 usage (argparse), 3 domain error, 4 pole,
5 nonconvergence (budget exhausted or quadrature failure), 6 verification
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import gmpy2

from . import exact, quadrature, series, verify
from .numeric import (
    ConvergenceError,
    DomainError,
    EvalConfig,
    PoleError,
    PrecisionComplex,
    QuadratureError,
    format_real,
    parse_complex_text,
    parse_rational_text,
    real_digits_for_bits,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_POLE = 4
EXIT_NONCONVERGENCE = 5
EXIT_VERIFY_FAILED = 6

EPILOG = """exit codes:
  0  success
  2  usage error
  3  domain error (bad argument, engine/domain mismatch, cap exceeded)
  4  evaluation at a pole
  5  nonconvergence (series budget exhausted or quadrature failure)
  6  verification failure
"""


@dataclass
class OutputRecord:
    quantity: str
    inputs: dict
    value: str
    metadata: dict = field(default_factory=dict)


def _value_digits(bits: int) -> int:
    return real_digits_for_bits(bits)


def _fmt_value(pc: PrecisionComplex, bits: int) -> str:
    return pc.to_text(_value_digits(bits))


def _fmt_mpfr(v, bits: int) -> str:
    return format_real(v, _value_digits(bits))


def _emit(record, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if isinstance(record, OutputRecord):
        payload = asdict(record)
    else:
        payload = record
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True), file=out)
    elif fmt == "csv":
        buf = io.StringIO()
        if isinstance(payload, list):
            writer = csv.writer(buf)
            writer.writerow(["suite", "passed", "checks", "detail"])
            for r in payload:
                writer.writerow([r["suite"], r["passed"], r["checks"], r["detail"]])
        else:
            writer = csv.writer(buf)
            writer.writerow(["quantity", "inputs", "value", "metadata"])
            writer.writerow(
                [
                    payload["quantity"],
                    json.dumps(payload["inputs"], sort_keys=True),
                    payload["value"],
                    json.dumps(payload["metadata"], sort_keys=True),
                ]
            )
        out.write(buf.getvalue())
    else:
        if isinstance(payload, list):
            for r in payload:
                status = "PASS" if r["passed"] else "FAIL"
                print(f"{status} {r['suite']} ({r['checks']} checks)", file=out)
                if r["detail"] and not r["passed"]:
                    print(f"  counterexample: {r['detail']}", file=out)
        else:
            print(f"quantity: {payload['quantity']}", file=out)
            for key, val in sorted(payload["inputs"].items()):
                print(f"input {key}: {val}", file=out)
            print(f"value: {payload['value']}", file=out)
            for key, val in sorted(payload["metadata"].items()):
                print(f"{key}: {val}", file=out)


def _config_from(args) -> EvalConfig:
    return EvalConfig(
        target_precision_bits=args.precision_bits,
        max_terms=args.max_terms,
        relative_tolerance=args.tolerance,
    )


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "plain", "csv"), default="plain")
    p.add_argument("--precision-bits", type=int, default=256)
    p.add_argument("--max-terms", type=int, default=2000)
    # library EvalConfig defaults to 2^-160; the CLI default certification
    # level is looser so stock invocations at real arguments exit 0
    p.add_argument("--tolerance", type=float, default=1e-30)


def cmd_bern_exact(k: int, formula: str, cap: int = 5000) -> OutputRecord:
    if k > cap:
        raise DomainError(f"k={k} exceeds the safety cap {cap} (override with --cap)")
    if k < 0:
        raise DomainError("k must be nonnegative")
    needs_k1 = {"worpitzky": exact.bernoulli_worpitzky, "a": exact.bernoulli_formula_a}
    anyk = {"b": exact.bernoulli_formula_b, "oracle": exact.bernoulli_recurrence_oracle}
    if formula in needs_k1:
        if k < 1:
            raise DomainError(f"formula {formula!r} requires k >= 1 (B0 is exposed as a constant)")
        val = needs_k1[formula](k)
        return OutputRecord("bernoulli_exact", {"k": k, "formula": formula}, str(val),
                            {"engine": formula})
    if formula in anyk:
        val = anyk[formula](k)
        return OutputRecord("bernoulli_exact", {"k": k, "formula": formula}, str(val),
                            {"engine": formula})
    if formula != "all":
        raise DomainError(f"unknown formula {formula!r}")
    values = {}
    if k >= 1:
        values["worpitzky"] = exact.bernoulli_worpitzky(k)
        values["a"] = exact.bernoulli_formula_a(k)
    values["b"] = exact.bernoulli_formula_b(k)
    values["oracle"] = exact.bernoulli_recurrence_oracle(k)
    agree = len({v for v in values.values()}) == 1
    return OutputRecord(
        "bernoulli_exact",
        {"k": k, "formula": "all"},
        str(values["b"]),
        {
            "engine": "all",
            "engines": {name: str(v) for name, v in values.items()},
            "verdict": "agree" if agree else "disagree",
        },
    )


def cmd_bern_poly(k: int, x_text: str) -> OutputRecord:
    if k < 1:
        raise DomainError("k must be >= 1")
    x = parse_rational_text(x_text)
    formula = exact.bernoulli_poly(k, x)
    oracle = exact.bernoulli_poly_oracle(k, x)
    return OutputRecord(
        "bernoulli_poly_exact",
        {"k": k, "x": str(x)},
        str(formula),
        {
            "engine": "explicit_formula",
            "oracle": str(oracle),
            "verdict": "agree" if formula == oracle else "disagree",
        },
    )


def _series_meta(r) -> dict:
    return {
        "terms_used": r.terms_used,
        "truncation_estimate": r.truncation_estimate,
        "working_precision_bits": r.working_precision_bits,
        "reliable": r.reliable,
    }


def cmd_zeta(s_text: str, engine: str, cfg: EvalConfig) -> tuple[OutputRecord, int]:
    bits = cfg.target_precision_bits
    s = parse_complex_text(s_text, cfg.working_precision())
    code = EXIT_OK
    if engine in ("series", "hasse"):
        fn = series.riemann_zeta if engine == "series" else series.riemann_zeta_hasse
        r = fn(s, cfg)
        meta = _series_meta(r)
        meta["engine"] = engine
        if not r.reliable:
            code = EXIT_NONCONVERGENCE
        return OutputRecord("zeta", {"s": s_text, "engine": engine},
                            _fmt_value(r.value, bits), meta), code
    if engine == "quadrature":
        if not s.is_real or not s.real > 0:
            raise DomainError("the quadrature engine requires real s > 0")
        q = quadrature.zeta_by_quadrature(s.real, "riemann", cfg)
        return OutputRecord(
            "zeta", {"s": s_text, "engine": "quadrature"}, _fmt_mpfr(q, bits),
            {"engine": "quadrature", "working_precision_bits": bits + 64},
        ), code
    if engine != "all":
        raise DomainError(f"unknown engine {engine!r}")
    engines = {}
    results = {}
    r1 = series.riemann_zeta(s, cfg)
    engines["series"] = _fmt_value(r1.value, bits)
    results["series"] = r1.value.as_mpc()
    if not r1.reliable:
        code = EXIT_NONCONVERGENCE
    r2 = series.riemann_zeta_hasse(s, cfg)
    engines["hasse"] = _fmt_value(r2.value, bits)
    results["hasse"] = r2.value.as_mpc()
    if not r2.reliable:
        code = EXIT_NONCONVERGENCE
    if s.is_real and s.real > 0 and s.real != 1:
        q = quadrature.zeta_by_quadrature(s.real, "riemann", cfg)
        engines["quadrature"] = _fmt_mpfr(q, bits)
        results["quadrature"] = q
    with gmpy2.context(precision=bits + 16):
        names = sorted(results)
        dev = max(
            (abs(results[a] - results[b]) for i, a in enumerate(names) for b in names[i + 1:]),
            default=gmpy2.mpfr(0),
        )
    return OutputRecord(
        "zeta",
        {"s": s_text, "engine": "all"},
        engines["series"],
        {
            "engine": "all",
            "engines": engines,
            "max_pairwise_deviation": float(dev),
            "series_terms_used": r1.terms_used,
            "hasse_terms_used": r2.terms_used,
            "truncation_estimate": max(r1.truncation_estimate, r2.truncation_estimate),
            "working_precision_bits": r1.working_precision_bits,
        },
    ), code


def cmd_hurwitz(s_text: str, x_text: str, engine: str, cfg: EvalConfig) -> tuple[OutputRecord, int]:
    bits = cfg.target_precision_bits
    s = parse_complex_text(s_text, cfg.working_precision())
    x = parse_rational_text(x_text)
    code = EXIT_OK
    if engine == "series":
        r = series.hurwitz_zeta(s, x, cfg)
        meta = _series_meta(r)
        meta["engine"] = "series"
        if not r.reliable:
            code = EXIT_NONCONVERGENCE
        return OutputRecord("hurwitz_zeta", {"s": s_text, "x": x_text, "engine": engine},
                            _fmt_value(r.value, bits), meta), code
    if engine == "quadrature":
        if not s.is_real or not s.real > 0:
            raise DomainError("the quadrature engine requires real s > 0")
        q = quadrature.zeta_by_quadrature(s.real, "hurwitz", cfg, x=x)
        return OutputRecord(
            "hurwitz_zeta", {"s": s_text, "x": x_text, "engine": engine}, _fmt_mpfr(q, bits),
            {"engine": "quadrature", "working_precision_bits": bits + 64},
        ), code
    if engine != "all":
        raise DomainError(f"unknown engine {engine!r}")
    r = series.hurwitz_zeta(s, x, cfg)
    if not r.reliable:
        code = EXIT_NONCONVERGENCE
    engines = {"series": _fmt_value(r.value, bits)}
    meta = _series_meta(r)
    meta["engine"] = "all"
    if s.is_real and s.real > 0 and s.real != 1:
        q = quadrature.zeta_by_quadrature(s.real, "hurwitz", cfg, x=x)
        engines["quadrature"] = _fmt_mpfr(q, bits)
        with gmpy2.context(precision=bits + 16):
            meta["max_pairwise_deviation"] = float(abs(r.value.as_mpc() - q))
    meta["engines"] = engines
    return OutputRecord("hurwitz_zeta", {"s": s_text, "x": x_text, "engine": "all"},
                        engines["series"], meta), code


def cmd_bcomplex(s_text: str, x_text: str | None, cfg: EvalConfig) -> OutputRecord:
    bits = cfg.target_precision_bits
    s = parse_complex_text(s_text, cfg.working_precision())
    is_limit = bool(s.real == 0 and s.imag == 0)
    if x_text is None:
        val = series.bernoulli_complex(s, cfg)
        inputs = {"s": s_text}
    else:
        x = parse_rational_text(x_text)
        val = series.bernoulli_poly_complex(s, x, cfg)
        inputs = {"s": s_text, "x": x_text}
    meta = {"engine": "series(1-s)", "working_precision_bits": cfg.working_precision()}
    if is_limit:
        meta["note"] = "limit evaluation: s=0 multiplies the zeta pole; value is the limit -1"
    return OutputRecord("bernoulli_complex", inputs, _fmt_value(val, bits), meta)


def cmd_verify(args) -> tuple[list, int]:
    opts = {
        "max_k": args.max_k,
        "grid_points": args.grid,
        "grid_lo": args.grid_range[0],
        "grid_hi": args.grid_range[1],
        "grid_cfg": EvalConfig(max_terms=args.grid_terms),
        "spot_cfg": EvalConfig(max_terms=args.spot_terms),
        "cfg": EvalConfig(max_terms=args.spot_terms),
    }
    results = verify.run_all_suites(opts)
    payload = [
        {"suite": r.name, "passed": r.passed, "checks": r.checks, "detail": r.detail}
        for r in results
    ]
    code = EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAILED
    return payload, code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bernzeta",
        description="Exact Bernoulli numbers/polynomials and globally convergent "
        "zeta series, with cross-engine verification.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("bern", help="exact Bernoulli number B_k", epilog=EPILOG,
                        formatter_class=argparse.RawDescriptionHelpFormatter)
    pb.add_argument("k", type=int)
    pb.add_argument("--formula", choices=("worpitzky", "a", "b", "oracle", "all"), default="all")
    pb.add_argument("--cap", type=int, default=5000)
    _add_common(pb)

    pp = sub.add_parser("poly", help="exact Bernoulli polynomial B_k(x)")
    pp.add_argument("k", type=int)
    pp.add_argument("x", help="rational p/q")
    _add_common(pp)

    pc = sub.add_parser("bcomplex", help="complex-order Bernoulli B_s = s zeta(1-s)")
    pc.add_argument("s", help="complex a+bi")
    pc.add_argument("--x", default=None, help="rational in (0,1]: B_s(1-x) = s zeta(1-s,x)")
    _add_common(pc)

    pz = sub.add_parser("zeta", help="Riemann zeta by series/hasse/quadrature")
    pz.add_argument("s", help="complex a+bi")
    pz.add_argument("--engine", choices=("series", "hasse", "quadrature", "all"), default="series")
    _add_common(pz)

    ph = sub.add_parser("hurwitz", help="Hurwitz zeta(s, x), 0 < x <= 1")
    ph.add_argument("s", help="complex a+bi")
    ph.add_argument("x", help="rational p/q in (0,1]")
    ph.add_argument("--engine", choices=("series", "quadrature", "all"), default="series")
    _add_common(ph)

    pv = sub.add_parser("verify", help="run the cross-engine verification suites")
    pv.add_argument("--max-k", type=int, default=50)
    pv.add_argument("--grid", type=int, default=5, help="grid points per axis for suite 5")
    pv.add_argument("--grid-range", type=float, nargs=2, default=(-5.0, 5.0))
    pv.add_argument("--grid-terms", type=int, default=160)
    pv.add_argument("--spot-terms", type=int, default=1000)
    _add_common(pv)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bern":
            record = cmd_bern_exact(args.k, args.formula, args.cap)
            code = EXIT_OK
        elif args.command == "poly":
            record = cmd_bern_poly(args.k, args.x)
            code = EXIT_OK
        elif args.command == "bcomplex":
            record = cmd_bcomplex(args.s, args.x, _config_from(args))
            code = EXIT_OK
        elif args.command == "zeta":
            record, code = cmd_zeta(args.s, args.engine, _config_from(args))
        elif args.command == "hurwitz":
            record, code = cmd_hurwitz(args.s, args.x, args.engine, _config_from(args))
        elif args.command == "verify":
            record, code = cmd_verify(args)
        else:  # pragma: no cover - argparse enforces the choices
            return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PoleError as exc:
        print(f"pole: {exc}", file=sys.stderr)
        return EXIT_POLE
    except (ConvergenceError, QuadratureError) as exc:
        print(f"nonconvergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    _emit(record, args.format)
    return code


def entrypoint() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
