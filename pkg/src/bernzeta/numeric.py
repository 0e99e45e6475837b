"""Shared numeric carriers: fixed-precision complex values, evaluation
configuration, and series result records.

All inexact arithmetic in this package runs on MPFR/MPC floats via gmpy2,
with the working precision always set explicitly through a gmpy2 context.
Values caught outside an explicit context default to 53 bits, which is a
classic source of silent accuracy loss, so the helpers here construct
every constant at a stated precision.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Union

import gmpy2
from gmpy2 import mpc, mpfr

__all__ = [
    "PrecisionComplex",
    "EvalConfig",
    "SeriesResult",
    "DomainError",
    "PoleError",
    "ConvergenceError",
    "QuadratureError",
    "linear_guard",
    "DEFAULT_CONFIG",
    "to_mpfr",
    "to_mpc",
    "real_digits_for_bits",
    "roundtrip_digits_for_bits",
    "format_real",
    "parse_complex_text",
    "parse_rational_text",
]

LOG10_2 = 0.30102999566398119521


class DomainError(ValueError):
    """Argument outside the documented domain of an operation."""


class PoleError(ArithmeticError):
    """Evaluation requested exactly at a pole."""


class ConvergenceError(ArithmeticError):
    """Series evaluation failed to meet its tolerance within budget."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to converge; carries the last estimate."""

    def __init__(self, message: str, estimate: float = math.inf):
        super().__init__(message)
        self.estimate = estimate


def linear_guard(target_bits: int, max_terms: int) -> int:
    """Default guard policy: one guard bit per term plus a fixed pad.

    Each forward-difference level can cancel up to one bit, so the guard
    must grow linearly with the term budget for the binomial sums to stay
    backward stable.
    """
    return target_bits + max_terms + 64


Scalar = Union["PrecisionComplex", complex, float, int, Fraction, str]


def real_digits_for_bits(bits: int) -> int:
    """Decimal digits justified for printing a p-bit value (2 guard digits held back)."""
    return max(1, int(bits * LOG10_2) - 2)


def roundtrip_digits_for_bits(bits: int) -> int:
    """Decimal digits needed so parse(format(x)) == x at p bits."""
    return int(math.ceil(bits * LOG10_2)) + 1


def format_real(value, digits: int) -> str:
    """Format an mpfr with a fixed significant-digit count.

    Built on gmpy2.digits (mpfr's own correctly rounded conversion). Plain
    notation for moderate exponents, scientific otherwise; the output
    re-parses exactly when `digits` >= roundtrip_digits_for_bits(precision).
    """
    v = value
    if gmpy2.is_nan(v):
        return "nan"
    if gmpy2.is_infinite(v):
        return "inf" if v > 0 else "-inf"
    if v == 0:
        return "0"
    mant, exp, _prec = gmpy2.digits(v, 10, digits)
    neg = mant.startswith("-")
    if neg:
        mant = mant[1:]
    mant = mant.rstrip("0") or "0"
    # value = 0.<mant> * 10^exp
    if -3 <= exp <= digits + 4:
        if exp > 0:
            if exp >= len(mant):
                out = mant + "0" * (exp - len(mant))
            else:
                out = mant[:exp] + "." + mant[exp:]
        else:
            out = "0." + "0" * (-exp) + mant
    else:
        frac = "." + mant[1:] if len(mant) > 1 else ""
        out = f"{mant[0]}{frac}e{exp - 1}"
    return ("-" if neg else "") + out


_COMPLEX_RE = re.compile(
    r"""^(?P<re>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)?
         (?P<im>[+-](?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)?
         (?P<i>i)?$""",
    re.VERBOSE,
)


def parse_complex_text(text: str, bits: int) -> "PrecisionComplex":
    """Parse 'a+bi' / 'a-bi' / 'a' / 'bi' (whitespace-free) at the given precision."""
    t = text.strip()
    if not t:
        raise DomainError("empty complex literal")
    with gmpy2.context(precision=bits):
        if t.endswith("i"):
            body = t[:-1]
            # split into real and imaginary decimal parts
            m = re.match(
                r"^(?P<re>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
                r"(?P<im>[+-](?:\d+(?:\.\d*)?|\.\d+)?(?:[eE][+-]?\d+)?)$",
                body,
            )
            if m:
                re_part = mpfr(m.group("re"))
                im_txt = m.group("im")
                if im_txt in ("+", "-"):
                    im_txt += "1"
                im_part = mpfr(im_txt)
            else:
                if body in ("", "+"):
                    body = "1"
                elif body == "-":
                    body = "-1"
                re_part = mpfr(0)
                try:
                    im_part = mpfr(body)
                except ValueError as exc:
                    raise DomainError(f"bad complex literal: {text!r}") from exc
            return PrecisionComplex(re_part, im_part, bits)
        try:
            return PrecisionComplex(mpfr(t), mpfr(0), bits)
        except ValueError as exc:
            raise DomainError(f"bad complex literal: {text!r}") from exc


def parse_rational_text(text: str) -> Fraction:
    """Parse 'p/q' or 'p' (optional sign, whitespace-free) into a Fraction."""
    t = text.strip()
    m = re.match(r"^([+-]?\d+)(?:/(\d+))?$", t)
    if not m:
        # fall back: decimal literals denote exact rationals
        try:
            return Fraction(t)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad rational literal: {text!r}") from exc
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise DomainError("zero denominator")
    return Fraction(num, den)


def to_mpfr(value, bits: int):
    """Construct an mpfr at an explicit precision from assorted scalar types."""
    with gmpy2.context(precision=bits):
        if isinstance(value, Fraction):
            return mpfr(value.numerator) / mpfr(value.denominator)
        if isinstance(value, str):
            return mpfr(value)
        return mpfr(value)


def to_mpc(value: Scalar, bits: int):
    """Construct an mpc at an explicit precision from assorted scalar types."""
    with gmpy2.context(precision=bits):
        if isinstance(value, PrecisionComplex):
            return mpc(value.real, value.imag, precision=(bits, bits))
        if isinstance(value, complex):
            return mpc(value.real, value.imag, precision=(bits, bits))
        if isinstance(value, str):
            pc = parse_complex_text(value, bits)
            return mpc(pc.real, pc.imag, precision=(bits, bits))
        if isinstance(value, Fraction):
            return mpc(mpfr(value.numerator) / mpfr(value.denominator), 0, precision=(bits, bits))
        if isinstance(value, mpc):
            return mpc(value, precision=(bits, bits))
        return mpc(value, 0, precision=(bits, bits))


@dataclass(frozen=True)
class PrecisionComplex:
    """Complex value whose parts are binary floats of one explicit precision."""

    real: object
    imag: object
    precision: int

    def __post_init__(self):
        if self.precision < 53:
            raise DomainError("precision must be at least 53 bits")
        object.__setattr__(self, "real", to_mpfr(self.real, self.precision))
        object.__setattr__(self, "imag", to_mpfr(self.imag, self.precision))

    @classmethod
    def from_value(cls, value: Scalar, bits: int) -> "PrecisionComplex":
        z = to_mpc(value, bits)
        return cls(z.real, z.imag, bits)

    @classmethod
    def from_text(cls, text: str, bits: int) -> "PrecisionComplex":
        return parse_complex_text(text, bits)

    def as_mpc(self):
        return mpc(self.real, self.imag, precision=(self.precision, self.precision))

    @property
    def is_real(self) -> bool:
        return self.imag == 0

    def __complex__(self) -> complex:
        return complex(float(self.real), float(self.imag))

    def to_text(self, digits: int | None = None) -> str:
        """Serialize as 'a+bi' with round-trip-exact digits by default."""
        d = digits if digits is not None else roundtrip_digits_for_bits(self.precision)
        re_s = format_real(self.real, d)
        if self.imag == 0:
            return re_s
        im_s = format_real(self.imag, d)
        sign = "+" if not im_s.startswith("-") else ""
        return f"{re_s}{sign}{im_s}i"

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class EvalConfig:
    """Precision, budget and tolerance policy for all inexact evaluation.

    guard_policy maps (target_precision_bits, max_terms) to the working
    precision; the default grows linearly in the term budget because the
    alternating binomial sums cancel up to one bit per term.
    """

    target_precision_bits: int = 256
    max_terms: int = 2000
    relative_tolerance: float = 2.0 ** -160
    guard_policy: Callable[[int, int], int] = field(default=linear_guard)
    tail_extrapolation: bool = True

    def __post_init__(self):
        if self.target_precision_bits < 53:
            raise DomainError("target_precision_bits must be >= 53")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if not (0.0 < self.relative_tolerance < 1.0):
            raise DomainError("relative_tolerance must lie in (0, 1)")

    def working_precision(self) -> int:
        return self.guard_policy(self.target_precision_bits, self.max_terms)

    def with_terms(self, max_terms: int) -> "EvalConfig":
        return EvalConfig(
            target_precision_bits=self.target_precision_bits,
            max_terms=max_terms,
            relative_tolerance=self.relative_tolerance,
            guard_policy=self.guard_policy,
            tail_extrapolation=self.tail_extrapolation,
        )


DEFAULT_CONFIG = EvalConfig()


@dataclass
class SeriesResult:
    """Converged series value plus summation diagnostics.

    truncation_estimate is relative to the magnitude of the series sum; it
    is validated empirically by budget doubling (see the acceptance suite).
    reliable is False when the requested tolerance was not certified within
    the term budget; the value is still the best available.
    """

    value: PrecisionComplex
    terms_used: int
    truncation_estimate: float
    working_precision_bits: int
    reliable: bool = True

    def __post_init__(self):
        if self.terms_used < 1:
            raise DomainError("terms_used must be positive")
        if not math.isfinite(self.truncation_estimate) or self.truncation_estimate < 0:
            raise DomainError("truncation_estimate must be finite and nonnegative")
