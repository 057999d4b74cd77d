"""
Exact scalar arithmetic for the floor-sum lab.

Rationals are ``fractions.Fraction`` values: numerator and denominator are
arbitrary-precision integers, the denominator is positive and the pair is kept
in lowest terms by every constructor. Nothing in this module rounds unless a
function says so explicitly, and the ones that do return certified bounds.
"""

import logging
import math
from fractions import Fraction
from typing import Optional, Tuple

import mpmath
from mpmath.libmp import to_rational

from apps.common.exceptions import PreconditionError

logger = logging.getLogger(__name__)

Rational = Fraction

HALF = Fraction(1, 2)

# Exponent denominators above this go through interval arithmetic instead of
# exact integer roots.
MAX_ROOT_DENOMINATOR = 10 ** 4


def parse_rational(value) -> Fraction:
    """
    Convert user input into an exact rational.

    Accepts ints, Fractions, and strings such as ``"12"``, ``"-3/4"``,
    ``"1e-9"`` or ``"0.25"``. Floats are rejected because their binary value
    is almost never what the caller typed.
    """
    if isinstance(value, bool):
        raise PreconditionError(f"Not a rational number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise PreconditionError(f"Not a rational number: {value!r}")
    raise PreconditionError(f"Not a rational number: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render a rational as ``p`` or ``p/q``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def decimal_string(value: Fraction, digits: int = 12) -> str:
    """Render a rational with ``digits`` significant digits."""
    value = Fraction(value)
    with mpmath.workdps(digits + 10):
        approx = mpmath.mpf(value.numerator) / value.denominator
        return mpmath.nstr(approx, digits)


def psi(q) -> Fraction:
    """The sawtooth psi(q) = q - floor(q) - 1/2, with values in [-1/2, 1/2)."""
    q = Fraction(q)
    return q - math.floor(q) - HALF


def integer_rth_root(n: int, r: int) -> int:
    """
    Return the unique d >= 0 with d^r <= n < (d+1)^r.

    The root is assembled bit by bit from the top, testing the exact predicate
    z^r <= n at every step; no floating point seed is involved.
    """
    if r < 1:
        raise PreconditionError(f"Root index must be at least 1, got {r}", r=r)
    if n < 0:
        raise PreconditionError(f"Cannot take a root of a negative integer: {n}", n=n)
    if n == 0 or r == 1:
        return n
    if r == 2:
        return math.isqrt(n)

    k = (n.bit_length() - 1) // r
    root = 1 << k
    for i in range(k - 1, -1, -1):
        candidate = root | (1 << i)
        if candidate ** r <= n:
            root = candidate
    return root


def as_perfect_rth_power(n: int, r: int) -> Optional[int]:
    """Return d when n = d^r exactly, otherwise None."""
    if n < 1 or r < 1:
        raise PreconditionError(f"Expected n >= 1 and r >= 1, got n={n}, r={r}", n=n, r=r)
    root = integer_rth_root(n, r)
    if root ** r == n:
        return root
    return None


def floor_rth_root_of_rational(q, r: int) -> int:
    """Largest integer d >= 0 with d^r <= q, for a nonnegative rational q."""
    q = Fraction(q)
    if q < 0:
        raise PreconditionError(f"Expected a nonnegative rational, got {q}", q=q)
    return integer_rth_root(math.floor(q), r)


def strict_rth_root_of_rational(q, r: int) -> int:
    """Largest integer d >= 0 with d^r < q (returns -1 when q <= 0)."""
    q = Fraction(q)
    if q <= 0:
        return -1
    return integer_rth_root(math.ceil(q) - 1, r)


def rational_power_bounds(q, e, digits: int = 15) -> Tuple[Fraction, Fraction]:
    """
    Certified enclosure lo <= q^e <= hi for a positive rational q and rational e.

    Small exponent denominators are handled exactly: with e = m/s,
    10^digits * q^e is the s-th root of q^m * 10^(digits*s), which is
    bracketed by integer roots of its floor and ceiling. Other exponents use
    mpmath interval arithmetic. In both cases hi - lo is at most of the order
    of 10^-digits, and lo == hi whenever q^e is itself exact at that scale.
    """
    q = Fraction(q)
    e = Fraction(e)
    if q <= 0:
        raise PreconditionError(f"Base must be positive, got {q}", q=q)
    if e.denominator == 1:
        exact = q ** e.numerator
        return exact, exact
    if e < 0:
        q, e = 1 / q, -e

    m, s = e.numerator, e.denominator
    if s > MAX_ROOT_DENOMINATOR:
        return _interval_power_bounds(q, e, digits)

    scale = 10 ** digits
    target = q ** m * scale ** s
    low = integer_rth_root(math.floor(target), s)
    target_ceiling = math.ceil(target)
    high = integer_rth_root(target_ceiling, s)
    if high ** s < target_ceiling:
        high += 1
    return Fraction(low, scale), Fraction(high, scale)


def rational_power_upper(q, e, digits: int = 15) -> Fraction:
    """Certified upper rounding of q^e."""
    return rational_power_bounds(q, e, digits)[1]


def rational_power_lower(q, e, digits: int = 15) -> Fraction:
    """Certified lower rounding of q^e."""
    return rational_power_bounds(q, e, digits)[0]


def _interval_power_bounds(q: Fraction, e: Fraction, digits: int) -> Tuple[Fraction, Fraction]:
    logger.debug(f"Interval fallback for {format_rational(q)}^({format_rational(e)})")
    iv = mpmath.iv
    with iv.workdps(digits + 10):
        base = iv.mpf(q.numerator) / q.denominator
        exponent = iv.mpf(e.numerator) / e.denominator
        value = base ** exponent
        low_raw, high_raw = value._mpi_
    return Fraction(*to_rational(low_raw)), Fraction(*to_rational(high_raw))
