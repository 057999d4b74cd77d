"""
Exact evaluation of S_f(x) = sum over n <= x of f(floor(x/n)).

Everything here is exact: counts are integer floor divisions, values are
Fractions. Three evaluation routes exist (brute force over n, the grouped sum
over d, and the dagger/flat/sharp decomposition) and they must agree to the
last bit.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from apps.arithfn.functions import PowerSupportedFunction, eval_f
from apps.common.exceptions import InvariantViolation, PreconditionError
from apps.exact.arithmetic import (
    floor_rth_root_of_rational,
    format_rational,
    integer_rth_root,
    parse_rational,
    psi,
    strict_rth_root_of_rational,
)

logger = logging.getLogger(__name__)


def _require_x(x: int):
    if not isinstance(x, int) or isinstance(x, bool) or x < 1:
        raise PreconditionError(f"x must be a positive integer, got {x!r}", x=x)


def _require_delta(delta: int):
    if delta not in (0, 1):
        raise PreconditionError(f"delta must be 0 or 1, got {delta!r}", delta=delta)


def preimage_count(x: int, power: int) -> int:
    """Number of n with floor(x/n) = power."""
    return x // power - x // (power + 1)


def clamped_count(x: int, power: int, floor_B: int) -> int:
    """Number of n > floor_B with floor(x/n) = power."""
    return max(0, x // power - max(floor_B, x // (power + 1)))


def brute_Sf(F: PowerSupportedFunction, x: int) -> Fraction:
    """Reference value of S_f(x) by a direct loop over n."""
    _require_x(x)
    total = Fraction(0)
    for n in range(1, x + 1):
        value = eval_f(F, x // n)
        if value:
            total += value
    return total


def fast_Sf(F: PowerSupportedFunction, x: int) -> Fraction:
    """S_f(x) grouped by the r-th roots d, in O(x^(1/r)) steps."""
    _require_x(x)
    total = Fraction(0)
    for d in range(1, integer_rth_root(x, F.r) + 1):
        total += F.eval_h(d) * preimage_count(x, d ** F.r)
    return total


def Sf_dagger(F: PowerSupportedFunction, x: int, A, inclusive: bool = False) -> Fraction:
    """Sum of f(floor(x/n)) over n < A, or n <= A when inclusive."""
    _require_x(x)
    A = parse_rational(A)
    if A < 1:
        raise PreconditionError(f"A must be at least 1, got {format_rational(A)}", A=A)
    upper = math.floor(A) if inclusive else math.ceil(A) - 1
    total = Fraction(0)
    for n in range(1, min(upper, x) + 1):
        value = eval_f(F, x // n)
        if value:
            total += value
    return total


@dataclass(frozen=True)
class Decomposition:
    """S_f(x) split into the n <= B piece and the flat and sharp d-ranges."""

    x: int
    A: Fraction
    B: Fraction
    dagger: Fraction
    flat: Fraction
    sharp: Fraction
    boundary_correction: Fraction
    sharp_end: int
    flat_end: int

    @property
    def total(self) -> Fraction:
        return self.dagger + self.flat + self.sharp + self.boundary_correction

    def as_dict(self):
        return {
            'x': self.x,
            'A': format_rational(self.A),
            'B': format_rational(self.B),
            'dagger': format_rational(self.dagger),
            'flat': format_rational(self.flat),
            'sharp': format_rational(self.sharp),
            'boundary_correction': format_rational(self.boundary_correction),
            'total': format_rational(self.total),
            'sharp_end': self.sharp_end,
            'flat_end': self.flat_end,
        }


def _sharp_end(F: PowerSupportedFunction, x: int, A: Fraction) -> int:
    return floor_rth_root_of_rational(Fraction(x) / A, F.r)


def _flat_end(F: PowerSupportedFunction, x: int, B: Fraction) -> int:
    return strict_rth_root_of_rational(Fraction(x) / B, F.r)


def _check_range(x: int, A: Fraction, B: Fraction):
    if not (1 <= B <= A):
        raise PreconditionError(
            f"Expected 1 <= B <= A, got A={format_rational(A)}, B={format_rational(B)}", A=A, B=B
        )
    if A * A > x:
        raise PreconditionError(f"Expected A <= sqrt(x), got A={format_rational(A)}, x={x}", A=A, x=x)


def decompose(F: PowerSupportedFunction, x: int, A, B, verify: bool = False) -> Decomposition:
    """
    Split S_f(x) into dagger (n <= floor(B)), sharp (d <= (x/A)^(1/r)) and
    flat ((x/A)^(1/r) < d < (x/B)^(1/r)).

    Sharp and flat count only n > floor(B) for each d, so no n is counted
    twice. Roots d past the flat range go to boundary_correction, which is
    zero because their preimages all satisfy n <= B. With verify=True the
    total is compared against brute_Sf.
    """
    _require_x(x)
    A = parse_rational(A)
    B = parse_rational(B)
    _check_range(x, A, B)

    floor_B = math.floor(B)
    r = F.r
    sharp_end = _sharp_end(F, x, A)
    flat_end = _flat_end(F, x, B)
    root_end = integer_rth_root(x, r)

    def piece(start, end):
        total = Fraction(0)
        for d in range(start, end + 1):
            total += F.eval_h(d) * clamped_count(x, d ** r, floor_B)
        return total

    decomposition = Decomposition(
        x=x,
        A=A,
        B=B,
        dagger=Sf_dagger(F, x, B, inclusive=True),
        flat=piece(sharp_end + 1, flat_end),
        sharp=piece(1, sharp_end),
        boundary_correction=piece(max(sharp_end, flat_end) + 1, root_end),
        sharp_end=sharp_end,
        flat_end=flat_end,
    )
    if decomposition.boundary_correction != 0:
        logger.warning(
            f"Nonzero boundary correction {decomposition.boundary_correction} for {F}, "
            f"x={x}, A={format_rational(A)}, B={format_rational(B)}"
        )
    if verify:
        expected = brute_Sf(F, x)
        if decomposition.total != expected:
            message = f"Decomposition total {decomposition.total} != S_f(x) = {expected}"
            logger.error(message)
            raise InvariantViolation(
                message,
                x=x, A=A, B=B,
            )
    return decomposition


def sharp_sum(F: PowerSupportedFunction, x: int, A) -> Fraction:
    """The sharp piece without the n > B clamp."""
    _require_x(x)
    A = parse_rational(A)
    total = Fraction(0)
    for d in range(1, _sharp_end(F, x, A) + 1):
        total += F.eval_h(d) * preimage_count(x, d ** F.r)
    return total


def main_term(F: PowerSupportedFunction, x: int, A) -> Fraction:
    """x times the sum of h(d) / (d^r (d^r + 1)) over the sharp range."""
    _require_x(x)
    A = parse_rational(A)
    total = Fraction(0)
    for d in range(1, _sharp_end(F, x, A) + 1):
        power = d ** F.r
        total += F.eval_h(d) / (power * (power + 1))
    return x * total


def E_sharp(F: PowerSupportedFunction, x: int, A, delta: int) -> Fraction:
    """Sum of h(d) psi(x / (d^r + delta)) over d <= (x/A)^(1/r)."""
    _require_x(x)
    _require_delta(delta)
    A = parse_rational(A)
    if A < 1:
        raise PreconditionError(f"A must be at least 1, got {format_rational(A)}", A=A)
    total = Fraction(0)
    for d in range(1, _sharp_end(F, x, A) + 1):
        total += F.eval_h(d) * psi(Fraction(x, d ** F.r + delta))
    return total


def E_flat(F: PowerSupportedFunction, x: int, A, B, delta: int) -> Fraction:
    """Sum of h(d) psi(x / (d^r + delta)) over (x/A)^(1/r) < d < (x/B)^(1/r)."""
    _require_x(x)
    _require_delta(delta)
    A = parse_rational(A)
    B = parse_rational(B)
    if not (1 <= B <= A):
        raise PreconditionError(
            f"Expected 1 <= B <= A, got A={format_rational(A)}, B={format_rational(B)}", A=A, B=B
        )
    total = Fraction(0)
    for d in range(_sharp_end(F, x, A) + 1, _flat_end(F, x, B) + 1):
        total += F.eval_h(d) * psi(Fraction(x, d ** F.r + delta))
    return total


def E_total(F: PowerSupportedFunction, x: int, A, B) -> Fraction:
    """Sum of the absolute values of the four psi error sums."""
    return (
        abs(E_flat(F, x, A, B, 0))
        + abs(E_flat(F, x, A, B, 1))
        + abs(E_sharp(F, x, A, 0))
        + abs(E_sharp(F, x, A, 1))
    )


def trivial_error_bound(F: PowerSupportedFunction, x: int, A, B) -> Fraction:
    """Sum of |h(d)| over the sharp and flat ranges together."""
    _require_x(x)
    A = parse_rational(A)
    B = parse_rational(B)
    end = max(_sharp_end(F, x, A), _flat_end(F, x, B))
    return sum((abs(F.eval_h(d)) for d in range(1, end + 1)), Fraction(0))


def conjecture_psi_sum(r: int, x: int, delta: int) -> Fraction:
    """Sum of psi(x / (n^r + delta)) over n <= x^(1/(r+1))."""
    if r < 2:
        raise PreconditionError(f"r must be at least 2, got {r}", r=r)
    _require_x(x)
    _require_delta(delta)
    total = Fraction(0)
    for n in range(1, integer_rth_root(x, r + 1) + 1):
        total += psi(Fraction(x, n ** r + delta))
    return total


@dataclass(frozen=True)
class BlockSum:
    start: int
    end: int
    value: Fraction


def gk_block_sums(r: int, x: int, delta: int) -> List[BlockSum]:
    """
    Dyadic block sums of psi(x / (n^r + delta)) over start < n <= end.

    Blocks are (0, 1], (1, 2], (2, 4], ... with the last one cut at
    floor(x^(1/(r+1))).
    """
    if r < 2:
        raise PreconditionError(f"r must be at least 2, got {r}", r=r)
    _require_x(x)
    _require_delta(delta)
    limit = integer_rth_root(x, r + 1)
    blocks = []
    start = 0
    while start < limit:
        end = min(max(2 * start, 1), limit)
        value = Fraction(0)
        for n in range(start + 1, end + 1):
            value += psi(Fraction(x, n ** r + delta))
        blocks.append(BlockSum(start, end, value))
        start = end
    return blocks
