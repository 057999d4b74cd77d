"""
The representable sets T(D) = {d in (D, 2D] : d^r = floor(x/n) for some n}.

Besides building T(D) this module checks the spacing argument numerically:
the modified difference of two nearby elements, the number of elements in a
short window, the dyadic count against its bound, and the comparison of the
resulting dagger estimate with the trivial one.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from apps.arithfn.functions import PowerSupportedFunction
from apps.common.conf import lab_setting
from apps.common.exceptions import EmptyWitnessError, PreconditionError, RangeViolationError
from apps.exact.arithmetic import (
    format_rational,
    integer_rth_root,
    parse_rational,
    rational_power_lower,
    rational_power_upper,
)
from apps.pade.polynomials import get_pade, homogenize_eval

logger = logging.getLogger(__name__)

# Largest first; calibration keeps the first constant with no violation.
DEFAULT_WINDOW_LADDER = tuple(Fraction(2) ** k for k in range(12, -4, -1))


def _check_rl(r: int, l: int):
    if r < 2 or not 1 <= l <= r:
        raise PreconditionError(f"Expected r >= 2 and 1 <= l <= r, got r={r}, l={l}", r=r, l=l)


def representable(x: int, r: int, d: int) -> bool:
    """True iff floor(x/n) = d^r for some n."""
    power = d ** r
    if d < 1 or power > x:
        raise PreconditionError(f"Expected 1 <= d and d^r <= x, got d={d}, r={r}, x={x}", d=d, x=x)
    return x // power > x // (power + 1)


def witnesses(x: int, r: int, d: int) -> List[int]:
    """Every n with floor(x/n) = d^r, ascending."""
    power = d ** r
    found = list(range(x // (power + 1) + 1, x // power + 1))
    if not found:
        raise EmptyWitnessError(f"No n has floor({x}/n) = {d}^{r}", x=x, r=r, d=d)
    return found


@dataclass
class SpacingReport:
    x: int
    r: int
    D: int
    elements: List[int]
    l: Optional[int] = None
    bound_value: Optional[Fraction] = None
    L_used: Optional[Fraction] = None
    window: Optional[Fraction] = None
    max_cluster: Optional[int] = None

    @property
    def count(self) -> int:
        return len(self.elements)

    def as_row(self):
        return {
            'D': self.D,
            'count': self.count,
            'bound_value': self.bound_value,
            'max_cluster': self.max_cluster,
            'L_used': self.L_used,
            'window': self.window,
        }


def T_of_D(x: int, r: int, D: int) -> SpacingReport:
    """The representable d in (D, 2D]."""
    if D < 1:
        raise PreconditionError(f"D must be at least 1, got {D}", D=D)
    top = min(2 * D, integer_rth_root(x, r))
    elements = [d for d in range(D + 1, top + 1) if representable(x, r, d)]
    return SpacingReport(x=x, r=r, D=D, elements=elements)


def modified_difference(x: int, r: int, l: int, d: int, a: int, n1: int, n2: int) -> int:
    """P0(a, d) n1 - Q0(a, d) n2 for witnesses n1 of d and n2 of d - a."""
    _check_rl(r, l)
    if not 0 <= a < d:
        raise PreconditionError(f"Expected 0 <= a < d, got a={a}, d={d}", a=a, d=d)
    if n1 < 1 or x // n1 != d ** r:
        raise PreconditionError(f"n1={n1} is not a witness for d={d}", n1=n1, d=d)
    if n2 < 1 or x // n2 != (d - a) ** r:
        raise PreconditionError(f"n2={n2} is not a witness for d-a={d - a}", n2=n2, d=d - a)
    P0, Q0 = homogenize_eval(get_pade(r, l), a, d)
    return P0 * n1 - Q0 * n2


def cluster_scan(x: int, r: int, l: int, D: int, L, elements: Optional[Sequence[int]] = None) -> int:
    """Largest number of elements of T(D) in a half-open window [e, e + L)."""
    L = parse_rational(L)
    if L <= 0:
        raise PreconditionError(f"Window length must be positive, got {format_rational(L)}", L=L)
    if elements is None:
        elements = T_of_D(x, r, D).elements
    best = 0
    end = 0
    for start, element in enumerate(elements):
        end = max(end, start)
        while end < len(elements) and elements[end] < element + L:
            end += 1
        best = max(best, end - start)
    return best


def bound_value(x: int, r: int, l: int, D: int) -> Fraction:
    """Upper rounding of (x / D^(r-l+1))^(1/(2l-1)) + 1."""
    digits = lab_setting('CERTIFIED_DIGITS')
    return rational_power_upper(Fraction(x, D ** (r - l + 1)), Fraction(1, 2 * l - 1), digits) + 1


def window_length(x: int, r: int, l: int, D: int) -> Fraction:
    """Lower rounding of D^((l+r)/(2l-1)) x^(-1/(2l-1))."""
    digits = lab_setting('CERTIFIED_DIGITS')
    return rational_power_lower(Fraction(D ** (l + r), x), Fraction(1, 2 * l - 1), digits)


def spacing_bound_report(x: int, r: int, l: int, D: int, window_constant=None) -> SpacingReport:
    """T(D) with its bound, window length and densest window filled in."""
    _check_rl(r, l)
    if window_constant is None:
        window_constant = lab_setting('SPACING_WINDOW_CONSTANT')
    report = T_of_D(x, r, D)
    report.l = l
    report.bound_value = bound_value(x, r, l, D)
    report.L_used = window_length(x, r, l, D)
    report.window = parse_rational(window_constant) * report.L_used
    if report.window > 0:
        report.max_cluster = cluster_scan(x, r, l, D, report.window, report.elements)
    else:
        report.max_cluster = min(report.count, 1)
    return report


@dataclass(frozen=True)
class Violation:
    d: int
    a: int
    n1: int
    n2: int
    value: int


def close_pairs(elements: Sequence[int], window) -> List[Tuple[int, int]]:
    """(d, a) with d and d - a both in elements and 0 < a <= window, by d then a."""
    reach = math.floor(parse_rational(window))
    ordered = sorted(elements)
    pairs = []
    for i, d in enumerate(ordered):
        for lower in reversed(ordered[:i]):
            if d - lower > reach:
                break
            pairs.append((d, d - lower))
    return pairs


def vanishing_violations(x: int, r: int, l: int, D: int, window, elements: Optional[Sequence[int]] = None) -> List[Violation]:
    """Pairs d, d - a in T(D) with 0 < a <= window whose modified difference is nonzero."""
    _check_rl(r, l)
    if elements is None:
        elements = T_of_D(x, r, D).elements
    P = get_pade(r, l)
    found = []
    for d, a in close_pairs(elements, window):
        P0, Q0 = homogenize_eval(P, a, d)
        for n1 in witnesses(x, r, d):
            for n2 in witnesses(x, r, d - a):
                value = P0 * n1 - Q0 * n2
                if value != 0:
                    found.append(Violation(d, a, n1, n2, value))
    return found


def admissible(x: int, r: int, l: int, D: int, range_constant=None) -> bool:
    """True iff D^(2r+1-l) >= c^(2r+1-l) x."""
    if range_constant is None:
        range_constant = lab_setting('SPACING_RANGE_CONSTANT')
    c = parse_rational(range_constant)
    exponent = 2 * r + 1 - l
    return Fraction(D) ** exponent >= c ** exponent * x


def dyadic_grid(start: int, stop: int) -> List[int]:
    """start, 2 start, 4 start, ... up to stop."""
    if start < 1:
        raise PreconditionError(f"Dyadic grid must start at 1 or above, got {start}")
    grid = []
    D = start
    while D <= stop:
        grid.append(D)
        D *= 2
    return grid


def admissible_grid(x: int, r: int, l: int, range_constant=None) -> List[int]:
    """Powers of two D in the admissible range with (D, 2D] meeting [1, x^(1/r)]."""
    root = integer_rth_root(x, r)
    return [
        D for D in dyadic_grid(1, max(root - 1, 1))
        if D < root and admissible(x, r, l, D, range_constant)
    ]


@dataclass
class Calibration:
    r: int
    l: int
    window_constant: Optional[Fraction]
    count_constant: Fraction
    max_cluster: int
    reports: int
    rejected: List[Fraction] = field(default_factory=list)
    pairs_examined: int = 0
    saturated: bool = False

    def as_dict(self):
        return {
            'r': self.r,
            'l': self.l,
            'window_constant': format_rational(self.window_constant) if self.window_constant is not None else None,
            'count_constant': format_rational(self.count_constant),
            'max_cluster': self.max_cluster,
            'reports': self.reports,
            'rejected': [format_rational(c) for c in self.rejected],
            'pairs_examined': self.pairs_examined,
            'saturated': self.saturated,
        }


def calibrate(x_grid: Iterable[int], r: int, l: int, ladder: Sequence[Fraction] = DEFAULT_WINDOW_LADDER, range_constant=None) -> Calibration:
    """
    Largest window constant from the ladder with no vanishing violation on
    the grid, and the smallest count constant that covers every report.
    """
    _check_rl(r, l)
    ladder = sorted((parse_rational(c) for c in ladder), reverse=True)
    cases = []
    for x in x_grid:
        for D in admissible_grid(x, r, l, range_constant):
            cases.append((x, D, T_of_D(x, r, D).elements, window_length(x, r, l, D)))

    chosen = None
    rejected = []
    examined = set()
    for constant in ladder:
        clean = True
        for x, D, elements, L in cases:
            window = constant * L
            examined.update((x, D, d, a) for d, a in close_pairs(elements, window))
            if vanishing_violations(x, r, l, D, window, elements):
                clean = False
                break
        if clean:
            chosen = constant
            break
        rejected.append(constant)
        logger.info(f"Window constant {format_rational(constant)} rejected for r={r}, l={l}")
    saturated = chosen is not None and not rejected
    if saturated:
        logger.warning(
            f"Window constant {format_rational(chosen)} is the top of the ladder for r={r}, l={l}; "
            f"no pair on the grid was close enough to reject it"
        )

    count_constant = Fraction(0)
    densest = 0
    for x, D, elements, L in cases:
        count_constant = max(count_constant, Fraction(len(elements)) / bound_value(x, r, l, D))
        if chosen is not None and chosen * L > 0:
            densest = max(densest, cluster_scan(x, r, l, D, chosen * L, elements))
    return Calibration(r, l, chosen, count_constant, densest, len(cases), rejected, len(examined), saturated)


@dataclass(frozen=True)
class DaggerComparison:
    r: int
    l: int
    alpha: Fraction
    x: int
    A: Fraction
    spacing_value: Fraction
    trivial_value: Fraction
    crossover_A_exponent: Fraction

    @property
    def spacing_wins(self) -> bool:
        return self.spacing_value < self.trivial_value


def dagger_bound_compare(r: int, alpha, l: int, x: int, A) -> DaggerComparison:
    """
    Evaluate the spacing estimate x^((l-1)/(r(2l-1)) + alpha/r) (A^((r+1-l)/(r(2l-1)) - alpha/r) + 1)
    against the trivial A (x/A)^(alpha/r), both rounded upward.
    """
    alpha = parse_rational(alpha)
    A = parse_rational(A)
    if r < 1 or not 1 <= l <= r:
        raise RangeViolationError('1 <= l <= r', r=r, l=l)
    if alpha < 0 or alpha >= Fraction(r + 1 - l, 2 * l - 1):
        raise RangeViolationError('0 <= alpha < (r+1-l)/(2l-1)', alpha=alpha, r=r, l=l)
    if A < 1 or A ** (2 * r + 1 - l) > Fraction(x) ** (r + 1 - l):
        raise RangeViolationError('1 <= A <= x^((r+1-l)/(2r+1-l))', A=A, x=x)

    digits = lab_setting('CERTIFIED_DIGITS')
    x_exponent = Fraction(l - 1, r * (2 * l - 1)) + alpha / r
    A_exponent = Fraction(r + 1 - l, r * (2 * l - 1)) - alpha / r
    spacing = rational_power_upper(x, x_exponent, digits) * (rational_power_upper(A, A_exponent, digits) + 1)
    trivial = A * rational_power_upper(Fraction(x) / A, alpha / r, digits)
    return DaggerComparison(
        r=r, l=l, alpha=alpha, x=x, A=A,
        spacing_value=spacing,
        trivial_value=trivial,
        crossover_A_exponent=Fraction(1, 2 * r + 1),
    )


def dyadic_dagger_majorant(F: PowerSupportedFunction, x: int, A) -> Fraction:
    """
    Sum over dyadic D of C (2D)^alpha |{d in T(D) : d^r >= floor(x/A)}|.

    Needs 4A^2 <= x, which leaves at most one n < A for each d; the result
    then bounds |Sf_dagger(F, x, A)|.
    """
    A = parse_rational(A)
    if A < 1 or 4 * A * A > x:
        raise PreconditionError(f"Expected 1 <= A and 4A^2 <= x, got A={format_rational(A)}, x={x}", A=A, x=x)
    threshold = math.floor(Fraction(x) / A)
    root = integer_rth_root(x, F.r)
    total = Fraction(0)
    for D in dyadic_grid(1, max(root - 1, 1)):
        qualifying = [d for d in T_of_D(x, F.r, D).elements if d ** F.r >= threshold]
        if qualifying:
            total += F.growth_constant * Fraction(2 * D) ** F.exponent * len(qualifying)
    return total
