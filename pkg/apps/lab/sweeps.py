"""
Error sweeps |S_f(x) - C_f x| over a grid of x and log-log exponent fits.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

import numpy as np

from apps.arithfn.functions import PowerSupportedFunction, compute_Cf
from apps.common.conf import lab_setting
from apps.common.exceptions import FitError, PreconditionError, SweepPrecisionError
from apps.exact.arithmetic import format_rational, integer_rth_root, parse_rational
from apps.floorsum.sums import fast_Sf

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepRow:
    """S_f(x) with enclosures of C_f x and of |S_f(x) - C_f x|."""

    x: int
    s_f: Fraction
    cf_x_lo: Fraction
    cf_x_hi: Fraction
    abs_err_lo: Fraction
    abs_err_hi: Fraction

    @property
    def abs_err_mid(self) -> Fraction:
        return (self.abs_err_lo + self.abs_err_hi) / 2

    @property
    def abs_err_width(self) -> Fraction:
        return self.abs_err_hi - self.abs_err_lo


def abs_interval(lo: Fraction, hi: Fraction):
    """Image of [lo, hi] under absolute value."""
    if lo >= 0:
        return lo, hi
    if hi <= 0:
        return -hi, -lo
    return Fraction(0), max(-lo, hi)


def make_row(F: PowerSupportedFunction, x: int, cf_lo: Fraction, cf_hi: Fraction) -> SweepRow:
    s_f = fast_Sf(F, x)
    cf_x_lo, cf_x_hi = cf_lo * x, cf_hi * x
    abs_err_lo, abs_err_hi = abs_interval(s_f - cf_x_hi, s_f - cf_x_lo)
    return SweepRow(x, s_f, cf_x_lo, cf_x_hi, abs_err_lo, abs_err_hi)


def _row_task(task):
    return make_row(*task)


def ordered_map(function, tasks, threads: int = 1) -> list:
    """Apply a picklable function to each task, in a process pool when threads > 1; order is kept."""
    tasks = list(tasks)
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(function, tasks))
    return [function(task) for task in tasks]


def geometric_grid(x_min: int, x_max: int, points: int) -> List[int]:
    """
    points integers from x_min to x_max, evenly spaced in log x.

    Each point is x_min * (x_max/x_min)^(i/(points-1)) rounded down to an
    integer; duplicates collapse, so small ranges can give fewer points.
    """
    if x_min < 1 or x_max < x_min:
        raise PreconditionError(f"Expected 1 <= x_min <= x_max, got {x_min}, {x_max}")
    if points < 1:
        raise PreconditionError(f"points must be positive, got {points}")
    if points == 1:
        return [x_min]
    ratio = Fraction(x_max, x_min)
    grid = []
    for i in range(points):
        # floor(x_min * ratio^(i/(points-1))) via an exact integer root
        exponent = Fraction(i, points - 1)
        m, s = exponent.numerator, exponent.denominator
        scaled = Fraction(x_min) ** s * ratio ** m
        value = integer_rth_root(math.floor(scaled), s)
        if not grid or value > grid[-1]:
            grid.append(value)
    return grid


def sweep(F: PowerSupportedFunction, x_grid: Sequence[int], eps_cf=None, threads: Optional[int] = None) -> List[SweepRow]:
    """
    One SweepRow per x, in grid order.

    C_f is enclosed once; if the error enclosure at the largest x is wider
    than 1% of its midpoint, eps is divided by 100 and the enclosure redone,
    up to SWEEP_MAX_REFINEMENTS times.
    """
    grid = list(x_grid)
    if not grid:
        return []
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise PreconditionError('x grid must be strictly ascending')
    eps = parse_rational(eps_cf) if eps_cf is not None else lab_setting('CF_EPS')
    threads = threads or lab_setting('DEFAULT_THREADS')

    refinements = lab_setting('SWEEP_MAX_REFINEMENTS')
    for _ in range(refinements + 1):
        enclosure = compute_Cf(F, eps)
        last_row = make_row(F, grid[-1], enclosure.lo, enclosure.hi)
        if last_row.abs_err_width == 0 or last_row.abs_err_width * 100 < last_row.abs_err_mid:
            break
        logger.info(
            f"Refining C_f for {F}: error enclosure width {float(last_row.abs_err_width):.3e} "
            f"at x={grid[-1]} with eps={format_rational(eps)}"
        )
        eps /= 100
    else:
        raise SweepPrecisionError(
            f"C_f enclosure still too wide after {refinements} refinements", F=F, x=grid[-1]
        )

    rows = ordered_map(_row_task, [(F, x, enclosure.lo, enclosure.hi) for x in grid], threads)
    logger.info(f"Sweep of {F}: {len(rows)} rows from x={grid[0]} to x={grid[-1]}")
    return rows


@dataclass(frozen=True)
class FitResult:
    slope: Optional[float]
    intercept: Optional[float]
    r_squared: Optional[float]
    n_points: int
    dropped: int = 0
    exact: bool = False

    def as_dict(self):
        return {
            'slope': self.slope,
            'intercept': self.intercept,
            'r_squared': self.r_squared,
            'n_points': self.n_points,
            'dropped': self.dropped,
            'exact': self.exact,
        }

    def __str__(self):
        if self.exact:
            return f"exact: error is zero at all {self.dropped} points"
        return (
            f"slope={self.slope:.6f} intercept={self.intercept:.6f} "
            f"r2={self.r_squared:.6f} n={self.n_points} dropped={self.dropped}"
        )


def _log(value) -> float:
    value = Fraction(value)
    return math.log(value.numerator) - math.log(value.denominator)


def fit_points(xs: Iterable[int], values: Iterable) -> FitResult:
    """Least-squares line through (log x, log |value|), natural logarithms."""
    pairs = [(x, abs(Fraction(v))) for x, v in zip(xs, values)]
    if not pairs:
        raise FitError('No rows to fit')
    usable = [(x, v) for x, v in pairs if v != 0]
    dropped = len(pairs) - len(usable)
    if not usable:
        return FitResult(None, None, None, 0, dropped=dropped, exact=True)
    if len(usable) < 2:
        raise FitError(n_points=len(usable), dropped=dropped)

    log_x = np.array([_log(x) for x, _ in usable])
    log_y = np.array([_log(v) for _, v in usable])
    slope, intercept = np.polyfit(log_x, log_y, 1)
    residual = log_y - (slope * log_x + intercept)
    total = float(np.sum((log_y - log_y.mean()) ** 2))
    if total == 0:
        r_squared = 1.0
    else:
        r_squared = min(1.0, max(0.0, 1.0 - float(np.sum(residual ** 2)) / total))
    return FitResult(float(slope), float(intercept), r_squared, len(usable), dropped=dropped)


def fit_exponent(rows: Sequence[SweepRow]) -> FitResult:
    """Fit the error exponent from the midpoints of the rows' error enclosures."""
    return fit_points([row.x for row in rows], [row.abs_err_mid for row in rows])
