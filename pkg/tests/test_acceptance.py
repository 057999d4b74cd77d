"""
Long-running checks of the lab's headline numbers: spacing constants on the
calibration grid, empirical error exponents and the dyadic block bound.

Deselect with -m "not slow".
"""

from fractions import Fraction

import pytest
from django.test import SimpleTestCase

from apps.common.conf import lab_setting
from apps.exact.arithmetic import integer_rth_root
from apps.exppairs.processes import eval_word, gk_bound
from apps.floorsum.sums import brute_Sf, conjecture_psi_sum, decompose, gk_block_sums
from apps.lab.experiments import run_experiment
from apps.lab.sweeps import fit_exponent, fit_points, geometric_grid, sweep
from apps.spacing.sets import admissible_grid, calibrate, spacing_bound_report, vanishing_violations
from tests.utils import FunctionFixturesMixin

CALIBRATION_GRID = [10 ** 5, 10 ** 6, 10 ** 7]


@pytest.mark.slow
class SpacingAcceptanceTestCase(SimpleTestCase):
    """Spacing properties with the shipped constants for r = 2."""

    def test_grid_starts_at_the_cube_root(self):
        self.assertEqual(lab_setting('SPACING_RANGE_CONSTANT'), 1)
        self.assertEqual(admissible_grid(10 ** 5, 2, 2), [64, 128, 256])
        self.assertEqual(admissible_grid(10 ** 6, 2, 2), [128, 256, 512])
        self.assertEqual(admissible_grid(10 ** 7, 2, 2), [256, 512, 1024, 2048])

    def test_shipped_window_has_no_violations(self):
        for x in CALIBRATION_GRID:
            grid = admissible_grid(x, 2, 2)
            self.assertTrue(grid)
            for D in grid:
                report = spacing_bound_report(x, 2, 2, D)
                self.assertEqual(vanishing_violations(x, 2, 2, D, report.window, report.elements), [])
                self.assertLessEqual(report.max_cluster, 4)

    def test_checked_runs_pass(self):
        for x in CALIBRATION_GRID:
            result = run_experiment('spacing', {'r': 2, 'l': 2, 'x': x, 'check': True})
            self.assertEqual(result.summary['reports'], len(admissible_grid(x, 2, 2)))

    def test_shipped_window_is_the_calibrated_one(self):
        shipped = lab_setting('SPACING_WINDOW_CONSTANT')
        for l in (1, 2):
            calibration = calibrate(CALIBRATION_GRID, 2, l)
            self.assertEqual(calibration.window_constant, shipped)
            self.assertEqual(calibration.rejected, [Fraction(2) ** k for k in range(12, 2, -1)])
            self.assertGreater(calibration.pairs_examined, 0)
            self.assertFalse(calibration.saturated)
            self.assertGreater(calibration.reports, 0)
            self.assertLessEqual(calibration.count_constant, 4)


@pytest.mark.slow
class ErrorExponentAcceptanceTestCase(FunctionFixturesMixin, SimpleTestCase):
    """Empirical exponents over x in [10^4, 10^8]."""

    def test_square_sweep_slope(self):
        rows = sweep(self.one(2), geometric_grid(10 ** 4, 10 ** 8, 40))
        self.assertEqual(len(rows), 40)
        fit = fit_exponent(rows)
        self.assertLessEqual(fit.slope, 0.30)
        self.assertGreaterEqual(fit.r_squared, 0.0)

    def test_psi_sum_slope(self):
        grid = geometric_grid(10 ** 4, 10 ** 8, 40)
        for delta in (0, 1):
            fit = fit_points(grid, [conjecture_psi_sum(2, x, delta) for x in grid])
            self.assertLessEqual(fit.slope, 2 / 9 + 0.08)

    def test_decomposition_at_a_million(self):
        for F, A, B in [(self.one(2), 1000, 1), (self.power(2, 1), Fraction(1000, 3), 7), (self.one(3), 250, 250)]:
            dec = decompose(F, 10 ** 6, A, B)
            self.assertEqual(dec.boundary_correction, 0)
            self.assertEqual(dec.total, brute_Sf(F, 10 ** 6))


@pytest.mark.slow
class BlockBoundAcceptanceTestCase(SimpleTestCase):
    """Dyadic psi blocks at x = 10^8 against the exponent-pair bound."""

    def test_blocks_within_constant(self):
        x = 10 ** 8
        pair = eval_word('BA2')
        worst = Fraction(0)
        for delta in (0, 1):
            blocks = gk_block_sums(2, x, delta)
            self.assertEqual(blocks[-1].end, integer_rth_root(x, 3))
            for block in blocks:
                worst = max(worst, abs(block.value) / gk_bound(pair, x, block.end, 2))
        self.assertLessEqual(worst, 10)

    def test_checked_block_table(self):
        result = run_experiment('psi', {'r': 2, 'blocks': True, 'x': 10 ** 8, 'check': True})
        self.assertLessEqual(float(result.summary['max_ratio']), 2)
