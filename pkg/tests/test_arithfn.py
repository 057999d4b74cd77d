"""
Tests for power-supported arithmetic functions and the constant C_f.
"""

from fractions import Fraction

import mpmath
import pytest
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.arithfn.functions import (
    CfEnclosure,
    PowerSupportedFunction,
    check_convergent,
    compute_Cf,
    eval_f,
    parse_h,
    tail_bounds,
    tail_majorant,
)
from apps.common.exceptions import DivergentParametersError, PreconditionError
from tests.factories import PowerSupportedFunctionFactory
from tests.utils import ExactAssertionsMixin, FunctionFixturesMixin


@pytest.mark.unit
class PowerSupportedFunctionTestCase(ExactAssertionsMixin, FunctionFixturesMixin, SimpleTestCase):
    """Test construction, parsing and evaluation of f."""

    def test_eval_f_examples(self):
        self.assertExact(eval_f(self.one(2), 16), 1)
        self.assertExact(eval_f(self.one(2), 12), 0)
        self.assertExact(eval_f(self.power(3, 2), 27), 9)
        self.assertExact(eval_f(PowerSupportedFunction.constant(1, Fraction(3, 2)), 7), Fraction(3, 2))

    def test_eval_f_rejects_nonpositive_n(self):
        with self.assertRaises(PreconditionError):
            eval_f(self.one(2), 0)

    def test_parse_h(self):
        self.assertEqual(parse_h('one', 2), self.one(2))
        self.assertEqual(parse_h('const:3/2', 3).coefficient, Fraction(3, 2))
        self.assertEqual(parse_h('pow:2', 3), self.power(3, 2))
        for text in ('', 'pow:x', 'const:', 'square', 'pow:-1'):
            with self.assertRaises(PreconditionError):
                parse_h(text, 2)

    def test_label_parses_back(self):
        for F in (self.one(2), self.power(4, 3), PowerSupportedFunction.constant(2, Fraction(-5, 7))):
            self.assertEqual(parse_h(F.label, F.r), F)
        self.assertEqual(str(self.power(2, 1)), 'f(r=2, h=pow:1)')

    def test_validation(self):
        with self.assertRaises(PreconditionError):
            PowerSupportedFunction(r=0)
        with self.assertRaises(PreconditionError):
            PowerSupportedFunction(r=2, h_kind='log')
        with self.assertRaises(PreconditionError):
            PowerSupportedFunction(r=2, h_kind='constant', exponent=1)

    def test_factory_builds_default_function(self):
        F = PowerSupportedFunctionFactory()
        self.assertEqual(F, self.one(2))
        self.assertEqual(PowerSupportedFunctionFactory(r=3).r, 3)

    @pytest.mark.property
    @given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=3), st.integers(min_value=1, max_value=200))
    @settings(deadline=None)
    def test_growth_envelope(self, r, a, d):
        F = self.power(r, a)
        self.assertLessEqual(abs(eval_f(F, d ** r)), F.growth_constant * Fraction(d) ** F.alpha)

    @pytest.mark.property
    @given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=10 ** 6))
    @settings(deadline=None)
    def test_nonzero_only_on_powers(self, r, n):
        value = eval_f(self.one(r), n)
        d = round(n ** (1 / r))
        is_power = any((d + k) ** r == n for k in (-1, 0, 1) if d + k >= 1)
        self.assertEqual(value != 0, is_power)


@pytest.mark.unit
class ComputeCfTestCase(ExactAssertionsMixin, FunctionFixturesMixin, SimpleTestCase):
    """Test the certified enclosure of C_f."""

    def test_r_one_is_exact(self):
        enclosure = compute_Cf(self.one(1), Fraction(1, 10 ** 9))
        self.assertTrue(enclosure.exact)
        self.assertEqual(tuple(enclosure), (1, 1))
        self.assertTrue(enclosure.contains(1))

    def test_r_two_constant_matches_closed_form(self):
        eps = Fraction(1, 10 ** 6)
        enclosure = compute_Cf(self.one(2), eps)
        self.assertLessEqual(enclosure.width, eps)
        with mpmath.workdps(40):
            closed_form = mpmath.pi ** 2 / 6 - (mpmath.pi * mpmath.coth(mpmath.pi) - 1) / 2
            self.assertEncloses(enclosure.lo, enclosure.hi, closed_form)

    def test_r_three_monomial_matches_series(self):
        eps = Fraction(1, 10 ** 6)
        enclosure = compute_Cf(self.power(3, 1), eps)
        self.assertLessEqual(enclosure.width, eps)
        with mpmath.workdps(40):
            series = mpmath.nsum(lambda d: 1 / (d ** 2 * (d ** 3 + 1)), [1, mpmath.inf])
            self.assertEncloses(enclosure.lo, enclosure.hi, series)

    def test_negative_constant(self):
        enclosure = compute_Cf(PowerSupportedFunction.constant(2, -3), Fraction(1, 10 ** 6))
        reference = compute_Cf(self.one(2), Fraction(1, 10 ** 7))
        self.assertTrue(enclosure.hi < 0)
        self.assertLessEqual(max(enclosure.lo, -3 * reference.hi), min(enclosure.hi, -3 * reference.lo))

    def test_nested_eps_intervals_overlap(self):
        for r in (2, 3, 4):
            for F in self.family(r):
                coarse = compute_Cf(F, Fraction(1, 10 ** 4))
                fine = compute_Cf(F, Fraction(1, 10 ** 7))
                self.assertLessEqual(fine.width, Fraction(1, 10 ** 7))
                self.assertLessEqual(max(coarse.lo, fine.lo), min(coarse.hi, fine.hi))

    def test_divergent_parameters(self):
        with self.assertRaises(DivergentParametersError):
            compute_Cf(self.power(2, 3), Fraction(1, 100))
        with self.assertRaises(DivergentParametersError):
            check_convergent(self.power(1, 1))

    def test_rejects_nonpositive_eps(self):
        with self.assertRaises(PreconditionError):
            compute_Cf(self.one(2), 0)

    def test_tail_bounds_bracket_true_tail(self):
        F = self.one(2)
        for N in (1, 10, 100):
            lo, hi = tail_bounds(F, N)
            with mpmath.workdps(40):
                tail = mpmath.nsum(lambda d: 1 / (d ** 2 * (d ** 2 + 1)), [N + 1, mpmath.inf])
                self.assertEncloses(lo, hi, tail)
            self.assertLessEqual(hi, tail_majorant(F, N))

    def test_enclosure_scaling(self):
        enclosure = CfEnclosure(Fraction(1, 2), Fraction(3, 4), truncation=5)
        scaled = enclosure.scaled(4)
        self.assertEqual((scaled.lo, scaled.hi), (2, 3))
        self.assertEqual(enclosure.midpoint, Fraction(5, 8))
