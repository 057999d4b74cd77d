"""
Tests for exact scalar arithmetic: rationals, psi, integer roots and
certified rational powers.
"""

from fractions import Fraction

import pytest
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from apps.common.exceptions import LabError, PreconditionError, RangeViolationError
from apps.exact.arithmetic import (
    as_perfect_rth_power,
    decimal_string,
    floor_rth_root_of_rational,
    format_rational,
    integer_rth_root,
    parse_rational,
    psi,
    rational_power_bounds,
    rational_power_lower,
    rational_power_upper,
    strict_rth_root_of_rational,
)
from tests.utils import ExactAssertionsMixin

rationals = st.fractions(max_denominator=10 ** 6).filter(lambda q: abs(q) < 10 ** 9)


@pytest.mark.unit
class RationalParsingTestCase(ExactAssertionsMixin, SimpleTestCase):
    """Test parse_rational, format_rational and decimal_string."""

    def test_parse_integers_and_fractions(self):
        self.assertExact(parse_rational('12'), 12)
        self.assertExact(parse_rational('-3/4'), Fraction(-3, 4))
        self.assertExact(parse_rational(' 6/8 '), Fraction(3, 4))
        self.assertExact(parse_rational(7), 7)

    def test_parse_decimal_strings(self):
        self.assertExact(parse_rational('0.25'), Fraction(1, 4))
        self.assertExact(parse_rational('1e-9'), Fraction(1, 10 ** 9))

    def test_parse_rejects_floats_and_garbage(self):
        for value in (0.5, 'abc', '1/0', True, None):
            with self.assertRaises(PreconditionError):
                parse_rational(value)

    def test_format_rational(self):
        self.assertEqual(format_rational(Fraction(4, 2)), '2')
        self.assertEqual(format_rational(Fraction(-59, 36)), '-59/36')
        self.assertEqual(format_rational(0), '0')

    def test_decimal_string(self):
        self.assertEqual(decimal_string(Fraction(1, 4), 12), '0.25')
        self.assertEqual(decimal_string(Fraction(2, 3), 6), '0.666667')

    @given(rationals)
    @settings(deadline=None)
    def test_format_then_parse_is_identity(self, q):
        self.assertEqual(parse_rational(format_rational(q)), q)


@pytest.mark.unit
class PsiTestCase(ExactAssertionsMixin, SimpleTestCase):
    """Test the sawtooth psi."""

    def test_examples(self):
        self.assertExact(psi(Fraction(1, 2)), 0)
        self.assertExact(psi(3), Fraction(-1, 2))
        self.assertExact(psi(Fraction(7, 3)), Fraction(-1, 6))
        self.assertExact(psi(Fraction(-1, 3)), Fraction(1, 6))

    @pytest.mark.property
    @given(rationals, st.integers(min_value=-10 ** 6, max_value=10 ** 6))
    @settings(deadline=None)
    def test_period_one(self, q, m):
        self.assertEqual(psi(q + m), psi(q))

    @pytest.mark.property
    @given(rationals)
    @settings(deadline=None)
    def test_range_and_reflection(self, q):
        value = psi(q)
        self.assertGreaterEqual(value, Fraction(-1, 2))
        self.assertLess(value, Fraction(1, 2))
        if q.denominator == 1:
            self.assertEqual(value, Fraction(-1, 2))
        else:
            self.assertEqual(value + psi(-q), -1)


@pytest.mark.unit
class IntegerRootTestCase(SimpleTestCase):
    """Test integer_rth_root and perfect power detection."""

    def test_examples(self):
        self.assertEqual(integer_rth_root(0, 3), 0)
        self.assertEqual(integer_rth_root(100, 2), 10)
        self.assertEqual(integer_rth_root(99, 2), 9)
        self.assertEqual(integer_rth_root(26, 3), 2)
        self.assertEqual(integer_rth_root(27, 3), 3)
        self.assertEqual(integer_rth_root(17, 1), 17)

    def test_boundaries_of_large_powers(self):
        for r in (2, 3, 5, 7):
            d = 10 ** 20 + 12345
            self.assertEqual(integer_rth_root(d ** r, r), d)
            self.assertEqual(integer_rth_root(d ** r - 1, r), d - 1)
            self.assertEqual(integer_rth_root((d + 1) ** r - 1, r), d)

    def test_rejects_bad_arguments(self):
        with self.assertRaises(PreconditionError):
            integer_rth_root(10, 0)
        with self.assertRaises(PreconditionError):
            integer_rth_root(-1, 2)

    @pytest.mark.property
    @given(st.integers(min_value=0, max_value=10 ** 40), st.integers(min_value=1, max_value=9))
    @settings(deadline=None)
    def test_root_brackets_n(self, n, r):
        root = integer_rth_root(n, r)
        self.assertLessEqual(root ** r, n)
        self.assertLess(n, (root + 1) ** r)
        self.assertLessEqual(integer_rth_root(max(n - 1, 0), r), root)

    def test_perfect_powers(self):
        self.assertEqual(as_perfect_rth_power(16, 2), 4)
        self.assertIsNone(as_perfect_rth_power(16, 3))
        self.assertEqual(as_perfect_rth_power(12, 1), 12)
        self.assertEqual(as_perfect_rth_power(1, 5), 1)
        with self.assertRaises(PreconditionError):
            as_perfect_rth_power(0, 2)

    def test_roots_of_rationals(self):
        self.assertEqual(floor_rth_root_of_rational(Fraction(4), 2), 2)
        self.assertEqual(floor_rth_root_of_rational(Fraction(399, 100), 2), 1)
        self.assertEqual(strict_rth_root_of_rational(Fraction(4), 2), 1)
        self.assertEqual(strict_rth_root_of_rational(Fraction(401, 100), 2), 2)
        self.assertEqual(strict_rth_root_of_rational(Fraction(10), 2), 3)
        self.assertEqual(strict_rth_root_of_rational(0, 2), -1)


@pytest.mark.unit
class CertifiedPowerTestCase(SimpleTestCase):
    """Test directed rounding of rational powers."""

    def test_integer_exponent_is_exact(self):
        self.assertEqual(rational_power_bounds(Fraction(25, 4), 1), (Fraction(25, 4), Fraction(25, 4)))
        self.assertEqual(rational_power_bounds(10, 0), (1, 1))

    def test_exact_roots_collapse(self):
        lo, hi = rational_power_bounds(Fraction(1, 4), Fraction(1, 2))
        self.assertEqual(lo, Fraction(1, 2))
        self.assertEqual(hi, Fraction(1, 2))

    def test_irrational_root_is_bracketed(self):
        lo, hi = rational_power_bounds(2, Fraction(1, 2), digits=20)
        self.assertLess(lo * lo, 2)
        self.assertGreater(hi * hi, 2)
        self.assertLessEqual(hi - lo, Fraction(2, 10 ** 20))

    def test_negative_exponent(self):
        lo, hi = rational_power_bounds(8, Fraction(-1, 3))
        self.assertLessEqual(lo, Fraction(1, 2))
        self.assertGreaterEqual(hi, Fraction(1, 2))

    def test_large_denominator_uses_intervals(self):
        e = Fraction(1, 10 ** 5 + 3)
        lo, hi = rational_power_bounds(3, e, digits=15)
        self.assertLess(lo, hi)
        self.assertLess(hi - lo, Fraction(1, 10 ** 12))
        self.assertGreater(lo, 1)

    def test_upper_and_lower(self):
        self.assertLessEqual(rational_power_lower(10, Fraction(6, 7)), rational_power_upper(10, Fraction(6, 7)))

    def test_rejects_nonpositive_base(self):
        with self.assertRaises(PreconditionError):
            rational_power_bounds(0, Fraction(1, 2))


@pytest.mark.unit
class ExceptionHierarchyTestCase(SimpleTestCase):
    """Test the shared exception payloads."""

    def test_precondition_is_value_error(self):
        error = PreconditionError('bad x', x=0)
        self.assertIsInstance(error, ValueError)
        self.assertIsInstance(error, LabError)
        self.assertEqual(error.as_dict(), {'error': 'bad x', 'details': {'x': '0'}})

    def test_range_violation_names_condition(self):
        error = RangeViolationError('1 <= l <= r', r=2, l=3)
        self.assertEqual(error.condition, '1 <= l <= r')
        self.assertIn('1 <= l <= r', error.message)
        self.assertEqual(error.as_dict()['details']['condition'], '1 <= l <= r')
