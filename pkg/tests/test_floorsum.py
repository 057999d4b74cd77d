"""
Tests for S_f(x): brute force, grouped evaluation, the dagger/flat/sharp
decomposition and the psi error sums.
"""

import math
import random
from fractions import Fraction

import pytest
from django.test import SimpleTestCase
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from apps.common.exceptions import PreconditionError
from apps.exact.arithmetic import integer_rth_root, psi
from apps.floorsum.sums import (
    E_flat,
    E_sharp,
    E_total,
    Sf_dagger,
    brute_Sf,
    clamped_count,
    conjecture_psi_sum,
    decompose,
    fast_Sf,
    gk_block_sums,
    main_term,
    preimage_count,
    sharp_sum,
    trivial_error_bound,
)
from tests.utils import ExactAssertionsMixin, FunctionFixturesMixin

functions = st.builds(
    lambda r, a: (r, a),
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=0, max_value=2),
)


@pytest.mark.unit
class FloorSumTestCase(ExactAssertionsMixin, FunctionFixturesMixin, SimpleTestCase):
    """Test brute_Sf, fast_Sf and Sf_dagger."""

    def test_brute_examples(self):
        self.assertExact(brute_Sf(self.one(1), 10), 10)
        self.assertExact(brute_Sf(self.one(2), 10), 5)
        self.assertExact(brute_Sf(self.power(2, 2), 100), 220)

    def test_fast_examples(self):
        self.assertExact(fast_Sf(self.one(2), 10), 5)
        self.assertExact(fast_Sf(self.one(2), 100), 59)
        self.assertExact(fast_Sf(self.one(1), 10 ** 6), 10 ** 6)

    def test_fast_matches_brute_on_small_grid(self):
        for r in (1, 2, 3, 4):
            for F in (self.one(r), self.power(r, 1), self.power(r, 2)):
                for x in (1, 2, 7, 64, 100, 729, 1000, 2047):
                    self.assertEqual(fast_Sf(F, x), brute_Sf(F, x), f"{F} at x={x}")

    @pytest.mark.property
    @given(functions, st.integers(min_value=1, max_value=20000))
    @settings(deadline=None, max_examples=60)
    def test_fast_matches_brute(self, params, x):
        r, a = params
        F = self.power(r, a) if a else self.one(r)
        self.assertEqual(fast_Sf(F, x), brute_Sf(F, x))

    def test_counts(self):
        self.assertEqual(preimage_count(100, 4), 5)
        self.assertEqual(preimage_count(100, 49), 0)
        self.assertEqual(clamped_count(100, 1, 10), 50)
        self.assertEqual(clamped_count(100, 16, 10), 0)

    def test_rejects_bad_x(self):
        for x in (0, -5, True):
            with self.assertRaises(PreconditionError):
                fast_Sf(self.one(2), x)

    def test_dagger_examples(self):
        F = self.one(2)
        self.assertExact(Sf_dagger(F, 100, 10), 3)
        self.assertExact(Sf_dagger(F, 100, 10, inclusive=True), 3)
        self.assertExact(Sf_dagger(F, 100, 1), 0)
        self.assertExact(Sf_dagger(F, 100, Fraction(5, 2), inclusive=True), 1)
        with self.assertRaises(PreconditionError):
            Sf_dagger(F, 100, Fraction(1, 2))


@pytest.mark.unit
class DecompositionTestCase(ExactAssertionsMixin, FunctionFixturesMixin, SimpleTestCase):
    """Test the dagger/flat/sharp split."""

    def test_worked_example(self):
        dec = decompose(self.one(2), 100, 25, 10)
        self.assertExact(dec.dagger, 3)
        self.assertExact(dec.flat, 1)
        self.assertExact(dec.sharp, 55)
        self.assertExact(dec.boundary_correction, 0)
        self.assertExact(dec.total, 59)
        self.assertEqual((dec.sharp_end, dec.flat_end), (2, 3))
        self.assertEqual(dec.as_dict()['total'], '59')

    def test_degenerate_edges(self):
        F = self.one(2)
        dec = decompose(F, 100, 1, 1)
        self.assertExact(dec.dagger, 1)
        self.assertExact(dec.total, brute_Sf(F, 100))

    def test_cubes(self):
        F = self.one(3)
        dec = decompose(F, 10 ** 4, 90, 10, verify=True)
        self.assertExact(dec.total, brute_Sf(F, 10 ** 4))
        self.assertExact(dec.boundary_correction, 0)

    def test_preconditions(self):
        F = self.one(2)
        with self.assertRaises(PreconditionError):
            decompose(F, 100, 5, 6)
        with self.assertRaises(PreconditionError):
            decompose(F, 100, 11, 2)
        with self.assertRaises(PreconditionError):
            decompose(F, 100, 5, Fraction(1, 2))

    @pytest.mark.property
    @given(functions, st.integers(min_value=1, max_value=5000), st.data())
    @settings(deadline=None, max_examples=80)
    def test_identity_holds(self, params, x, data):
        r, a = params
        F = self.power(r, a) if a else self.one(r)
        root = math.isqrt(x)
        A = data.draw(st.fractions(min_value=1, max_value=root, max_denominator=50))
        B = data.draw(st.fractions(min_value=1, max_value=A, max_denominator=50))
        assume(A * A <= x)
        dec = decompose(F, x, A, B)
        self.assertEqual(dec.boundary_correction, 0)
        self.assertEqual(dec.total, brute_Sf(F, x))

    @pytest.mark.property
    @given(functions, st.integers(min_value=1, max_value=10 ** 5), st.fractions(min_value=1, max_value=300, max_denominator=20))
    @settings(deadline=None, max_examples=80)
    def test_main_term_reconstruction(self, params, x, A):
        r, a = params
        F = self.power(r, a) if a else self.one(r)
        self.assertEqual(
            sharp_sum(F, x, A),
            main_term(F, x, A) + E_sharp(F, x, A, 1) - E_sharp(F, x, A, 0),
        )


@pytest.mark.unit
class PsiSumTestCase(ExactAssertionsMixin, FunctionFixturesMixin, SimpleTestCase):
    """Test the psi error sums."""

    def test_sharp_examples(self):
        F = self.one(2)
        self.assertExact(E_sharp(F, 100, 25, 0), -1)
        self.assertExact(E_sharp(F, 100, 25, 1), -1)
        self.assertExact(E_sharp(F, 100, 101, 0), 0)

    def test_flat_examples(self):
        F = self.one(2)
        self.assertExact(E_flat(F, 100, 25, 10, 0), Fraction(-7, 18))
        self.assertExact(E_flat(F, 100, 25, 10, 1), Fraction(-1, 2))
        self.assertExact(E_flat(F, 100, 25, 25, 0), 0)

    def test_total(self):
        F = self.one(2)
        self.assertExact(E_total(F, 100, 25, 10), Fraction(26, 9))
        self.assertExact(E_total(F, 100, 101, 101), 0)
        self.assertLessEqual(E_total(F, 100, 25, 10), 2 * trivial_error_bound(F, 100, 25, 10))

    def test_delta_must_be_binary(self):
        with self.assertRaises(PreconditionError):
            E_sharp(self.one(2), 100, 25, 2)

    def test_conjecture_sum(self):
        self.assertExact(conjecture_psi_sum(2, 100, 0), Fraction(-59, 36))
        self.assertExact(conjecture_psi_sum(2, 1, 0), Fraction(-1, 2))
        direct = sum(psi(Fraction(10 ** 4, n ** 3 + 1)) for n in range(1, 11))
        self.assertExact(conjecture_psi_sum(3, 10 ** 4, 1), direct)
        with self.assertRaises(PreconditionError):
            conjecture_psi_sum(1, 100, 0)

    def test_block_sums(self):
        blocks = gk_block_sums(2, 100, 0)
        self.assertEqual([(b.start, b.end) for b in blocks], [(0, 1), (1, 2), (2, 4)])
        self.assertEqual([b.value for b in blocks], [Fraction(-1, 2), Fraction(-1, 2), Fraction(-23, 36)])

    def test_block_sums_cover_the_range(self):
        for x in (10 ** 4, 10 ** 6 + 1):
            for delta in (0, 1):
                blocks = gk_block_sums(2, x, delta)
                self.assertEqual(blocks[-1].end, integer_rth_root(x, 3))
                self.assertEqual(sum(b.value for b in blocks), conjecture_psi_sum(2, x, delta))


@pytest.mark.slow
class MillionSampleTestCase(FunctionFixturesMixin, SimpleTestCase):
    """Fast evaluation and decomposition against brute force for x near 10^6."""

    def test_random_sample(self):
        rng = random.Random(1000003)
        for _ in range(20):
            x = 10 ** 6 + rng.randint(-5000, 5000)
            r, a = rng.randint(1, 4), rng.randint(0, 2)
            F = self.power(r, a) if a else self.one(r)
            A = Fraction(rng.randint(10, 999 * 7), 7)
            B = Fraction(rng.randint(7, math.floor(A * 7)), 7)
            expected = brute_Sf(F, x)
            self.assertEqual(fast_Sf(F, x), expected, f"{F} at x={x}")
            dec = decompose(F, x, A, B)
            self.assertEqual(dec.boundary_correction, 0)
            self.assertEqual(dec.total, expected, f"{F} at x={x}, A={A}, B={B}")
