#!/usr/bin/env python3
"""
Tests for exact torsion arithmetic in (Q/Z)^n.
"""

import unittest
from fractions import Fraction

import hypothesis.strategies as st
import numpy as np
from hypothesis import given, settings

from symstab.core.torsion import (
    RatMod1,
    TorsionVector,
    apply_integer_matrix,
    enumerate_torsion,
    order,
    subgroup_closure,
    subgroup_membership,
    torsion_count,
)
from symstab.utils.errors import BudgetExceeded, ParseError, RankMismatch

fractions = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 6))


def vectors(rank=4):
    return st.lists(fractions, min_size=rank, max_size=rank).map(TorsionVector.of)


class TestRatMod1(unittest.TestCase):
    """Canonical form of rationals modulo 1."""

    def test_reduction(self):
        """Values are reduced into [0, 1) in lowest terms."""
        self.assertEqual(RatMod1(Fraction(7, 4)).value, Fraction(3, 4))
        self.assertEqual(RatMod1(Fraction(-1, 2)).value, Fraction(1, 2))
        self.assertEqual(RatMod1(Fraction(4, 6)).denominator, 3)

    def test_string_form(self):
        """Serialization uses p/q, with 0/1 for zero."""
        self.assertEqual(str(RatMod1.parse("0")), "0/1")
        self.assertEqual(str(RatMod1.parse("5/2")), "1/2")

    def test_parse_rejects_garbage(self):
        """Malformed rationals raise ParseError."""
        for text in ("abc", "1/0", ""):
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    RatMod1.parse(text)


class TestOrder(unittest.TestCase):
    """Orders of torsion vectors."""

    def test_examples(self):
        """Order is the lcm of the denominators."""
        cases = [("0,0,0,0", 1), ("1/2,0,0,0", 2), ("1/3,1/2,0,0", 6)]
        for text, expected in cases:
            with self.subTest(vector=text):
                self.assertEqual(order(TorsionVector.parse(text)), expected)

    @given(vectors())
    def test_order_kills_and_is_least(self, v):
        """order(v) * v = 0 and no smaller positive multiple vanishes."""
        n = order(v)
        self.assertTrue((v * n).is_zero())
        for m in range(1, n):
            self.assertFalse((v * m).is_zero())


class TestEnumeration(unittest.TestCase):
    """Enumeration of n-torsion subgroups."""

    def test_counts(self):
        """torsion_count is n ** rank."""
        self.assertEqual(torsion_count(4, 2), 16)
        self.assertEqual(torsion_count(4, 1), 1)
        self.assertEqual(torsion_count(6, 6), 46656)

    def test_small_listings(self):
        """Enumeration is lexicographic and complete."""
        self.assertEqual([v.to_json() for v in enumerate_torsion(2, 2)],
                         [["0/1", "0/1"], ["0/1", "1/2"], ["1/2", "0/1"], ["1/2", "1/2"]])
        self.assertEqual([v.to_json() for v in enumerate_torsion(1, 3)],
                         [["0/1"], ["1/3"], ["2/3"]])
        items = list(enumerate_torsion(4, 2))
        self.assertEqual(len(items), 16)
        self.assertTrue(items[0].is_zero())
        self.assertEqual(items, sorted(items))

    def test_rank_six_six_torsion_within_default_budget(self):
        """The 46656 six-torsion vectors of rank 6 are enumerated once each."""
        items = set(enumerate_torsion(6, 6))
        self.assertEqual(len(items), 46656)

    def test_closed_under_addition(self):
        """The 3-torsion of rank 2 is a group."""
        items = set(enumerate_torsion(2, 3))
        for a in items:
            self.assertIn(-a, items)
            for b in items:
                self.assertIn(a + b, items)

    def test_budget_exceeded(self):
        """Enumerations over the budget fail before yielding anything."""
        with self.assertRaises(BudgetExceeded):
            enumerate_torsion(6, 6, budget=1000)


class TestSubgroups(unittest.TestCase):
    """Subgroup closure and membership."""

    def test_membership_examples(self):
        """Membership is decided by closure."""
        half_x = TorsionVector.parse("1/2,0")
        half_y = TorsionVector.parse("0,1/2")
        self.assertTrue(subgroup_membership(half_x, [half_x]))
        self.assertFalse(subgroup_membership(half_y, [half_x]))
        self.assertTrue(subgroup_membership(TorsionVector.parse("1/2,1/2"), [half_x, half_y]))

    def test_closure_size(self):
        """A generator of order 6 spans a cyclic group of order 6."""
        group = subgroup_closure([TorsionVector.parse("1/3,1/2")])
        self.assertEqual(len(group), 6)

    def test_rank_mismatch(self):
        """Generators must share the rank of the vector."""
        with self.assertRaises(RankMismatch):
            subgroup_membership(TorsionVector.parse("1/2,0"), [TorsionVector.parse("1/2")])


class TestGroupLaws(unittest.TestCase):
    """Group axioms on random vectors."""

    @settings(max_examples=60)
    @given(vectors(), vectors(), vectors())
    def test_associative(self, a, b, c):
        self.assertEqual((a + b) + c, a + (b + c))

    @given(vectors(), vectors())
    def test_commutative(self, a, b):
        self.assertEqual(a + b, b + a)

    @given(vectors())
    def test_identity_and_inverse(self, a):
        zero = TorsionVector.zero(4)
        self.assertEqual(a + zero, a)
        self.assertTrue((a + (-a)).is_zero())

    @given(vectors(), vectors())
    def test_integer_matrix_is_homomorphism(self, a, b):
        """Integer matrices act additively on torsion vectors."""
        matrix = np.array([[1, 2, 0, 0], [0, 1, 0, 0], [3, 0, 1, 0], [0, 0, 5, 1]])
        self.assertEqual(apply_integer_matrix(matrix, a + b),
                         apply_integer_matrix(matrix, a) + apply_integer_matrix(matrix, b))


if __name__ == '__main__':
    unittest.main()
