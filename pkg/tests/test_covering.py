#!/usr/bin/env python3
"""
Tests for covering models: pullback, norm, involution and Prym structure.
"""

import unittest

import hypothesis.strategies as st
import numpy as np
from hypothesis import given, settings

from symstab.core.covering import (
    PrymLocation,
    covering_kernel,
    enumerate_prym_torsion,
    in_pullback_image,
    involution,
    make_cyclic_cover,
    make_double_cover,
    norm,
    prym_location,
    prym_pullback_intersection,
    prym_torsion_count,
    pullback,
    pushforward_determinant,
    pushforward_summands,
)
from symstab.core.torsion import TorsionVector, apply_integer_matrix, enumerate_torsion
from symstab.utils.errors import (
    NotDoubleCover,
    NotTwoTorsion,
    OrderMismatch,
    RankMismatch,
    TrivialClass,
    UnsupportedDegree,
)

V = TorsionVector.parse

STANDARD_G2 = make_double_cover(2, V("1/2,0,0,0"))
SKEW_G2 = make_double_cover(2, V("1/2,1/2,0,1/2"))
STANDARD_G3 = make_double_cover(3, V("0,0,1/2,0,0,0"))
TRIPLE_G2 = make_cyclic_cover(2, V("0,2/3,0,0"), 3)

sixths = st.integers(0, 5).map(lambda i: f"{i}/6")


def classes(cov):
    """Random torsion classes with 6-torsion representatives."""
    base = st.lists(sixths, min_size=cov.rank, max_size=cov.rank).map(TorsionVector.of)
    prym = st.lists(sixths, min_size=cov.prym_rank, max_size=cov.prym_rank).map(TorsionVector.of)
    return st.builds(cov.torsion_class, base, prym)


class TestConstruction(unittest.TestCase):
    """Building covering models."""

    def test_double_cover_dimensions(self):
        """Cover genus 2g-1 and Prym torsion rank 2g-2."""
        self.assertEqual((STANDARD_G2.cover_genus, STANDARD_G2.prym_rank), (3, 2))
        self.assertEqual((STANDARD_G3.cover_genus, STANDARD_G3.prym_rank), (5, 4))

    def test_rejects_bad_classes(self):
        """Trivial, wrong order and wrong rank classes are refused."""
        with self.assertRaises(TrivialClass):
            make_double_cover(2, V("0,0,0,0"))
        with self.assertRaises(NotTwoTorsion):
            make_double_cover(2, V("1/3,0,0,0"))
        with self.assertRaises(RankMismatch):
            make_double_cover(2, V("1/2,0"))
        with self.assertRaises(OrderMismatch):
            make_cyclic_cover(2, V("1/2,0,0,0"), 3)
        with self.assertRaises(UnsupportedDegree):
            make_cyclic_cover(2, V("1/4,0,0,0"), 4)

    def test_basis_change_aligns_ell(self):
        """U maps ell to (1/m, 0, ..., 0) and is unimodular."""
        for cov in (STANDARD_G2, SKEW_G2, STANDARD_G3, TRIPLE_G2):
            with self.subTest(cov=cov):
                aligned = apply_integer_matrix(cov.basis_change, cov.ell)
                self.assertEqual(aligned, TorsionVector.basis(cov.rank, 0, cov.degree))
                product = cov.basis_change @ cov.basis_change_inverse
                self.assertTrue(np.array_equal(product, np.eye(cov.rank, dtype=np.int64)))

    def test_gluing_subgroup_size(self):
        """|K| = m^(2g-1)."""
        self.assertEqual(len(STANDARD_G2.gluing_subgroup()), 8)
        self.assertEqual(len(STANDARD_G3.gluing_subgroup()), 32)
        self.assertEqual(len(TRIPLE_G2.gluing_subgroup()), 27)

    def test_triple_cover_dimensions(self):
        """Unramified triple covers of genus 2 have genus 4."""
        self.assertEqual((TRIPLE_G2.cover_genus, TRIPLE_G2.prym_rank), (4, 4))

    def test_degree_two_agrees(self):
        """make_cyclic_cover with m = 2 builds the double cover model."""
        self.assertEqual(make_cyclic_cover(2, V("1/2,0,0,0"), 2), STANDARD_G2)


class TestPullbackAndNorm(unittest.TestCase):
    """Pullback kernel and the norm identities."""

    def test_kernel_is_generated_by_ell(self):
        """pullback(a) = 0 exactly for a in <ell>."""
        for cov in (STANDARD_G2, SKEW_G2, STANDARD_G3):
            with self.subTest(cov=cov):
                self.assertEqual(covering_kernel(cov), {TorsionVector.zero(cov.rank), cov.ell})
        kernel = covering_kernel(TRIPLE_G2)
        self.assertEqual(kernel, {TRIPLE_G2.ell * i for i in range(3)})

    def test_pullback_examples(self):
        """pullback(ell) and pullback(0) vanish; other 2-torsion pulls back injectively."""
        self.assertTrue(pullback(STANDARD_G2, STANDARD_G2.ell).is_zero())
        self.assertTrue(pullback(STANDARD_G2, V("0,0,0,0")).is_zero())
        images = {pullback(STANDARD_G2, a) for a in enumerate_torsion(4, 2)}
        self.assertEqual(len(images), 8)

    def test_norm_of_pullback(self):
        """norm(pullback(a)) = m * a over J_4(C) and J_3(C)."""
        for cov in (STANDARD_G2, SKEW_G2):
            for a in enumerate_torsion(4, 4):
                self.assertEqual(norm(cov, pullback(cov, a)), a * 2)
        for a in enumerate_torsion(4, 3):
            self.assertEqual(norm(TRIPLE_G2, pullback(TRIPLE_G2, a)), a * 3)

    def test_norm_ignores_prym_part(self):
        """The norm only sees the base part."""
        x = STANDARD_G2.torsion_class(V("1/2,0,0,0"), V("1/3,0"))
        self.assertTrue(norm(STANDARD_G2, x).is_zero())
        self.assertTrue(norm(STANDARD_G2, STANDARD_G2.zero_class()).is_zero())


class TestInvolution(unittest.TestCase):
    """The deck involution of a double cover."""

    def test_fixes_pullbacks(self):
        for a in enumerate_torsion(4, 2):
            x = pullback(STANDARD_G2, a)
            self.assertEqual(involution(STANDARD_G2, x), x)

    @given(classes(STANDARD_G2))
    def test_involutive(self, x):
        """iota^2 = id."""
        self.assertEqual(involution(STANDARD_G2, involution(STANDARD_G2, x)), x)

    @settings(max_examples=50)
    @given(classes(STANDARD_G3))
    def test_norm_identity_genus_three(self, x):
        """pullback(norm(x)) = x + iota(x) in genus 3."""
        cov = STANDARD_G3
        self.assertEqual(pullback(cov, norm(cov, x)), x + involution(cov, x))

    def test_norm_identity_exhaustive(self):
        """pullback(norm(x)) = x + iota(x) over all 2-by-6 torsion representatives, genus 2."""
        for cov in (STANDARD_G2, SKEW_G2):
            for a in enumerate_torsion(4, 2):
                for p in enumerate_torsion(2, 6):
                    x = cov.torsion_class(a, p)
                    self.assertEqual(pullback(cov, norm(cov, x)), x + involution(cov, x))

    def test_requires_double_cover(self):
        with self.assertRaises(NotDoubleCover):
            involution(TRIPLE_G2, TRIPLE_G2.zero_class())
        with self.assertRaises(NotDoubleCover):
            prym_location(TRIPLE_G2, TRIPLE_G2.zero_class())


class TestPrym(unittest.TestCase):
    """Prym components and counts."""

    def test_locations(self):
        """Prym parts sit in Pr0; pullbacks from outside H sit in Pr1."""
        cov = STANDARD_G2
        self.assertEqual(prym_location(cov, cov.torsion_class(V("0,0,0,0"), V("1/5,2/7"))),
                         PrymLocation.PRYM0)
        self.assertEqual(prym_location(cov, pullback(cov, V("0,0,0,1/2"))), PrymLocation.PRYM1)
        self.assertEqual(prym_location(cov, pullback(cov, V("1/4,0,0,0"))),
                         PrymLocation.NOT_IN_PRYM)

    def test_two_torsion_counts(self):
        """|Pr n J_2(B)| = 2^(2g-1) and |Pr0 n J_2(B)| = 2^(2(g-1))."""
        for cov, expected in ((STANDARD_G2, 8), (SKEW_G2, 8), (STANDARD_G3, 32)):
            with self.subTest(cov=cov):
                self.assertEqual(prym_torsion_count(cov, 2), expected)
        two = enumerate_prym_torsion(STANDARD_G2, 2)
        prym0 = [x for x in two if prym_location(STANDARD_G2, x) == PrymLocation.PRYM0]
        self.assertEqual(len(prym0), 4)

    def test_other_counts(self):
        """n = 1 gives the zero class alone; n = 6 gives 72 classes in genus 2."""
        self.assertEqual(prym_torsion_count(STANDARD_G2, 1), 1)
        self.assertEqual(prym_torsion_count(STANDARD_G2, 6), 72)
        self.assertEqual(prym_torsion_count(SKEW_G2, 6), 72)

    def test_components_are_cosets(self):
        """Pr0 is a subgroup and Pr1 = Pr0 + pullback(a0) for a0 outside H."""
        cov = STANDARD_G2
        six = enumerate_prym_torsion(cov, 6)
        prym0 = {x for x in six if prym_location(cov, x) == PrymLocation.PRYM0}
        prym1 = {x for x in six if prym_location(cov, x) == PrymLocation.PRYM1}
        self.assertEqual(len(prym0), 36)
        for x in prym0:
            for y in prym0:
                self.assertIn(x - y, prym0)
        shift = pullback(cov, V("0,0,0,1/2"))
        self.assertEqual({x + shift for x in prym0}, prym1)

    def test_intersection_with_pullbacks(self):
        """Pr n pi^* J(C) = pi^* J_2(C), the 2-torsion of the Prym."""
        for cov, size in ((STANDARD_G2, 8), (SKEW_G2, 8)):
            with self.subTest(cov=cov):
                meet = prym_pullback_intersection(cov)
                self.assertEqual(len(meet), size)
                self.assertIn(cov.zero_class(), meet)
                self.assertEqual(meet, {pullback(cov, a) for a in enumerate_torsion(4, 2)})
                self.assertEqual(meet, set(enumerate_prym_torsion(cov, 2)))


class TestPullbackImage(unittest.TestCase):
    """Membership in the image of pullback."""

    def test_examples(self):
        cov = STANDARD_G2
        self.assertTrue(in_pullback_image(cov, pullback(cov, V("1/3,1/4,0,1/2"))))
        self.assertFalse(in_pullback_image(cov, cov.torsion_class(V("0,0,0,0"), V("1/3,0"))))
        self.assertTrue(in_pullback_image(cov, cov.torsion_class(V("0,0,0,1/2"), V("1/2,0"))))

    def test_agrees_with_two_torsion_prym_part(self):
        """For a double cover, x is a pullback iff 2 * prym = 0 on its canonical form."""
        for cov in (STANDARD_G2, SKEW_G2):
            for a in enumerate_torsion(4, 2):
                for p in enumerate_torsion(2, 4):
                    x = cov.torsion_class(a, p)
                    self.assertEqual(in_pullback_image(cov, x), (x.prym * 2).is_zero())

    def test_split_summands(self):
        """The pushforward of pullback(a) splits as a + (a + ell)."""
        cov = STANDARD_G2
        a, b = pushforward_summands(cov, pullback(cov, V("0,1/2,0,0")))
        self.assertEqual({a, b}, {V("0,1/2,0,0"), V("1/2,1/2,0,0")})


class TestPushforwardDeterminant(unittest.TestCase):

    def test_values(self):
        """det pi_* R = ell + norm(R)."""
        cov = STANDARD_G2
        self.assertEqual(pushforward_determinant(cov, cov.zero_class()), cov.ell)
        for x in enumerate_prym_torsion(cov, 6):
            self.assertEqual(pushforward_determinant(cov, x), cov.ell)
        a = V("1/4,0,1/3,0")
        self.assertEqual(pushforward_determinant(cov, pullback(cov, a)), cov.ell + a * 2)


class TestCanonicalForm(unittest.TestCase):

    @settings(max_examples=40)
    @given(classes(STANDARD_G2))
    def test_constant_on_orbits(self, x):
        """Every representative of the orbit canonicalizes to the same class."""
        for base, prym in x.orbit():
            self.assertEqual(STANDARD_G2.torsion_class(base, prym), x)
        self.assertEqual(STANDARD_G2.torsion_class(x.base, x.prym).base, x.base)


if __name__ == '__main__':
    unittest.main()
