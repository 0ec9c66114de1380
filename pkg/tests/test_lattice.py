"""
Tests for lattice points, midpoints and domain types
"""

import unittest

import numpy as np

from ameso.errors import ArgumentError, DimensionMismatchError, DomainError
from ameso.lattice import (
    BoxDomain,
    ExplicitSet,
    IntervalDomain,
    IntPoint,
    as_box,
    contains,
    enumerate_domain,
    is_interval,
    midpoint_ceil,
    midpoint_floor,
)


def pts(*coords):
    return [IntPoint(tuple(c)) if isinstance(c, tuple) else IntPoint((c,)) for c in coords]


class TestMidpoints(unittest.TestCase):

    def test_ceil_of_escaping_pair(self):
        """(3,1),(12,4) has ceil midpoint (8,3) and floor midpoint (7,2)"""
        self.assertEqual(midpoint_ceil((3, 1), (12, 4)), IntPoint.of(8, 3))
        self.assertEqual(midpoint_floor((3, 1), (12, 4)), IntPoint.of(7, 2))

    def test_floor_of_second_escaping_pair(self):
        self.assertEqual(midpoint_floor((8, 1), (2, 4)), IntPoint.of(5, 2))

    def test_identity(self):
        self.assertEqual(midpoint_ceil(5, 5), IntPoint.of(5))
        self.assertEqual(midpoint_floor(5, 5), IntPoint.of(5))

    def test_negative_sums_round_mathematically(self):
        self.assertEqual(midpoint_ceil(0, -3), IntPoint.of(-1))
        self.assertEqual(midpoint_floor(0, -3), IntPoint.of(-2))

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            midpoint_ceil((1, 2), (1, 2, 3))
        with self.assertRaises(DimensionMismatchError):
            midpoint_floor(IntPoint.of(1), IntPoint.of(1, 1))

    def test_random_identities(self):
        """floor + ceil = x + y, floor <= ceil within the coordinate range, symmetric"""
        rng = np.random.default_rng(11)
        for _ in range(2000):
            n = int(rng.integers(1, 4))
            x = IntPoint(tuple(int(v) for v in rng.integers(-1000, 1000, size=n)))
            y = IntPoint(tuple(int(v) for v in rng.integers(-1000, 1000, size=n)))
            lo, hi = midpoint_floor(x, y), midpoint_ceil(x, y)
            self.assertEqual(lo + hi, x + y)
            for i in range(n):
                self.assertLessEqual(min(x[i], y[i]), lo[i])
                self.assertLessEqual(lo[i], hi[i])
                self.assertLessEqual(hi[i], max(x[i], y[i]))
            self.assertEqual(hi, midpoint_ceil(y, x))
            self.assertEqual(lo, midpoint_floor(y, x))


class TestDomains(unittest.TestCase):

    def test_interval_must_be_nontrivial(self):
        with self.assertRaises(ArgumentError):
            IntervalDomain(3, 3)
        with self.assertRaises(ArgumentError):
            IntervalDomain(4, 1)

    def test_contains(self):
        box = BoxDomain.from_bounds([(1, 100), (1, 100)])
        self.assertTrue(contains(box, (97, 97)))
        self.assertFalse(contains(IntervalDomain(-20, 20), 21))
        self.assertTrue(contains(IntervalDomain(-20, 20), -20))
        s = ExplicitSet(frozenset(pts((3, 1), (12, 4))))
        self.assertFalse(contains(s, (7, 2)))
        self.assertIn(IntPoint.of(3, 1), s)

    def test_contains_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            contains(IntervalDomain(0, 3), (1, 1))

    def test_enumerate_lexicographic(self):
        self.assertEqual(list(enumerate_domain(IntervalDomain(1, 3))), pts(1, 2, 3))
        self.assertEqual(list(enumerate_domain(BoxDomain.from_bounds([(0, 1), (0, 1)]))),
                         pts((0, 0), (0, 1), (1, 0), (1, 1)))
        s = ExplicitSet(frozenset(pts((8, 1), (2, 4))))
        self.assertEqual(list(enumerate_domain(s)), pts((2, 4), (8, 1)))

    def test_sizes_and_bounds(self):
        box = BoxDomain.from_bounds([(0, 2), (-1, 3)])
        self.assertEqual(len(box), 15)
        self.assertEqual(len(list(box)), 15)
        self.assertEqual(box.bounds(), [(0, 2), (-1, 3)])
        self.assertEqual(IntervalDomain(-20, 20).midpoint, 0)
        self.assertEqual(IntervalDomain(1, 100).midpoint, 51)

    def test_explicit_set_rules(self):
        with self.assertRaises(ArgumentError):
            ExplicitSet(frozenset())
        with self.assertRaises(DimensionMismatchError):
            ExplicitSet(frozenset(pts(1, (1, 2))))

    def test_string_forms(self):
        self.assertEqual(str(IntervalDomain(-2, 5)), "interval(-2,5)")
        self.assertEqual(str(BoxDomain.from_bounds([(1, 2), (3, 4)])), "box([1,2],[3,4])")
        self.assertEqual(str(ExplicitSet(frozenset(pts((8, 1), (2, 4))))), "set{(2,4),(8,1)}")

    def test_as_box(self):
        self.assertEqual(as_box(IntervalDomain(0, 4)).dimension, 1)
        with self.assertRaises(DomainError):
            as_box(ExplicitSet(frozenset(pts(1, 2))))


class TestIsInterval(unittest.TestCase):

    def test_examples(self):
        self.assertTrue(is_interval(ExplicitSet(frozenset(pts(*range(1, 32))))))
        self.assertFalse(is_interval(ExplicitSet(frozenset(pts(1, 2, 4)))))
        self.assertTrue(is_interval(ExplicitSet(frozenset(pts(-2, -1, 0)))))

    def test_needs_one_dimension(self):
        with self.assertRaises(DimensionMismatchError):
            is_interval(ExplicitSet(frozenset(pts((1, 1), (1, 2)))))

    def test_needs_two_points(self):
        with self.assertRaises(ArgumentError):
            is_interval(ExplicitSet(frozenset(pts(4))))


if __name__ == "__main__":
    unittest.main()
