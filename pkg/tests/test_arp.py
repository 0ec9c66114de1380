"""
Tests for the recursive procedure on boxes
"""

import unittest

import numpy as np

from ameso.arp import (
    ArpConfig,
    ArpMemo,
    ConditionalProblem,
    conditional_value,
    flat_projection,
    solve_arp,
    solve_conditional,
    verify_property5,
)
from ameso.errors import ArgumentError, DomainError, StartOutsideDomainError
from ameso.lattice import BoxDomain, ExplicitSet, IntervalDomain, IntPoint
from ameso.models import (
    EXAMPLE6_DOMAIN,
    convex_table,
    example5_table,
    example6_objective,
    random_box,
    random_table,
)
from ameso.oracle import Objective, brute_force_min, minimal_C
from ameso.solver1d import Solve1DConfig, solve_1d

from tests.integration.golden_cases import SURFACE_CASE


class TestConditionalProblem(unittest.TestCase):

    def setUp(self):
        self.box = BoxDomain.from_bounds([(0, 3), (0, 4), (1, 2)])
        self.f = Objective(lambda p: p[0] + 10 * p[1] + 100 * p[2], exact=True)

    def test_free_axes_and_domain(self):
        p = ConditionalProblem(self.box, {1: 2}, self.f)
        self.assertEqual(p.free_axes, (0, 2))
        self.assertEqual(p.conditional_domain(), BoxDomain.from_bounds([(0, 3), (1, 2)]))
        self.assertEqual(p.embed((3, 1)), IntPoint.of(3, 2, 1))

    def test_fixed_value_outside_axis(self):
        with self.assertRaises(ArgumentError):
            ConditionalProblem(self.box, {1: 7}, self.f)
        with self.assertRaises(ArgumentError):
            ConditionalProblem(self.box, {5: 0}, self.f)

    def test_all_fixed_is_the_point_value(self):
        p = ConditionalProblem(self.box, {0: 2, 1: 3, 2: 1}, self.f)
        self.assertIsNone(p.conditional_domain())
        self.assertEqual(conditional_value(p), 2 + 30 + 100)

    def test_conditional_minimum(self):
        p = ConditionalProblem(self.box, {2: 2}, self.f)
        self.assertEqual(conditional_value(p, ArpConfig(C=0)), 200)
        report = solve_conditional(p, ArpConfig(C=0))
        self.assertEqual(report.argmin, IntPoint.of(0, 0, 2))


class TestSolveArp(unittest.TestCase):

    def test_one_dimensional_box_matches_solve_1d(self):
        d = IntervalDomain(1, 31)
        arp = solve_arp(d, example5_table(), ArpConfig(C=7, start_points={0: 13}))
        one = solve_1d(d, example5_table(), Solve1DConfig(C=7, start=13))
        self.assertEqual(arp.top, one)
        self.assertEqual(arp.total_evaluations, one.evaluations)
        self.assertEqual(arp.argmin, one.argmin)

    def test_non_box_rejected(self):
        s = ExplicitSet(frozenset({IntPoint.of(0, 0), IntPoint.of(1, 1)}))
        with self.assertRaises(DomainError):
            solve_arp(s, Objective(lambda p: 0))

    def test_bad_axis_order(self):
        d = BoxDomain.from_bounds([(0, 2), (0, 2)])
        with self.assertRaises(ArgumentError):
            solve_arp(d, Objective(lambda p: 0), ArpConfig(axis_order=(0, 0)))

    def test_start_outside(self):
        d = BoxDomain.from_bounds([(0, 2), (0, 2)])
        with self.assertRaises(StartOutsideDomainError):
            solve_arp(d, Objective(lambda p: 0), ArpConfig(start_points={1: 9}))

    def test_surface(self):
        case = SURFACE_CASE
        f = example6_objective()
        report = solve_arp(EXAMPLE6_DOMAIN, f,
                           ArpConfig(C=case["C"], start_points={1: case["start"]}))
        self.assertEqual(report.argmin, IntPoint(case["argmin"]))
        self.assertAlmostEqual(report.min_value, case["min_value"], delta=case["tolerance"])
        self.assertEqual(report.top.visited_range, case["top_visited"])
        values = report.top.values
        for x2, expected in case["conditional"].items():
            self.assertAlmostEqual(values[x2], expected, delta=case["tolerance"])
        self.assertEqual(report.top.left_phase.value, "threshold")
        self.assertEqual(report.top.stop_right.value, "exhausted")

    def test_surface_matches_grid_minimum(self):
        f = example6_objective()
        report = solve_arp(EXAMPLE6_DOMAIN, f, ArpConfig(C=1, start_points={1: 80}))
        brute = brute_force_min(EXAMPLE6_DOMAIN, example6_objective())
        self.assertAlmostEqual(report.min_value, brute.min_value, delta=1e-9)
        self.assertLess(report.total_evaluations, len(EXAMPLE6_DOMAIN))

    def test_memoization_is_transparent(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            d = random_box(rng, 2, 8)
            f = random_table(d, rng)
            C = minimal_C(d, f).minimal_C
            on = solve_arp(d, f, ArpConfig(C=C, memoize=True))
            off = solve_arp(d, f, ArpConfig(C=C, memoize=False))
            self.assertEqual(on.argmin, off.argmin)
            self.assertEqual(on.min_value, off.min_value)

    def test_solve_conditional_accepts_free_axis_order(self):
        d = BoxDomain.from_bounds([(0, 3), (0, 4), (1, 2)])
        f = Objective(lambda p: (p[0] - 2) ** 2 + (p[1] - 1) ** 2 + p[2], exact=True)
        p = ConditionalProblem(d, {2: 1}, f)
        full = solve_conditional(p, ArpConfig(C=0, axis_order=(2, 1, 0)))
        free = solve_conditional(p, ArpConfig(C=0, axis_order=(1, 0)))
        self.assertEqual(full.argmin, IntPoint.of(2, 1, 1))
        self.assertEqual(free.argmin, full.argmin)
        self.assertEqual(full.axis_order, (1, 0))
        self.assertEqual(full.trace.axis, 0)

    def test_evaluation_accounting(self):
        rng = np.random.default_rng(8)
        for dim in (1, 2, 3):
            d = random_box(rng, dim, 6)
            f = random_table(d, rng)
            C = minimal_C(d, f).minimal_C
            f.reset_count()
            report = solve_arp(d, f, ArpConfig(C=C))
            self.assertEqual(report.total_evaluations, f.eval_count)
            self.assertEqual(report.total_evaluations, report.leaf_evaluations())
            self.assertEqual(len(report.per_level_visited), dim)

    def test_axis_order_changes_the_sweep_not_the_minimum(self):
        rng = np.random.default_rng(12)
        for _ in range(15):
            d = random_box(rng, 3, 5)
            f = random_table(d, rng)
            C = minimal_C(d, f).minimal_C
            best = brute_force_min(d, f).min_value
            for order in ((0, 1, 2), (2, 0, 1), (1, 2, 0)):
                report = solve_arp(d, f, ArpConfig(C=C, axis_order=order))
                self.assertEqual(report.min_value, best)
                self.assertEqual(report.trace.axis, order[-1])

    def test_report_min_is_value_at_argmin(self):
        rng = np.random.default_rng(13)
        d = random_box(rng, 2, 10)
        f = random_table(d, rng)
        report = solve_arp(d, f, ArpConfig(C=minimal_C(d, f).minimal_C))
        self.assertTrue(d.contains(report.argmin))
        self.assertEqual(f(report.argmin), report.min_value)

    def test_flat_projection(self):
        rng = np.random.default_rng(14)
        d = random_box(rng, 2, 7)
        f = random_table(d, rng)
        report = solve_arp(d, f, ArpConfig(C=minimal_C(d, f).minimal_C))
        rows = flat_projection(report)
        self.assertEqual([r[1] for r in rows], list(report.top.visited))
        for axis, l, value in rows:
            self.assertEqual(axis, 1)
            p = ConditionalProblem(d, {1: l}, f)
            self.assertEqual(value, brute_force_min(p.conditional_domain(),
                                                    p.conditional_objective()).min_value)

    def test_trace_tree_dict(self):
        d = BoxDomain.from_bounds([(0, 3), (0, 3)])
        f = Objective(lambda p: (p[0] - 1) ** 2 + (p[1] - 2) ** 2, exact=True)
        report = solve_arp(d, f, ArpConfig(C=0))
        tree = report.to_dict()["trace"]
        self.assertEqual(tree["axis"], 1)
        self.assertIsNone(tree["fixed_value"])
        self.assertEqual([c["fixed_value"] for c in tree["children"]], list(report.top.visited))
        self.assertTrue(all(c["axis"] == 0 for c in tree["children"]))
        self.assertEqual(report.argmin, IntPoint.of(1, 2))


class TestArpMemo(unittest.TestCase):
    """Conditional minima shared across calls on one box and objective"""

    def setUp(self):
        rng = np.random.default_rng(21)
        self.d = random_box(rng, 2, 8)
        self.f = random_table(self.d, rng)
        self.C = minimal_C(self.d, self.f).minimal_C

    def cached_nodes(self, report):
        return [n for n in report.trace.walk() if n.cached]

    def test_slices_then_box_reuses_every_slice(self):
        memo = ArpMemo()
        for l in self.d.axes[1].values():
            conditional_value(ConditionalProblem(self.d, {1: l}, self.f),
                              ArpConfig(C=self.C), memo=memo)
        shared = solve_arp(self.d, self.f, ArpConfig(C=self.C), memo=memo)
        fresh = solve_arp(self.d, self.f, ArpConfig(C=self.C))

        self.assertEqual(shared.argmin, fresh.argmin)
        self.assertEqual(shared.min_value, fresh.min_value)
        self.assertGreater(fresh.total_evaluations, 0)
        self.assertEqual(shared.total_evaluations, 0)
        self.assertEqual(len(self.cached_nodes(shared)), len(shared.top.visited))
        self.assertEqual(self.cached_nodes(fresh), [])
        self.assertEqual(shared.leaf_evaluations(), shared.total_evaluations)

    def test_partial_reuse_lowers_the_count(self):
        memo = ArpMemo()
        before = self.f.eval_count
        conditional_value(ConditionalProblem(self.d, {1: self.d.axes[1].midpoint}, self.f),
                          ArpConfig(C=self.C), memo=memo)
        spent = self.f.eval_count - before
        shared = solve_arp(self.d, self.f, ArpConfig(C=self.C), memo=memo)
        fresh = solve_arp(self.d, self.f, ArpConfig(C=self.C))
        self.assertEqual(memo.hits, 1)
        self.assertEqual(shared.min_value, fresh.min_value)
        self.assertEqual(shared.total_evaluations + spent, fresh.total_evaluations)
        self.assertEqual(shared.total_evaluations, shared.leaf_evaluations())

    def test_repeated_solve_is_served_whole(self):
        memo = ArpMemo()
        first = solve_arp(self.d, self.f, ArpConfig(C=self.C), memo=memo)
        again = solve_arp(self.d, self.f, ArpConfig(C=self.C), memo=memo)
        self.assertFalse(first.trace.cached)
        self.assertTrue(again.trace.cached)
        self.assertEqual(again.total_evaluations, 0)
        self.assertEqual(again.argmin, first.argmin)

    def test_different_C_or_start_misses(self):
        memo = ArpMemo()
        solve_arp(self.d, self.f, ArpConfig(C=self.C), memo=memo)
        solve_arp(self.d, self.f, ArpConfig(C=self.C + 1), memo=memo)
        solve_arp(self.d, self.f, ArpConfig(C=self.C, start_points={0: self.d.axes[0].x_s}),
                  memo=memo)
        self.assertEqual(memo.hits, 0)

    def test_memoize_off_ignores_the_memo(self):
        memo = ArpMemo()
        solve_arp(self.d, self.f, ArpConfig(C=self.C, memoize=False), memo=memo)
        self.assertEqual(len(memo), 0)

    def test_memo_belongs_to_one_objective(self):
        memo = ArpMemo()
        solve_arp(self.d, self.f, ArpConfig(C=self.C), memo=memo)
        with self.assertRaises(ArgumentError):
            solve_arp(self.d, Objective(lambda p: 0, exact=True), ArpConfig(C=0), memo=memo)


class TestProperty5(unittest.TestCase):

    def test_random_tables(self):
        rng = np.random.default_rng(15)
        for _ in range(10):
            d = random_box(rng, 2, 6)
            f = random_table(d, rng)
            self.assertTrue(verify_property5(d, f, [1]))
            self.assertTrue(verify_property5(d, f, [0]))

    def test_separable_convex(self):
        rng = np.random.default_rng(16)
        d = BoxDomain.from_bounds([(0, 4), (0, 5), (0, 3)])
        f = convex_table(d, rng)
        self.assertEqual(minimal_C(d, f).minimal_C, 0)
        self.assertTrue(verify_property5(d, f, [0, 2]))

    def test_constant(self):
        d = BoxDomain.from_bounds([(0, 3), (0, 3)])
        self.assertTrue(verify_property5(d, Objective(lambda p: 1, exact=True), [0]))


if __name__ == "__main__":
    unittest.main()
