"""
Solver Benchmark
Runs the sweep solvers against the brute-force oracle on generated instance
suites and aggregates evaluation counts and agreement. Instances are generated
up front from one seed, so rows come out identical for any worker count.
"""

import logging
import queue
import threading
from dataclasses import astuple, dataclass, field, fields
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .config import DEFAULT_SETTINGS, Settings
from .errors import ArgumentError
from .lattice import Domain
from .arp import ArpConfig, solve_arp
from .models import (
    example5_table,
    knapsack_domain,
    knapsack_objective,
    random_box,
    random_knapsack,
    random_table,
)
from .oracle import Objective, brute_force_min, minimal_C

logger = logging.getLogger(__name__)


@dataclass
class BenchInstance:
    """One solver run to compare against brute force"""
    index: int
    name: str
    domain: Domain
    make_objective: Callable[[], Objective]
    C: Optional[float] = None  # None: use the oracle's minimal C
    start: Optional[Dict[int, int]] = None


@dataclass
class BenchRow:
    instance: str
    domain_size: int
    minimal_C: float
    C: float
    solver_evaluations: int
    brute_force_evaluations: int
    solver_min: float
    brute_force_min: float
    agree: bool

    @classmethod
    def header(cls) -> List[str]:
        return [f.name for f in fields(cls)]

    def as_row(self) -> list:
        return list(astuple(self))


@dataclass
class BenchSummary:
    rows: List[BenchRow] = field(default_factory=list)

    @property
    def agreement_rate(self) -> float:
        return sum(r.agree for r in self.rows) / len(self.rows) if self.rows else 0.0

    @property
    def mean_solver_evaluations(self) -> float:
        return sum(r.solver_evaluations for r in self.rows) / len(self.rows) if self.rows else 0.0

    @property
    def mean_brute_force_evaluations(self) -> float:
        if not self.rows:
            return 0.0
        return sum(r.brute_force_evaluations for r in self.rows) / len(self.rows)

    @property
    def failed(self) -> List[str]:
        return [r.instance for r in self.rows if not r.agree]


def example5_suite(C: float = 7) -> List[BenchInstance]:
    """The 31-point table from every start point"""
    domain = example5_table().domain
    return [BenchInstance(i, f"example5[start={l0}]", domain, example5_table, C, {0: l0})
            for i, l0 in enumerate(range(1, 32))]


def knapsack_suite(rng: np.random.Generator, count: int = 20,
                   W: Optional[int] = 100) -> List[BenchInstance]:
    """Random valid shipping instances solved with C = c3"""
    suite = []
    for i in range(count):
        inst = random_knapsack(rng, W)
        suite.append(BenchInstance(
            i, f"knapsack[W={inst.W},w={list(inst.w)},c={list(inst.c)}]",
            knapsack_domain(inst), lambda inst=inst: knapsack_objective(inst), inst.c[2],
        ))
    return suite


def random_suite(rng: np.random.Generator, count: int = 30,
                 max_side: int = 12) -> List[BenchInstance]:
    """Random integer tables on boxes of dimension 1 to 3, C from the oracle"""
    suite = []
    for i in range(count):
        dimension = 1 + i % 3
        side = max_side if dimension < 3 else min(max_side, 6)
        domain = random_box(rng, dimension, side)
        table = random_table(domain, rng, name=f"random{i}")
        suite.append(BenchInstance(i, f"random[{i},{domain}]", domain, table.copy))
    return suite


SUITES = ("example5", "knapsack", "random")


def build_suite(name: str, seed: int = 0, count: Optional[int] = None,
                C: Optional[float] = None, W: Optional[int] = None) -> List[BenchInstance]:
    rng = np.random.default_rng(seed)
    if name == "example5":
        return example5_suite(7 if C is None else C)
    if name == "knapsack":
        return knapsack_suite(rng, count or 20, 100 if W is None else W)
    if name == "random":
        return random_suite(rng, count or 30)
    raise ArgumentError(f"unknown bench suite {name!r}; choose from {', '.join(SUITES)}")


class BenchRunner:
    """Runs instances on worker threads and returns rows in instance order"""

    def __init__(self, workers: int = 1, settings: Optional[Settings] = None):
        """
        Args:
            workers: Number of worker threads; 1 runs inline
            settings: Oracle caps for the minimal C and brute force passes
        """
        if workers < 1:
            raise ArgumentError("workers must be at least 1")
        self.workers = workers
        self.settings = settings or DEFAULT_SETTINGS

    def run_instance(self, inst: BenchInstance) -> BenchRow:
        # fresh objective per pass so counters never mix
        cert = minimal_C(inst.domain, inst.make_objective(), self.settings)
        C = cert.minimal_C if inst.C is None else inst.C
        f = inst.make_objective()
        f.reset_count()
        report = solve_arp(inst.domain, f, ArpConfig(C=C, start_points=inst.start,
                                                     known_minimal_C=cert.minimal_C),
                           self.settings)
        brute = brute_force_min(inst.domain, inst.make_objective())
        tol = 0 if f.exact else self.settings.real_tolerance
        agree = abs(report.min_value - brute.min_value) <= tol
        if not agree:
            logger.warning("%s: solver min %s, brute force min %s",
                           inst.name, report.min_value, brute.min_value)
        return BenchRow(
            instance=inst.name,
            domain_size=len(inst.domain),
            minimal_C=cert.minimal_C,
            C=C,
            solver_evaluations=report.total_evaluations,
            brute_force_evaluations=brute.evaluations,
            solver_min=report.min_value,
            brute_force_min=brute.min_value,
            agree=agree,
        )

    def run(self, suite: List[BenchInstance]) -> BenchSummary:
        if self.workers == 1 or len(suite) < 2:
            return BenchSummary([self.run_instance(inst) for inst in suite])

        jobs: "queue.Queue[Optional[BenchInstance]]" = queue.Queue()
        results: List[Tuple[int, BenchRow]] = []
        errors: List[BaseException] = []
        lock = threading.Lock()

        def worker() -> None:
            while True:
                inst = jobs.get()
                if inst is None:
                    return
                try:
                    row = self.run_instance(inst)
                    with lock:
                        results.append((inst.index, row))
                except Exception as e:  # surfaced after join
                    with lock:
                        errors.append(e)

        threads = [threading.Thread(target=worker, name=f"BenchWorker-{i + 1}")
                   for i in range(min(self.workers, len(suite)))]
        for t in threads:
            t.start()
        for inst in suite:
            jobs.put(inst)
        for _ in threads:
            jobs.put(None)
        for t in threads:
            t.join()
        if errors:
            raise errors[0]

        results.sort(key=lambda x: x[0])
        return BenchSummary([row for _, row in results])


def run_bench(name: str, seed: int = 0, workers: int = 1, count: Optional[int] = None,
              C: Optional[float] = None, W: Optional[int] = None,
              settings: Optional[Settings] = None) -> BenchSummary:
    suite = build_suite(name, seed, count, C, W)
    logger.info("bench %s: %d instances, seed %d, %d worker(s)", name, len(suite), seed, workers)
    summary = BenchRunner(workers, settings).run(suite)
    logger.info("bench %s: agreement %.3f, mean solver evaluations %.1f of %.1f",
                name, summary.agreement_rate, summary.mean_solver_evaluations,
                summary.mean_brute_force_evaluations)
    return summary
