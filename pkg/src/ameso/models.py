"""
Built-in Models
Worked-example objectives (quartic, the 31-point table, the exponential
surface), the three-option shipping cost with its instance validation, the
midpoint-set examples, and random generators used by tests and bench.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np

from .errors import ArgumentError, DomainError
from .lattice import BoxDomain, Domain, ExplicitSet, IntervalDomain, IntPoint, PointLike, as_point
from .oracle import Objective

logger = logging.getLogger(__name__)


class TabulatedObjective(Objective):
    """
    Objective backed by a value table over a finite domain

    Args:
        domain: The domain the table covers
        values: One value per domain point, keyed by point
        exact: Integer-valued table; inferred when omitted
    """

    def __init__(self, domain: Domain, values: Mapping[PointLike, float],
                 exact: Optional[bool] = None, name: str = "table"):
        table: Dict[IntPoint, float] = {}
        for key, value in values.items():
            p = as_point(key)
            if p in table:
                raise ArgumentError(f"duplicate table entry for {p}")
            table[p] = value
        missing = [p for p in domain if p not in table]
        if missing:
            raise ArgumentError(f"table has no value for {len(missing)} domain point(s), e.g. {missing[0]}")
        if len(table) != len(domain):
            extra = next(p for p in table if not domain.contains(p))
            raise ArgumentError(f"table has a value for {extra}, which is outside {domain}")
        if exact is None:
            exact = all(isinstance(v, (int, np.integer)) and not isinstance(v, bool)
                        for v in table.values())
        self.domain = domain
        self.values = table
        super().__init__(self._lookup, lower_bound_declared=True, exact=exact, name=name)

    def _lookup(self, p: IntPoint) -> float:
        try:
            return self.values[p]
        except KeyError:
            raise DomainError(f"{p} is outside the tabulated domain {self.domain}") from None

    @classmethod
    def from_sequence(cls, domain: Domain, values, name: str = "table") -> "TabulatedObjective":
        """Values listed in the domain's lexicographic order"""
        values = list(values)
        if len(values) != len(domain):
            raise ArgumentError(f"{len(values)} values for a domain of {len(domain)} points")
        return cls(domain, dict(zip(domain, values)), name=name)

    def as_sequence(self) -> list:
        return [self.values[p] for p in self.domain]

    def copy(self) -> "TabulatedObjective":
        """Same table with its own evaluation counter"""
        return TabulatedObjective(self.domain, self.values, self.exact, self.name)


# Worked examples

EXAMPLE3_DOMAIN = IntervalDomain(-20, 20)

EXAMPLE5_VALUES = (7, 9, 7, 8, 7, 8, 9, 8, 7, 8, 9, 8, 7, 8, 6, 7,
                   4, 5, 6, 7, 7, 6, 7, 8, 9, 10, 11, 9, 8, 7, 8)

EXAMPLE6_DOMAIN = BoxDomain.from_bounds([(1, 100), (1, 100)])


def quartic(x: int) -> float:
    """x^4/4 - x^3 + x"""
    return x ** 4 / 4 - x ** 3 + x


def example3_objective() -> Objective:
    return Objective(lambda p: quartic(p.coords[0]), name="example3")


def example5_table() -> TabulatedObjective:
    return TabulatedObjective.from_sequence(IntervalDomain(1, 31), EXAMPLE5_VALUES, name="example5")


def example6_surface(x1: int, x2: int) -> float:
    if x1 <= 0 or x2 <= 0:
        raise ArgumentError(f"example6 surface is defined for positive coordinates, got ({x1},{x2})")
    return 88 * math.exp(1 / x1) + 99 * math.exp(2 / x2) + abs(math.sin(x1 * x2)) / 2


def example6_objective() -> Objective:
    return Objective(lambda p: example6_surface(*p.coords), name="example6")


_EXAMPLE2_RULES: Dict[str, Tuple[Callable[[int, int], bool], bool]] = {
    "A1": (lambda a, b: b - a >= 3 and b <= 10, True),
    "A2": (lambda a, b: b - a >= 0 and b <= 10 and a <= 5, True),
    "A3": (lambda a, b: b - a <= 10, True),
    "A4": (lambda a, b: 3 * b - a >= 0, False),
    "A5": (lambda a, b: a + 2 * b >= 10, False),
}


def example2_set(name: str, bound: int = 12) -> ExplicitSet:
    """
    One of the planar example sets A1..A5, cut to the square [1, bound]^2.
    A1-A3 stay closed under midpoints after the cut; A4 and A5 keep their
    escaping pairs ((3,1),(12,4) and (8,1),(2,4)) as long as bound >= 12.
    """
    if name not in _EXAMPLE2_RULES:
        raise ArgumentError(f"unknown example set {name!r}; choose from {sorted(_EXAMPLE2_RULES)}")
    if bound < 12:
        raise ArgumentError("bound must be at least 12 to keep the example witnesses")
    rule, _ = _EXAMPLE2_RULES[name]
    pts = [IntPoint((a, b)) for a in range(1, bound + 1) for b in range(1, bound + 1) if rule(a, b)]
    return ExplicitSet(frozenset(pts))


def example2_expected_ameso(name: str) -> bool:
    return _EXAMPLE2_RULES[name][1]


# Shipping cost with three container options

@dataclass(frozen=True)
class KnapsackInstance:
    """
    Ship W units using containers of capacity w[i] costing c[i]. Larger
    containers cost more but less per unit; options 1 and 2 are limited to
    z_i * w_i <= W / 2, option 3 covers the rest.
    """
    W: int
    w: Tuple[int, int, int]
    c: Tuple[int, int, int]

    def __post_init__(self):
        w = tuple(int(v) for v in self.w)
        c = tuple(int(v) for v in self.c)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "W", int(self.W))
        if len(w) != 3 or len(c) != 3:
            raise ArgumentError("a knapsack instance has exactly three options")
        if self.W <= 0 or min(w) <= 0 or min(c) <= 0:
            raise ArgumentError("W, capacities and costs must be positive integers")
        if not w[0] < w[1] < w[2]:
            raise ArgumentError(f"capacities must increase strictly, got {w}")
        if not c[0] < c[1] < c[2]:
            raise ArgumentError(f"costs must increase strictly, got {c}")
        # c1/w1 > c2/w2 > c3/w3 by cross-multiplication
        if not (c[0] * w[1] > c[1] * w[0] and c[1] * w[2] > c[2] * w[1]):
            raise ArgumentError(f"unit costs must decrease strictly, got c={c}, w={w}")
        if self.W < 2 * w[1]:
            raise ArgumentError(
                f"W={self.W} < 2*w2={2 * w[1]} leaves option 2 a single feasible value"
            )

    def to_dict(self) -> dict:
        return {"W": self.W, "w": list(self.w), "c": list(self.c)}


def knapsack_domain(inst: KnapsackInstance) -> BoxDomain:
    return BoxDomain.from_bounds([(0, inst.W // (2 * inst.w[0])), (0, inst.W // (2 * inst.w[1]))])


def knapsack_cost(inst: KnapsackInstance, z1: int, z2: int) -> int:
    """c1 z1 + c2 z2 + c3 ceil((W - w1 z1 - w2 z2) / w3), all integer"""
    if not knapsack_domain(inst).contains((z1, z2)):
        raise ArgumentError(f"({z1},{z2}) is outside the feasible box {knapsack_domain(inst)}")
    residual = inst.W - inst.w[0] * z1 - inst.w[1] * z2
    return inst.c[0] * z1 + inst.c[1] * z2 + inst.c[2] * -(-residual // inst.w[2])


def knapsack_objective(inst: KnapsackInstance) -> Objective:
    return Objective(lambda p: knapsack_cost(inst, *p.coords), exact=True,
                     name=f"knapsack(W={inst.W})")


def knapsack_midpoint_witness(inst: KnapsackInstance) -> Optional[Tuple[IntPoint, IntPoint]]:
    """First pair (lexicographic) whose floor/ceil midpoint values exceed the endpoint sum"""
    d = knapsack_domain(inst)
    points = list(d)
    cost = {p: knapsack_cost(inst, *p.coords) for p in points}
    for i, x in enumerate(points):
        for y in points[i + 1:]:
            s = [a + b for a, b in zip(x.coords, y.coords)]
            lo = IntPoint(tuple(v // 2 for v in s))
            hi = IntPoint(tuple(-(-v // 2) for v in s))
            if cost[lo] + cost[hi] > cost[x] + cost[y]:
                return x, y
    return None


def lemma5_checks(x1: float, x2: float) -> bool:
    """
    Floor/ceil chain used by the shipping-cost certificate:
    ceil(x1) + ceil(x2) <= ceil(x1 + x2) + 1 and
    floor(x1) + floor(x2) <= floor((x1+x2)/2) + ceil((x1+x2)/2) <= ceil(x1) + ceil(x2).
    For integers the middle term also equals x1 + x2.
    """
    c1, c2 = math.ceil(x1), math.ceil(x2)
    f1, f2 = math.floor(x1), math.floor(x2)
    half = (x1 + x2) / 2
    middle = math.floor(half) + math.ceil(half)
    ok = c1 + c2 <= math.ceil(x1 + x2) + 1 and f1 + f2 <= middle <= c1 + c2
    if isinstance(x1, int) and isinstance(x2, int):
        s = x1 + x2
        ok = ok and s // 2 - (-s // 2) == s
    return ok


# Random families

def random_table(domain: Domain, rng: np.random.Generator, low: int = 0, high: int = 20,
                 name: str = "random") -> TabulatedObjective:
    """Integer values drawn uniformly from [low, high]"""
    values = rng.integers(low, high + 1, size=len(domain))
    return TabulatedObjective(domain, {p: int(v) for p, v in zip(domain, values)}, name=name)


def convex_table(domain: Domain, rng: np.random.Generator, scale: int = 3,
                 name: str = "convex") -> TabulatedObjective:
    """
    Separable sum of integer quadratics a_i (x_i - m_i)^2 with a_i >= 0,
    which has zero deficiency on every pair of a box
    """
    bounds = domain.bounds()
    weights = rng.integers(0, scale + 1, size=len(bounds))
    centers = [int(rng.integers(lo, hi + 1)) for lo, hi in bounds]
    values = {p: int(sum(int(a) * (x - m) ** 2 for a, x, m in zip(weights, p.coords, centers)))
              for p in domain}
    return TabulatedObjective(domain, values, exact=True, name=name)


def random_box(rng: np.random.Generator, dimension: int, max_side: int = 12,
               low: int = -5) -> BoxDomain:
    bounds = []
    for _ in range(dimension):
        start = int(rng.integers(low, low + max_side))
        side = int(rng.integers(2, max_side + 1))
        bounds.append((start, start + side - 1))
    return BoxDomain.from_bounds(bounds)


def random_knapsack(rng: np.random.Generator, W: Optional[int] = None,
                    max_points: int = 400, max_tries: int = 10_000) -> KnapsackInstance:
    """Rejection-sample a valid instance whose feasible box has at most max_points points"""
    for _ in range(max_tries):
        total = int(W) if W is not None else int(rng.integers(20, 201))
        w = sorted(int(v) for v in rng.choice(np.arange(1, 30), size=3, replace=False))
        c = sorted(int(v) for v in rng.choice(np.arange(1, 60), size=3, replace=False))
        try:
            inst = KnapsackInstance(total, tuple(w), tuple(c))  # type: ignore[arg-type]
        except ArgumentError:
            continue
        if len(knapsack_domain(inst)) <= max_points:
            return inst
    raise ArgumentError(f"no valid knapsack instance found in {max_tries} draws (W={W})")
