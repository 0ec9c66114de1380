"""
Brute-Force Oracle
Ground truth for the solvers: midpoint-closure checks, the minimal admissible C
of an (domain, function) pair, exhaustive minimization and the convexity
relations between midpoint convex functions and Ameso(0) pairs.

Everything here is O(|d|^2) by construction and guarded by explicit caps.
"""

import logging
import math
import threading
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_SETTINGS, Settings
from .errors import ArgumentError, EvaluationError, NotAmesoSetError, ResourceLimitError
from .lattice import Domain, IntPoint, PointLike, as_point

logger = logging.getLogger(__name__)


class Objective:
    """
    Evaluation contract IntPoint -> finite real with an exact call counter

    Args:
        fn: Deterministic function of an IntPoint
        lower_bound_declared: The caller asserts f is bounded below on its domain
        exact: Values are integers, so comparisons need no tolerance
        name: Label used in reports and logs
    """

    def __init__(self, fn: Callable[[IntPoint], float], lower_bound_declared: bool = True,
                 exact: bool = False, name: str = "objective"):
        self.fn = fn
        self.lower_bound_declared = lower_bound_declared
        self.exact = exact
        self.name = name
        self._count = 0
        self._lock = threading.Lock()

    def __call__(self, p: PointLike) -> float:
        p = as_point(p)
        value = self.fn(p)
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            value = int(value)
        elif not math.isfinite(value):
            raise EvaluationError(p, value)
        with self._lock:
            self._count += 1
        return value

    @property
    def eval_count(self) -> int:
        return self._count

    def reset_count(self) -> None:
        with self._lock:
            self._count = 0

    def __repr__(self) -> str:
        return f"Objective({self.name!r}, exact={self.exact})"


@dataclass(frozen=True)
class AmesoCertificate:
    """Result of exhausting all pairs of a domain (and optionally a function)"""
    is_ameso_set: bool
    minimal_C: Optional[float]
    raw_max_deficiency: Optional[float]
    witness: Optional[Tuple[IntPoint, IntPoint]]
    pair_count: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_ameso_set": self.is_ameso_set,
            "minimal_C": self.minimal_C,
            "raw_max_deficiency": self.raw_max_deficiency,
            "witness": [list(p.coords) for p in self.witness] if self.witness else None,
            "pairs_checked": self.pair_count,
        }


@dataclass(frozen=True)
class BruteForceResult:
    argmin_set: Tuple[IntPoint, ...]
    min_value: float
    evaluations: int


class _PairEngine:
    """
    Lexicographically sorted point array plus a vectorized membership lookup
    for the floor/ceil midpoints of one point against a block of others.
    """

    def __init__(self, d: Domain):
        self.points: List[IntPoint] = list(d)
        self.array = np.array([p.coords for p in self.points], dtype=np.int64)
        bounds = d.bounds()
        self.lo = np.array([b[0] for b in bounds], dtype=np.int64)
        radix = [b[1] - b[0] + 1 for b in bounds]
        span = 1
        for r in radix:
            span *= r
        self._index: Optional[Dict[Tuple[int, ...], int]] = None
        if span < 2 ** 62:
            strides = np.ones(len(radix), dtype=np.int64)
            for i in range(len(radix) - 2, -1, -1):
                strides[i] = strides[i + 1] * radix[i + 1]
            self.strides = strides
            # first axis most significant, so keys are sorted like the points
            self.keys = (self.array - self.lo) @ strides
        else:
            self._index = {p.coords: i for i, p in enumerate(self.points)}

    def __len__(self) -> int:
        return len(self.points)

    def lookup(self, block: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Indices of the rows of `block` in the domain and a found mask"""
        if self._index is not None:
            idx = np.array([self._index.get(tuple(int(c) for c in row), -1) for row in block],
                           dtype=np.int64)
            found = idx >= 0
            return np.where(found, idx, 0), found
        keys = (block - self.lo) @ self.strides
        idx = np.searchsorted(self.keys, keys)
        idx = np.minimum(idx, len(self.keys) - 1)
        return idx, self.keys[idx] == keys

    def midpoints(self, i: int) -> Tuple[np.ndarray, np.ndarray]:
        """Floor and ceil midpoints of point i against points i, i+1, ..."""
        s = self.array[i] + self.array[i:]
        return s // 2, -((-s) // 2)


def _check_point_cap(d: Domain, settings: Settings) -> int:
    size = len(d)
    if size > settings.point_cap:
        raise ResourceLimitError("domain size", size, settings.point_cap)
    return size


def _check_pair_cap(size: int, settings: Settings) -> int:
    pairs = size * (size + 1) // 2
    if pairs > settings.pair_cap:
        raise ResourceLimitError("pair count", pairs, settings.pair_cap)
    return pairs


def _evaluate_all(engine: _PairEngine, f: Objective) -> np.ndarray:
    values = [f(p) for p in engine.points]
    if f.exact and all(isinstance(v, int) for v in values):
        return np.array(values, dtype=np.int64)
    return np.array(values, dtype=np.float64)


def _scalar(v: Any) -> float:
    return int(v) if isinstance(v, (np.integer, int)) else float(v)


def _closure_witness(engine: _PairEngine) -> Optional[Tuple[IntPoint, IntPoint]]:
    for i in range(len(engine)):
        lo, hi = engine.midpoints(i)
        _, found_lo = engine.lookup(lo)
        _, found_hi = engine.lookup(hi)
        ok = found_lo & found_hi
        if not ok.all():
            j = int(np.argmin(ok))
            return engine.points[i], engine.points[i + j]
    return None


def is_ameso_set(d: Domain, settings: Optional[Settings] = None) -> bool:
    """True iff d contains the floor and ceil midpoints of every pair of its points"""
    return certify(d, None, settings).is_ameso_set


def certify(d: Domain, f: Optional[Objective] = None,
            settings: Optional[Settings] = None) -> AmesoCertificate:
    """
    Exhaust all unordered pairs of d. Without f only closure is decided; with f
    the minimal admissible C is computed too. Never raises for non-Ameso sets:
    the certificate carries the escaping pair as witness instead.
    """
    settings = settings or DEFAULT_SETTINGS
    size = _check_point_cap(d, settings)
    engine = _PairEngine(d)
    escape = _closure_witness(engine)
    if escape is not None:
        logger.info("%s is not closed under midpoints: witness %s, %s", d, *escape)
        return AmesoCertificate(False, None, None, escape, size * (size + 1) // 2)
    if f is None:
        return AmesoCertificate(True, None, None, None, size * (size + 1) // 2)

    pairs = _check_pair_cap(size, settings)
    values = _evaluate_all(engine, f)
    best: Optional[Any] = None
    witness: Optional[Tuple[IntPoint, IntPoint]] = None
    for i in range(size - 1):
        lo, hi = engine.midpoints(i)
        # x = y contributes 0; the raw maximum is taken over distinct pairs
        lo, hi = lo[1:], hi[1:]
        idx_lo, _ = engine.lookup(lo)
        idx_hi, _ = engine.lookup(hi)
        deficiency = values[idx_hi] + values[idx_lo] - values[i] - values[i + 1:]
        j = int(np.argmax(deficiency))
        if best is None or deficiency[j] > best:
            best = deficiency[j]
            witness = (engine.points[i], engine.points[i + 1 + j])

    raw = _scalar(best) if best is not None else 0
    minimal = max(raw, 0)
    logger.info("minimal C of %s on %s is %s (%d pairs)", f.name, d, minimal, pairs)
    return AmesoCertificate(True, minimal, raw, witness, pairs)


def minimal_C(d: Domain, f: Objective, settings: Optional[Settings] = None) -> AmesoCertificate:
    """Certificate for (d, f); raises NotAmesoSetError when d is not an Ameso set"""
    cert = certify(d, f, settings)
    if not cert.is_ameso_set:
        raise NotAmesoSetError(f"{d} is not an Ameso set", cert.witness)
    return cert


def satisfies_C(d: Domain, f: Objective, C: float, settings: Optional[Settings] = None) -> bool:
    """Does the pair inequality f(x)+f(y)+C >= f(ceil)+f(floor) hold for every pair"""
    settings = settings or DEFAULT_SETTINGS
    cert = minimal_C(d, f, settings)
    tol = 0 if f.exact else settings.real_tolerance
    return cert.minimal_C <= C + tol


def brute_force_min(d: Domain, f: Objective) -> BruteForceResult:
    """Exact global minimum and every minimizer; f is called once per point"""
    best: Optional[float] = None
    argmin: List[IntPoint] = []
    count = 0
    for p in d:
        v = f(p)
        count += 1
        if best is None or v < best:
            best, argmin = v, [p]
        elif v == best:
            argmin.append(p)
    return BruteForceResult(tuple(argmin), best, count)  # type: ignore[arg-type]


def is_midpoint_convex(d: Domain, f: Objective, settings: Optional[Settings] = None) -> bool:
    """The C = 0 case: no pair has positive deficiency (up to tolerance for reals)"""
    settings = settings or DEFAULT_SETTINGS
    cert = minimal_C(d, f, settings)
    tol = 0 if f.exact else settings.real_tolerance
    return cert.minimal_C <= tol


def separable_sum(fs: Sequence[Objective], weights: Sequence[float]) -> Objective:
    """g(y) = sum_i a_i f_i(y_i) for 1-D objectives f_i and weights a_i >= 0"""
    if len(fs) != len(weights):
        raise ArgumentError(f"{len(fs)} objectives but {len(weights)} weights")
    if not fs:
        raise ArgumentError("separable_sum needs at least one objective")
    for a in weights:
        if a < 0:
            raise ArgumentError(f"weights must be non-negative, got {a}")
    fs, weights = list(fs), list(weights)

    def g(y: IntPoint) -> float:
        if y.dimension != len(fs):
            raise ArgumentError(f"separable sum of {len(fs)} terms evaluated at {y}")
        return sum(a * fi(IntPoint((c,))) for a, fi, c in zip(weights, fs, y.coords))

    exact = all(fi.exact for fi in fs) and all(isinstance(a, int) for a in weights)
    return Objective(g, all(fi.lower_bound_declared for fi in fs), exact,
                     name="+".join(f"{a}*{fi.name}" for a, fi in zip(weights, fs)))


def plus_minus_check(d: Domain, f: Objective, C: float,
                     settings: Optional[Settings] = None) -> bool:
    """
    f(x+a) + f(x-a) + C >= 2 f(x) for all x, a with x, x+a, x-a in d.
    Enumerated as pairs (u, v) = (x+a, x-a) whose coordinate sums are even.
    """
    settings = settings or DEFAULT_SETTINGS
    size = _check_point_cap(d, settings)
    _check_pair_cap(size, settings)
    engine = _PairEngine(d)
    values = _evaluate_all(engine, f)
    tol = 0 if f.exact else settings.real_tolerance
    for i in range(size):
        s = engine.array[i] + engine.array[i:]
        even = (s % 2 == 0).all(axis=1)
        if not even.any():
            continue
        idx, found = engine.lookup(s[even] // 2)
        partners = values[i:][even]
        gap = values[i] + partners + C - 2 * values[idx]
        if (found & (gap < -tol)).any():
            return False
    return True


def trivial_C_bound(d: Domain, f: Objective) -> float:
    """2 (max f - min f): any finite problem on an Ameso set is Ameso(C) for this C"""
    values = [f(p) for p in d]
    return 2 * (max(values) - min(values))
