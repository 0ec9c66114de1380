"""
One-Dimensional Ameso(C) Solver
Bidirectional sweep from a start point l0: extend right until a value rises
C above the incumbent, try to close the left side from what was already seen,
then extend left under the same rule. Every step is recorded in the trace.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple, Union

from .config import DEFAULT_SETTINGS, Settings
from .errors import ArgumentError, StartOutsideDomainError
from .lattice import BoxDomain, IntervalDomain, IntPoint
from .oracle import Objective

logger = logging.getLogger(__name__)


class StopRight(str, Enum):
    THRESHOLD = "threshold"
    EXHAUSTED = "exhausted"
    NONE = "none"  # l0 was the right end, nothing to sweep


class LeftPhase(str, Enum):
    SKIPPED_BY_STEP4 = "skipped_by_step4"
    THRESHOLD = "threshold"
    EXHAUSTED = "exhausted"
    NOT_ENTERED = "not_entered"  # l0 was the left end


@dataclass(frozen=True)
class Solve1DConfig:
    """
    Args:
        C: Ameso constant used by the stopping gaps (>= 0)
        start: l0; defaults to the domain midpoint ceil((x_s + x_t) / 2)
        value_tolerance: epsilon in gap >= C - epsilon; None picks 0 for exact
            objectives and the settings' real tolerance otherwise
        known_minimal_C: the oracle's minimal C for this pair, when known
    """
    C: float = 0.0
    start: Optional[int] = None
    value_tolerance: Optional[float] = None
    known_minimal_C: Optional[float] = None

    def __post_init__(self):
        if self.C < 0:
            raise ArgumentError(f"C must be non-negative, got {self.C}")
        if self.value_tolerance is not None and self.value_tolerance < 0:
            raise ArgumentError("value_tolerance must be non-negative")


@dataclass(frozen=True)
class TraceRow:
    step: int
    side: str
    point: Optional[int]
    value: Optional[float]
    l_star: int
    action: str


@dataclass(frozen=True)
class SolveReport:
    argmin: IntPoint
    min_value: float
    visited: Tuple[int, ...]
    evaluations: int
    stop_right: StopRight
    left_phase: LeftPhase
    trace: Tuple[TraceRow, ...]
    C: float
    start: int
    certificate_unverified: bool = True
    values: Dict[int, float] = field(default_factory=dict, compare=False, repr=False)

    @property
    def visited_range(self) -> Tuple[int, int]:
        return self.visited[0], self.visited[-1]

    def to_dict(self) -> dict:
        return {
            "argmin": list(self.argmin.coords),
            "min_value": self.min_value,
            "visited": list(self.visited),
            "evaluations": self.evaluations,
            "stop_right": self.stop_right.value,
            "left_phase": self.left_phase.value,
            "C": self.C,
            "start": self.start,
            "certificate_unverified": self.certificate_unverified,
        }


def resolve_tolerance(cfg_tolerance: Optional[float], exact: bool,
                      settings: Optional[Settings] = None) -> float:
    if cfg_tolerance is not None:
        return cfg_tolerance
    return 0.0 if exact else (settings or DEFAULT_SETTINGS).real_tolerance


def run_sweep(axis: IntervalDomain, value: Callable[[int], float], C: float,
              start: Optional[int] = None, tolerance: float = 0.0) -> SolveReport:
    """
    The sweep itself, over any value function on an integer interval. Each
    point is evaluated at most once; the visited set always contains l0.
    """
    l0 = axis.midpoint if start is None else int(start)
    if not axis.has(l0):
        raise StartOutsideDomainError(f"start {l0} is outside {axis}")
    threshold = C - tolerance

    values: Dict[int, float] = {}
    trace: List[TraceRow] = []
    step = 0

    def visit(point: int) -> float:
        v = value(point)
        values[point] = v
        return v

    # step 1
    visit(l0)
    l_star = l0
    trace.append(TraceRow(step, "start", l0, values[l0], l_star, "start"))

    # steps 2-3: right sweep
    stop_right = StopRight.NONE
    for l_plus in range(l0 + 1, axis.x_t + 1):
        step += 1
        v = visit(l_plus)
        diff = v - values[l_star]
        if diff >= threshold:
            trace.append(TraceRow(step, "right", l_plus, v, l_star, "stop"))
            stop_right = StopRight.THRESHOLD
            break
        if diff < 0:
            l_star = l_plus
            action = "improve"
        else:
            action = "extend"
        trace.append(TraceRow(step, "right", l_plus, v, l_star, action))
    else:
        if l0 < axis.x_t:
            stop_right = StopRight.EXHAUSTED
    logger.debug("right sweep from %d ended %s at l*=%d", l0, stop_right.value, l_star)

    # step 4: can the already-visited points left of l* close the search?
    step += 1
    left_of_star = [l for l in values if l < l_star]
    if left_of_star:
        top = max(values[l] for l in left_of_star)
        l_minus = max(l for l in left_of_star if values[l] == top)
        skip = top - values[l_star] >= threshold
        trace.append(TraceRow(step, "step4", l_minus, top, l_star,
                              "skip" if skip else "continue"))
    else:
        # max over an empty set is -inf, the condition fails
        skip = False
        trace.append(TraceRow(step, "step4", None, None, l_star, "continue"))

    # steps 5-6: left sweep
    if skip:
        left_phase = LeftPhase.SKIPPED_BY_STEP4
    elif l0 == axis.x_s:
        left_phase = LeftPhase.NOT_ENTERED
    else:
        left_phase = LeftPhase.EXHAUSTED
        for l_minus in range(l0 - 1, axis.x_s - 1, -1):
            step += 1
            v = visit(l_minus)
            diff = v - values[l_star]
            if diff >= threshold:
                trace.append(TraceRow(step, "left", l_minus, v, l_star, "stop"))
                left_phase = LeftPhase.THRESHOLD
                break
            if diff < 0:
                l_star = l_minus
                action = "improve"
            else:
                action = "extend"
            trace.append(TraceRow(step, "left", l_minus, v, l_star, action))
    logger.debug("left phase %s, l*=%d, %d evaluations", left_phase.value, l_star, len(values))

    return SolveReport(
        argmin=IntPoint((l_star,)),
        min_value=values[l_star],
        visited=tuple(sorted(values)),
        evaluations=len(values),
        stop_right=stop_right,
        left_phase=left_phase,
        trace=tuple(trace),
        C=C,
        start=l0,
        values=values,
    )


def _as_interval(d: Union[IntervalDomain, BoxDomain]) -> IntervalDomain:
    if isinstance(d, IntervalDomain):
        return d
    if isinstance(d, BoxDomain) and d.dimension == 1:
        return d.axes[0]
    raise ArgumentError(f"solve_1d needs a one-dimensional interval, got {d}")


def solve_1d(d: Union[IntervalDomain, BoxDomain], f: Objective,
             cfg: Optional[Solve1DConfig] = None,
             settings: Optional[Settings] = None) -> SolveReport:
    """
    Minimize f over an integer interval. When cfg.C is at least the pair's
    minimal C the result is a global minimizer; otherwise it is a best-effort
    report with certificate_unverified set.
    """
    cfg = cfg or Solve1DConfig()
    axis = _as_interval(d)
    tolerance = resolve_tolerance(cfg.value_tolerance, f.exact, settings)
    report = run_sweep(axis, lambda l: f(IntPoint((l,))), cfg.C, cfg.start, tolerance)
    verified = cfg.known_minimal_C is not None and cfg.known_minimal_C <= cfg.C + tolerance
    logger.info("solve_1d %s on %s: l*=%s f=%s after %d evaluations",
                f.name, axis, report.argmin, report.min_value, report.evaluations)
    return _with_verification(report, verified)


def _with_verification(report: SolveReport, verified: bool) -> SolveReport:
    return replace(report, certificate_unverified=not verified)


def _value(f: Objective, x: int) -> float:
    return f(IntPoint((x,)))


def check_stop_right(x_prime: int, z: int, f: Objective, C: float,
                     tolerance: Optional[float] = None) -> bool:
    """f(z) - f(x') >= C for z right of x' certifies min over [x_s, z] is global"""
    if not x_prime < z:
        raise ArgumentError(f"right check needs x' < z, got x'={x_prime}, z={z}")
    return _value(f, z) - _value(f, x_prime) >= C - resolve_tolerance(tolerance, f.exact)


def check_stop_left(x_prime: int, z: int, f: Objective, C: float,
                    tolerance: Optional[float] = None) -> bool:
    """Mirror rule: z left of x' with the gap certifies min over [z, x_t] is global"""
    if not z < x_prime:
        raise ArgumentError(f"left check needs z < x', got x'={x_prime}, z={z}")
    return _value(f, z) - _value(f, x_prime) >= C - resolve_tolerance(tolerance, f.exact)


def check_stop_two_sided(x_prime: int, z_s: int, z_t: int, f: Objective, C: float,
                         tolerance: Optional[float] = None) -> bool:
    """Both gaps >= C certify that min over [z_s, z_t] is global"""
    if not z_s < x_prime < z_t:
        raise ArgumentError(f"two-sided check needs z_s < x' < z_t, got {z_s}, {x_prime}, {z_t}")
    base = _value(f, x_prime)
    threshold = C - resolve_tolerance(tolerance, f.exact)
    return (_value(f, z_s) - base >= threshold
            and _value(f, z_t) - base >= threshold)


def arg_star_max(f: Objective, lo: int, hi: int) -> int:
    """Largest maximizer of f over [lo, hi]"""
    best_x, best_v = lo, _value(f, lo)
    for x in range(lo + 1, hi + 1):
        v = _value(f, x)
        if v >= best_v:
            best_x, best_v = x, v
    return best_x


def narrowing_holds(f: Objective, x0: int, b: int, C: float,
                    tolerance: Optional[float] = None) -> bool:
    """
    Local narrowing to the right: if f(x0) is the min over [x0, x0+b] and some
    value there reaches f(x0) + C, the largest maximizer lies in (x0 + b/2, x0 + b].
    Vacuously true when the hypotheses fail.
    """
    if b < 1:
        raise ArgumentError("b must be a positive integer")
    window = [_value(f, x) for x in range(x0, x0 + b + 1)]
    reach = window[0] + C - resolve_tolerance(tolerance, f.exact)
    if min(window) < window[0] or max(window) < reach:
        return True
    z = arg_star_max(f, x0, x0 + b)
    return 2 * z > 2 * x0 + b
