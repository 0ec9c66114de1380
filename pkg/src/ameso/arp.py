"""
Ameso Recursive Procedure
Minimizes f over a box by sweeping the last axis of the axis order with the
one-dimensional solver, where the value at a sweep point l is the conditional
minimum of f with that axis fixed to l, solved the same way one level down.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from .config import DEFAULT_SETTINGS, Settings
from .errors import ArgumentError, StartOutsideDomainError
from .lattice import BoxDomain, Domain, IntPoint, as_box
from .oracle import Objective, minimal_C
from .solver1d import SolveReport, resolve_tolerance, run_sweep

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConditionalProblem:
    """f restricted to the slice of `base` where `fixed_axes` take the given values"""
    base: BoxDomain
    fixed_axes: Tuple[Tuple[int, int], ...]
    objective: Objective

    def __init__(self, base: Domain, fixed_axes: Mapping[int, int], objective: Objective):
        box = as_box(base)
        fixed = tuple(sorted((int(a), int(v)) for a, v in dict(fixed_axes).items()))
        for axis, value in fixed:
            if not 0 <= axis < box.dimension:
                raise ArgumentError(f"axis {axis} out of range for a {box.dimension}-D box")
            if not box.axes[axis].has(value):
                raise ArgumentError(f"fixed value {value} outside axis {axis} {box.axes[axis]}")
        object.__setattr__(self, "base", box)
        object.__setattr__(self, "fixed_axes", fixed)
        object.__setattr__(self, "objective", objective)

    @property
    def fixed(self) -> Dict[int, int]:
        return dict(self.fixed_axes)

    @property
    def free_axes(self) -> Tuple[int, ...]:
        fixed = self.fixed
        return tuple(a for a in range(self.base.dimension) if a not in fixed)

    def conditional_domain(self) -> Optional[BoxDomain]:
        free = self.free_axes
        if not free:
            return None
        return BoxDomain(tuple(self.base.axes[a] for a in free))

    def embed(self, free_coords: Sequence[int]) -> IntPoint:
        """Full-dimensional point from coordinates of the free axes"""
        coords = self.fixed
        for axis, value in zip(self.free_axes, free_coords):
            coords[axis] = value
        return IntPoint(tuple(coords[a] for a in range(self.base.dimension)))

    def conditional_objective(self) -> Objective:
        """The objective as a function of the free coordinates only"""
        f = self.objective
        return Objective(lambda q: f(self.embed(q.coords)), f.lower_bound_declared, f.exact,
                         name=f"{f.name}|{self.fixed}")


@dataclass(frozen=True)
class ArpConfig:
    """
    Args:
        C: Ameso constant used at every level
        axis_order: permutation of the axes; the last one is swept at the top
        start_points: per-axis start of every sweep on that axis (default midpoint)
        memoize: reuse conditional minima already solved for the same fixed values
        value_tolerance: as in Solve1DConfig
    """
    C: float = 0.0
    axis_order: Optional[Tuple[int, ...]] = None
    start_points: Optional[Mapping[int, int]] = None
    memoize: bool = True
    value_tolerance: Optional[float] = None
    known_minimal_C: Optional[float] = None

    def __post_init__(self):
        if self.C < 0:
            raise ArgumentError(f"C must be non-negative, got {self.C}")


@dataclass
class TraceNode:
    """One sweep in the recursion; the root has no fixed value"""
    axis: int
    fixed_axis: Optional[int]
    fixed_value: Optional[int]
    report: SolveReport
    children: List["TraceNode"] = field(default_factory=list)
    cached: bool = False

    def walk(self) -> Iterator["TraceNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "fixed_axis": self.fixed_axis,
            "fixed_value": self.fixed_value,
            "cached": self.cached,
            "report": self.report.to_dict(),
            "children": [c.to_dict() for c in self.children],
        }


@dataclass(frozen=True)
class ArpReport:
    argmin: IntPoint
    min_value: float
    total_evaluations: int
    per_level_visited: Tuple[Tuple[Tuple[int, ...], ...], ...]
    trace: TraceNode
    axis_order: Tuple[int, ...]
    certificate_unverified: bool = True

    @property
    def top(self) -> SolveReport:
        return self.trace.report

    def leaf_evaluations(self) -> int:
        """Raw f calls summed over the fresh sweeps on the innermost axis"""
        innermost = self.axis_order[0]
        return sum(node.report.evaluations for node in self.trace.walk()
                   if node.axis == innermost and not node.cached)

    def to_dict(self) -> dict:
        return {
            "argmin": list(self.argmin.coords),
            "min_value": self.min_value,
            "total_evaluations": self.total_evaluations,
            "axis_order": list(self.axis_order),
            "per_level_visited": [[list(p) for p in level] for level in self.per_level_visited],
            "certificate_unverified": self.certificate_unverified,
            "trace": self.trace.to_dict(),
        }


MemoKey = Tuple[float, float, Tuple[int, ...], Tuple[Tuple[int, int], ...],
                Tuple[Tuple[int, int], ...]]


class ArpMemo:
    """
    Conditional minima keyed by the fixed assignment, shareable across
    solve_arp, solve_conditional and conditional_value calls on one (box, f).
    The key also carries C, the tolerance, and the order and starts of the
    free axes, so a hit replays exactly the sweep it stands for.
    """

    def __init__(self):
        self.entries: Dict[MemoKey, Tuple[float, IntPoint, TraceNode]] = {}
        self.hits = 0
        self._owner: Optional[Tuple[BoxDomain, Objective]] = None

    def bind(self, box: BoxDomain, f: Objective) -> None:
        if self._owner is None:
            self._owner = (box, f)
        elif self._owner[0] != box or self._owner[1] is not f:
            raise ArgumentError("an ArpMemo serves one box and one objective")

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, key: MemoKey) -> Optional[Tuple[float, IntPoint, TraceNode]]:
        entry = self.entries.get(key)
        if entry is not None:
            self.hits += 1
        return entry

    def put(self, key: MemoKey, entry: Tuple[float, IntPoint, TraceNode]) -> None:
        self.entries[key] = entry


class _ArpRun:
    """State of one ARP solve: the memo in use, per-level visits and argmins"""

    def __init__(self, box: BoxDomain, f: Objective, cfg: ArpConfig, tolerance: float,
                 memo: Optional[ArpMemo] = None):
        self.box = box
        self.f = f
        self.cfg = cfg
        self.tolerance = tolerance
        self.order = _check_axis_order(cfg.axis_order, box.dimension)
        self.starts = _check_starts(cfg.start_points, box)
        self.memo: Optional[ArpMemo] = None
        if cfg.memoize:
            self.memo = memo if memo is not None else ArpMemo()
            self.memo.bind(box, f)
        self.levels: Dict[int, Set[Tuple[int, ...]]] = {}

    def point(self, fixed: Mapping[int, int]) -> IntPoint:
        return IntPoint(tuple(fixed[a] for a in range(self.box.dimension)))

    def key(self, fixed: Mapping[int, int], free: Sequence[int]) -> MemoKey:
        starts = tuple((a, self.starts[a]) for a in free if a in self.starts)
        return (self.cfg.C, self.tolerance, tuple(free), starts, tuple(sorted(fixed.items())))

    def solve(self, fixed: Dict[int, int], path: Tuple[int, ...],
              fixed_axis: Optional[int]) -> Tuple[float, IntPoint, Optional[TraceNode]]:
        free = [a for a in self.order if a not in fixed]
        if not free:
            p = self.point(fixed)
            return self.f(p), p, None

        key = self.key(fixed, free)
        fixed_value = fixed.get(fixed_axis) if fixed_axis is not None else None
        if self.memo is not None:
            hit = self.memo.get(key)
            if hit is not None:
                value, best, node = hit
                logger.debug("memo hit for %s", dict(key[-1]))
                return value, best, TraceNode(node.axis, fixed_axis, fixed_value,
                                              node.report, [], cached=True)

        axis = free[-1]
        level = len(path)
        argmins: Dict[int, IntPoint] = {}
        children: List[TraceNode] = []

        def conditional(l: int) -> float:
            sub = dict(fixed)
            sub[axis] = l
            self.levels.setdefault(level, set()).add(path + (l,))
            value, best, child = self.solve(sub, path + (l,), axis)
            argmins[l] = best
            if child is not None:
                children.append(child)
            return value

        report = run_sweep(self.box.axes[axis], conditional, self.cfg.C,
                           self.starts.get(axis), self.tolerance)
        l_star = report.argmin.coords[0]
        node = TraceNode(axis, fixed_axis, fixed_value, report,
                         sorted(children, key=lambda c: c.fixed_value))
        result = (report.min_value, argmins[l_star], node)
        if self.memo is not None:
            self.memo.put(key, result)
        return result


def _check_axis_order(order: Optional[Sequence[int]], n: int) -> Tuple[int, ...]:
    if order is None:
        return tuple(range(n))
    order = tuple(int(a) for a in order)
    if sorted(order) != list(range(n)):
        raise ArgumentError(f"axis order {order} is not a permutation of 0..{n - 1}")
    return order


def _check_starts(starts: Optional[Mapping[int, int]], box: BoxDomain) -> Dict[int, int]:
    checked: Dict[int, int] = {}
    for axis, value in dict(starts or {}).items():
        if not 0 <= axis < box.dimension:
            raise ArgumentError(f"start given for axis {axis} of a {box.dimension}-D box")
        if not box.axes[axis].has(value):
            raise StartOutsideDomainError(f"start {value} outside axis {axis} {box.axes[axis]}")
        checked[axis] = int(value)
    return checked


def _run(box: BoxDomain, f: Objective, cfg: ArpConfig, settings: Optional[Settings],
         memo: Optional[ArpMemo], fixed: Dict[int, int]) -> ArpReport:
    tolerance = resolve_tolerance(cfg.value_tolerance, f.exact, settings)
    run = _ArpRun(box, f, cfg, tolerance, memo)
    before = f.eval_count
    value, best, node = run.solve(dict(fixed), (), None)
    assert node is not None
    depth = box.dimension - len(fixed)
    levels = tuple(tuple(sorted(run.levels.get(k, ()))) for k in range(depth))
    verified = cfg.known_minimal_C is not None and cfg.known_minimal_C <= cfg.C + tolerance
    return ArpReport(
        argmin=best,
        min_value=value,
        total_evaluations=f.eval_count - before,
        per_level_visited=levels,
        trace=node,
        axis_order=tuple(a for a in run.order if a not in fixed),
        certificate_unverified=not verified,
    )


def solve_arp(d: Domain, f: Objective, cfg: Optional[ArpConfig] = None,
              settings: Optional[Settings] = None,
              memo: Optional[ArpMemo] = None) -> ArpReport:
    """
    Minimize f over a box. Global optimality holds whenever (d, f) is an
    Ameso(C) pair for cfg.C, since every conditional pair inherits the constant.

    Passing the same memo to repeated calls on (d, f) serves conditional
    minima already solved; those subtrees come back as cached trace nodes
    and cost no evaluations.
    """
    cfg = cfg or ArpConfig()
    box = as_box(d)
    report = _run(box, f, cfg, settings, memo, {})
    logger.info("ARP on %s: argmin %s value %s, %d evaluations",
                box, report.argmin, report.min_value, report.total_evaluations)
    return report


def solve_conditional(p: ConditionalProblem, cfg: Optional[ArpConfig] = None,
                      settings: Optional[Settings] = None,
                      memo: Optional[ArpMemo] = None) -> ArpReport:
    """
    ARP over the free axes of a conditional problem, reported in full
    coordinates. cfg.axis_order may list all axes or only the free ones.
    """
    cfg = cfg or ArpConfig()
    if not p.free_axes:
        raise ArgumentError("every axis is fixed; nothing to solve")
    fixed = p.fixed
    order = cfg.axis_order
    if order is not None:
        order = tuple(a for a in fixed if a not in order) + tuple(order)
    starts = {a: v for a, v in dict(cfg.start_points or {}).items() if a not in fixed}
    full_cfg = replace(cfg, axis_order=order, start_points=starts)
    return _run(p.base, p.objective, full_cfg, settings, memo, fixed)


def conditional_value(p: ConditionalProblem, cfg: Optional[ArpConfig] = None,
                      settings: Optional[Settings] = None,
                      memo: Optional[ArpMemo] = None) -> float:
    """min of f over the conditional domain; f itself when every axis is fixed"""
    if not p.free_axes:
        return p.objective(p.embed(()))
    return solve_conditional(p, cfg, settings, memo).min_value


def verify_property5(d: Domain, f: Objective, fixed_axes: Sequence[int],
                     settings: Optional[Settings] = None) -> bool:
    """
    For every assignment of the given axes, the conditional pair's minimal C
    does not exceed the minimal C of (d, f). Test harness; oracle caps apply.
    """
    settings = settings or DEFAULT_SETTINGS
    box = as_box(d)
    whole = minimal_C(box, f, settings).minimal_C
    tol = 0 if f.exact else settings.real_tolerance
    axes = sorted(set(int(a) for a in fixed_axes))
    if not axes:
        return True
    slice_box = BoxDomain(tuple(box.axes[a] for a in axes))
    for values in slice_box:
        problem = ConditionalProblem(box, dict(zip(axes, values.coords)), f)
        domain = problem.conditional_domain()
        if domain is None:
            continue
        part = minimal_C(domain, problem.conditional_objective(), settings).minimal_C
        if part > whole + tol:
            logger.warning("conditional pair %s has C=%s above %s", problem.fixed, part, whole)
            return False
    return True


def flat_projection(report: ArpReport) -> List[Tuple[int, int, float]]:
    """(axis, fixed value, conditional minimum) for each point of the top-level sweep"""
    top = report.trace
    return [(top.axis, l, top.report.values[l]) for l in sorted(top.report.values)]
