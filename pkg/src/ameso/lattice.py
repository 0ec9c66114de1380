"""
Integer Lattice
Lattice points, exact floor/ceil midpoints and the finite domain types
(integer intervals, boxes and explicit point sets)
"""

import itertools
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple, Union

from .errors import ArgumentError, DimensionMismatchError, DomainError


@dataclass(frozen=True, order=True)
class IntPoint:
    """An n-dimensional integer lattice point (n >= 1), immutable and hashable"""
    coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if not coords:
            raise ArgumentError("IntPoint needs at least one coordinate")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *coords: int) -> "IntPoint":
        return cls(tuple(coords))

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __add__(self, other: "IntPoint") -> "IntPoint":
        _same_dimension(self, other)
        return IntPoint(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


PointLike = Union[IntPoint, int, Sequence[int]]


def as_point(p: PointLike) -> IntPoint:
    """Coerce an int (1-D) or a coordinate sequence into an IntPoint"""
    if isinstance(p, IntPoint):
        return p
    if isinstance(p, int) or hasattr(p, "__index__"):
        return IntPoint((int(p),))  # type: ignore[arg-type]
    return IntPoint(tuple(p))


def _same_dimension(x: IntPoint, y: IntPoint) -> None:
    if x.dimension != y.dimension:
        raise DimensionMismatchError(
            f"dimension mismatch: {x} has {x.dimension}, {y} has {y.dimension}"
        )


def _ceil_half(s: int) -> int:
    # Python's // is mathematical floor, so this is the true ceiling of s/2
    return -((-s) // 2)


def midpoint_ceil(x: PointLike, y: PointLike) -> IntPoint:
    """Componentwise ceil((x_i + y_i) / 2), exact for negative sums"""
    x, y = as_point(x), as_point(y)
    _same_dimension(x, y)
    return IntPoint(tuple(_ceil_half(a + b) for a, b in zip(x.coords, y.coords)))


def midpoint_floor(x: PointLike, y: PointLike) -> IntPoint:
    """Componentwise floor((x_i + y_i) / 2), exact for negative sums"""
    x, y = as_point(x), as_point(y)
    _same_dimension(x, y)
    return IntPoint(tuple((a + b) // 2 for a, b in zip(x.coords, y.coords)))


class Domain:
    """Finite subset of Z^n with membership, size and lexicographic enumeration"""

    dimension: int

    def contains(self, p: PointLike) -> bool:
        raise NotImplementedError

    def __iter__(self) -> Iterator[IntPoint]:
        raise NotImplementedError

    def __len__(self) -> int:
        raise NotImplementedError

    def bounds(self) -> List[Tuple[int, int]]:
        """Per-axis (min, max) of the members"""
        raise NotImplementedError

    def __contains__(self, p: PointLike) -> bool:
        return self.contains(p)

    def _check_dimension(self, p: IntPoint) -> None:
        if p.dimension != self.dimension:
            raise DimensionMismatchError(
                f"point {p} has dimension {p.dimension}, domain has {self.dimension}"
            )


@dataclass(frozen=True)
class IntervalDomain(Domain):
    """The integers {x_s, ..., x_t} with x_s < x_t"""
    x_s: int
    x_t: int

    def __post_init__(self):
        object.__setattr__(self, "x_s", int(self.x_s))
        object.__setattr__(self, "x_t", int(self.x_t))
        if self.x_s >= self.x_t:
            raise ArgumentError(
                f"interval [{self.x_s},{self.x_t}] is trivial; need x_s < x_t"
            )

    @property
    def dimension(self) -> int:  # type: ignore[override]
        return 1

    def contains(self, p: PointLike) -> bool:
        p = as_point(p)
        self._check_dimension(p)
        return self.x_s <= p.coords[0] <= self.x_t

    def has(self, value: int) -> bool:
        return self.x_s <= value <= self.x_t

    def values(self) -> range:
        return range(self.x_s, self.x_t + 1)

    @property
    def midpoint(self) -> int:
        return _ceil_half(self.x_s + self.x_t)

    def __iter__(self) -> Iterator[IntPoint]:
        return (IntPoint((v,)) for v in self.values())

    def __len__(self) -> int:
        return self.x_t - self.x_s + 1

    def bounds(self) -> List[Tuple[int, int]]:
        return [(self.x_s, self.x_t)]

    def __str__(self) -> str:
        return f"interval({self.x_s},{self.x_t})"


@dataclass(frozen=True)
class BoxDomain(Domain):
    """Product of integer intervals, one per axis"""
    axes: Tuple[IntervalDomain, ...]

    def __post_init__(self):
        axes = tuple(self.axes)
        if not axes:
            raise ArgumentError("a box needs at least one axis")
        for axis in axes:
            if not isinstance(axis, IntervalDomain):
                raise ArgumentError(f"box axes must be IntervalDomain, got {axis!r}")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def from_bounds(cls, bounds: Iterable[Tuple[int, int]]) -> "BoxDomain":
        return cls(tuple(IntervalDomain(a, b) for a, b in bounds))

    @property
    def dimension(self) -> int:  # type: ignore[override]
        return len(self.axes)

    def contains(self, p: PointLike) -> bool:
        p = as_point(p)
        self._check_dimension(p)
        return all(axis.has(c) for axis, c in zip(self.axes, p.coords))

    def __iter__(self) -> Iterator[IntPoint]:
        for coords in itertools.product(*(axis.values() for axis in self.axes)):
            yield IntPoint(coords)

    def __len__(self) -> int:
        size = 1
        for axis in self.axes:
            size *= len(axis)
        return size

    def bounds(self) -> List[Tuple[int, int]]:
        return [(axis.x_s, axis.x_t) for axis in self.axes]

    def __str__(self) -> str:
        return "box(" + ",".join(f"[{a.x_s},{a.x_t}]" for a in self.axes) + ")"


@dataclass(frozen=True)
class ExplicitSet(Domain):
    """
    A finite, enumerated point set. Any set is accepted; whether it is closed
    under midpoints is a property checked by the oracle, not enforced here.
    """
    points: FrozenSet[IntPoint] = field(default_factory=frozenset)

    def __post_init__(self):
        points = frozenset(as_point(p) for p in self.points)
        if not points:
            raise ArgumentError("an explicit set must be non-empty")
        dims = {p.dimension for p in points}
        if len(dims) != 1:
            raise DimensionMismatchError(f"explicit set mixes dimensions {sorted(dims)}")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "_sorted", tuple(sorted(points)))

    @property
    def dimension(self) -> int:  # type: ignore[override]
        return self._sorted[0].dimension  # type: ignore[attr-defined]

    def contains(self, p: PointLike) -> bool:
        p = as_point(p)
        self._check_dimension(p)
        return p in self.points

    def __iter__(self) -> Iterator[IntPoint]:
        return iter(self._sorted)  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.points)

    def bounds(self) -> List[Tuple[int, int]]:
        cols = list(zip(*(p.coords for p in self.points)))
        return [(min(c), max(c)) for c in cols]

    def __str__(self) -> str:
        return "set{" + ",".join(str(p) for p in self) + "}"


def contains(d: Domain, p: PointLike) -> bool:
    return d.contains(p)


def enumerate_domain(d: Domain) -> Iterator[IntPoint]:
    """Every member of d exactly once, in lexicographic order"""
    return iter(d)


def is_interval(s: ExplicitSet) -> bool:
    """True iff a 1-D explicit set is a contiguous integer range"""
    if s.dimension != 1:
        raise DimensionMismatchError(f"is_interval needs a 1-D set, got dimension {s.dimension}")
    if len(s) < 2:
        raise ArgumentError("is_interval needs at least two points")
    values = [p.coords[0] for p in s]
    return values[-1] - values[0] + 1 == len(values)


def as_box(d: Domain) -> BoxDomain:
    """View an interval or box as a BoxDomain; explicit sets are not products"""
    if isinstance(d, BoxDomain):
        return d
    if isinstance(d, IntervalDomain):
        return BoxDomain((d,))
    raise DomainError(f"{type(d).__name__} is not a product of intervals")
