"""
File Formats
Domain literals, tabulated objective files (JSON and CSV), knapsack instance
files, and the report/trace writers used by the CLI.

Domain literal grammar (whitespace allowed anywhere, integers may be signed):

    interval(a,b)
    box([a1,b1],[a2,b2],...,[an,bn])
    set{(p1,...,pn),(q1,...,qn),...}
"""

import csv
import io
import json
import logging
import re
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import ArgumentError, DomainLiteralError
from .lattice import BoxDomain, Domain, ExplicitSet, IntervalDomain, IntPoint
from .models import KnapsackInstance, TabulatedObjective

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_INT = r"[+-]?\d+"
_INTERVAL_RE = re.compile(rf"^interval\(\s*({_INT})\s*,\s*({_INT})\s*\)$")
_BOX_RE = re.compile(r"^box\((.*)\)$", re.S)
_SET_RE = re.compile(r"^set\{(.*)\}$", re.S)
_PAIR_RE = re.compile(rf"\[\s*({_INT})\s*,\s*({_INT})\s*\]")
_TUPLE_RE = re.compile(r"\(([^()]*)\)")


def parse_domain(text: str) -> Domain:
    """Parse a domain literal; raises DomainLiteralError on anything malformed"""
    s = text.strip()
    m = _INTERVAL_RE.match(s)
    if m:
        return IntervalDomain(int(m.group(1)), int(m.group(2)))
    m = _BOX_RE.match(s)
    if m:
        body = m.group(1)
        pairs = _PAIR_RE.findall(body)
        if not pairs or _PAIR_RE.sub("", body).replace(",", "").strip():
            raise DomainLiteralError(f"malformed box literal: {text!r}")
        return BoxDomain.from_bounds((int(a), int(b)) for a, b in pairs)
    m = _SET_RE.match(s)
    if m:
        body = m.group(1)
        tuples = _TUPLE_RE.findall(body)
        if not tuples or _TUPLE_RE.sub("", body).replace(",", "").strip():
            raise DomainLiteralError(f"malformed set literal: {text!r}")
        try:
            points = [IntPoint(tuple(int(c) for c in t.split(","))) for t in tuples]
        except ValueError:
            raise DomainLiteralError(f"non-integer coordinate in set literal: {text!r}") from None
        return ExplicitSet(frozenset(points))
    raise DomainLiteralError(f"unrecognized domain literal: {text!r}")


def format_domain(d: Domain) -> str:
    return str(d)


def _points_to_domain(points: Sequence[IntPoint]) -> Domain:
    """The smallest literal that matches a point list: interval, box, else explicit set"""
    unique = set(points)
    if len(unique) != len(points):
        raise ArgumentError("duplicate points in table")
    lo_hi = [(min(c), max(c)) for c in zip(*(p.coords for p in points))]
    size = 1
    for lo, hi in lo_hi:
        size *= hi - lo + 1
    if size == len(points) and all(lo < hi for lo, hi in lo_hi):
        box = BoxDomain.from_bounds(lo_hi)
        return box.axes[0] if box.dimension == 1 else box
    return ExplicitSet(frozenset(points))


# Tabulated objectives

def load_table(path: PathLike) -> Tuple[Domain, Optional[TabulatedObjective], Optional[float]]:
    """
    Load a table file. JSON holds {"domain", "values", optional "C"} with values
    in the domain's lexicographic order; a JSON file without "values" is a bare
    domain (verify only). CSV holds rows x1,...,xn,value with an optional header.
    Returns (domain, objective or None, C from the file or None).
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        objective = _load_table_csv(path)
        return objective.domain, objective, None
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    if "domain" not in data:
        raise ArgumentError(f"{path}: missing 'domain'")
    domain = parse_domain(data["domain"])
    C = data.get("C")
    if C is not None:
        C = float(C)
    if "values" not in data:
        return domain, None, C
    objective = TabulatedObjective.from_sequence(domain, data["values"], name=path.stem)
    return domain, objective, C


def _parse_number(raw: str) -> Union[int, float]:
    raw = raw.strip()
    try:
        return int(raw)
    except ValueError:
        return float(raw)


def _load_table_csv(path: Path) -> TabulatedObjective:
    with open(path, "r", encoding="utf-8", newline="") as f:
        rows = [r for r in csv.reader(f) if r and any(c.strip() for c in r)]
    if rows and not re.fullmatch(_INT, rows[0][0].strip()):
        rows = rows[1:]
    if not rows:
        raise ArgumentError(f"{path}: no data rows")
    width = len(rows[0])
    if width < 2 or any(len(r) != width for r in rows):
        raise ArgumentError(f"{path}: every row needs the same number of columns (>= 2)")
    try:
        points = [IntPoint(tuple(int(c) for c in r[:-1])) for r in rows]
        values = [_parse_number(r[-1]) for r in rows]
    except ValueError as e:
        raise DomainLiteralError(f"{path}: {e}") from None
    domain = _points_to_domain(points)
    return TabulatedObjective(domain, dict(zip(points, values)), name=path.stem)


def dump_table(objective: TabulatedObjective, path: PathLike, C: Optional[float] = None) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            n = objective.domain.dimension
            writer.writerow([f"x{i + 1}" for i in range(n)] + ["value"])
            for p in objective.domain:
                writer.writerow(list(p.coords) + [objective.values[p]])
        return
    data: Dict[str, Any] = {"domain": format_domain(objective.domain),
                            "values": objective.as_sequence()}
    if C is not None:
        data["C"] = C
    write_json(data, path)


# Knapsack instances

def load_knapsack(path: PathLike) -> KnapsackInstance:
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    try:
        return KnapsackInstance(data["W"], tuple(data["w"]), tuple(data["c"]))
    except KeyError as e:
        raise ArgumentError(f"{path}: knapsack file is missing {e}") from None


def dump_knapsack(inst: KnapsackInstance, path: PathLike) -> None:
    write_json(inst.to_dict(), path)


# Reports

def to_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def write_json(data: Any, path: Optional[PathLike]) -> None:
    """Write to path, or to stdout when path is None"""
    text = to_json(data)
    if path is None:
        print(text)
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text + "\n")
    logger.info("wrote %s", path)


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]],
              path: Optional[PathLike]) -> None:
    text = _csv_text(header, rows)
    if path is None:
        print(text, end="")
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info("wrote %s", path)


TRACE_HEADER = ["step", "side", "point", "value", "l_star", "action"]


def trace_rows(report) -> List[list]:
    """Rows of a SolveReport trace in step order"""
    return [[r.step, r.side, r.point, r.value, r.l_star, r.action] for r in report.trace]


def write_trace(report, path: Optional[PathLike]) -> None:
    write_csv(TRACE_HEADER, trace_rows(report), path)


PROJECTION_HEADER = ["axis", "fixed_value", "conditional_min"]


def write_projection(rows: Iterable[Tuple[int, int, float]], path: Optional[PathLike]) -> None:
    write_csv(PROJECTION_HEADER, rows, path)
