"""Line-based text formats for instances ("cwi 1") and walks ("cww 1").

Rationals are always written as 'p' or 'p/q', never as decimals, so files
round-trip exactly.  Writers emit canonical form (integer rows, primitive
cost and steps); reading a canonical file and writing it again reproduces it
byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .polytope import HPolygon
from .ratgeo import Direction2, Point2, format_rational, parse_rational, primitive_direction
from .search import Walk

__all__ = ["ParseError", "InstanceFile", "write_instance", "read_instance",
           "write_walk", "read_walk"]


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class InstanceFile:
    """A polygon walk instance: geometry, cost, start, optional target.

    meta holds free-form (key, value) pairs that solvers ignore.
    """

    polygon: HPolygon
    cost: Direction2
    start: Point2
    target: Point2 | None = None
    meta: tuple[tuple[str, str], ...] = field(default=())


def write_instance(inst: InstanceFile) -> str:
    out = ["cwi 1", "dim 2", f"rows {inst.polygon.m}"]
    for a1, a2, b in inst.polygon.rows:
        out.append(f"{a1} {a2} {b}")
    out.append(f"cost {inst.cost.dx} {inst.cost.dy}")
    out.append(f"start {format_rational(inst.start.x)} {format_rational(inst.start.y)}")
    if inst.target is not None:
        out.append(
            f"target {format_rational(inst.target.x)} {format_rational(inst.target.y)}"
        )
    for key, value in inst.meta:
        out.append(f"meta {key} {value}" if value else f"meta {key}")
    return "\n".join(out) + "\n"


class _Lines:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    @property
    def line_no(self) -> int:
        return self.pos  # pos already advanced past the reported line

    def next(self, what: str) -> str:
        if self.pos >= len(self.lines):
            raise ParseError(len(self.lines) + 1, f"unexpected end of file, wanted {what}")
        line = self.lines[self.pos]
        self.pos += 1
        if not line.strip():
            raise ParseError(self.pos, "blank line")
        return line

    def peek(self) -> str | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def done(self) -> None:
        if self.pos < len(self.lines):
            raise ParseError(self.pos + 1, f"trailing content: {self.lines[self.pos]!r}")


def _rationals(lines: _Lines, line: str, prefix: str, count: int):
    parts = line.split()
    if prefix:
        if not parts or parts[0] != prefix:
            raise ParseError(lines.line_no, f"expected {prefix!r} line, got {line!r}")
        parts = parts[1:]
    if len(parts) != count:
        raise ParseError(lines.line_no, f"expected {count} rationals in {line!r}")
    try:
        return [parse_rational(p) for p in parts]
    except ValueError as exc:
        raise ParseError(lines.line_no, str(exc)) from None


def _int_header(lines: _Lines, keyword: str) -> int:
    line = lines.next(f"'{keyword} <n>'")
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword or not parts[1].isdigit():
        raise ParseError(lines.line_no, f"expected '{keyword} <count>', got {line!r}")
    return int(parts[1])


def read_instance(text: str) -> InstanceFile:
    lines = _Lines(text)
    if lines.next("header").strip() != "cwi 1":
        raise ParseError(lines.line_no, "not a 'cwi 1' file")
    if lines.next("dim").strip() != "dim 2":
        raise ParseError(lines.line_no, "only 'dim 2' is supported")
    m = _int_header(lines, "rows")
    rows = []
    for _ in range(m):
        rows.append(tuple(_rationals(lines, lines.next("row"), "", 3)))
    cx, cy = _rationals(lines, lines.next("cost"), "cost", 2)
    try:
        cost = primitive_direction(cx, cy)
    except ValueError as exc:
        raise ParseError(lines.line_no, str(exc)) from None
    sx, sy = _rationals(lines, lines.next("start"), "start", 2)
    target = None
    meta = []
    nxt = lines.peek()
    if nxt is not None and nxt.split()[:1] == ["target"]:
        tx, ty = _rationals(lines, lines.next("target"), "target", 2)
        target = Point2(tx, ty)
        nxt = lines.peek()
    while nxt is not None:
        line = lines.next("meta")
        parts = line.split(" ", 2)
        if parts[0] != "meta" or len(parts) < 2:
            raise ParseError(lines.line_no, f"expected 'meta <key> [value]', got {line!r}")
        meta.append((parts[1], parts[2] if len(parts) == 3 else ""))
        nxt = lines.peek()
    lines.done()
    try:
        polygon = HPolygon(tuple(rows))
    except ValueError as exc:
        raise ParseError(3, f"bad polygon: {exc}") from None
    return InstanceFile(
        polygon=polygon,
        cost=cost,
        start=Point2(sx, sy),
        target=target,
        meta=tuple(meta),
    )


def write_walk(w: Walk) -> str:
    out = ["cww 1", f"points {len(w.points)}"]
    for p in w.points:
        out.append(f"{format_rational(p.x)} {format_rational(p.y)}")
    for g in w.steps:
        out.append(f"step {g.dx} {g.dy}")
    return "\n".join(out) + "\n"


def read_walk(text: str) -> Walk:
    lines = _Lines(text)
    if lines.next("header").strip() != "cww 1":
        raise ParseError(lines.line_no, "not a 'cww 1' file")
    n = _int_header(lines, "points")
    if n < 1:
        raise ParseError(lines.line_no, "a walk has at least one point")
    points = []
    for _ in range(n):
        x, y = _rationals(lines, lines.next("point"), "", 2)
        points.append(Point2(x, y))
    steps = []
    for _ in range(n - 1):
        line = lines.next("step")
        parts = line.split()
        if len(parts) != 3 or parts[0] != "step":
            raise ParseError(lines.line_no, f"expected 'step <dx> <dy>', got {line!r}")
        try:
            steps.append(Direction2(int(parts[1]), int(parts[2])))
        except ValueError as exc:
            raise ParseError(lines.line_no, str(exc)) from None
    lines.done()
    return Walk(tuple(points), tuple(steps))
