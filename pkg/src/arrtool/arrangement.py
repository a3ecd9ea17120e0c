"""Exact rational line arrangements: parsing, validation, intersections.

Lines are y = a*x + b with rational coefficients kept in lowest terms via
fractions.Fraction. Incidence (which lines pass through which points) is a
discrete property, so no floating point is allowed anywhere in here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class ArrangementError(Exception):
    """Base for arrangement input errors."""


class ParseError(ArrangementError):
    """Malformed input document or rational literal."""


class DuplicateLine(ArrangementError):
    """Two input lines share slope and intercept."""


class VerticalLineUnsupported(ArrangementError):
    """Vertical lines are rejected; slope orderings presuppose finite slopes."""


class Classification(Enum):
    EMPTY = "empty"
    ALL_PARALLEL = "all-parallel"
    CONNECTED_INCIDENCE = "connected"
    GENERAL = "general"


@dataclass(frozen=True)
class Line:
    index: int
    a: Fraction
    b: Fraction

    def y_at(self, x: Fraction) -> Fraction:
        return self.a * x + self.b

    @property
    def name(self) -> str:
        return f"L{self.index}"


@dataclass(frozen=True)
class Point:
    index: int
    x: Fraction
    y: Fraction
    incident_lines: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"p{self.index}"


@dataclass(frozen=True)
class Arrangement:
    lines: tuple[Line, ...]
    points: tuple[Point, ...]
    classification: Classification

    def line(self, index: int) -> Line:
        return self.lines[index]

    def point(self, index: int) -> Point:
        return self.points[index]


def intersection_points(lines) -> tuple[Point, ...]:
    """Deduplicated intersection points of pairwise distinct non-vertical lines.

    A point lying on r >= 2 lines appears once and lists all r line ids.
    Point ids follow lexicographic (x, y) order for determinism.
    """
    seen: dict[tuple[Fraction, Fraction], set[int]] = {}
    for i, first in enumerate(lines):
        for second in lines[i + 1:]:
            if first.a == second.a:
                continue
            x = (second.b - first.b) / (first.a - second.a)
            y = first.a * x + first.b
            seen.setdefault((x, y), set()).update((first.index, second.index))
    points = []
    for rank, (x, y) in enumerate(sorted(seen)):
        points.append(Point(rank, x, y, tuple(sorted(seen[(x, y)]))))
    return tuple(points)


def _line_components(lines, points) -> int:
    """Number of connected components of the incidence structure."""
    parent = {line.index: line.index for line in lines}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for point in points:
        root = find(point.incident_lines[0])
        for other in point.incident_lines[1:]:
            parent[find(other)] = root
    return len({find(i) for i in parent})


def classify(arrangement: Arrangement) -> Classification:
    return _classify(arrangement.lines, arrangement.points)


def _classify(lines, points) -> Classification:
    if not lines:
        return Classification.EMPTY
    if not points:
        return Classification.ALL_PARALLEL
    if _line_components(lines, points) == 1:
        return Classification.CONNECTED_INCIDENCE
    return Classification.GENERAL


def make_arrangement(coefficients) -> Arrangement:
    """Build a validated arrangement from (a, b) Fraction pairs."""
    lines = []
    seen: dict[tuple[Fraction, Fraction], int] = {}
    for index, (a, b) in enumerate(coefficients):
        key = (a, b)
        if key in seen:
            raise DuplicateLine(
                f"lines {seen[key]} and {index} are both y = {a}*x + {b}"
            )
        seen[key] = index
        lines.append(Line(index, a, b))
    lines = tuple(lines)
    points = intersection_points(lines)
    return Arrangement(lines, points, _classify(lines, points))


_VERTICAL_MARKERS = {"inf", "-inf", "+inf", "infinity", "-infinity", "nan", "vertical"}


def _to_fraction(value, field: str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"field '{field}' must be a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if value.strip().lower() in _VERTICAL_MARKERS:
            if field == "a":
                raise VerticalLineUnsupported(
                    "non-finite slope: lines parallel to the y-axis are not supported"
                )
            raise ParseError(f"non-finite value in field '{field}'")
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed rational {value!r} in field '{field}'") from exc
    raise ParseError(f"field '{field}' must be a rational, got {value!r}")


def parse_arrangement(text: str) -> Arrangement:
    """Parse a structured-text document with a top-level list of lines.

    Each entry is {"a": <rational>, "b": <rational>} where rationals are
    integers, "p/q" strings, or decimal literals converted exactly.
    """
    try:
        doc = json.loads(text, parse_float=Fraction, parse_constant=str)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid document: {exc}") from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed rational literal: {exc}") from exc
    if not isinstance(doc, dict) or "lines" not in doc:
        raise ParseError("document must be an object with a 'lines' list")
    entries = doc["lines"]
    if not isinstance(entries, list) or not entries:
        raise ParseError("'lines' must be a non-empty list")
    coefficients = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise ParseError(f"line {i} must be an object with fields 'a' and 'b'")
        if "vertical" in entry:
            raise VerticalLineUnsupported(f"line {i} is marked vertical")
        if set(entry) != {"a", "b"}:
            raise ParseError(f"line {i} must have exactly the fields 'a' and 'b'")
        coefficients.append((_to_fraction(entry["a"], "a"), _to_fraction(entry["b"], "b")))
    return make_arrangement(coefficients)


def format_rational(value: Fraction):
    return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def arrangement_to_json(arrangement: Arrangement) -> dict:
    """Echo of the input format plus the computed points."""
    return {
        "lines": [
            {"a": format_rational(line.a), "b": format_rational(line.b)}
            for line in arrangement.lines
        ],
        "points": [
            {
                "x": format_rational(point.x),
                "y": format_rational(point.y),
                "lines": list(point.incident_lines),
            }
            for point in arrangement.points
        ],
        "classification": arrangement.classification.value,
    }
