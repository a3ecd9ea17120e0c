"""Skeleton / braided wiring diagram of an arrangement as a 1-complex.

The diagram restricts the arrangement over a path visiting the projected
intersection abscissae in a chosen order. Each line contributes a thread of
straight segments between consecutive fibers, pruned to the span between
its first and last incidence in the visiting order (infinite ends removed).
Threads merge exactly at intersection points. Segments carry a formal
braid slot; no braid computation is performed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement


class AmbiguousOrder(Exception):
    """The requested abscissa order cannot be matched to the fibers."""


@dataclass(frozen=True)
class Segment:
    line: int
    start: tuple[Fraction, Fraction]
    end: tuple[Fraction, Fraction]
    braid: tuple = ()


@dataclass(frozen=True)
class WiringDiagram:
    base_order: tuple[Fraction, ...]
    nodes: tuple[tuple[Fraction, Fraction], ...]
    segments: tuple[Segment, ...]

    def component_count(self) -> int:
        parent = {node: node for node in self.nodes}

        def find(node):
            while parent[node] != node:
                parent[node] = parent[parent[node]]
                node = parent[node]
            return node

        for seg in self.segments:
            parent[find(seg.start)] = find(seg.end)
        return len({find(node) for node in self.nodes})

    def betti1(self) -> int:
        return len(self.segments) - len(self.nodes) + self.component_count()


def build_wiring_diagram(arrangement: Arrangement, base_order=None) -> WiringDiagram:
    """1-complex of the arrangement over the given abscissa order.

    base_order defaults to the increasing order of the distinct abscissae
    of the intersection points (the standard skeleton). Several points may
    share an abscissa; their fibers are separated by the y-coordinate. An
    order listing an abscissa twice is rejected: there is no rule for
    splitting the points over that abscissa between the two visits.
    """
    abscissae = sorted({p.x for p in arrangement.points})
    if base_order is None:
        order = tuple(abscissae)
    else:
        order = tuple(Fraction(x) for x in base_order)
        if len(order) != len(set(order)):
            raise AmbiguousOrder("base_order repeats an abscissa")
        if sorted(order) != abscissae:
            raise ValueError("base_order must be a permutation of the intersection abscissae")

    points_at: dict[Fraction, dict[Fraction, set[int]]] = {}
    for p in arrangement.points:
        points_at.setdefault(p.x, {})[p.y] = set(p.incident_lines)

    nodes: set[tuple[Fraction, Fraction]] = set()
    segments: list[Segment] = []
    for line in arrangement.lines:
        hits = [
            i for i, x in enumerate(order)
            if line.index in points_at.get(x, {}).get(line.y_at(x), ())
        ]
        if not hits:
            # a line with no intersection points keeps a single marker node
            nodes.add((Fraction(0), line.b))
            continue
        first, last = min(hits), max(hits)
        for i in range(first, last):
            start = (order[i], line.y_at(order[i]))
            end = (order[i + 1], line.y_at(order[i + 1]))
            nodes.add(start)
            nodes.add(end)
            segments.append(Segment(line.index, start, end))
        if first == last:
            nodes.add((order[first], line.y_at(order[first])))

    segments.sort(key=lambda s: (s.line, order.index(s.start[0])))
    return WiringDiagram(order, tuple(sorted(nodes)), tuple(segments))
