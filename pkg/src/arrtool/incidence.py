"""Incidence graphs of line arrangements, orderings, isomorphism, export.

The incidence graph is bipartite with a vertex per intersection point and
per line, and a conjugate pair of directed edges for every incidence
p in L. The ordered variant carries a total order on the edges at each
vertex: decreasing slope at point-vertices, decreasing x at line-vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .arrangement import Arrangement

POINT = "point"
LINE = "line"

_KIND_RANK = {POINT: 0, LINE: 1}


@dataclass(frozen=True, order=False)
class Vertex:
    kind: str
    index: int

    @property
    def name(self) -> str:
        return f"p{self.index}" if self.kind == POINT else f"L{self.index}"

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.index)

    def __lt__(self, other: "Vertex"):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Vertex({self.name})"


@dataclass(frozen=True)
class Edge:
    source: Vertex
    target: Vertex

    def conjugate(self) -> "Edge":
        return Edge(self.target, self.source)

    @property
    def point_vertex(self) -> Vertex:
        return self.source if self.source.kind == POINT else self.target

    @property
    def line_vertex(self) -> Vertex:
        return self.source if self.source.kind == LINE else self.target

    @property
    def pair(self) -> tuple[int, int]:
        """(point index, line index) identifying the conjugate pair."""
        return (self.point_vertex.index, self.line_vertex.index)

    def __repr__(self):
        return f"Edge({self.source.name}->{self.target.name})"


@dataclass(frozen=True)
class IncidenceGraph:
    point_vertices: tuple[Vertex, ...]
    line_vertices: tuple[Vertex, ...]
    pairs: tuple[tuple[Vertex, Vertex], ...]  # one (point, line) per conjugate pair

    def __post_init__(self):
        for point, line in self.pairs:
            if point.kind != POINT or line.kind != LINE:
                raise ValueError("each conjugate pair must join a point to a line")

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self.point_vertices + self.line_vertices

    @property
    def directed_edges(self) -> tuple[Edge, ...]:
        out = []
        for point, line in self.pairs:
            out.append(Edge(point, line))
            out.append(Edge(line, point))
        return tuple(out)

    def neighbors(self, vertex: Vertex) -> tuple[Vertex, ...]:
        out = []
        for point, line in self.pairs:
            if point == vertex:
                out.append(line)
            elif line == vertex:
                out.append(point)
        return tuple(out)

    def degree(self, vertex: Vertex) -> int:
        return len(self.neighbors(vertex))

    def has_pair(self, point: Vertex, line: Vertex) -> bool:
        return (point, line) in set(self.pairs)

    def components(self) -> tuple[frozenset[Vertex], ...]:
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for point, line in self.pairs:
            parent[find(point)] = find(line)
        groups: dict[Vertex, set[Vertex]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        return tuple(frozenset(g) for g in sorted(groups.values(), key=lambda g: min(g).sort_key()))

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


@dataclass(frozen=True)
class OrderedIncidenceGraph:
    graph: IncidenceGraph
    orders: tuple[tuple[Vertex, tuple[Edge, ...]], ...]

    def order_at(self, vertex: Vertex) -> tuple[Edge, ...]:
        for v, edges in self.orders:
            if v == vertex:
                return edges
        raise KeyError(vertex)

    def order_map(self) -> dict[Vertex, tuple[Edge, ...]]:
        return dict(self.orders)

    def slot(self, edge: Edge) -> int:
        """1-based rank of an outgoing edge in the order at its source."""
        return self.order_at(edge.source).index(edge) + 1


def build_incidence_graph(arrangement: Arrangement) -> IncidenceGraph:
    points = tuple(Vertex(POINT, p.index) for p in arrangement.points)
    lines = tuple(Vertex(LINE, line.index) for line in arrangement.lines)
    pairs = []
    for p in arrangement.points:
        for lid in p.incident_lines:
            pairs.append((points[p.index], lines[lid]))
    return IncidenceGraph(points, lines, tuple(pairs))


def build_ordered_graph(arrangement: Arrangement) -> OrderedIncidenceGraph:
    graph = build_incidence_graph(arrangement)
    orders = []
    for p in arrangement.points:
        slopes = [(arrangement.line(lid).a, lid) for lid in p.incident_lines]
        assert len({s for s, _ in slopes}) == len(slopes), "equal slopes through one point"
        ranked = sorted(slopes, key=lambda item: item[0], reverse=True)
        vertex = Vertex(POINT, p.index)
        orders.append((vertex, tuple(Edge(vertex, Vertex(LINE, lid)) for _, lid in ranked)))
    for line in arrangement.lines:
        on_line = [p for p in arrangement.points if line.index in p.incident_lines]
        assert len({p.x for p in on_line}) == len(on_line), "equal abscissae on one line"
        ranked = sorted(on_line, key=lambda p: p.x, reverse=True)
        vertex = Vertex(LINE, line.index)
        orders.append((vertex, tuple(Edge(vertex, Vertex(POINT, p.index)) for p in ranked)))
    orders.sort(key=lambda item: item[0].sort_key())
    return OrderedIncidenceGraph(graph, tuple(orders))


def betti1(graph: IncidenceGraph) -> int:
    """First Betti number: edges - vertices + components."""
    return len(graph.pairs) - len(graph.vertices) + len(graph.components())


def relabel(graph: IncidenceGraph, point_map, line_map) -> IncidenceGraph:
    """Relabel vertex indices; the result is isomorphic to the input."""

    def image(v: Vertex) -> Vertex:
        table = point_map if v.kind == POINT else line_map
        return Vertex(v.kind, table[v.index])

    points = tuple(sorted((image(v) for v in graph.point_vertices), key=Vertex.sort_key))
    lines = tuple(sorted((image(v) for v in graph.line_vertices), key=Vertex.sort_key))
    pairs = tuple(sorted(((image(p), image(l)) for p, l in graph.pairs),
                         key=lambda pair: (pair[0].sort_key(), pair[1].sort_key())))
    return IncidenceGraph(points, lines, pairs)


def relabel_ordered(og: OrderedIncidenceGraph, point_map, line_map) -> OrderedIncidenceGraph:
    def image(v: Vertex) -> Vertex:
        table = point_map if v.kind == POINT else line_map
        return Vertex(v.kind, table[v.index])

    graph = relabel(og.graph, point_map, line_map)
    orders = [
        (image(v), tuple(Edge(image(e.source), image(e.target)) for e in edges))
        for v, edges in og.orders
    ]
    orders.sort(key=lambda item: item[0].sort_key())
    return OrderedIncidenceGraph(graph, tuple(orders))


def _refinement_colors(graph: IncidenceGraph) -> dict[Vertex, tuple]:
    colors = {v: (_KIND_RANK[v.kind], graph.degree(v)) for v in graph.vertices}
    while True:
        refined = {
            v: (colors[v], tuple(sorted(colors[u] for u in graph.neighbors(v))))
            for v in graph.vertices
        }
        if len(set(refined.values())) == len(set(colors.values())):
            return colors
        colors = refined


def are_isomorphic(first, second, ordered: bool = False):
    """Label-preserving isomorphism between incidence graphs, or None.

    Point-vertices map to point-vertices and line-vertices to line-vertices;
    reversing a directed edge commutes with the mapping by construction.
    With ordered=True both arguments must be OrderedIncidenceGraphs and the
    mapping must preserve the per-vertex edge orders. Exhaustive search with
    pruning, intended for small inputs.
    """
    o1 = o2 = None
    if ordered:
        if not isinstance(first, OrderedIncidenceGraph) or not isinstance(second, OrderedIncidenceGraph):
            raise TypeError("ordered isomorphism needs OrderedIncidenceGraph inputs")
        o1, o2 = first, second
        g1, g2 = first.graph, second.graph
    else:
        g1 = first.graph if isinstance(first, OrderedIncidenceGraph) else first
        g2 = second.graph if isinstance(second, OrderedIncidenceGraph) else second

    if len(g1.point_vertices) != len(g2.point_vertices):
        return None
    if len(g1.line_vertices) != len(g2.line_vertices):
        return None
    if len(g1.pairs) != len(g2.pairs):
        return None
    colors1 = _refinement_colors(g1)
    colors2 = _refinement_colors(g2)
    if sorted(colors1.values()) != sorted(colors2.values()):
        return None

    vertices1 = sorted(g1.vertices, key=lambda v: (colors1[v], v.sort_key()))
    candidates = {
        v: [u for u in g2.vertices if colors2[u] == colors1[v]] for v in vertices1
    }
    vertices1.sort(key=lambda v: len(candidates[v]))
    adjacency1 = {v: set(g1.neighbors(v)) for v in g1.vertices}
    adjacency2 = {v: set(g2.neighbors(v)) for v in g2.vertices}

    mapping: dict[Vertex, Vertex] = {}
    used: set[Vertex] = set()

    def consistent(v: Vertex, w: Vertex) -> bool:
        for u in adjacency1[v]:
            if u in mapping and mapping[u] not in adjacency2[w]:
                return False
        for u, x in mapping.items():
            if v in adjacency1[u] and w not in adjacency2[x]:
                return False
        if ordered:
            for u, x in itertools.chain(mapping.items(), [(v, w)]):
                for rank, edge in enumerate(o1.order_at(u)):
                    other = edge.target
                    image = w if other == v else mapping.get(other)
                    if image is not None and o2.order_at(x)[rank].target != image:
                        return False
        return True

    def extend(position: int):
        if position == len(vertices1):
            return True
        v = vertices1[position]
        for w in candidates[v]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(position + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if extend(0):
        return dict(mapping)
    return None


def export_dot(graph_or_ordered) -> str:
    """Deterministic DOT text; the ordered variant annotates edge ranks."""
    ordered = isinstance(graph_or_ordered, OrderedIncidenceGraph)
    graph = graph_or_ordered.graph if ordered else graph_or_ordered
    out = ["graph incidence {"]
    for v in sorted(graph.point_vertices, key=Vertex.sort_key):
        out.append(f'  {v.name} [shape=circle];')
    for v in sorted(graph.line_vertices, key=Vertex.sort_key):
        out.append(f'  {v.name} [shape=box];')
    for point, line in sorted(graph.pairs, key=lambda pr: (pr[0].sort_key(), pr[1].sort_key())):
        if ordered:
            j = graph_or_ordered.slot(Edge(point, line))
            k = graph_or_ordered.slot(Edge(line, point))
            out.append(f'  {point.name} -- {line.name} [label="{j}:{k}"];')
        else:
            out.append(f'  {point.name} -- {line.name};')
    out.append("}")
    return "\n".join(out) + "\n"


def graph_to_json(graph: IncidenceGraph) -> dict:
    return {
        "points": [v.index for v in graph.point_vertices],
        "lines": [v.index for v in graph.line_vertices],
        "pairs": [[p.index, l.index] for p, l in graph.pairs],
    }


def graph_from_json(doc: dict) -> IncidenceGraph:
    points = tuple(Vertex(POINT, i) for i in doc["points"])
    lines = tuple(Vertex(LINE, i) for i in doc["lines"])
    pairs = tuple((Vertex(POINT, p), Vertex(LINE, l)) for p, l in doc["pairs"])
    return IncidenceGraph(points, lines, pairs)


def ordered_graph_to_json(og: OrderedIncidenceGraph) -> dict:
    doc = graph_to_json(og.graph)
    doc["order_at"] = {
        v.name: [e.target.name for e in edges] for v, edges in og.orders
    }
    return doc


def _vertex_from_name(name: str) -> Vertex:
    if name.startswith("p"):
        return Vertex(POINT, int(name[1:]))
    if name.startswith("L"):
        return Vertex(LINE, int(name[1:]))
    raise ValueError(f"bad vertex name {name!r}")


def ordered_graph_from_json(doc: dict) -> OrderedIncidenceGraph:
    graph = graph_from_json(doc)
    orders = []
    for name, targets in doc["order_at"].items():
        v = _vertex_from_name(name)
        orders.append((v, tuple(Edge(v, _vertex_from_name(t)) for t in targets)))
    orders.sort(key=lambda item: item[0].sort_key())
    return OrderedIncidenceGraph(graph, tuple(orders))
