"""Finite presentations of the boundary-manifold and complement groups.

The boundary group is assembled as a graph of groups over the ordered
incidence graph: one vertex group per vertex (central fiber class lam_v
and one meridian per incident edge), torus identification relations per
conjugate edge pair, and one stable letter per edge outside a spanning
tree. The complement group adds one relator per independent cycle: the
image of that cycle under the edge-word map built from the per-vertex
orderings.

Two vertex-group conventions are available. "geometric" adds the product
relation mu_1 ... mu_d = lam_v at point-vertices, making the vertex group
the fundamental group of the Hopf-link complement piece (Z x free); it is
the default because only it matches the Mayer-Vietoris homology oracle.
"paper-literal" omits the product relation.

Two forms of the conjugating word used by the edge-word map are available:
"thm4" conjugates the meridian by the earlier meridians in slope order,
"lemma32" by the later ones. At a geometric point-vertex they define the
same group element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .incidence import (
    Edge,
    IncidenceGraph,
    OrderedIncidenceGraph,
    Vertex,
    POINT,
    LINE,
)
from .snf import AbelianGroupDescription, cokernel
from .words import GeneratorSymbol, Word, lam, mu, stable, word

GEOMETRIC = "geometric"
PAPER_LITERAL = "paper-literal"
CONVENTIONS = (GEOMETRIC, PAPER_LITERAL)

VARIANT_PRECEDING = "thm4"
VARIANT_FOLLOWING = "lemma32"
VARIANTS = (VARIANT_PRECEDING, VARIANT_FOLLOWING)


class DisconnectedGraph(Exception):
    """The construction needs a connected incidence graph."""


class IncidenceMismatch(Exception):
    """The requested point does not lie on the requested line."""


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[GeneratorSymbol, ...]
    relators: tuple[Word, ...]
    provenance: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        known = set(self.generators)
        for relator in self.relators:
            foreign = relator.symbols() - known
            if foreign:
                raise ValueError(f"relator uses unknown generators {sorted(s.name for s in foreign)}")

    def provenance_map(self) -> dict[str, str]:
        return dict(self.provenance)

    def text(self) -> str:
        lines = ["gens: " + ", ".join(g.name for g in self.generators)]
        lines.extend("rel: " + r.text() for r in self.relators)
        return "\n".join(lines) + "\n"


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")


def _check_variant(variant):
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")


def vertex_generators(og: OrderedIncidenceGraph, vertex: Vertex) -> list[GeneratorSymbol]:
    degree = len(og.order_at(vertex))
    return [lam(vertex)] + [mu(vertex, j) for j in range(1, degree + 1)]


def vertex_relators(og, vertex: Vertex, convention: str) -> list[Word]:
    degree = len(og.order_at(vertex))
    fiber = lam(vertex)
    out = [word(fiber, mu(vertex, j), (fiber, -1), (mu(vertex, j), -1))
           for j in range(1, degree + 1)]
    if convention == GEOMETRIC and vertex.kind == POINT:
        product = [(mu(vertex, j), 1) for j in range(1, degree + 1)]
        out.append(word(*product, (fiber, -1)))
    return out


def vertex_group(og: OrderedIncidenceGraph, vertex: Vertex,
                 convention: str = GEOMETRIC) -> GroupPresentation:
    """Presentation of one vertex piece's fundamental group.

    lam_v is central; under the geometric convention point-vertices also
    carry mu_1 ... mu_d = lam_v, the meridians composing to the fiber.
    """
    _check_convention(convention)
    return GroupPresentation(
        tuple(vertex_generators(og, vertex)),
        tuple(vertex_relators(og, vertex, convention)),
        (("convention", convention), ("vertex", vertex.name)),
    )


@dataclass(frozen=True)
class SpanningTree:
    basepoint: Vertex
    tree_pairs: frozenset[tuple[int, int]]
    parents: tuple[tuple[Vertex, Edge], ...]  # vertex -> tree edge from its parent

    def parent_edge(self, vertex: Vertex) -> Edge | None:
        for v, edge in self.parents:
            if v == vertex:
                return edge
        return None

    def contains(self, edge: Edge) -> bool:
        return edge.pair in self.tree_pairs

    def path(self, start: Vertex, end: Vertex) -> list[Edge]:
        """Tree path as a list of directed edges from start to end."""

        def to_root(v):
            chain = []
            while True:
                edge = self.parent_edge(v)
                if edge is None:
                    return chain
                chain.append(edge)
                v = edge.source

        up_start = to_root(start)  # parent->child edges, listed child first
        up_end = to_root(end)
        start_chain = [start] + [e.source for e in up_start]
        end_chain = [end] + [e.source for e in up_end]
        common = set(start_chain) & set(end_chain)
        meet_rank = min(i for i, v in enumerate(start_chain) if v in common)
        meet = start_chain[meet_rank]
        down = list(reversed(up_end[: end_chain.index(meet)]))
        return [e.conjugate() for e in up_start[:meet_rank]] + down


def spanning_tree(og: OrderedIncidenceGraph) -> SpanningTree:
    """Breadth-first spanning tree from the least point-vertex.

    Neighbor exploration follows the per-vertex edge orders, so the tree
    is deterministic. Falls back to the least line-vertex when the graph
    has no points (single line).
    """
    graph = og.graph
    if not graph.is_connected():
        raise DisconnectedGraph("spanning tree needs a connected graph")
    if graph.point_vertices:
        root = min(graph.point_vertices, key=Vertex.sort_key)
    else:
        root = min(graph.line_vertices, key=Vertex.sort_key)
    parents: list[tuple[Vertex, Edge]] = []
    tree_pairs: set[tuple[int, int]] = set()
    visited = {root}
    frontier = [root]
    while frontier:
        next_frontier = []
        for v in frontier:
            for edge in og.order_at(v):
                if edge.target not in visited:
                    visited.add(edge.target)
                    parents.append((edge.target, edge))
                    tree_pairs.add(edge.pair)
                    next_frontier.append(edge.target)
        frontier = next_frontier
    return SpanningTree(root, frozenset(tree_pairs), tuple(parents))


def non_tree_pairs(og: OrderedIncidenceGraph, tree: SpanningTree) -> list[tuple[int, int]]:
    return sorted(
        (point.index, line.index)
        for point, line in og.graph.pairs
        if (point.index, line.index) not in tree.tree_pairs
    )


def _edge_slots(og: OrderedIncidenceGraph, pair: tuple[int, int]) -> tuple[int, int]:
    """(slot at the point-vertex, slot at the line-vertex) of a conjugate pair."""
    point = Vertex(POINT, pair[0])
    line = Vertex(LINE, pair[1])
    return og.slot(Edge(point, line)), og.slot(Edge(line, point))


def transport_letter(edge: Edge, tree: SpanningTree) -> Word:
    """Word contributed by traversing an edge: empty on the tree, the
    stable letter (or its inverse) off the tree."""
    if tree.contains(edge):
        return Word()
    sign = 1 if edge.source.kind == LINE else -1
    return word((stable(edge.pair), sign))


def boundary_presentation(og: OrderedIncidenceGraph,
                          convention: str = GEOMETRIC,
                          tree: SpanningTree | None = None) -> GroupPresentation:
    """Presentation of the fundamental group of the boundary manifold.

    Generators: all vertex-group generators plus one stable letter per
    conjugate pair outside the spanning tree. Relators: the vertex-group
    relators, and per pair the two torus identifications, written with the
    torus basis (mu_j, lam mu_j) on each side and matched through the
    framing change mu(line) = long(point), long(line) = mu(point) long(point);
    off-tree identifications are conjugated by the stable letter.
    """
    _check_convention(convention)
    if not og.graph.is_connected():
        raise DisconnectedGraph("boundary presentation needs a connected graph")
    if tree is None:
        tree = spanning_tree(og)
    generators: list[GeneratorSymbol] = []
    relators: list[Word] = []
    for vertex in sorted(og.graph.vertices, key=Vertex.sort_key):
        generators.extend(vertex_generators(og, vertex))
        relators.extend(vertex_relators(og, vertex, convention))
    extra = non_tree_pairs(og, tree)
    generators.extend(stable(pair) for pair in extra)

    for point, line in sorted(og.graph.pairs, key=lambda pr: (pr[0].index, pr[1].index)):
        pair = (point.index, line.index)
        j, k = _edge_slots(og, pair)
        point_mu = word(mu(point, j))
        point_long = word(lam(point), mu(point, j))
        line_mu = word(mu(line, k))
        line_long = word(lam(line), mu(line, k))
        if pair in tree.tree_pairs:
            conjugate = lambda w: w
        else:
            t = word(stable(pair))
            conjugate = lambda w, t=t: t * w * t.inverse()
        relators.append(conjugate(point_long) * line_mu.inverse())
        relators.append(conjugate(point_mu * point_long) * line_long.inverse())

    provenance = (
        ("space", "boundary"),
        ("convention", convention),
        ("basepoint", tree.basepoint.name),
        ("spanning_tree", ";".join(f"p{p}-L{l}" for p, l in sorted(tree.tree_pairs))),
    )
    return GroupPresentation(tuple(generators), tuple(relators), provenance)


def g_word(og: OrderedIncidenceGraph, line: Vertex, point: Vertex,
           variant: str = VARIANT_PRECEDING) -> Word:
    """Conjugating word at a point-vertex for one of its lines.

    With the lines through the point ranked by decreasing slope and the
    given line at rank j, "thm4" conjugates mu_j by the product of the
    earlier meridians, "lemma32" by the inverse product of the later ones.
    Both abelianize to mu_j; at a geometric point-vertex they agree as
    group elements.
    """
    _check_variant(variant)
    if not og.graph.has_pair(point, line):
        raise IncidenceMismatch(f"{point.name} is not on {line.name}")
    j = og.slot(Edge(point, line))
    degree = len(og.order_at(point))
    if variant == VARIANT_PRECEDING:
        prefix = [(mu(point, i), 1) for i in range(1, j)]
        return word(*prefix, (mu(point, j), 1), *((mu(point, i), -1) for i in range(j - 1, 0, -1)))
    suffix = [(mu(point, i), -1) for i in range(degree, j, -1)]
    return word(*suffix, (mu(point, j), 1), *((mu(point, i), 1) for i in range(j + 1, degree + 1)))


def f_edge_word(og: OrderedIncidenceGraph, edge: Edge,
                variant: str = VARIANT_PRECEDING,
                tree: SpanningTree | None = None) -> Word:
    """Image of a directed edge under the edge-word map.

    For e from a line-vertex to its j-th point (in decreasing x order) the
    image is the transport letter when j <= 2, and the conjugating words of
    the intermediate points p_2 ... p_{j-1} followed by the transport
    letter when j > 2. The reverse edge maps to the inverse word.
    """
    _check_variant(variant)
    if tree is None:
        tree = spanning_tree(og)
    if edge.source.kind == POINT:
        return f_edge_word(og, edge.conjugate(), variant, tree).inverse()
    line, point = edge.source, edge.target
    if not og.graph.has_pair(point, line):
        raise IncidenceMismatch(f"{point.name} is not on {line.name}")
    j = og.slot(edge)
    result = Word()
    for rank in range(2, j):
        intermediate = og.order_at(line)[rank - 1].target
        result = result * g_word(og, line, intermediate, variant)
    return result * transport_letter(edge, tree)


def fundamental_cycle(og: OrderedIncidenceGraph, tree: SpanningTree,
                      pair: tuple[int, int]) -> list[Edge]:
    """Closed walk at the basepoint through the given non-tree pair,
    entering it from the line side."""
    point = Vertex(POINT, pair[0])
    line = Vertex(LINE, pair[1])
    crossing = Edge(line, point)
    return (tree.path(tree.basepoint, line) + [crossing]
            + tree.path(point, tree.basepoint))


def cycle_relator(og: OrderedIncidenceGraph, tree: SpanningTree,
                  pair: tuple[int, int], variant: str) -> Word:
    relator = Word()
    for edge in fundamental_cycle(og, tree, pair):
        relator = relator * f_edge_word(og, edge, variant, tree)
    return relator


def complement_presentation(og: OrderedIncidenceGraph,
                            convention: str = GEOMETRIC,
                            variant: str = VARIANT_PRECEDING) -> GroupPresentation:
    """Presentation of the fundamental group of the arrangement complement.

    The boundary presentation plus one relator per conjugate pair outside
    the spanning tree: the image of the fundamental cycle through that
    pair under the edge-word map. An arrangement of mutually parallel
    lines (edgeless graph) gives the free group on one meridian per line.
    """
    _check_convention(convention)
    _check_variant(variant)
    graph = og.graph
    if not graph.pairs:
        generators = tuple(mu(v, 1) for v in sorted(graph.line_vertices, key=Vertex.sort_key))
        provenance = (
            ("space", "complement"),
            ("convention", convention),
            ("variant", variant),
            ("components", str(len(graph.line_vertices))),
        )
        return GroupPresentation(generators, (), provenance)
    if not graph.is_connected():
        raise DisconnectedGraph("complement presentation needs a connected graph")
    tree = spanning_tree(og)
    base = boundary_presentation(og, convention, tree)
    relators = list(base.relators)
    for pair in non_tree_pairs(og, tree):
        relators.append(cycle_relator(og, tree, pair, variant))
    provenance = base.provenance + (("variant", variant),)
    provenance = tuple((k, v) for k, v in provenance if k != "space")
    provenance = (("space", "complement"),) + provenance
    return GroupPresentation(base.generators, tuple(relators), provenance)


def abelianize(presentation: GroupPresentation) -> AbelianGroupDescription:
    """Cokernel of the exponent-sum matrix via Smith normal form."""
    generators = list(presentation.generators)
    position = {g: i for i, g in enumerate(generators)}
    rows = []
    for relator in presentation.relators:
        row = [0] * len(generators)
        for sym, exp in relator.letters:
            row[position[sym]] += exp
        rows.append(row)
    return cokernel(rows, len(generators))
