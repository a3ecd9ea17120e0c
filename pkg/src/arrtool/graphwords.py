"""Graph-of-groups words over an ordered incidence graph, with reduction.

A GraphWord is an alternating sequence gamma_0 e_1 gamma_1 ... e_k gamma_k
along a closed walk, each gamma_i held in the vertex group at the walk
position in a confluent normal form (central power of the fiber class
times a freely reduced meridian word). Reduction repeatedly removes
pinches e ebar whose intermediate element lies in the glued torus
subgroup, transporting it across the framing change; a reduced word is
trivial only when it has no edges and a trivial vertex element.
"""

from __future__ import annotations

from dataclasses import dataclass

from .incidence import Edge, OrderedIncidenceGraph, Vertex, POINT, LINE
from .manifold import LINE_TO_POINT, POINT_TO_LINE, apply_matrix
from .presentations import GEOMETRIC, _check_convention, _edge_slots
from .words import LAMBDA, MU, Word


class ForeignGenerator(Exception):
    """A word uses generators that do not belong to the vertex."""


class MalformedWord(Exception):
    """Edges of a graph word do not chain or do not close up."""


def _reduce_runs(runs):
    out: list[tuple[int, int]] = []
    for slot, exp in runs:
        if exp == 0:
            continue
        if out and out[-1][0] == slot:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((slot, merged))
        else:
            out.append((slot, exp))
    return tuple(out)


@dataclass(frozen=True)
class VertexElement:
    """Element of a vertex group: lam^n times a reduced meridian word.

    At a geometric point-vertex of degree d the last meridian is
    eliminated through mu_1 ... mu_d = lam, so the free part uses slots
    1 .. d-1 only and the normal form is canonical.
    """

    vertex: Vertex
    n: int
    w: tuple[tuple[int, int], ...]

    @property
    def is_trivial(self) -> bool:
        return self.n == 0 and not self.w


class VertexGroups:
    """Normal forms and torus-subgroup tests for the vertex groups of an
    ordered incidence graph under a fixed convention."""

    def __init__(self, og: OrderedIncidenceGraph, convention: str = GEOMETRIC):
        _check_convention(convention)
        self.og = og
        self.convention = convention

    def degree(self, vertex: Vertex) -> int:
        return len(self.og.order_at(vertex))

    def _eliminates_last(self, vertex: Vertex) -> bool:
        return self.convention == GEOMETRIC and vertex.kind == POINT

    def normal_form(self, vertex: Vertex, items) -> VertexElement:
        """Normal form of a word in the vertex's generators.

        items: a Word over this vertex's lam/mu symbols, or an iterable of
        (slot, exponent) meridian runs with slot 0 meaning the fiber class.
        """
        degree = self.degree(vertex)
        runs: list[tuple[int, int]] = []
        if isinstance(items, Word):
            for sym, exp in items.letters:
                if sym.kind == LAMBDA and sym.vertex == vertex:
                    runs.append((0, exp))
                elif sym.kind == MU and sym.vertex == vertex and 1 <= sym.slot <= degree:
                    runs.append((sym.slot, exp))
                else:
                    raise ForeignGenerator(f"{sym.name} is not a generator at {vertex.name}")
        else:
            runs.extend(items)
        n = sum(exp for slot, exp in runs if slot == 0)
        free = [(slot, exp) for slot, exp in runs if slot != 0]
        if self._eliminates_last(vertex):
            # mu_d = (mu_1 ... mu_{d-1})^-1 lam, applied one letter at a time
            rewritten: list[tuple[int, int]] = []
            for slot, exp in free:
                if slot != degree:
                    rewritten.append((slot, exp))
                    continue
                n += exp
                step = 1 if exp > 0 else -1
                for _ in range(abs(exp)):
                    if step > 0:
                        rewritten.extend((i, -1) for i in range(degree - 1, 0, -1))
                    else:
                        rewritten.extend((i, 1) for i in range(1, degree))
            free = rewritten
        return VertexElement(vertex, n, _reduce_runs(free))

    def multiply(self, first: VertexElement, second: VertexElement) -> VertexElement:
        if first.vertex != second.vertex:
            raise ForeignGenerator("cannot multiply elements at different vertices")
        return VertexElement(
            first.vertex, first.n + second.n, _reduce_runs(first.w + second.w)
        )

    def invert(self, element: VertexElement) -> VertexElement:
        return VertexElement(
            element.vertex,
            -element.n,
            tuple((slot, -exp) for slot, exp in reversed(element.w)),
        )

    def identity(self, vertex: Vertex) -> VertexElement:
        return VertexElement(vertex, 0, ())

    def membership(self, vertex: Vertex, slot: int, element: VertexElement):
        """Coordinates (a, b) with element = mu_slot^a (lam mu_slot)^b, or None.

        The glued torus at a boundary slot carries the rank-2 abelian
        subgroup generated by the meridian mu_slot and the longitude
        lam mu_slot.
        """
        if element.vertex != vertex:
            raise ForeignGenerator("element does not live at the given vertex")
        degree = self.degree(vertex)
        if not 1 <= slot <= degree:
            raise ValueError(f"slot {slot} out of range at {vertex.name}")
        if self._eliminates_last(vertex) and slot == degree:
            # mu_d^m normalizes to lam^m (mu_{d-1}^-1 ... mu_1^-1)^m
            m = self._descending_power(element.w, degree)
            if m is None:
                return None
            return (2 * m - element.n, element.n - m)
        if not element.w:
            m = 0
        elif len(element.w) == 1 and element.w[0][0] == slot:
            m = element.w[0][1]
        else:
            return None
        return (m - element.n, element.n)

    @staticmethod
    def _descending_power(runs, degree):
        """m such that runs spell ((mu_{d-1} ... mu_1)^-1)^m, else None."""
        if not runs:
            return 0
        letters = []
        for slot, exp in runs:
            step = 1 if exp > 0 else -1
            letters.extend((slot, step) for _ in range(abs(exp)))
        block = [(i, -1) for i in range(degree - 1, 0, -1)]
        size = len(block)
        if size == 0 or len(letters) % size:
            return None
        count = len(letters) // size
        if letters == block * count:
            return count
        inverse_block = [(slot, -exp) for slot, exp in reversed(block)]
        if letters == inverse_block * count:
            return -count
        return None


@dataclass(frozen=True)
class GraphWord:
    """Closed alternating word gamma_0 e_1 gamma_1 ... e_k gamma_k."""

    base: Vertex
    elements: tuple[VertexElement, ...]
    edges: tuple[Edge, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    def validate(self):
        if len(self.elements) != len(self.edges) + 1:
            raise MalformedWord("need one more vertex element than edges")
        here = self.base
        for element, edge in zip(self.elements, self.edges):
            if element.vertex != here:
                raise MalformedWord(f"element at {element.vertex.name}, expected {here.name}")
            if edge.source != here:
                raise MalformedWord(f"edge from {edge.source.name}, expected {here.name}")
            here = edge.target
        if self.elements[-1].vertex != here:
            raise MalformedWord("final element at the wrong vertex")
        if here != self.base:
            raise MalformedWord("word does not close up at the basepoint")
        return self


def make_graph_word(groups: VertexGroups, base: Vertex, parts) -> GraphWord:
    """GraphWord from a list of edges and vertex elements in walk order.

    Elements may be VertexElements, Words over the local generators, or
    None for the identity; consecutive elements at one vertex multiply,
    and missing elements default to the identity.
    """
    elements: list[VertexElement] = [groups.identity(base)]
    edges: list[Edge] = []
    here = base
    for part in parts:
        if isinstance(part, Edge):
            edges.append(part)
            here = part.target
            elements.append(groups.identity(here))
            continue
        if part is None:
            continue
        element = part if isinstance(part, VertexElement) else groups.normal_form(here, part)
        elements[-1] = groups.multiply(elements[-1], element)
    return GraphWord(base, tuple(elements), tuple(edges)).validate()


def graph_word_inverse(groups: VertexGroups, gw: GraphWord) -> GraphWord:
    return GraphWord(
        gw.base,
        tuple(groups.invert(e) for e in reversed(gw.elements)),
        tuple(e.conjugate() for e in reversed(gw.edges)),
    ).validate()


def graph_word_concat(groups: VertexGroups, first: GraphWord, second: GraphWord) -> GraphWord:
    if first.base != second.base:
        raise MalformedWord("concatenation needs a common basepoint")
    joined = groups.multiply(first.elements[-1], second.elements[0])
    return GraphWord(
        first.base,
        first.elements[:-1] + (joined,) + second.elements[1:],
        first.edges + second.edges,
    ).validate()


def _transport(groups: VertexGroups, edge: Edge, coords):
    """Move torus-subgroup coordinates across the gluing of edge's pair.

    coords are (a, b) at the target of edge; returns the VertexElement at
    the source expressing the same torus element on the other side.
    """
    matrix = POINT_TO_LINE if edge.target.kind == POINT else LINE_TO_POINT
    a, b = apply_matrix(matrix, coords)
    j, k = _edge_slots(groups.og, edge.pair)
    slot = j if edge.source.kind == POINT else k
    # mu_slot^a (lam mu_slot)^b = lam^b mu_slot^(a+b)
    return groups.normal_form(edge.source, [(0, b), (slot, a + b)])


def graph_word_reduce(groups: VertexGroups, gw: GraphWord) -> GraphWord:
    """Reduced form: repeatedly pinch e ebar spurs whose middle element
    lies in the glued torus subgroup, transporting it across the gluing."""
    gw.validate()
    elements = list(gw.elements)
    edges = list(gw.edges)
    changed = True
    while changed:
        changed = False
        for i in range(len(edges) - 1):
            if edges[i + 1] != edges[i].conjugate():
                continue
            vertex = edges[i].target
            j, k = _edge_slots(groups.og, edges[i].pair)
            slot = j if vertex.kind == POINT else k
            coords = groups.membership(vertex, slot, elements[i + 1])
            if coords is None:
                continue
            carried = _transport(groups, edges[i], coords)
            merged = groups.multiply(
                groups.multiply(elements[i], carried), elements[i + 2]
            )
            elements[i : i + 3] = [merged]
            edges[i : i + 2] = []
            changed = True
            break
    return GraphWord(gw.base, tuple(elements), tuple(edges))


def is_identity(groups: VertexGroups, gw: GraphWord) -> bool:
    """Whether the graph word represents the trivial element: reduce and
    check for an edgeless word with trivial vertex element."""
    reduced = graph_word_reduce(groups, gw)
    return reduced.length == 0 and reduced.elements[0].is_trivial


def vertex_normal_form(og: OrderedIncidenceGraph, vertex: Vertex, items,
                       convention: str = GEOMETRIC) -> VertexElement:
    """Normal form of a word in one vertex group; see VertexGroups.normal_form."""
    return VertexGroups(og, convention).normal_form(vertex, items)


def edge_subgroup_membership(og: OrderedIncidenceGraph, vertex: Vertex, slot: int,
                             element: VertexElement,
                             convention: str = GEOMETRIC):
    """Torus-subgroup coordinates of an element, or None; see VertexGroups."""
    return VertexGroups(og, convention).membership(vertex, slot, element)


def _mu_word_element(groups: VertexGroups, vertex: Vertex, w: Word) -> VertexElement:
    runs = []
    for sym, exp in w.letters:
        if sym.kind != MU or sym.vertex != vertex:
            raise ForeignGenerator(f"{sym.name} is not a meridian at {vertex.name}")
        runs.append((sym.slot, exp))
    return groups.normal_form(vertex, runs)


def edge_image_graph_word(groups: VertexGroups, edge: Edge, variant: str) -> list:
    """Alternating parts spelling the edge-word image of one directed edge.

    The conjugating word at an intermediate point p is realized as a spur
    into the point piece: cross to p, read the word, cross back.
    """
    from .presentations import g_word  # local import to keep layering one-way

    if edge.source.kind == POINT:
        forward = edge_image_graph_word(groups, edge.conjugate(), variant)
        out = []
        for part in reversed(forward):
            if isinstance(part, Edge):
                out.append(part.conjugate())
            else:
                out.append(groups.invert(part))
        return out
    line, point = edge.source, edge.target
    j = groups.og.slot(edge)
    parts: list = []
    for rank in range(2, j):
        intermediate = groups.og.order_at(line)[rank - 1].target
        core = _mu_word_element(groups, intermediate,
                                g_word(groups.og, line, intermediate, variant))
        parts.extend([Edge(line, intermediate), core, Edge(intermediate, line)])
    parts.append(edge)
    return parts


def cycle_image_graph_word(groups: VertexGroups, walk, variant: str) -> GraphWord:
    """GraphWord of the edge-word image of a closed walk."""
    walk = list(walk)
    if not walk:
        raise MalformedWord("empty walk")
    parts: list = []
    for edge in walk:
        parts.extend(edge_image_graph_word(groups, edge, variant))
    return make_graph_word(groups, walk[0].source, parts)
