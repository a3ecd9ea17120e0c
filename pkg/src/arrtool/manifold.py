"""Graph-manifold descriptor of the boundary 3-manifold of an arrangement.

Every vertex of the incidence graph contributes a piece: the complement of
a thickened d-component Hopf link in the 3-sphere, where d is the vertex
degree for point-vertices and degree + 1 for line-vertices (the extra
boundary torus faces the line at infinity and stays unglued). Each
conjugate edge pair contributes a torus gluing with the universal framing
change [[0, 1], [1, 1]]: the meridian on the line side matches the
longitude on the point side, and the line-side longitude matches meridian
plus longitude. First homology is computed from this data alone by integer
linear algebra, as an oracle independent of the group presentations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .incidence import IncidenceGraph, Vertex, POINT, LINE
from .snf import AbelianGroupDescription, cokernel

LINE_TO_POINT = ((0, 1), (1, 1))
POINT_TO_LINE = ((-1, 1), (1, 0))

INFINITY = "infinity"


class InconsistentDescriptor(Exception):
    """A boundary torus participates in more than one gluing."""


@dataclass(frozen=True)
class FramedTorus:
    owner: Vertex
    facing: Vertex | None  # None marks the unglued infinity torus
    slot: int  # 1-based position among the owner piece's boundary tori

    @property
    def label(self) -> str:
        if self.facing is None:
            return INFINITY
        return f"T[{self.facing.name},{self.owner.name}]"


@dataclass(frozen=True)
class VertexPiece:
    vertex: Vertex
    kind: str
    hopf_components: int  # the piece is S^3 minus a thickened d-component Hopf link
    boundary_tori: tuple[FramedTorus, ...]
    free_tori: tuple[FramedTorus, ...]


@dataclass(frozen=True)
class GluingMatrix:
    point_vertex: Vertex
    line_vertex: Vertex
    matrix: tuple[tuple[int, int], tuple[int, int]] = LINE_TO_POINT

    def determinant(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c


@dataclass(frozen=True)
class GraphManifoldDescriptor:
    pieces: tuple[VertexPiece, ...]
    gluings: tuple[GluingMatrix, ...]
    # recorded facts about the pieces, not computed here
    metadata: tuple[tuple[str, bool], ...] = (("haken", True), ("seifert_pieces", True))

    def piece(self, vertex: Vertex) -> VertexPiece:
        for piece in self.pieces:
            if piece.vertex == vertex:
                return piece
        raise KeyError(vertex)


def gluing_matrix(direction: str):
    """Framing coordinate change across a gluing torus.

    "from-line-side" converts coordinates in the line-piece framing to the
    point-piece framing and equals [[0, 1], [1, 1]]; "from-point-side" is
    its inverse [[-1, 1], [1, 0]].
    """
    if direction == "from-line-side":
        return LINE_TO_POINT
    if direction == "from-point-side":
        return POINT_TO_LINE
    raise ValueError(f"unknown direction {direction!r}")


def matrix_product(m1, m2):
    return tuple(
        tuple(sum(m1[i][k] * m2[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def apply_matrix(matrix, coords):
    (a, b), (c, d) = matrix
    x, y = coords
    return (a * x + b * y, c * x + d * y)


def build_descriptor(graph: IncidenceGraph) -> GraphManifoldDescriptor:
    """Vertex pieces plus one universal gluing per conjugate edge pair.

    An edgeless graph (mutually parallel lines) yields a disjoint list of
    solid-torus pieces with no gluings.
    """
    pieces = []
    for v in graph.point_vertices:
        neighbors = graph.neighbors(v)
        tori = tuple(
            FramedTorus(v, facing, slot) for slot, facing in enumerate(neighbors, start=1)
        )
        pieces.append(VertexPiece(v, POINT, len(neighbors), tori, ()))
    for v in graph.line_vertices:
        neighbors = graph.neighbors(v)
        tori = tuple(
            FramedTorus(v, facing, slot) for slot, facing in enumerate(neighbors, start=1)
        )
        infinity = FramedTorus(v, None, len(neighbors) + 1)
        pieces.append(VertexPiece(v, LINE, len(neighbors) + 1, tori, (infinity,)))
    gluings = tuple(GluingMatrix(point, line) for point, line in graph.pairs)
    return GraphManifoldDescriptor(tuple(pieces), gluings)


def validate_descriptor(descriptor: GraphManifoldDescriptor) -> list[str]:
    """All structural invariants; violations are reported, not raised."""
    violations = []
    by_vertex = {}
    for piece in descriptor.pieces:
        if piece.vertex in by_vertex:
            violations.append(f"duplicate piece for {piece.vertex.name}")
        by_vertex[piece.vertex] = piece
        matched = len(piece.boundary_tori)
        free = len(piece.free_tori)
        if piece.kind == POINT:
            if piece.hopf_components != matched:
                violations.append(
                    f"point piece {piece.vertex.name}: d={piece.hopf_components} "
                    f"but {matched} matched tori"
                )
            if free:
                violations.append(f"point piece {piece.vertex.name} has free tori")
        elif piece.kind == LINE:
            if piece.hopf_components != matched + 1:
                violations.append(
                    f"line piece {piece.vertex.name}: d={piece.hopf_components} "
                    f"but {matched} matched tori"
                )
            if free != 1:
                violations.append(
                    f"line piece {piece.vertex.name} has {free} free tori, expected 1"
                )
        else:
            violations.append(f"piece {piece.vertex.name} has unknown kind {piece.kind!r}")
        if piece.hopf_components < 1:
            violations.append(f"piece {piece.vertex.name} has d < 1")

    used: dict[tuple[Vertex, Vertex], int] = {}
    for gluing in descriptor.gluings:
        if gluing.point_vertex.kind != POINT or gluing.line_vertex.kind != LINE:
            violations.append(
                f"gluing {gluing.point_vertex.name}-{gluing.line_vertex.name} "
                "does not join a point piece to a line piece"
            )
        if gluing.determinant() != -1:
            violations.append(
                f"gluing {gluing.point_vertex.name}-{gluing.line_vertex.name} "
                f"has determinant {gluing.determinant()}, expected -1"
            )
        key = (gluing.point_vertex, gluing.line_vertex)
        used[key] = used.get(key, 0) + 1
        if used[key] > 1:
            violations.append(
                f"torus {gluing.point_vertex.name}-{gluing.line_vertex.name} glued twice"
            )
        for vertex in key:
            if vertex not in by_vertex:
                violations.append(f"gluing references missing piece {vertex.name}")
    for piece in descriptor.pieces:
        for torus in piece.boundary_tori:
            key = (
                (piece.vertex, torus.facing) if piece.kind == POINT
                else (torus.facing, piece.vertex)
            )
            if torus.facing is not None and key not in used:
                violations.append(
                    f"matched torus {torus.label} of {piece.vertex.name} has no gluing"
                )
    line_pieces = sum(1 for piece in descriptor.pieces if piece.kind == LINE)
    free_total = sum(len(piece.free_tori) for piece in descriptor.pieces)
    if free_total != line_pieces:
        violations.append(
            f"{free_total} free tori for {line_pieces} line pieces"
        )
    return violations


def _piece_graph_cycles(descriptor: GraphManifoldDescriptor) -> int:
    """b1 of the gluing graph: gluings - pieces + components."""
    parent = {piece.vertex: piece.vertex for piece in descriptor.pieces}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for gluing in descriptor.gluings:
        parent[find(gluing.point_vertex)] = find(gluing.line_vertex)
    components = len({find(v) for v in parent})
    return len(descriptor.gluings) - len(descriptor.pieces) + components


def h1_mayer_vietoris(descriptor: GraphManifoldDescriptor) -> AbelianGroupDescription:
    """First homology of the glued manifold by exact integer linear algebra.

    Generators are the meridian classes of every piece (the homology of a
    d-component Hopf link complement is free on its d meridians, and the
    fiber class is their sum because all pairwise linking numbers are 1)
    plus one free class per independent cycle of the gluing graph.
    Each gluing imposes the two framing identifications, with the torus
    longitude at slot j written as fiber class plus meridian j.
    """
    seen = set()
    for gluing in descriptor.gluings:
        key = (gluing.point_vertex, gluing.line_vertex)
        if key in seen:
            raise InconsistentDescriptor(
                f"torus {key[0].name}-{key[1].name} glued twice"
            )
        seen.add(key)

    index: dict[tuple[Vertex, int], int] = {}
    for piece in descriptor.pieces:
        for torus in piece.boundary_tori + piece.free_tori:
            index[(piece.vertex, torus.slot)] = len(index)
    extra = _piece_graph_cycles(descriptor)
    total = len(index) + extra

    def slot_facing(piece: VertexPiece, facing: Vertex) -> int:
        for torus in piece.boundary_tori:
            if torus.facing == facing:
                return torus.slot
        raise InconsistentDescriptor(
            f"piece {piece.vertex.name} has no torus facing {facing.name}"
        )

    rows = []
    for gluing in descriptor.gluings:
        point_piece = descriptor.piece(gluing.point_vertex)
        line_piece = descriptor.piece(gluing.line_vertex)
        j = slot_facing(point_piece, gluing.line_vertex)
        k = slot_facing(line_piece, gluing.point_vertex)

        def meridian(piece, slot):
            return index[(piece.vertex, slot)]

        def fiber(piece):
            return [index[(piece.vertex, t.slot)] for t in piece.boundary_tori + piece.free_tori]

        # meridian on the line side = longitude on the point side,
        # where longitude(slot) = fiber + meridian(slot)
        row = [0] * total
        row[meridian(line_piece, k)] += 1
        for g in fiber(point_piece):
            row[g] -= 1
        row[meridian(point_piece, j)] -= 1
        rows.append(row)
        # longitude on the line side = meridian + longitude on the point side
        row = [0] * total
        for g in fiber(line_piece):
            row[g] += 1
        row[meridian(line_piece, k)] += 1
        for g in fiber(point_piece):
            row[g] -= 1
        row[meridian(point_piece, j)] -= 2
        rows.append(row)

    return cokernel(rows, total)


def _compress(values: dict) -> dict[Vertex, int]:
    ranks = {value: rank for rank, value in enumerate(sorted(set(values.values())))}
    return {v: ranks[value] for v, value in values.items()}


def _refine_piece_colors(colors: dict[Vertex, int], adjacency) -> dict[Vertex, int]:
    while True:
        refined = _compress({
            v: (colors[v], tuple(sorted(colors[u] for u in adjacency[v])))
            for v in colors
        })
        if len(set(refined.values())) == len(set(colors.values())):
            return refined
        colors = refined


def canonical_form(descriptor: GraphManifoldDescriptor) -> str:
    """Relabel-invariant serialization of the descriptor.

    Pieces are renumbered by color refinement over (kind, d) with
    exhaustive tie-breaking, taking the lexicographically least
    serialization. Descriptors of isomorphic incidence graphs produce
    byte-identical output.
    """
    vertices = [piece.vertex for piece in descriptor.pieces]
    info = {piece.vertex: piece for piece in descriptor.pieces}
    adjacency: dict[Vertex, list[Vertex]] = {v: [] for v in vertices}
    for gluing in descriptor.gluings:
        adjacency[gluing.point_vertex].append(gluing.line_vertex)
        adjacency[gluing.line_vertex].append(gluing.point_vertex)

    base = _compress({
        v: (0 if info[v].kind == POINT else 1, info[v].hopf_components) for v in vertices
    })

    def serialize(order: list[Vertex]) -> str:
        rank = {v: i for i, v in enumerate(order)}
        lines = [
            f"piece {i} kind={info[v].kind} d={info[v].hopf_components}"
            for i, v in enumerate(order)
        ]
        glue_lines = sorted(
            f"glue {min(rank[g.point_vertex], rank[g.line_vertex])}"
            f"-{max(rank[g.point_vertex], rank[g.line_vertex])}"
            f" matrix={list(map(list, g.matrix))}"
            for g in descriptor.gluings
        )
        return "\n".join(lines + glue_lines) + "\n"

    best: list[str | None] = [None]

    def search(colors):
        colors = _refine_piece_colors(colors, adjacency)
        groups: dict[int, list[Vertex]] = {}
        for v in vertices:
            groups.setdefault(colors[v], []).append(v)
        ambiguous = [vs for vs in groups.values() if len(vs) > 1]
        if not ambiguous:
            order = sorted(vertices, key=lambda v: colors[v])
            text = serialize(order)
            if best[0] is None or text < best[0]:
                best[0] = text
            return
        cell = min(ambiguous, key=lambda vs: min(colors[v] for v in vs))
        for v in sorted(cell, key=Vertex.sort_key):
            search(_compress({u: (colors[u], 1 if u == v else 0) for u in vertices}))

    search(base)
    assert best[0] is not None
    return best[0]


def descriptor_to_json(descriptor: GraphManifoldDescriptor) -> dict:
    return {
        "pieces": [
            {
                "vertex": piece.vertex.name,
                "kind": piece.kind,
                "hopf_components": piece.hopf_components,
                "boundary_tori": [t.label for t in piece.boundary_tori],
                "free_tori": [t.label for t in piece.free_tori],
            }
            for piece in descriptor.pieces
        ],
        "gluings": [
            {
                "edge": [g.point_vertex.name, g.line_vertex.name],
                "matrix": [list(row) for row in g.matrix],
            }
            for g in descriptor.gluings
        ],
        "metadata": dict(descriptor.metadata),
    }
