import itertools
from fractions import Fraction

import pytest

from arrtool.arrangement import make_arrangement
from arrtool.corpus import corpus_arrangement, corpus_names
from arrtool.incidence import Edge, LINE, POINT, Vertex, betti1, build_ordered_graph
from arrtool.manifold import build_descriptor, h1_mayer_vietoris
from arrtool.presentations import (
    GEOMETRIC,
    PAPER_LITERAL,
    VARIANT_FOLLOWING,
    VARIANT_PRECEDING,
    DisconnectedGraph,
    GroupPresentation,
    IncidenceMismatch,
    SpanningTree,
    abelianize,
    boundary_presentation,
    complement_presentation,
    f_edge_word,
    g_word,
    non_tree_pairs,
    spanning_tree,
    vertex_group,
)
from arrtool.snf import AbelianGroupDescription
from arrtool.words import GeneratorSymbol, Word, lam, mu, stable, word


def arrangement(*pairs):
    return make_arrangement([(Fraction(a), Fraction(b)) for a, b in pairs])


TRIANGLE = build_ordered_graph(arrangement((0, 0), (1, 0), (-1, 1)))
TWO_GENERIC = build_ordered_graph(arrangement((1, 0), (-1, 0)))
NEAR_PENCIL = build_ordered_graph(corpus_arrangement("near_pencil_4"))
GENERIC4 = build_ordered_graph(corpus_arrangement("generic_4"))


# ---------------------------------------------------------------- words

def test_word_reduction_and_inverse():
    a, b = lam(Vertex(POINT, 0)), mu(Vertex(POINT, 0), 1)
    w = word(a, b, (b, -1), (a, -1), a)
    assert w == word(a)
    product = word(a, b) * word((b, -1), (a, 2))
    assert product == word((a, 3))
    assert (word(a, b) * word(a, b).inverse()).is_empty
    assert word((a, 2), b).inverse() == word((b, -1), (a, -2))
    assert word((a, 2), b).length() == 3


def test_word_text_tokens():
    a, b = lam(Vertex(LINE, 1)), mu(Vertex(POINT, 0), 2)
    assert word(a, (b, -3)).text() == "lam_L1 mu2_p0^-3"
    assert Word().text() == "1"


# ---------------------------------------------------------- vertex groups

def test_point_vertex_group_geometric():
    v = Vertex(POINT, 0)
    pres = vertex_group(TWO_GENERIC, v, GEOMETRIC)
    assert len(pres.generators) == 3
    assert len(pres.relators) == 3  # two commutators and the product relation
    assert word(mu(v, 1), mu(v, 2), (lam(v), -1)) in pres.relators
    assert abelianize(pres) == AbelianGroupDescription(2)


def test_line_vertex_group_both_conventions():
    # a line through two points: degree 2, no product relation either way
    og = TRIANGLE
    v = Vertex(LINE, 0)
    for convention in (GEOMETRIC, PAPER_LITERAL):
        pres = vertex_group(og, v, convention)
        assert len(pres.generators) == 3
        assert len(pres.relators) == 2
        assert abelianize(pres) == AbelianGroupDescription(3)


def test_point_vertex_group_paper_literal():
    pres = vertex_group(TWO_GENERIC, Vertex(POINT, 0), PAPER_LITERAL)
    assert abelianize(pres) == AbelianGroupDescription(3)


# --------------------------------------------------------------- g-words

def triple_point():
    # the near-pencil has one triple point; slope order there is
    # slot 1 = y=x, slot 2 = y=0, slot 3 = y=-x
    (p,) = [p for p in corpus_arrangement("near_pencil_4").points
            if len(p.incident_lines) == 3]
    return Vertex(POINT, p.index)


def test_g_word_conjugates_by_preceding():
    p = triple_point()
    line = Vertex(LINE, 0)  # y=0 is the 2nd line by slope at the triple point
    assert NEAR_PENCIL.slot(Edge(p, line)) == 2
    got = g_word(NEAR_PENCIL, line, p, VARIANT_PRECEDING)
    assert got == word(mu(p, 1), mu(p, 2), (mu(p, 1), -1))


def test_g_word_conjugates_by_following():
    p = triple_point()
    line = Vertex(LINE, 0)
    got = g_word(NEAR_PENCIL, line, p, VARIANT_FOLLOWING)
    assert got == word((mu(p, 3), -1), mu(p, 2), mu(p, 3))


def test_g_word_no_conjugators_degenerates_to_the_meridian():
    og = TWO_GENERIC
    p = Vertex(POINT, 0)
    first = og.order_at(p)[0].target
    last = og.order_at(p)[-1].target
    # no preceding lines at the first slot, no following lines at the last
    assert g_word(og, first, p, VARIANT_PRECEDING) == word(mu(p, 1))
    assert g_word(og, last, p, VARIANT_FOLLOWING) == word(mu(p, 2))
    # a degree-1 point-vertex (synthetic) gives the bare meridian either way
    from arrtool.incidence import IncidenceGraph, OrderedIncidenceGraph
    p0, l0 = Vertex(POINT, 0), Vertex(LINE, 0)
    graph = IncidenceGraph((p0,), (l0,), ((p0, l0),))
    og1 = OrderedIncidenceGraph(graph, (
        (p0, (Edge(p0, l0),)), (l0, (Edge(l0, p0),)),
    ))
    for variant in (VARIANT_PRECEDING, VARIANT_FOLLOWING):
        assert g_word(og1, l0, p0, variant) == word(mu(p0, 1))


def test_g_word_variants_agree_in_geometric_vertex_group():
    # with the product relation, conjugating by the preceding meridians or
    # by the inverse following meridians gives the same element
    from arrtool.graphwords import VertexGroups
    groups = VertexGroups(NEAR_PENCIL, GEOMETRIC)
    p = triple_point()
    for line_edge in NEAR_PENCIL.order_at(p):
        line = line_edge.target
        one = g_word(NEAR_PENCIL, line, p, VARIANT_PRECEDING)
        two = g_word(NEAR_PENCIL, line, p, VARIANT_FOLLOWING)
        assert groups.normal_form(p, one) == groups.normal_form(p, two)


def test_g_word_incidence_mismatch():
    p = Vertex(POINT, 0)  # not on line 2 of the generic 4 arrangement? find one
    arr = corpus_arrangement("generic_4")
    point = arr.points[0]
    off_line = next(l.index for l in arr.lines if l.index not in point.incident_lines)
    with pytest.raises(IncidenceMismatch):
        g_word(GENERIC4, Vertex(LINE, off_line), Vertex(POINT, point.index))


# --------------------------------------------------------------- f-words

def test_f_edge_word_short_lines_give_bare_transport():
    og = TRIANGLE
    tree = spanning_tree(og)
    (extra,) = non_tree_pairs(og, tree)
    crossing = Edge(Vertex(LINE, extra[1]), Vertex(POINT, extra[0]))
    assert f_edge_word(og, crossing) == word(stable(extra))
    # every tree edge on a 2-point line contributes the empty word
    for point, line in og.graph.pairs:
        if (point.index, line.index) == extra:
            continue
        assert f_edge_word(og, Edge(line, point)).is_empty


def test_f_edge_word_longer_line_prefixes_g():
    # line y=2x+1 of the near-pencil meets 3 points; its 3rd edge by
    # decreasing x picks up the conjugating word of the 2nd point
    og = NEAR_PENCIL
    tree = spanning_tree(og)
    line = Vertex(LINE, 3)
    order = og.order_at(line)
    assert len(order) == 3
    middle = order[1].target
    got = f_edge_word(og, order[2], tree=tree)
    assert tree.contains(order[2])  # transport letter is empty here
    assert got == g_word(og, line, middle)


def test_f_edge_word_inverse_property():
    for og in (TRIANGLE, NEAR_PENCIL, GENERIC4):
        tree = spanning_tree(og)
        for point, line in og.graph.pairs:
            forward = f_edge_word(og, Edge(line, point), tree=tree)
            backward = f_edge_word(og, Edge(point, line), tree=tree)
            assert (forward * backward).is_empty


def test_f_edge_word_mismatch():
    arr = corpus_arrangement("generic_4")
    point = arr.points[0]
    off_line = next(l.index for l in arr.lines if l.index not in point.incident_lines)
    with pytest.raises(IncidenceMismatch):
        f_edge_word(GENERIC4, Edge(Vertex(LINE, off_line), Vertex(POINT, point.index)))


# ------------------------------------------------------- presentations

def test_boundary_presentation_matches_oracle_everywhere():
    for name in corpus_names():
        og = build_ordered_graph(corpus_arrangement(name))
        if not og.graph.is_connected():
            continue
        left = abelianize(boundary_presentation(og))
        right = h1_mayer_vietoris(build_descriptor(og.graph))
        assert left == right, name


def test_boundary_presentation_frozen_values():
    assert abelianize(boundary_presentation(TWO_GENERIC)) == AbelianGroupDescription(2)
    og3 = build_ordered_graph(corpus_arrangement("pencil_3"))
    assert abelianize(boundary_presentation(og3)) == AbelianGroupDescription(3)
    assert abelianize(boundary_presentation(TRIANGLE)) == AbelianGroupDescription(4)


def test_triangle_has_one_stable_letter():
    pres = boundary_presentation(TRIANGLE)
    stables = [g for g in pres.generators if g.kind == "stable"]
    assert len(stables) == 1


def test_paper_literal_overcounts():
    assert abelianize(
        boundary_presentation(TWO_GENERIC, PAPER_LITERAL)
    ) == AbelianGroupDescription(3)


def bfs_tree_from(og, root):
    parents = []
    tree_pairs = set()
    visited = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for edge in og.order_at(v):
                if edge.target not in visited:
                    visited.add(edge.target)
                    parents.append((edge.target, edge))
                    tree_pairs.add(edge.pair)
                    nxt.append(edge.target)
        frontier = nxt
    return SpanningTree(root, frozenset(tree_pairs), tuple(parents))


def test_spanning_tree_independence_of_abelianization():
    for og in (TRIANGLE, GENERIC4, NEAR_PENCIL):
        default = abelianize(boundary_presentation(og))
        for root in og.graph.vertices:
            other = bfs_tree_from(og, root)
            assert abelianize(boundary_presentation(og, tree=other)) == default


def test_boundary_rejects_disconnected():
    og = build_ordered_graph(corpus_arrangement("parallel_pair"))
    with pytest.raises(DisconnectedGraph):
        boundary_presentation(og)


def test_complement_homology_is_Zk():
    for name in corpus_names():
        arr = corpus_arrangement(name)
        og = build_ordered_graph(arr)
        if not og.graph.is_connected():
            continue
        for variant in (VARIANT_PRECEDING, VARIANT_FOLLOWING):
            got = abelianize(complement_presentation(og, variant=variant))
            assert got == AbelianGroupDescription(len(arr.lines)), (name, variant)


def test_complement_adds_betti_relators():
    for name in ("triangle", "generic_4", "near_pencil_4", "pencil_4"):
        og = build_ordered_graph(corpus_arrangement(name))
        base = boundary_presentation(og)
        full = complement_presentation(og)
        assert len(full.relators) - len(base.relators) == betti1(og.graph), name


def test_all_parallel_complement_is_free():
    og = build_ordered_graph(corpus_arrangement("parallel_pair"))
    pres = complement_presentation(og)
    assert len(pres.generators) == 2
    assert not pres.relators
    assert abelianize(pres) == AbelianGroupDescription(2)
    single = build_ordered_graph(arrangement((1, 0)))
    pres = complement_presentation(single)
    assert len(pres.generators) == 1 and not pres.relators


def test_presentation_provenance():
    pres = complement_presentation(TRIANGLE)
    prov = pres.provenance_map()
    assert prov["space"] == "complement"
    assert prov["convention"] == GEOMETRIC
    assert prov["variant"] == VARIANT_PRECEDING
    assert "spanning_tree" in prov and "basepoint" in prov
    assert GroupPresentation(pres.generators, pres.relators).text().startswith("gens: ")


def test_presentation_rejects_foreign_relator():
    v = Vertex(POINT, 0)
    with pytest.raises(ValueError):
        GroupPresentation((lam(v),), (word(mu(v, 1)),))


# ----------------------------------------------------------- abelianize

def test_abelianize_examples():
    a, b = lam(Vertex(LINE, 0)), lam(Vertex(LINE, 1))
    commutator = word(a, b, (a, -1), (b, -1))
    assert abelianize(GroupPresentation((a, b), (commutator,))) == AbelianGroupDescription(2)
    squared = GroupPresentation((a,), (word((a, 2)),))
    assert abelianize(squared) == AbelianGroupDescription(0, (2,))
    assert abelianize(
        complement_presentation(TRIANGLE)
    ) == AbelianGroupDescription(3)


# ------------------------------------------------- model homomorphism

class CentralTimesFree:
    """Elements (n, w) of Z x F: central exponent and reduced free word."""

    @staticmethod
    def mul(first, second):
        n = first[0] + second[0]
        letters = list(first[1])
        for item in second[1]:
            if letters and letters[-1] == (item[0], -item[1]):
                letters.pop()
            else:
                letters.append(item)
        return (n, tuple(letters))

    @staticmethod
    def inv(element):
        return (-element[0], tuple((g, -e) for g, e in reversed(element[1])))

    @classmethod
    def power(cls, element, exponent):
        out = (0, ())
        step = element if exponent > 0 else cls.inv(element)
        for _ in range(abs(exponent)):
            out = cls.mul(out, step)
        return out


def pencil_model_images(og, k):
    """Images of every generator in Z x F_{k-1} for a pencil of k lines."""
    p = Vertex(POINT, 0)
    images = {lam(p): (1, ())}
    for slot in range(1, k):
        images[mu(p, slot)] = (0, ((slot, 1),))
    images[mu(p, k)] = (1, tuple((slot, -1) for slot in range(k - 1, 0, -1)))
    for edge in og.order_at(p):
        line = edge.target
        j = og.slot(edge)
        mu_j = images[mu(p, j)]
        images[mu(line, 1)] = CentralTimesFree.mul((1, ()), mu_j)
        images[lam(line)] = mu_j
    return images


def test_pencil_presentations_map_onto_the_closed_form():
    for k in range(2, 6):
        og = build_ordered_graph(corpus_arrangement(f"pencil_{k}"))
        pres = complement_presentation(og)
        images = pencil_model_images(og, k)
        for relator in pres.relators:
            value = (0, ())
            for sym, exp in relator.letters:
                value = CentralTimesFree.mul(value, CentralTimesFree.power(images[sym], exp))
            assert value == (0, ()), (k, relator.text())
