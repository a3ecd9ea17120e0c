"""Built-in verification battery over the named corpus.

Each check is a named, seed-reproducible pass/fail item. The CLI check
command and the acceptance test suite both run exactly these.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .arrangement import Arrangement
from .corpus import corpus_arrangement, corpus_names
from .incidence import (
    are_isomorphic,
    betti1,
    build_incidence_graph,
    build_ordered_graph,
    relabel,
)
from .manifold import (
    build_descriptor,
    canonical_form,
    gluing_matrix,
    h1_mayer_vietoris,
    matrix_product,
    validate_descriptor,
)
from .presentations import (
    GEOMETRIC,
    VARIANTS,
    VARIANT_PRECEDING,
    abelianize,
    boundary_presentation,
    complement_presentation,
    fundamental_cycle,
    non_tree_pairs,
    spanning_tree,
)
from .graphwords import (
    VertexGroups,
    cycle_image_graph_word,
    graph_word_concat,
    graph_word_inverse,
    graph_word_reduce,
    is_identity,
    make_graph_word,
)
from .snf import AbelianGroupDescription
from .tietze import tietze_simplify
from .wiring import build_wiring_diagram


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _result(name, passed, detail, started):
    return CheckResult(name, passed, detail, time.perf_counter() - started)


def _connected_names():
    return [n for n in corpus_names()
            if build_incidence_graph(corpus_arrangement(n)).is_connected()]


def _boundary_h1(og, convention) -> AbelianGroupDescription:
    """H1 of the boundary from the presentation side; for the edgeless
    (all-parallel) case the manifold is a disjoint union of solid tori and
    homology is summed componentwise."""
    graph = og.graph
    if graph.is_connected():
        return abelianize(boundary_presentation(og, convention))
    if graph.pairs:
        raise ValueError("disconnected graphs occur only in the edgeless case")
    return AbelianGroupDescription(len(graph.line_vertices))


def _named_arrangements(extra: Arrangement | None):
    items = [(name, corpus_arrangement(name)) for name in corpus_names()]
    if extra is not None:
        items.append(("input", extra))
    return items


def check_h1_cross_oracle(convention=GEOMETRIC, extra=None, **_) -> CheckResult:
    """Presentation homology equals Mayer-Vietoris homology, exactly."""
    started = time.perf_counter()
    failures = []
    for name, arr in _named_arrangements(extra):
        one = time.perf_counter()
        og = build_ordered_graph(arr)
        left = _boundary_h1(og, convention)
        right = h1_mayer_vietoris(build_descriptor(og.graph))
        took = time.perf_counter() - one
        if left != right:
            failures.append(f"{name}: presentation {left} != mayer-vietoris {right}")
        if took >= 1.0:
            failures.append(f"{name}: took {took:.2f}s (budget 1s)")
    detail = "; ".join(failures) if failures else "all corpus arrangements agree"
    return _result("h1_cross_oracle", not failures, detail, started)


def check_complement_homology(extra=None, **_) -> CheckResult:
    """Complement abelianization is Z^k under both word variants."""
    started = time.perf_counter()
    failures = []
    for name, arr in _named_arrangements(extra):
        og = build_ordered_graph(arr)
        if not og.graph.is_connected():
            continue
        expected = AbelianGroupDescription(len(arr.lines))
        for variant in VARIANTS:
            one = time.perf_counter()
            got = abelianize(complement_presentation(og, variant=variant))
            took = time.perf_counter() - one
            if got != expected:
                failures.append(f"{name}/{variant}: {got} != {expected}")
            if took >= 1.0:
                failures.append(f"{name}/{variant}: took {took:.2f}s (budget 1s)")
    detail = "; ".join(failures) if failures else "Z^k for every connected arrangement"
    return _result("complement_homology", not failures, detail, started)


def _is_commutator(letters) -> bool:
    """Whether an expanded letter tuple freely equals some [u, v]."""
    n = len(letters)
    if n % 2:
        return False
    word = list(letters)
    for i in range(1, n):
        for j in range(i + 1, n):
            u, v = word[:i], word[i:j]
            cand = u + v + [(s, -e) for s, e in reversed(u)] + [(s, -e) for s, e in reversed(v)]
            stack = []
            for item in cand:
                if stack and stack[-1][0] == item[0] and stack[-1][1] == -item[1]:
                    stack.pop()
                else:
                    stack.append(item)
            if stack == word:
                return True
    return False


def check_pencil_oracle(**_) -> CheckResult:
    """Pencils of 2..5 lines: simplified complement groups have homology
    Z^k, and the 2-line pencil simplifies to one commutator on two
    generators."""
    started = time.perf_counter()
    failures = []
    for k in range(2, 6):
        arr = corpus_arrangement(f"pencil_{k}")
        og = build_ordered_graph(arr)
        simplified = tietze_simplify(complement_presentation(og))
        got = abelianize(simplified)
        if got != AbelianGroupDescription(k):
            failures.append(f"pencil_{k}: abelianization {got}")
        if k == 2:
            if len(simplified.generators) != 2 or len(simplified.relators) != 1:
                failures.append(
                    f"pencil_2: {len(simplified.generators)} generators,"
                    f" {len(simplified.relators)} relators"
                )
            elif not _is_commutator(simplified.relators[0].expand()):
                failures.append("pencil_2: relator is not a commutator")
    detail = "; ".join(failures) if failures else "pencils 2..5 match the closed form"
    return _result("pencil_oracle", not failures, detail, started)


def check_gluing_algebra(extra=None, **_) -> CheckResult:
    """Universal matrix determinant -1, inverse composition, and clean
    descriptor validation across the corpus."""
    started = time.perf_counter()
    failures = []
    from_line = gluing_matrix("from-line-side")
    from_point = gluing_matrix("from-point-side")
    det = from_line[0][0] * from_line[1][1] - from_line[0][1] * from_line[1][0]
    if det != -1:
        failures.append(f"determinant {det}")
    if matrix_product(from_line, from_point) != ((1, 0), (0, 1)):
        failures.append("reverse composition is not the identity")
    if matrix_product(from_point, from_line) != ((1, 0), (0, 1)):
        failures.append("composition is not the identity")
    for name, arr in _named_arrangements(extra):
        violations = validate_descriptor(build_descriptor(build_incidence_graph(arr)))
        if violations:
            failures.append(f"{name}: {violations}")
    detail = "; ".join(failures) if failures else "matrix algebra and descriptors clean"
    return _result("gluing_algebra", not failures, detail, started)


def check_combinatorial_invariance(seed=0, extra=None, **_) -> CheckResult:
    """100 random relabelings per arrangement: canonical descriptor forms
    are byte-identical and the graphs are found isomorphic."""
    started = time.perf_counter()
    rng = random.Random(seed)
    failures = []
    for name, arr in _named_arrangements(extra):
        graph = build_incidence_graph(arr)
        reference = canonical_form(build_descriptor(graph))
        n_points = len(graph.point_vertices)
        n_lines = len(graph.line_vertices)
        for trial in range(100):
            point_map = dict(zip(range(n_points), rng.sample(range(n_points), n_points)))
            line_map = dict(zip(range(n_lines), rng.sample(range(n_lines), n_lines)))
            shuffled = relabel(graph, point_map, line_map)
            if canonical_form(build_descriptor(shuffled)) != reference:
                failures.append(f"{name} trial {trial}: canonical form changed")
                break
            if are_isomorphic(graph, shuffled) is None:
                failures.append(f"{name} trial {trial}: isomorphism not found")
                break
    took = time.perf_counter() - started
    if took >= 10.0:
        failures.append(f"took {took:.2f}s (budget 10s)")
    detail = "; ".join(failures) if failures else "canonical forms stable under relabeling"
    return _result("combinatorial_invariance", not failures, detail, started)


def random_vertex_element(groups: VertexGroups, vertex, rng):
    degree = len(groups.og.order_at(vertex))
    free_rank = degree - 1 if vertex.kind == "point" else degree
    runs = [(0, rng.randrange(-2, 3))]
    for _ in range(rng.randrange(0, 3)):
        if free_rank:
            runs.append((rng.randrange(1, free_rank + 1), rng.choice((-2, -1, 1, 2))))
    return groups.normal_form(vertex, runs)


def random_graph_word(groups: VertexGroups, tree, rng):
    """Random closed word: a short random walk, then home along the tree."""
    og = groups.og
    here = tree.basepoint
    parts = [random_vertex_element(groups, here, rng)]
    for _ in range(rng.randrange(1, 5)):
        edge = rng.choice(og.order_at(here))
        parts.append(edge)
        here = edge.target
        parts.append(random_vertex_element(groups, here, rng))
    for edge in tree.path(here, tree.basepoint):
        parts.append(edge)
        parts.append(random_vertex_element(groups, edge.target, rng))
    return make_graph_word(groups, tree.basepoint, parts)


def check_bass_serre_suite(seed=0, **_) -> CheckResult:
    """1000 seeded random words on the triangle: reduction is idempotent
    and never lengthens, w w^-1 is trivial, and no reduced word of length
    at least 2 is reported trivial."""
    started = time.perf_counter()
    rng = random.Random(seed + 1)
    og = build_ordered_graph(corpus_arrangement("triangle"))
    groups = VertexGroups(og)
    tree = spanning_tree(og)
    failures = []
    for trial in range(1000):
        word = random_graph_word(groups, tree, rng)
        reduced = graph_word_reduce(groups, word)
        if reduced.length > word.length:
            failures.append(f"trial {trial}: reduction lengthened the word")
            break
        if graph_word_reduce(groups, reduced) != reduced:
            failures.append(f"trial {trial}: reduction is not idempotent")
            break
        cancel = graph_word_concat(groups, word, graph_word_inverse(groups, word))
        if not is_identity(groups, cancel):
            failures.append(f"trial {trial}: w w^-1 did not reduce to the identity")
            break
        if reduced.length >= 2 and is_identity(groups, word):
            failures.append(f"trial {trial}: reduced word of length >= 2 called trivial")
            break
    took = time.perf_counter() - started
    if took >= 5.0:
        failures.append(f"took {took:.2f}s (budget 5s)")
    detail = "; ".join(failures) if failures else "1000 random words behaved"
    return _result("bass_serre_suite", not failures, detail, started)


def random_nontrivial_walk(og, tree, rng):
    """Closed walk whose class in the free group on the non-tree pairs is
    a random nonempty reduced word, hence homotopically nontrivial."""
    pairs = non_tree_pairs(og, tree)
    letters = []
    while not letters:
        for _ in range(rng.randrange(1, 4)):
            choice = (rng.choice(pairs), rng.choice((1, -1)))
            if letters and letters[-1][0] == choice[0] and letters[-1][1] == -choice[1]:
                letters.pop()
            else:
                letters.append(choice)
    walk = []
    for pair, sign in letters:
        cycle = fundamental_cycle(og, tree, pair)
        if sign < 0:
            cycle = [e.conjugate() for e in reversed(cycle)]
        walk.extend(cycle)
    # erase backtracking spurs; the walk class is nontrivial so it survives
    changed = True
    while changed:
        changed = False
        for i in range(len(walk) - 1):
            if walk[i + 1] == walk[i].conjugate():
                del walk[i : i + 2]
                changed = True
                break
    return walk


def check_f_injectivity(seed=0, **_) -> CheckResult:
    """100 random nontrivial cycles on the triangle and the generic 4-line
    arrangement: the image word of each cycle is not the identity."""
    started = time.perf_counter()
    rng = random.Random(seed + 2)
    failures = []
    for name in ("triangle", "generic_4"):
        og = build_ordered_graph(corpus_arrangement(name))
        groups = VertexGroups(og)
        tree = spanning_tree(og)
        for trial in range(100):
            walk = random_nontrivial_walk(og, tree, rng)
            image = cycle_image_graph_word(groups, walk, VARIANT_PRECEDING)
            if is_identity(groups, image):
                failures.append(f"{name} trial {trial}: image of a nontrivial cycle is trivial")
                break
    took = time.perf_counter() - started
    if took >= 5.0:
        failures.append(f"took {took:.2f}s (budget 5s)")
    detail = "; ".join(failures) if failures else "200 cycle images are nontrivial"
    return _result("f_injectivity", not failures, detail, started)


def check_relator_count(extra=None, **_) -> CheckResult:
    """Cycle relators added to the complement presentation number exactly
    b1 of the incidence graph."""
    started = time.perf_counter()
    failures = []
    for name, arr in _named_arrangements(extra):
        og = build_ordered_graph(arr)
        if not og.graph.is_connected():
            continue
        boundary = boundary_presentation(og)
        complement = complement_presentation(og)
        added = len(complement.relators) - len(boundary.relators)
        expected = betti1(og.graph)
        if added != expected:
            failures.append(f"{name}: added {added}, b1 {expected}")
    detail = "; ".join(failures) if failures else "added relators match b1 everywhere"
    return _result("relator_count", not failures, detail, started)


def check_disconnected_case(**_) -> CheckResult:
    """k parallel lines: k solid-torus pieces, no gluings, free complement
    group of rank k."""
    started = time.perf_counter()
    failures = []
    from .arrangement import make_arrangement
    from fractions import Fraction

    for k in (2, 3, 4):
        arr = make_arrangement([(Fraction(0), Fraction(i)) for i in range(k)])
        graph = build_incidence_graph(arr)
        descriptor = build_descriptor(graph)
        if len(descriptor.gluings) != 0:
            failures.append(f"k={k}: unexpected gluings")
        solid = [p for p in descriptor.pieces if p.hopf_components == 1]
        if len(solid) != k or len(descriptor.pieces) != k:
            failures.append(f"k={k}: pieces are not k solid tori")
        presentation = complement_presentation(build_ordered_graph(arr))
        if len(presentation.generators) != k or presentation.relators:
            failures.append(f"k={k}: complement group is not free of rank {k}")
    detail = "; ".join(failures) if failures else "parallel families give solid tori and free groups"
    return _result("disconnected_case", not failures, detail, started)


def check_wiring_consistency(extra=None, **_) -> CheckResult:
    """The wiring 1-complex has the b1 and component count of the graph."""
    started = time.perf_counter()
    failures = []
    for name, arr in _named_arrangements(extra):
        graph = build_incidence_graph(arr)
        diagram = build_wiring_diagram(arr)
        if diagram.betti1() != betti1(graph):
            failures.append(f"{name}: b1 {diagram.betti1()} != {betti1(graph)}")
        if diagram.component_count() != len(graph.components()):
            failures.append(
                f"{name}: components {diagram.component_count()}"
                f" != {len(graph.components())}"
            )
    detail = "; ".join(failures) if failures else "wiring matches the graph everywhere"
    return _result("wiring_consistency", not failures, detail, started)


ALL_CHECKS = (
    check_h1_cross_oracle,
    check_complement_homology,
    check_pencil_oracle,
    check_gluing_algebra,
    check_combinatorial_invariance,
    check_bass_serre_suite,
    check_f_injectivity,
    check_relator_count,
    check_disconnected_case,
    check_wiring_consistency,
)


def run_all_checks(convention=GEOMETRIC, seed=0, extra: Arrangement | None = None):
    return [
        check(convention=convention, seed=seed, extra=extra) for check in ALL_CHECKS
    ]
