"""Line arrangements over the rationals: ordered incidence graphs, the
graph-manifold structure of the boundary 3-manifold, and finite
presentations of the boundary and complement fundamental groups, with
integer-homology oracles and Bass-Serre word reduction for verification.
"""

from .arrangement import (
    Arrangement,
    ArrangementError,
    Classification,
    DuplicateLine,
    Line,
    ParseError,
    Point,
    VerticalLineUnsupported,
    arrangement_to_json,
    classify,
    intersection_points,
    make_arrangement,
    parse_arrangement,
)
from .incidence import (
    Edge,
    IncidenceGraph,
    OrderedIncidenceGraph,
    Vertex,
    are_isomorphic,
    betti1,
    build_incidence_graph,
    build_ordered_graph,
    export_dot,
    graph_from_json,
    graph_to_json,
    ordered_graph_from_json,
    ordered_graph_to_json,
    relabel,
    relabel_ordered,
)
from .wiring import AmbiguousOrder, Segment, WiringDiagram, build_wiring_diagram
from .manifold import (
    FramedTorus,
    GluingMatrix,
    GraphManifoldDescriptor,
    InconsistentDescriptor,
    VertexPiece,
    build_descriptor,
    canonical_form,
    descriptor_to_json,
    gluing_matrix,
    h1_mayer_vietoris,
    validate_descriptor,
)
from .snf import AbelianGroupDescription, smith_normal_form
from .words import GeneratorSymbol, Word, commutator, lam, mu, stable, word
from .presentations import (
    CONVENTIONS,
    GEOMETRIC,
    PAPER_LITERAL,
    VARIANTS,
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
    fundamental_cycle,
    g_word,
    spanning_tree,
    vertex_group,
)
from .graphwords import (
    ForeignGenerator,
    GraphWord,
    MalformedWord,
    VertexElement,
    VertexGroups,
    cycle_image_graph_word,
    edge_subgroup_membership,
    graph_word_concat,
    graph_word_inverse,
    graph_word_reduce,
    is_identity,
    make_graph_word,
    vertex_normal_form,
)
from .tietze import tietze_simplify
from .corpus import CORPUS, corpus_arrangement, corpus_document, corpus_names
from .checks import CheckResult, run_all_checks

__version__ = "0.1.0"
