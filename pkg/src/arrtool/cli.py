"""Command-line front end.

    arrtool <info|graph|manifold|pi1|check> [--input FILE] [options]

Exit codes: 0 success, 1 check failure, 2 input error, 3 internal
consistency violation. Every run is deterministic given the input, the
flags, and the seed; structured output carries a provenance block.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .arrangement import (
    Arrangement,
    ArrangementError,
    arrangement_to_json,
    parse_arrangement,
)
from .checks import run_all_checks
from .corpus import corpus_names
from .incidence import (
    betti1,
    build_incidence_graph,
    build_ordered_graph,
    export_dot,
    graph_to_json,
    ordered_graph_to_json,
)
from .manifold import build_descriptor, descriptor_to_json, h1_mayer_vietoris, validate_descriptor
from .presentations import (
    CONVENTIONS,
    GEOMETRIC,
    VARIANTS,
    VARIANT_PRECEDING,
    DisconnectedGraph,
    abelianize,
    boundary_presentation,
    complement_presentation,
    spanning_tree,
)
from .tietze import tietze_simplify

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_CONSISTENCY = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str | None
    space: str
    convention: str
    variant: str
    ordered: bool
    simplify: bool
    output_format: str
    seed: int


def _provenance(config: RunConfig, **extra) -> dict:
    block = {
        "convention": config.convention,
        "variant": config.variant,
        "seed": config.seed,
    }
    block.update(extra)
    return block


def _load_arrangement(config: RunConfig) -> Arrangement:
    if config.input_path is None:
        raise ArrangementError("an input document is required (--input FILE, '-' for stdin)")
    if config.input_path == "-":
        text = sys.stdin.read()
    else:
        with open(config.input_path, "r", encoding="utf-8") as handle:
            text = handle.read()
    return parse_arrangement(text)


def _emit(doc: dict, config: RunConfig, text_fallback: str | None = None):
    if config.output_format == "structured":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text_fallback if text_fallback is not None else json.dumps(doc, indent=2))


def cmd_info(config: RunConfig) -> int:
    arr = _load_arrangement(config)
    graph = build_incidence_graph(arr)
    point_degrees = sorted((graph.degree(v) for v in graph.point_vertices), reverse=True)
    line_degrees = sorted((graph.degree(v) for v in graph.line_vertices), reverse=True)
    summary = (
        f"lines={len(arr.lines)} points={len(arr.points)}"
        f" b1={betti1(graph)} class={arr.classification.value}"
    )
    if config.output_format == "structured":
        doc = arrangement_to_json(arr)
        doc.update(
            betti1=betti1(graph),
            point_degrees=point_degrees,
            line_degrees=line_degrees,
            provenance=_provenance(config),
        )
        _emit(doc, config)
    else:
        print(summary)
        print(f"degrees: points={point_degrees} lines={line_degrees}")
    return EXIT_OK


def cmd_graph(config: RunConfig) -> int:
    arr = _load_arrangement(config)
    if config.ordered:
        og = build_ordered_graph(arr)
        if config.output_format == "structured":
            doc = ordered_graph_to_json(og)
            doc["provenance"] = _provenance(config)
            _emit(doc, config)
        else:
            print(export_dot(og), end="")
    else:
        graph = build_incidence_graph(arr)
        if config.output_format == "structured":
            doc = graph_to_json(graph)
            doc["provenance"] = _provenance(config)
            _emit(doc, config)
        else:
            print(export_dot(graph), end="")
    return EXIT_OK


def cmd_manifold(config: RunConfig) -> int:
    arr = _load_arrangement(config)
    descriptor = build_descriptor(build_incidence_graph(arr))
    violations = validate_descriptor(descriptor)
    doc = descriptor_to_json(descriptor)
    doc["violations"] = violations
    doc["h1"] = str(h1_mayer_vietoris(descriptor))
    doc["provenance"] = _provenance(config)
    if config.output_format == "structured":
        _emit(doc, config)
    else:
        print(
            f"pieces={len(descriptor.pieces)} gluings={len(descriptor.gluings)}"
            f" free_tori={sum(len(p.free_tori) for p in descriptor.pieces)}"
            f" h1={doc['h1']}"
        )
        for piece in descriptor.pieces:
            print(
                f"piece {piece.vertex.name} kind={piece.kind} d={piece.hopf_components}"
                f" free={len(piece.free_tori)}"
            )
        for gluing in descriptor.gluings:
            print(
                f"glue {gluing.point_vertex.name}-{gluing.line_vertex.name}"
                f" matrix={[list(r) for r in gluing.matrix]}"
            )
        for violation in violations:
            print(f"violation: {violation}")
    return EXIT_CONSISTENCY if violations else EXIT_OK


def cmd_pi1(config: RunConfig) -> int:
    arr = _load_arrangement(config)
    og = build_ordered_graph(arr)
    if config.space == "boundary":
        if not og.graph.is_connected():
            print("DisconnectedGraph: boundary group needs a connected incidence graph",
                  file=sys.stderr)
            return EXIT_INPUT_ERROR
        presentation = boundary_presentation(og, config.convention)
    else:
        presentation = complement_presentation(og, config.convention, config.variant)
    if config.simplify:
        presentation = tietze_simplify(presentation)
    homology = abelianize(presentation)
    if config.output_format == "structured":
        doc = {
            "generators": [g.name for g in presentation.generators],
            "relators": [r.text() for r in presentation.relators],
            "abelianization": str(homology),
            "provenance": _provenance(config, **presentation.provenance_map()),
        }
        _emit(doc, config)
    else:
        print(presentation.text(), end="")
        print(f"abelianization: {homology}")
        for key, value in presentation.provenance:
            print(f"# {key}: {value}")
    return EXIT_OK


def cmd_check(config: RunConfig) -> int:
    extra = None
    if config.input_path is not None:
        extra = _load_arrangement(config)
    results = run_all_checks(convention=config.convention, seed=config.seed, extra=extra)
    failures = [r for r in results if not r.passed]
    if config.output_format == "structured":
        doc = {
            "results": [
                {"name": r.name, "passed": r.passed, "detail": r.detail}
                for r in results
            ],
            "passed": not failures,
            "provenance": _provenance(config, corpus=",".join(corpus_names())),
        }
        _emit(doc, config)
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
        print(f"{len(results) - len(failures)}/{len(results)} checks passed")
    return EXIT_CHECK_FAILURE if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrtool",
        description="Line arrangements: incidence graphs, boundary graph "
                    "manifolds, fundamental group presentations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("info", "arrangement summary: line/point counts, class, b1"),
        ("graph", "incidence graph as DOT or structured text"),
        ("manifold", "graph-manifold descriptor with validation report"),
        ("pi1", "fundamental group presentation"),
        ("check", "run the built-in verification battery"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--input", default=None, metavar="FILE",
                         help="input document ('-' reads stdin)")
        cmd.add_argument("--space", choices=("boundary", "complement"),
                         default="complement")
        cmd.add_argument("--convention", choices=CONVENTIONS, default=GEOMETRIC)
        cmd.add_argument("--variant", choices=VARIANTS, default=VARIANT_PRECEDING)
        cmd.add_argument("--ordered", action="store_true",
                         help="use per-vertex edge orders in graph output")
        cmd.add_argument("--simplify", action="store_true",
                         help="apply Tietze simplification to presentations")
        cmd.add_argument("--format", choices=("text", "structured"), default="text")
        cmd.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS = {
    "info": cmd_info,
    "graph": cmd_graph,
    "manifold": cmd_manifold,
    "pi1": cmd_pi1,
    "check": cmd_check,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command,
        input_path=args.input,
        space=args.space,
        convention=args.convention,
        variant=args.variant,
        ordered=args.ordered,
        simplify=args.simplify,
        output_format=args.format,
        seed=args.seed,
    )
    try:
        return COMMANDS[config.command](config)
    except ArrangementError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except DisconnectedGraph as exc:
        print(f"DisconnectedGraph: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"InputError: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
