"""Named, versioned input arrangements used by the built-in check suite."""

from __future__ import annotations

from fractions import Fraction

from .arrangement import Arrangement, make_arrangement


def _coeffs(pairs):
    return tuple((Fraction(a), Fraction(b)) for a, b in pairs)


# slope/intercept pairs; every oracle below refers to these by name
CORPUS: dict[str, tuple[tuple[Fraction, Fraction], ...]] = {
    "parallel_pair": _coeffs([(0, 0), (0, 1)]),
    "two_generic": _coeffs([(1, 0), (-1, 0)]),
    "pencil_2": _coeffs([(0, 0), (1, 0)]),
    "pencil_3": _coeffs([(0, 0), (1, 0), (2, 0)]),
    "pencil_4": _coeffs([(0, 0), (1, 0), (2, 0), (3, 0)]),
    "pencil_5": _coeffs([(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)]),
    "triangle": _coeffs([(0, 0), (1, 0), (-1, 1)]),
    "generic_4": _coeffs([(0, 0), (1, 0), (-1, 1), (2, 1)]),
    "near_pencil_4": _coeffs([(0, 0), (1, 0), (-1, 0), (2, 1)]),
}


def corpus_names() -> tuple[str, ...]:
    return tuple(CORPUS)


def corpus_arrangement(name: str) -> Arrangement:
    return make_arrangement(CORPUS[name])


def corpus_document(name: str) -> dict:
    """The arrangement in the structured input format."""
    def fmt(value: Fraction):
        return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"

    return {"lines": [{"a": fmt(a), "b": fmt(b)} for a, b in CORPUS[name]]}
