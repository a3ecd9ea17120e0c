"""Generator symbols and freely reduced words for the group presentations."""

from __future__ import annotations

from dataclasses import dataclass

from .incidence import Vertex

LAMBDA = "lambda"
MU = "mu"
STABLE = "stable"


@dataclass(frozen=True)
class GeneratorSymbol:
    """A named generator: a central fiber class lam_v, a meridian mu{j}_v,
    or a stable letter t attached to a non-tree conjugate edge pair."""

    kind: str
    vertex: Vertex | None = None
    slot: int = 0
    pair: tuple[int, int] | None = None

    @property
    def name(self) -> str:
        if self.kind == LAMBDA:
            return f"lam_{self.vertex.name}"
        if self.kind == MU:
            return f"mu{self.slot}_{self.vertex.name}"
        return f"t_p{self.pair[0]}_L{self.pair[1]}"

    def sort_key(self):
        if self.kind == STABLE:
            return (2, self.pair, 0)
        rank = 0 if self.kind == LAMBDA else 1
        return (0, self.vertex.sort_key(), rank, self.slot)

    def __repr__(self):
        return self.name


def lam(vertex: Vertex) -> GeneratorSymbol:
    return GeneratorSymbol(LAMBDA, vertex=vertex)


def mu(vertex: Vertex, slot: int) -> GeneratorSymbol:
    return GeneratorSymbol(MU, vertex=vertex, slot=slot)


def stable(pair: tuple[int, int]) -> GeneratorSymbol:
    return GeneratorSymbol(STABLE, pair=pair)


def _reduce(letters):
    out: list[tuple[GeneratorSymbol, int]] = []
    for sym, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == sym:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((sym, merged))
        else:
            out.append((sym, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """Freely reduced word: runs of (symbol, nonzero exponent), adjacent runs differ."""

    letters: tuple[tuple[GeneratorSymbol, int], ...] = ()

    @classmethod
    def make(cls, letters) -> "Word":
        return cls(_reduce(letters))

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def length(self) -> int:
        return sum(abs(exp) for _, exp in self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(_reduce(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(tuple((sym, -exp) for sym, exp in reversed(self.letters)))

    def exponent_sum(self, symbol: GeneratorSymbol) -> int:
        return sum(exp for sym, exp in self.letters if sym == symbol)

    def symbols(self) -> set[GeneratorSymbol]:
        return {sym for sym, _ in self.letters}

    def expand(self) -> list[tuple[GeneratorSymbol, int]]:
        """Letters with exponents split into +-1 steps."""
        out = []
        for sym, exp in self.letters:
            step = 1 if exp > 0 else -1
            out.extend((sym, step) for _ in range(abs(exp)))
        return out

    def text(self) -> str:
        if not self.letters:
            return "1"
        tokens = []
        for sym, exp in self.letters:
            tokens.append(sym.name if exp == 1 else f"{sym.name}^{exp}")
        return " ".join(tokens)

    def __repr__(self):
        return f"Word({self.text()})"


def word(*items) -> Word:
    """Word from (symbol, exponent) pairs or bare symbols (exponent 1)."""
    letters = []
    for item in items:
        if isinstance(item, GeneratorSymbol):
            letters.append((item, 1))
        else:
            letters.append(item)
    return Word.make(letters)


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()
