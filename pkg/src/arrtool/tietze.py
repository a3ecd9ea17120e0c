"""Budgeted, deterministic Tietze simplification of group presentations.

Only isomorphism-preserving moves are applied: free and cyclic reduction
of relators, dropping trivial and duplicate relators (up to rotation and
inversion), eliminating a generator that occurs exactly once in some
relator, and replacing a long relator segment through another relator
when that strictly shortens it. Simplification is a reporting aid; it is
not a decision procedure.
"""

from __future__ import annotations

from .presentations import GroupPresentation
from .words import GeneratorSymbol, Word


def _expand(w: Word) -> tuple:
    return tuple(w.expand())


def _free_reduce(letters):
    out = []
    for item in letters:
        if out and out[-1][0] == item[0] and out[-1][1] == -item[1]:
            out.pop()
        else:
            out.append(item)
    return tuple(out)


def _cyclic_reduce(letters):
    letters = list(_free_reduce(letters))
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
        letters = letters[1:-1]
        letters = list(_free_reduce(letters))
    return tuple(letters)


def _invert(letters):
    return tuple((sym, -exp) for sym, exp in reversed(letters))


def _letter_key(letters):
    return tuple((sym.name, exp) for sym, exp in letters)


def _cyclic_key(letters):
    """Canonical key among all rotations of the word and its inverse."""
    candidates = []
    for base in (letters, _invert(letters)):
        for i in range(max(1, len(base))):
            candidates.append(_letter_key(base[i:] + base[:i]))
    return min(candidates)


def _to_word(letters) -> Word:
    return Word.make(letters)


def _substitute(letters, target: GeneratorSymbol, replacement):
    out = []
    for sym, exp in letters:
        if sym != target:
            out.append((sym, exp))
        elif exp == 1:
            out.extend(replacement)
        else:
            out.extend(_invert(replacement))
    return _free_reduce(out)


def _try_shorten(letters, other):
    """Replace a segment of letters matching more than half of a rotation
    of other (or its inverse) with the shorter complement."""
    n = len(other)
    if n < 2 or len(letters) < 2:
        return None
    best = None
    for base in (other, _invert(other)):
        for rotation in range(n):
            rotated = base[rotation:] + base[:rotation]
            for take in range(n, n // 2, -1):
                segment = rotated[:take]
                complement = _invert(rotated[take:])
                for start in range(len(letters) - take + 1):
                    if tuple(letters[start:start + take]) == segment:
                        candidate = _free_reduce(
                            letters[:start] + complement + letters[start + take:]
                        )
                        if len(candidate) < len(letters) and (best is None or len(candidate) < len(best)):
                            best = candidate
    return best


def tietze_simplify(presentation: GroupPresentation, budget: int = 1000) -> GroupPresentation:
    """Simplified presentation of the same group, deterministic given the budget."""
    generators = list(presentation.generators)
    relators = [_cyclic_reduce(_expand(r)) for r in presentation.relators]
    steps = 0

    def tidy():
        nonlocal relators
        seen = {}
        for r in relators:
            r = _cyclic_reduce(r)
            if not r:
                continue
            seen.setdefault(_cyclic_key(r), r)
        relators = [seen[k] for k in sorted(seen)]

    tidy()
    while steps < budget:
        # eliminate a generator occurring exactly once in some relator
        eliminated = False
        for r in sorted(relators, key=lambda r: (len(r), _letter_key(r))):
            counts: dict[GeneratorSymbol, int] = {}
            for sym, _ in r:
                counts[sym] = counts.get(sym, 0) + 1
            for position, (sym, exp) in enumerate(r):
                if counts[sym] != 1:
                    continue
                # r = prefix sym^exp suffix, so sym^exp = (suffix prefix)^-1
                around = _invert(r[position + 1:] + r[:position])
                replacement = around if exp == 1 else _invert(around)
                generators.remove(sym)
                relators = [
                    _substitute(other, sym, replacement)
                    for other in relators if other is not r
                ]
                eliminated = True
                steps += 1
                break
            if eliminated:
                break
        if eliminated:
            tidy()
            continue
        # bounded relator substitution, only when it strictly shortens
        shortened = False
        for i, r in enumerate(relators):
            for j, other in enumerate(relators):
                if i == j:
                    continue
                candidate = _try_shorten(r, other)
                if candidate is not None:
                    relators[i] = candidate
                    shortened = True
                    steps += 1
                    break
            if shortened:
                break
        if not shortened:
            break
        tidy()

    tidy()
    provenance = presentation.provenance + (("simplified", "tietze"),)
    return GroupPresentation(
        tuple(generators), tuple(_to_word(r) for r in relators), provenance
    )
