"""Exact integer linear algebra: Smith normal form and abelian invariants."""

from __future__ import annotations

from dataclasses import dataclass


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _min_abs_entry(a, s):
    """Position of the nonzero entry of smallest absolute value in a[s:, s:]."""
    best = None
    pos = (None, None)
    for i in range(s, len(a)):
        for j in range(s, len(a[0])):
            if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                best = abs(a[i][j])
                pos = (i, j)
    return pos


def smith_normal_form(matrix):
    """Smith normal form of an integer matrix.

    Returns (divisors, left, right) where left @ matrix @ right is the
    diagonal matrix with the given divisors, d1 | d2 | ... and di >= 0,
    and left, right are unimodular. All arithmetic is exact.
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    left = _identity(m)
    right = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, k):
        # row i += k * row j
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        left[i] = [x + k * y for x, y in zip(left[i], left[j])]

    def add_col(i, j, k):
        # col i += k * col j
        for row in a:
            row[i] += k * row[j]
        for row in right:
            row[i] += k * row[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    s = 0
    while s < min(m, n):
        i, j = _min_abs_entry(a, s)
        if i is None:
            break
        if i != s:
            swap_rows(s, i)
        if j != s:
            swap_cols(s, j)
        dirty = False
        for i in range(s + 1, m):
            if a[i][s] != 0:
                q = a[i][s] // a[s][s]
                add_row(i, s, -q)
                dirty = dirty or a[i][s] != 0
        for j in range(s + 1, n):
            if a[s][j] != 0:
                q = a[s][j] // a[s][s]
                add_col(j, s, -q)
                dirty = dirty or a[s][j] != 0
        if dirty:
            continue
        # pivot now clears its row and column; enforce divisibility
        pivot = a[s][s]
        culprit = None
        for i in range(s + 1, m):
            for j in range(s + 1, n):
                if a[i][j] % pivot != 0:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            add_row(s, culprit, 1)
            continue
        if pivot < 0:
            negate_row(s)
        s += 1

    divisors = [a[i][i] for i in range(min(m, n))]
    return divisors, left, right


@dataclass(frozen=True)
class AbelianGroupDescription:
    """Finitely generated abelian group: free rank plus torsion divisors."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d != 0:
                raise ValueError("torsion divisors must form a divisibility chain")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion divisors must exceed 1")

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"


def cokernel(rows, num_generators) -> AbelianGroupDescription:
    """Cokernel of the relation matrix (one row per relation) on the generators."""
    if not rows or num_generators == 0:
        return AbelianGroupDescription(num_generators)
    divisors, _, _ = smith_normal_form(rows)
    nonzero = [d for d in divisors if d != 0]
    return AbelianGroupDescription(
        free_rank=num_generators - len(nonzero),
        torsion=tuple(d for d in nonzero if d > 1),
    )


def in_row_lattice(vector, rows) -> bool:
    """Whether an integer vector lies in the lattice spanned by the rows."""
    if all(x == 0 for x in vector):
        return True
    if not rows:
        return False
    divisors, _, right = smith_normal_form(rows)
    n = len(vector)
    transformed = [sum(vector[i] * right[i][j] for i in range(n)) for j in range(n)]
    rank = sum(1 for d in divisors if d != 0)
    for j, value in enumerate(transformed):
        if j < rank:
            if value % divisors[j] != 0:
                return False
        elif value != 0:
            return False
    return True
