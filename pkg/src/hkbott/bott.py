"""Bott matrices: validation, combinatorial statistics and enumeration.

A Bott matrix is a strictly upper-triangular 0/1 matrix. Rows and columns are
numbered from 1 in every user-facing message, matching the generator names
``x1, ..., xn``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, NamedTuple, Sequence, Union

from .errors import MatrixTooLarge, NonBinaryEntry, NotStrictlyUpperTriangular, RaggedRows
from .gf2 import gf2_rank

MAX_SIZE = 16


@dataclass(frozen=True)
class BottMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _validate(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """Entry ``A[i, j]`` with 1-based indices."""
        i, j = ij
        return self.entries[i - 1][j - 1]

    def row_bits(self, i: int) -> int:
        """Row ``i`` (1-based) as a bitset; bit ``j-1`` holds ``A[i, j]``."""
        return sum(1 << j for j, a in enumerate(self.entries[i - 1]) if a)

    def column_bits(self, j: int) -> int:
        """Column ``j`` (1-based) as a bitset; bit ``i-1`` holds ``A[i, j]``."""
        return sum(1 << i for i, row in enumerate(self.entries) if row[j - 1])

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)

    def rows(self) -> list[str]:
        """Row strings such as ``"0100"``; the JSON wire form."""
        return ["".join(map(str, row)) for row in self.entries]

    def __str__(self) -> str:
        return render(self)

    @classmethod
    def zero(cls, n: int) -> "BottMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def from_ones(cls, n: int, ones: Sequence[tuple[int, int]]) -> "BottMatrix":
        """Build the n x n matrix with ones at the given 1-based coordinates."""
        rows = [[0] * n for _ in range(n)]
        for i, j in ones:
            rows[i - 1][j - 1] = 1
        return cls(tuple(map(tuple, rows)))


class ColumnProfile(NamedTuple):
    r: int  # all-zero columns
    t: int  # columns with a nonzero entry


def _validate(entries) -> None:
    n = len(entries)
    if n == 0:
        raise RaggedRows("matrix has no rows")
    if n > MAX_SIZE:
        raise MatrixTooLarge(f"matrix size {n} exceeds the cap of {MAX_SIZE}")
    for i, row in enumerate(entries, start=1):
        if len(row) != n:
            raise RaggedRows(f"row {i} has {len(row)} entries, expected {n}", row=i)
        for j, a in enumerate(row, start=1):
            if a not in (0, 1) or isinstance(a, bool):
                raise NonBinaryEntry(f"entry ({i},{j}) is {a!r}, expected 0 or 1", row=i, col=j)
            if a and i >= j:
                raise NotStrictlyUpperTriangular(
                    f"entry ({i},{j}) is 1 on or below the diagonal", row=i, col=j
                )


def _parse_row(line: str, i: int) -> tuple[int, ...]:
    row = []
    for j, ch in enumerate(line.replace(" ", "").replace("\t", ""), start=1):
        if ch not in "01":
            raise NonBinaryEntry(f"entry ({i},{j}) is {ch!r}, expected 0 or 1", row=i, col=j)
        row.append(int(ch))
    return tuple(row)


def parse_and_validate(text: Union[str, Sequence[str]]) -> BottMatrix:
    """Parse a matrix given as text (one row per line) or a list of row strings.

    Characters must be ``0`` or ``1``; spaces between them are ignored and
    blank lines are skipped.

    >>> parse_and_validate("0 1\\n0 0").n
    2
    """
    lines = text.splitlines() if isinstance(text, str) else list(text)
    lines = [ln for ln in lines if ln.strip()]
    if len(lines) > MAX_SIZE:
        raise MatrixTooLarge(f"matrix size {len(lines)} exceeds the cap of {MAX_SIZE}")
    return BottMatrix(tuple(_parse_row(ln, i) for i, ln in enumerate(lines, start=1)))


def render(A: BottMatrix) -> str:
    return "\n".join(" ".join(map(str, row)) for row in A.entries)


def is_orientable(A: BottMatrix) -> bool:
    """Orientable iff every row of A has an even number of ones."""
    return all(sum(row) % 2 == 0 for row in A.entries)


def column_profile(A: BottMatrix) -> ColumnProfile:
    r = sum(1 for j in range(1, A.n + 1) if A.column_bits(j) == 0)
    return ColumnProfile(r, A.n - r)


def holonomy_order(A: BottMatrix) -> int:
    """Order of the holonomy group, ``2 ** rank_GF2(rows of A)``.

    The holonomy is generated by the diagonal sign matrices of the standard
    generators, and a sign matrix ``diag((-1)^v)`` corresponds to the bit
    vector ``v``, so the group is the GF(2) row space of A.
    """
    return 2 ** gf2_rank(A.row_bits(i) for i in range(1, A.n + 1))


def upper_positions(n: int) -> list[tuple[int, int]]:
    """Strict upper triangle, row-major, 1-based."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def enumerate_matrices(n: int) -> Iterator[BottMatrix]:
    """Yield all ``2 ** (n(n-1)/2)`` Bott matrices of size n.

    Order is lexicographic on the bit string read row-major over the strict
    upper triangle, so the zero matrix comes first and the matrix whose only
    one sits at ``(n-1, n)`` comes second.
    """
    if n < 1:
        raise ValueError("n must be positive")
    positions = upper_positions(n)
    for bits in product((0, 1), repeat=len(positions)):
        yield BottMatrix.from_ones(n, [p for p, b in zip(positions, bits) if b])


__all__ = [
    "BottMatrix",
    "ColumnProfile",
    "MAX_SIZE",
    "column_profile",
    "enumerate_matrices",
    "holonomy_order",
    "is_orientable",
    "parse_and_validate",
    "render",
    "upper_positions",
]
