"""GF(2) linear algebra on int bitsets."""

from __future__ import annotations

from typing import Iterable


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a family of row vectors encoded as int bitsets."""
    basis: list[int] = []  # distinct leading bits, sorted descending
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def gf2_insert(basis: list[int], v: int) -> bool:
    """Add v to a basis kept sorted descending; False if v was already in the span."""
    for b in basis:
        v = min(v, v ^ b)
    if not v:
        return False
    basis.append(v)
    basis.sort(reverse=True)
    return True


def gf2_span_contains(vec: int, rows: Iterable[int]) -> bool:
    rows = list(rows)
    return gf2_rank(rows) == gf2_rank(rows + [vec])


__all__ = ["gf2_insert", "gf2_rank", "gf2_span_contains"]
