"""Exact arithmetic in the fundamental group of a real Bott manifold.

The group is generated by the rigid motions

    s_i = (diag((-1)^A[i,1], ..., (-1)^A[i,n]), e_i / 2)

acting on R^n. Every element factors uniquely as ``tau(z) * sigma(eps)`` with
``z`` integral and ``sigma(eps) = s_1^eps_1 * ... * s_n^eps_n`` for a 0/1
vector ``eps``; the eps-vector is read off the half-integral coordinates of
the translation part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .bott import BottMatrix
from .errors import InternalInconsistency, NotInGroup
from .fgab import FgAbGroup


@dataclass(frozen=True)
class AffineMotion:
    """``x -> diag(signs) x + translation``.

    Translations have denominators dividing 2 and are stored exactly as the
    integer vector ``doubled = 2 * translation``.
    """

    signs: tuple[int, ...]
    doubled: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != len(self.doubled):
            raise ValueError("signs and translation have different lengths")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def from_translation(cls, signs: Sequence[int], translation: Sequence) -> "AffineMotion":
        doubled = []
        for v in translation:
            h = 2 * Fraction(v)
            if h.denominator != 1:
                raise ValueError("translation denominators must divide 2")
            doubled.append(int(h))
        return cls(tuple(int(s) for s in signs), tuple(doubled))

    @property
    def n(self) -> int:
        return len(self.signs)

    @property
    def translation(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(h, 2) for h in self.doubled)

    @classmethod
    def identity(cls, n: int) -> "AffineMotion":
        return cls((1,) * n, (0,) * n)

    @classmethod
    def translation_by(cls, v: Sequence) -> "AffineMotion":
        return cls.from_translation((1,) * len(v), v)

    def __matmul__(self, other: "AffineMotion") -> "AffineMotion":
        """Composition: ``(D, v) @ (D', v') = (DD', Dv' + v)``."""
        return AffineMotion(
            tuple(a * b for a, b in zip(self.signs, other.signs)),
            tuple(s * w + v for s, w, v in zip(self.signs, other.doubled, self.doubled)),
        )

    def inverse(self) -> "AffineMotion":
        return AffineMotion(self.signs, tuple(-s * v for s, v in zip(self.signs, self.doubled)))

    def apply(self, x: Sequence) -> tuple[Fraction, ...]:
        return tuple(s * Fraction(xi) + v for s, xi, v in zip(self.signs, x, self.translation))

    def dilate(self, m: int) -> "AffineMotion":
        """Conjugate by ``x -> m x``: ``(D, v) -> (D, m v)``."""
        return AffineMotion(self.signs, tuple(m * v for v in self.doubled))

    def is_identity(self) -> bool:
        return all(s == 1 for s in self.signs) and not any(self.doubled)

    def __str__(self) -> str:
        signs = "".join("+" if s > 0 else "-" for s in self.signs)
        return f"({signs}; {', '.join(str(v) for v in self.translation)})"


def compose(motions: Iterable[AffineMotion], n: int) -> AffineMotion:
    out = AffineMotion.identity(n)
    for g in motions:
        out = out @ g
    return out


def generators(A: BottMatrix) -> list[AffineMotion]:
    return list(_generators(A))


@lru_cache(maxsize=4096)
def _generators(A: BottMatrix) -> tuple[AffineMotion, ...]:
    n = A.n
    return tuple(
        AffineMotion(
            tuple(-1 if A[i, j] else 1 for j in range(1, n + 1)),
            tuple(int(j == i) for j in range(1, n + 1)),
        )
        for i in range(1, n + 1)
    )


@lru_cache(maxsize=4096)
def sigma(A: BottMatrix, eps: tuple[int, ...]) -> AffineMotion:
    """``s_1^eps_1 * ... * s_n^eps_n``."""
    gens = _generators(A)
    return compose((g for g, e in zip(gens, eps) if e), A.n)


def eps_of(gamma: AffineMotion) -> tuple[int, ...]:
    return tuple(h % 2 for h in gamma.doubled)


def decompose(A: BottMatrix, gamma: AffineMotion) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return ``(z, eps)`` with ``gamma = tau(z) * sigma(eps)``.

    Raises NotInGroup when gamma is not an element of the group.
    """
    if gamma.n != A.n:
        raise NotInGroup("motion acts on a space of the wrong dimension")
    eps = eps_of(gamma)
    s = sigma(A, eps)
    if s.signs != gamma.signs:
        raise NotInGroup(f"linear part of {gamma} does not match its translation class")
    z2 = [w - t for w, t in zip(gamma.doubled, s.doubled)]
    if any(v % 2 for v in z2):
        raise NotInGroup(f"{gamma} has a non-lattice translation offset")
    return tuple(v // 2 for v in z2), eps


def recompose(A: BottMatrix, z: Sequence[int], eps: Sequence[int]) -> AffineMotion:
    return AffineMotion.translation_by(z) @ sigma(A, tuple(eps))


def is_element(A: BottMatrix, gamma: AffineMotion) -> bool:
    try:
        decompose(A, gamma)
    except NotInGroup:
        return False
    return True


def abelian_image(A: BottMatrix, gamma: AffineMotion) -> tuple[int, ...]:
    """Image of gamma in ``Z^n`` spanned by the generators (before relations).

    ``tau(e_i) = s_i^2`` maps to ``2 e_i`` and ``sigma(eps)`` maps to ``eps``.
    """
    z, eps = decompose(A, gamma)
    return tuple(2 * zi + ei for zi, ei in zip(z, eps))


def commutator(A: BottMatrix, i: int, j: int) -> AffineMotion:
    """``(s_i s_j)(s_i^-1 s_j^-1)`` for 1-based indices."""
    return _commutators(A)[i - 1][j - 1]


@lru_cache(maxsize=1024)
def _commutators(A: BottMatrix) -> tuple[tuple[AffineMotion, ...], ...]:
    gens = _generators(A)
    inv = [g.inverse() for g in gens]
    return tuple(
        tuple((si @ sj) @ (si_inv @ sj_inv) for sj, sj_inv in zip(gens, inv))
        for si, si_inv in zip(gens, inv)
    )


def commutator_matches(A: BottMatrix, i: int, j: int) -> bool:
    """Check the commutator of ``s_i, s_j`` (i < j) against ``A[i, j]``.

    It must be the identity exactly when ``A[i, j] = 0``, and equal to
    ``(I, -e_j)`` otherwise.
    """
    if not 1 <= i < j <= A.n:
        raise ValueError("need 1 <= i < j <= n")
    c = commutator(A, i, j)
    if A[i, j] == 0:
        return c.is_identity()
    expected = AffineMotion.translation_by([-1 if k == j else 0 for k in range(1, A.n + 1)])
    return c == expected


def abelianization(A: BottMatrix) -> FgAbGroup:
    """First homology of the manifold from the pairwise commutator relations.

    Each commutator is pushed to ``Z^n`` via :func:`abelian_image`; the rows
    obtained this way are the relations of the abelianized group.
    """
    relations = []
    for i in range(1, A.n + 1):
        for j in range(i + 1, A.n + 1):
            c = commutator(A, i, j)
            if not c.signs == (1,) * A.n:
                raise InternalInconsistency(f"commutator of s{i}, s{j} is not a translation")
            relations.append(list(abelian_image(A, c)))
    return FgAbGroup.cokernel(relations, A.n)


__all__ = [
    "AffineMotion",
    "abelian_image",
    "abelianization",
    "commutator",
    "commutator_matches",
    "compose",
    "decompose",
    "eps_of",
    "generators",
    "is_element",
    "recompose",
    "sigma",
]
