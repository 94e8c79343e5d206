"""Expansive self-covers and the finite levels of the flat-manifold odometer.

The cover is induced by ``x -> m x`` with ``m = k|F| + 1``. On the group it
acts by ``g(D, v) = (D, m v)``. Level ``L`` of the odometer is the coset space
``pi / g^L(pi)``, a set of ``|m|^(nL)`` points.

Coset representatives are translations. For odd m the integral translations
``tau(u)``, ``u`` in ``(Z_M)^n`` with ``M = |m|^L``, are pairwise inequivalent
and there are exactly index-many of them. Even m only occurs for the zero
matrix, where the group is the lattice ``Z^n / 2`` and the representatives are
``tau(u / 2)`` instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional, Sequence

from .bieberbach import AffineMotion, decompose, generators, sigma
from .bott import BottMatrix, column_profile, holonomy_order, is_orientable
from .errors import InternalInconsistency, NotExpanding
from .fgab import TRIVIAL, FgAbGroup, LocalizedGroup, localize
from .topology import UNKNOWN, cohomology_table, rational_betti

Point = tuple[int, ...]


@dataclass(frozen=True)
class CoverSpec:
    k: int
    m: int
    degree: int
    holonomy: int

    def to_json(self) -> dict:
        return {"k": self.k, "m": self.m, "degree": self.degree}


def expanding_cover(A: BottMatrix, k: int) -> CoverSpec:
    F = holonomy_order(A)
    m = k * F + 1
    if abs(m) <= 1:
        raise NotExpanding(f"k={k} gives multiplier {m}; need |k|F|+1| > 1 with |F| = {F}")
    return CoverSpec(k, m, abs(m) ** A.n, F)


def choose_torsion_preserving(A: BottMatrix) -> CoverSpec:
    """Smallest k >= 1 whose multiplier is 1 modulo the exponent of the known torsion.

    All torsion determined here is 2-torsion, so the rule amounts to m odd:
    k = 1 for even holonomy order and k = 2 when the holonomy is trivial.
    """
    exponent = 2
    F = holonomy_order(A)
    k = 1
    while (k * F + 1) % exponent != 1 or abs(k * F + 1) <= 1:
        k += 1
    return expanding_cover(A, k)


@dataclass(frozen=True)
class CosetSpace:
    """Level ``level`` of the odometer: ``pi / g^level(pi)``."""

    matrix: BottMatrix
    cover: CoverSpec
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be non-negative")
        if self.cover.m % 2 == 0 and not self.matrix.is_zero():
            raise InternalInconsistency("even multiplier with nontrivial holonomy")

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def modulus(self) -> int:
        return abs(self.cover.m) ** self.level

    @property
    def scale(self) -> int:
        """Scalar factor of the top map ``g^level``."""
        return self.cover.m**self.level

    @property
    def unit(self) -> Fraction:
        """Length of one representative step in R^n."""
        return Fraction(1, 2) if self.cover.m % 2 == 0 else Fraction(1)

    @property
    def _step(self) -> int:
        return 1 if self.cover.m % 2 == 0 else 2

    def __len__(self) -> int:
        return self.modulus**self.n

    def points(self) -> Iterator[Point]:
        return product(range(self.modulus), repeat=self.n)

    def index(self, u: Point) -> int:
        out = 0
        for c in u:
            out = out * self.modulus + c
        return out

    def representative(self, u: Point) -> AffineMotion:
        return AffineMotion((1,) * self.n, tuple(self._step * c for c in u))

    def in_subgroup(self, gamma: AffineMotion) -> bool:
        """Membership in ``g^level(pi)`` by trying every eps-pattern.

        ``g^L(pi)`` consists of ``(D(eps), m^L (z + t(eps)))``; this test
        does not use the decomposition shortcut of :meth:`act`.
        """
        M = self.scale
        for eps in product((0, 1), repeat=self.n):
            s = sigma(self.matrix, eps)
            if s.signs != gamma.signs:
                continue
            # translations are doubled, so the offset must lie in 2M Z^n
            if all((w - M * t) % (2 * M) == 0 for w, t in zip(gamma.doubled, s.doubled)):
                return True
        return False

    def act(self, gamma: AffineMotion, u: Point) -> Point:
        """The point ``u''`` with ``gamma tau(u) in tau(u'') g^level(pi)``."""
        decompose(self.matrix, gamma)  # raises NotInGroup
        w = (gamma @ self.representative(u)).doubled
        M, mod = self.scale, self.modulus
        if self._step == 1:
            # lattice case: g^L(pi) = (M/2) Z^n, translations only
            return tuple(wi % mod for wi in w)
        # eps is read from the half-integral coordinates of w
        eps = tuple(wi % 2 for wi in w)
        t = sigma(self.matrix, eps).doubled
        out = []
        for wi, ti in zip(w, t):
            v = wi - M * ti
            if v % 2:
                raise InternalInconsistency("coset offset is not integral")
            out.append((v // 2) % mod)
        return tuple(out)

    def act_by_oracle(self, gamma: AffineMotion, u: Point) -> Point:
        """Same as :meth:`act`, by searching all points with the membership test."""
        target = gamma @ self.representative(u)
        hits = [v for v in self.points() if self.in_subgroup(self.representative(v).inverse() @ target)]
        if len(hits) != 1:
            raise InternalInconsistency(f"{len(hits)} cosets contain the image of {u}")
        return hits[0]

    def project(self, u: Point, level: int) -> Point:
        """Reduction to a lower level."""
        if not 0 <= level <= self.level:
            raise ValueError("can only project to a lower level")
        mod = abs(self.cover.m) ** level
        return tuple(c % mod for c in u)

    def permutation(self, gamma: AffineMotion) -> list[int]:
        """The action of gamma as a list ``perm[index(u)] = index(gamma . u)``."""
        return [self.index(self.act(gamma, u)) for u in self.points()]

    def orbit(self, start: Point, gens: Optional[Sequence[AffineMotion]] = None) -> set[Point]:
        gens = list(gens) if gens is not None else generators(self.matrix)
        moves = gens + [g.inverse() for g in gens]
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for u in frontier:
                for g in moves:
                    v = self.act(g, u)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return seen


def limit_homology(A: BottMatrix, cover: CoverSpec) -> list[LocalizedGroup]:
    """Homology of the odometer groupoid, degree by degree.

    The transfer acts as ``x m^(d-q)`` on the free part of ``H_q``, so the
    free part of the limit is ``Z[1/m]^b_q`` for ``0 <= q < d`` and stays
    integral in the top degree. The torsion of ``H_q(Y)`` survives unchanged
    for a torsion-preserving cover; where the cohomology table does not know
    it the summand is flagged undetermined.
    """
    d = A.n
    betti = rational_betti(A)
    table = cohomology_table(A)
    orientable = is_orientable(A)
    out = []
    for q in range(d + 1):
        # T(H_q) = T(H^{q+1}) by universal coefficients
        tor = table[q + 1].torsion if q < d else TRIVIAL
        multiplier = cover.m ** (d - q)
        free = localize(betti[q], multiplier)
        group = LocalizedGroup(free.rank, free.inverted_primes, TRIVIAL if tor is UNKNOWN else tor, tor is UNKNOWN)
        out.append(group)
    _check_extremes(out, cover, d, orientable)
    return out


def _check_extremes(groups: list[LocalizedGroup], cover: CoverSpec, d: int, orientable: bool) -> None:
    h0 = localize(1, cover.degree)
    if groups[0] != h0:
        raise InternalInconsistency(f"degree-0 limit {groups[0]} differs from Z[1/{cover.degree}]")
    top = LocalizedGroup(1) if orientable else LocalizedGroup(0)
    if groups[d] != top:
        raise InternalInconsistency(f"top-degree limit {groups[d]} differs from {top}")


def first_homology_from_columns(A: BottMatrix) -> FgAbGroup:
    r, t = column_profile(A)
    return FgAbGroup.from_cyclic(r, [2] * t)


__all__ = [
    "CosetSpace",
    "CoverSpec",
    "choose_torsion_preserving",
    "expanding_cover",
    "first_homology_from_columns",
    "limit_homology",
]
