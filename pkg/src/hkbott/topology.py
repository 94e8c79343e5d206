"""Integral cohomology tables and K-theory of low-dimensional real Bott manifolds.

Only what the combinatorics of the Bott matrix determines is filled in:

* free ranks in every degree, from holonomy-invariant exterior monomials;
* torsion in degrees 0, 1, 2 and the top degree.

Torsion in the strictly intermediate degrees ``3 .. d-1`` is left UNKNOWN.
K-groups come from the collapsed Atiyah-Hirzebruch spectral sequence and are
available up to dimension 4 only.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .bott import BottMatrix, column_profile, is_orientable
from .errors import DimensionOutOfRange, InternalInconsistency, UnknownSummand
from .fgab import TRIVIAL, FgAbGroup, cyclic
from .z2ring import Z2Class, fourth_power


class _Unknown(enum.Enum):
    UNKNOWN = "unknown"

    def __repr__(self) -> str:
        return "UNKNOWN"

    def __str__(self) -> str:
        return "unknown"


UNKNOWN = _Unknown.UNKNOWN
Torsion = Union[FgAbGroup, _Unknown]


def render_torsion_part(free_rank: int, torsion: Torsion) -> str:
    if torsion is UNKNOWN:
        free = FgAbGroup(free_rank).render()
        return "unknown" if free_rank == 0 else f"{free} + unknown"
    return (FgAbGroup(free_rank) + torsion).render()


@dataclass(frozen=True)
class GroupSlot:
    """A group ``Z^free_rank + torsion`` whose torsion may be UNKNOWN."""

    free_rank: int
    torsion: Torsion

    @property
    def known(self) -> bool:
        return self.torsion is not UNKNOWN

    def group(self) -> FgAbGroup:
        if self.torsion is UNKNOWN:
            raise UnknownSummand("torsion is not determined")
        return FgAbGroup(self.free_rank) + self.torsion

    def render(self) -> str:
        return render_torsion_part(self.free_rank, self.torsion)

    def __add__(self, other: "GroupSlot") -> "GroupSlot":
        if UNKNOWN in (self.torsion, other.torsion):
            tor = UNKNOWN
        else:
            tor = self.torsion + other.torsion
        return GroupSlot(self.free_rank + other.free_rank, tor)


@dataclass(frozen=True)
class CohomologyTable:
    dim: int
    groups: tuple[GroupSlot, ...]
    orientable: bool

    def __getitem__(self, k: int) -> GroupSlot:
        if 0 <= k <= self.dim:
            return self.groups[k]
        return GroupSlot(0, TRIVIAL)

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(g.free_rank for g in self.groups)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def to_json(self) -> list[str]:
        return [g.render() for g in self.groups]


class ExtensionStatus(enum.Enum):
    SPLIT = "split"
    CONTAINS_Z4 = "contains_z4"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class KGroupReport:
    k0_free: int
    k0_torsion: Torsion
    k1_free: int
    k1_torsion: Torsion
    extension_status: ExtensionStatus
    witness: Optional[Z2Class] = None

    @property
    def k0(self) -> GroupSlot:
        return GroupSlot(self.k0_free, self.k0_torsion)

    @property
    def k1(self) -> GroupSlot:
        return GroupSlot(self.k1_free, self.k1_torsion)

    def to_json(self) -> dict:
        return {
            "k0": self.k0.render(),
            "k1": self.k1.render(),
            "extension": self.extension_status.value,
            "witness": self.witness.render() if self.witness is not None else None,
        }


def rational_betti(A: BottMatrix) -> list[int]:
    """Betti numbers by brute force over exterior monomials.

    ``dx_S`` is invariant under the holonomy iff every row of A has an even
    number of ones inside the column set S.
    """
    n = A.n
    rows = [A.row_bits(i) for i in range(1, n + 1)]
    betti = [0] * (n + 1)
    for k in range(n + 1):
        for S in combinations(range(n), k):
            mask = sum(1 << i for i in S)
            if all(bin(r & mask).count("1") % 2 == 0 for r in rows):
                betti[k] += 1
    return betti


def cohomology_table(A: BottMatrix) -> CohomologyTable:
    d = A.n
    betti = rational_betti(A)
    orientable = is_orientable(A)
    t = column_profile(A).t
    if sum((-1) ** k * b for k, b in enumerate(betti)) != 0:
        raise InternalInconsistency(f"Euler characteristic of a flat manifold must vanish, got betti {betti}")
    if betti[0] != 1 or betti[d] != int(orientable):
        raise InternalInconsistency("extreme Betti numbers disagree with orientability")
    if betti[1] != column_profile(A).r:
        raise InternalInconsistency("b1 differs from the number of zero columns")

    torsion: dict[int, Torsion] = {k: UNKNOWN for k in range(d + 1)}
    torsion[0] = TRIVIAL
    torsion[1] = TRIVIAL
    top = TRIVIAL if orientable else cyclic(2)
    if d >= 2:
        torsion[2] = cyclic(2, t)
    if d in (1, 2) and torsion[d] != top:
        raise InternalInconsistency("top-degree torsion disagrees with degree-two torsion")
    torsion[d] = top
    groups = tuple(GroupSlot(betti[k], torsion[k]) for k in range(d + 1))
    return CohomologyTable(d, groups, orientable)


def ahss_k_groups(table: CohomologyTable, witness: Optional[Z2Class] = None) -> KGroupReport:
    """K-groups from the collapsed spectral sequence (dimension at most 4).

    In dimension <= 3 both sequences split. In dimension 4, K^1 still splits;
    for K^0 a degree-one class with nonzero fourth power on a nonorientable
    manifold with 2-torsion in H^2 forces a Z_4, merging the top Z_2 with one
    Z_2 of H^2. Without such a witness the extension is left undetermined.
    """
    d = table.dim
    if d > 4:
        raise DimensionOutOfRange(f"spectral sequence collapse needs dim <= 4, got {d}")
    H = table.__getitem__
    k1 = H(1) + H(3)
    even = H(0) + H(2) + H(4)
    if d <= 3:
        report = KGroupReport(even.free_rank, even.torsion, k1.free_rank, k1.torsion, ExtensionStatus.SPLIT)
    else:
        h2 = H(2).torsion
        t = h2.torsion.count(2) if h2 is not UNKNOWN else 0
        usable = witness is not None and not table.orientable and t > 0
        if usable and not fourth_power(witness):
            raise InternalInconsistency(f"witness {witness} has vanishing fourth power")
        if usable:
            k0_torsion = cyclic(2, t - 1) + cyclic(4)
            report = KGroupReport(
                even.free_rank, k0_torsion, k1.free_rank, k1.torsion, ExtensionStatus.CONTAINS_Z4, witness
            )
        else:
            report = KGroupReport(even.free_rank, UNKNOWN, k1.free_rank, k1.torsion, ExtensionStatus.UNDETERMINED)
    if report.k0_free - report.k1_free != table.euler_characteristic:
        raise InternalInconsistency("K-theory rank difference differs from the Euler characteristic")
    return report


def even_torsion(table: CohomologyTable) -> FgAbGroup:
    """Torsion of the sum of the even-degree cohomology groups."""
    out = TRIVIAL
    for k in range(0, table.dim + 1, 2):
        tor = table[k].torsion
        if tor is UNKNOWN:
            raise UnknownSummand(f"torsion of H^{k} is not determined")
        out = out + tor
    return out


def odd_torsion(table: CohomologyTable) -> FgAbGroup:
    out = TRIVIAL
    for k in range(1, table.dim + 1, 2):
        tor = table[k].torsion
        if tor is UNKNOWN:
            raise UnknownSummand(f"torsion of H^{k} is not determined")
        out = out + tor
    return out


def torsion_bound_check(report: KGroupReport, table: CohomologyTable) -> bool:
    """``|T(K^0)| <= |T(sum H^even)|``, and the odd analogue when both sides are known."""
    if report.k0_torsion is UNKNOWN:
        raise UnknownSummand("K^0 torsion is not determined")
    ok = report.k0_torsion.order <= even_torsion(table).order
    if report.k1_torsion is not UNKNOWN:
        try:
            ok = ok and report.k1_torsion.order <= odd_torsion(table).order
        except UnknownSummand:
            pass
    return ok


@dataclass(frozen=True)
class ProductSummary:
    """Invariants of ``Y x T^n`` for a dimension-4 base Y.

    Groups carry the known part of the torsion together with a flag telling
    whether further, undetermined, summands exist.
    """

    dimension: int
    torus_factors: int
    multiplicity: int
    even_cohomology: GroupSlot
    even_cohomology_known: FgAbGroup
    k0: GroupSlot
    k0_known: FgAbGroup
    status: str

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "torus": self.torus_factors,
            "multiplicity": self.multiplicity,
            "even_cohomology": self.even_cohomology.render(),
            "even_torsion_known": self.even_cohomology_known.render(),
            "even_torsion_complete": self.even_cohomology.known,
            "k0": self.k0.render(),
            "k0_torsion_known": self.k0_known.render(),
            "k0_torsion_complete": self.k0.known,
            "status": self.status,
            "dad": self.dimension,
        }


def _known_part(slot_torsions) -> FgAbGroup:
    out = TRIVIAL
    for tor in slot_torsions:
        if tor is not UNKNOWN:
            out = out + tor
    return out


def kunneth_torus(table: CohomologyTable, report: KGroupReport, status: str, n: int) -> ProductSummary:
    """Propagate a dimension-4 analysis to ``Y x T^n``.

    For n >= 1 the even cohomology of the product is ``(sum_i H^i(Y))^(2^(n-1))``
    and ``K^0`` of the product is ``(K^0(Y) + K^1(Y))^(2^(n-1))``; the torsion
    mismatch of the base persists, so a counterexample status carries over.
    ``n = 0`` returns the base itself.
    """
    if n < 0:
        raise ValueError("number of torus factors must be non-negative")
    if table.dim != 4:
        raise DimensionOutOfRange(f"products are built on a dimension-4 base, got {table.dim}")
    if n == 0:
        even = table[0] + table[2] + table[4]
        k0 = report.k0
        return ProductSummary(
            4, 0, 1, even, _known_part([even.torsion]), k0, _known_part([k0.torsion]), status
        )
    mult = 2 ** (n - 1)
    total = table.groups[0]
    for g in table.groups[1:]:
        total = total + g
    known = _known_part(g.torsion for g in table.groups)
    even = GroupSlot(total.free_rank * mult, (known**mult) if total.known else UNKNOWN)
    kk = report.k0 + report.k1
    k_known = _known_part([report.k0_torsion, report.k1_torsion])
    k0 = GroupSlot(kk.free_rank * mult, (k_known**mult) if kk.known else UNKNOWN)
    return ProductSummary(4 + n, n, mult, even, known**mult, k0, k_known**mult, status)


__all__ = [
    "CohomologyTable",
    "ExtensionStatus",
    "GroupSlot",
    "KGroupReport",
    "ProductSummary",
    "UNKNOWN",
    "ahss_k_groups",
    "cohomology_table",
    "even_torsion",
    "kunneth_torus",
    "odd_torsion",
    "rational_betti",
    "torsion_bound_check",
]
