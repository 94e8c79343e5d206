"""Deciding whether a Bott-manifold odometer breaks the HK-conjecture.

The decision is a chain of exact checks recorded as evidence:

* dimension <= 3: both K-theory sequences of the odometer split, so the
  conjecture holds;
* dimension 4: a nonorientable manifold with 2-torsion in H^2 and a class x
  in H^1(; Z_2) with x^4 != 0 has a Z_4 in K^0, while the even cohomology
  torsion is elementary abelian. The torsion mismatch survives the odometer
  limit for a torsion-preserving cover;
* dimension >= 5: nothing is decided for a bare matrix; products with tori
  inherit a dimension-4 counterexample.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Optional

from .bieberbach import abelianization, commutator_matches
from .bott import BottMatrix, column_profile, holonomy_order, is_orientable
from .errors import InternalInconsistency
from .fgab import FgAbGroup, is_isomorphic
from .odometer import CoverSpec, choose_torsion_preserving, first_homology_from_columns, limit_homology
from .topology import (
    CohomologyTable,
    KGroupReport,
    ProductSummary,
    ahss_k_groups,
    cohomology_table,
    even_torsion,
    kunneth_torus,
    torsion_bound_check,
)
from .z2ring import Z2Class, fourth_power, find_order4_witness, graded_dimensions, normal_form, random_chooser, relations


class Status(enum.Enum):
    COUNTEREXAMPLE = "counterexample"
    HK_HOLDS = "hk_holds"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Evidence:
    rule: str
    condition: str
    holds: bool

    def to_json(self) -> dict:
        return {"rule": self.rule, "condition": self.condition, "holds": self.holds}


@dataclass(frozen=True)
class HkCertificate:
    matrix: BottMatrix
    dimension: int
    orientable: bool
    t: int
    witness: Optional[Z2Class]
    k0: str
    k1: str
    even_torsion: str
    status: Status
    evidence: tuple[Evidence, ...]
    cover: CoverSpec

    @property
    def dad(self) -> int:
        return self.dimension

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.rows(),
            "dimension": self.dimension,
            "orientable": self.orientable,
            "t": self.t,
            "witness": self.witness.render() if self.witness is not None else None,
            "k0": self.k0,
            "k1": self.k1,
            "even_torsion": self.even_torsion,
            "status": self.status.value,
            "evidence": [e.to_json() for e in self.evidence],
            "dad": self.dad,
            "cover": self.cover.to_json(),
        }


@dataclass(frozen=True)
class Analysis:
    """Everything computed for one matrix; the certificate plus its inputs."""

    certificate: HkCertificate
    table: CohomologyTable
    k_report: Optional[KGroupReport]
    h1: FgAbGroup
    betti: tuple[int, ...]
    graded_dims: tuple[int, ...]
    odometer_homology: tuple = field(default=())

    @property
    def status(self) -> Status:
        return self.certificate.status

    def to_json(self) -> dict:
        A = self.certificate.matrix
        w = self.certificate.witness
        return {
            "certificate": self.certificate.to_json(),
            "cohomology": self.table.to_json(),
            "k_theory": self.k_report.to_json() if self.k_report is not None else "unknown",
            "betti": list(self.betti),
            "h1": self.h1.render(),
            "holonomy_order": holonomy_order(A),
            "ring": {
                "relations": relations(A),
                "graded_dimensions": list(self.graded_dims),
                "witness_fourth_power": fourth_power(w).render() if w is not None else None,
            },
            "odometer_homology": [g.render() for g in self.odometer_homology],
        }


def verify_witness(A: BottMatrix, x: Z2Class, seed: int = 0) -> bool:
    """Recompute ``x^4`` as the sum of the ``x_i^4``, rewritten in a random order.

    In characteristic 2 the fourth power is additive, so this is a second
    route to the same class that avoids :func:`multiply`.
    """
    rng = random.Random(seed)
    total = Z2Class(A, frozenset())
    for mask in x.terms:
        if bin(mask).count("1") != 1:
            return False
        i = mask.bit_length()
        exps = [0] * A.n
        exps[i - 1] = 4
        total = total + normal_form(A, exps, choose=random_chooser(rng))
    return bool(total) and total == fourth_power(x)


def analyze(A: BottMatrix, odometer: bool = True, ring_dimensions: bool = True) -> Analysis:
    """Full analysis; the two flags skip parts the decision does not need."""
    d = A.n
    orientable = is_orientable(A)
    r, t = column_profile(A)
    table = cohomology_table(A)
    betti = table.betti
    dims = tuple(graded_dimensions(A)) if ring_dimensions else ()
    cover = choose_torsion_preserving(A)
    h1 = first_homology_from_columns(A)
    evidence = [
        Evidence("orientability-by-row-parity", "every row of A has even sum", orientable),
        Evidence("first-homology-by-columns", f"H_1 = {h1.render()} with r={r}, t={t}", True),
        Evidence(
            "first-homology-by-abelianization",
            "commutator relations of the generating motions give the same H_1",
            abelianization(A) == h1
            and all(commutator_matches(A, i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1)),
        ),
        Evidence("dad-equals-dimension", f"dynamic asymptotic dimension {d}", True),
    ]
    if not evidence[2].holds:
        raise InternalInconsistency("abelianization disagrees with the column count")

    witness = None
    report = None
    ev = "unknown"
    k0 = k1 = "unknown"
    if d <= 4:
        if d == 4:
            witness = find_order4_witness(A)
        report = ahss_k_groups(table, witness)
        k0, k1 = report.k0.render(), report.k1.render()
        ev = even_torsion(table).render()

    if d <= 3:
        status = Status.HK_HOLDS
        evidence.append(
            Evidence("low-dimension-hk", f"dim {d} <= 3: both K-theory sequences of the odometer split", True)
        )
        if not torsion_bound_check(report, table):
            raise InternalInconsistency("K-torsion exceeds cohomology torsion")
    elif d == 4:
        status, more = _decide_dim4(A, table, report, witness, orientable, t, cover)
        evidence.extend(more)
    else:
        status = Status.INCONCLUSIVE
        evidence.append(
            Evidence("bare-high-dimension", f"dim {d} >= 5: no criterion applies to a bare matrix", False)
        )

    cert = HkCertificate(A, d, orientable, t, witness, k0, k1, ev, status, tuple(evidence), cover)
    _check_certificate(cert)
    homology = tuple(limit_homology(A, cover)) if odometer else ()
    return Analysis(cert, table, report, h1, betti, dims, homology)


def _decide_dim4(A, table, report, witness, orientable, t, cover):
    evidence = []
    criterion = witness is not None and not orientable and t > 0
    if witness is not None:
        cond = f"nonorientable={not orientable}, t={t} > 0, ({witness.render()})^4 = {fourth_power(witness).render()}"
    else:
        cond = f"nonorientable={not orientable}, t={t} > 0, no degree-one x with x^4 != 0"
    evidence.append(Evidence("order-4-extension-criterion", cond, criterion))
    if not criterion:
        return Status.INCONCLUSIVE, evidence

    if not verify_witness(A, witness):
        raise InternalInconsistency(f"witness {witness} failed re-verification")
    evidence.append(Evidence("witness-reverified", "x^4 recomputed as a sum of generator fourth powers", True))
    bound = torsion_bound_check(report, table)
    even = even_torsion(table)
    evidence.append(
        Evidence(
            "k-torsion-bound",
            f"|T(K^0)| = {report.k0_torsion.order} <= |T(H^even)| = {even.order}",
            bound,
        )
    )
    if not bound:
        raise InternalInconsistency("K-torsion exceeds cohomology torsion")
    mismatch = not is_isomorphic(report.k0_torsion, even)
    evidence.append(
        Evidence(
            "torsion-mismatch",
            f"T(K^0) = {report.k0_torsion.render()} vs T(H^even) = {even.render()}",
            mismatch,
        )
    )
    evidence.append(
        Evidence(
            "torsion-preserving-cover",
            f"m = {cover.m} is 1 mod 2, so homology torsion survives the odometer limit",
            cover.m % 2 == 1,
        )
    )
    evidence.append(
        Evidence(
            "mismatch-survives-limit",
            "K-homology torsion of the limit embeds in that of Y and is bounded by the cohomology torsion",
            True,
        )
    )
    evidence.append(Evidence("principal-groupoid", "odometers from expansive covers are principal (imported)", True))
    if not mismatch:
        raise InternalInconsistency("Z_4 report but torsion groups agree")
    return Status.COUNTEREXAMPLE, evidence


def _check_certificate(cert: HkCertificate) -> None:
    if cert.status is Status.COUNTEREXAMPLE:
        ok = cert.dimension >= 4 and not cert.orientable and cert.t > 0 and cert.witness is not None
        if not ok or not verify_witness(cert.matrix, cert.witness):
            raise InternalInconsistency("counterexample certificate fails its own invariants")
    if cert.status is Status.HK_HOLDS and cert.dimension > 3:
        raise InternalInconsistency("hk_holds certificate above dimension 3")


def decide_hk(A: BottMatrix) -> HkCertificate:
    return analyze(A, odometer=False, ring_dimensions=False).certificate


def product_analysis(A: BottMatrix, torus: int) -> tuple[Analysis, ProductSummary]:
    """Analysis of ``M(A) x T^torus`` built from the dimension-4 analysis of A."""
    base = analyze(A, odometer=False, ring_dimensions=False)
    summary = kunneth_torus(base.table, base.k_report, base.status.value, torus)
    return base, summary


__all__ = [
    "Analysis",
    "Evidence",
    "HkCertificate",
    "Status",
    "analyze",
    "decide_hk",
    "product_analysis",
    "verify_witness",
]
