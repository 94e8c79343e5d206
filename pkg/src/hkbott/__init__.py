"""Exact certification of HK-conjecture counterexamples from real Bott manifolds.

The layers, bottom up:

* :mod:`hkbott.bott` Bott matrices, parsing and enumeration
* :mod:`hkbott.z2ring` the mod-2 cohomology ring and order-4 witnesses
* :mod:`hkbott.fgab` finitely generated abelian groups, Smith normal form
* :mod:`hkbott.topology` cohomology tables and K-theory in low dimension
* :mod:`hkbott.bieberbach` and :mod:`hkbott.odometer` the group and its odometer
* :mod:`hkbott.hk` the decision procedure; :mod:`hkbott.cli` the front end
"""

from .bott import BottMatrix, enumerate_matrices, parse_and_validate
from .errors import HKError, InternalInconsistency, MatrixFormatError
from .fgab import FgAbGroup, LocalizedGroup, smith_normal_form
from .hk import Analysis, HkCertificate, Status, analyze, decide_hk, product_analysis
from .z2ring import Z2Class, find_order4_witness, normal_form

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "BottMatrix",
    "FgAbGroup",
    "HKError",
    "HkCertificate",
    "InternalInconsistency",
    "LocalizedGroup",
    "MatrixFormatError",
    "Status",
    "Z2Class",
    "analyze",
    "decide_hk",
    "enumerate_matrices",
    "find_order4_witness",
    "normal_form",
    "parse_and_validate",
    "product_analysis",
    "smith_normal_form",
]
