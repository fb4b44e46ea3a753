"""Construction and analysis of entanglement-assisted quantum codes.

Classical linear codes over GF(q^2) with controlled Hermitian hulls are
turned into [[n, kappa, delta; c]]_q quantum code parameters, moved
around by propagation rules, validated against Singleton- and
Griesmer-type bounds, and collected into best-known parameter tables.
"""

from .fields import GF, FieldElement, FieldSpec
from .matrix import MatrixFq
from .distance import DistanceFact
from .codes import LinearCode, min_weight_outside, random_code
from .construct import EaqeccParams, css_construct, hermitian_construct, intersection
from . import bounds, propagate, tables

__all__ = [
    "GF",
    "FieldSpec",
    "FieldElement",
    "MatrixFq",
    "DistanceFact",
    "LinearCode",
    "min_weight_outside",
    "random_code",
    "EaqeccParams",
    "hermitian_construct",
    "css_construct",
    "intersection",
    "bounds",
    "propagate",
    "tables",
]
