"""Exact RO(Q8)-graded Bredon homology of representation spheres with constant ℤ coefficients."""
from __future__ import annotations

__version__ = "0.1.0"

from .builders import Grading, ReductionCertificate, assemble_theorem, canonicalize, coefficient
from .chains import ZComplex, homology
from .linalg import AbelianGroup, IntegerMatrix, smith_normal_form

__all__ = [
    "AbelianGroup",
    "Grading",
    "IntegerMatrix",
    "ReductionCertificate",
    "ZComplex",
    "__version__",
    "assemble_theorem",
    "canonicalize",
    "coefficient",
    "homology",
    "smith_normal_form",
]
