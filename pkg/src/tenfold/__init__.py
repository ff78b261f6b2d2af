"""Tenfold-way symmetry classification toolkit.

Classifies explicit symmetry data into the ten Altland-Zirnbauer classes,
samples Gaussian random matrices in each class's canonical form and checks
the structural and spectral consequences of class membership.
"""

__version__ = "0.1.0"

from .classifier import SymmetryClass, SymmetryData, classify, classify_by_involutions
from .linalg import AntiUnitaryOp, RngStream, hermitian_eig

__all__ = [
    "__version__",
    "AntiUnitaryOp", "RngStream", "hermitian_eig",
    "SymmetryClass", "SymmetryData", "classify", "classify_by_involutions",
]
