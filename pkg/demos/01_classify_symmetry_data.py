"""Classifying explicit symmetry data.

A group of unitaries plus optional time reversal is split into isotypic
blocks, and every block gets a Dyson label.
"""
import numpy as np

from tenfold import AntiUnitaryOp, SymmetryData, classify
from tenfold.linalg import ISIGMA_Y, SIGMA_X, SIGMA_Z

# %% sigma_z symmetry with plain complex conjugation: two one-dimensional blocks
data = SymmetryData(2, [SIGMA_Z], AntiUnitaryOp(np.eye(2)))
for block in classify(data):
    print(block.as_dict())

# %% Kramers: no unitary symmetry, T^2 = -1
data = SymmetryData(4, [], AntiUnitaryOp(np.kron(ISIGMA_Y, np.eye(2))))
print([b.symmetry_class.value for b in classify(data)])   # ['AII']

# %% The same T together with a spin-rotation stand-in (quaternion group Q8).
# The Hamiltonian now lives in the multiplicity space, where the effective
# time reversal squares to +1, so the block is orthogonal.
q8 = [np.kron(1j * SIGMA_X, np.eye(2)), np.kron(ISIGMA_Y, np.eye(2))]
(block,) = classify(SymmetryData(4, q8, AntiUnitaryOp(np.kron(ISIGMA_Y, np.eye(2)))))
print(block.symmetry_class.value, "epsilon =", block.epsilon)

# %% Superconductors: the Nambu flag adds particle-hole conjugation
print([b.symmetry_class.value for b in classify(SymmetryData(6, [], nambu=True))])   # ['D']
