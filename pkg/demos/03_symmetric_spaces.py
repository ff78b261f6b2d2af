"""Time evolutions as points of symmetric spaces.

For a class with involution tau, exp(-iHt) satisfies U = tau(U)^-1 for every
Hamiltonian of the class and every t.
"""
import numpy as np

from tenfold.ensembles import EnsembleSpec, sample
from tenfold.linalg import RngStream, haar_unitary
from tenfold.symmetric_space import (Involution, cartan_embed, class_fixed_point_dimension, class_involution,
                                     geodesic_inversion, membership_defect, time_evolution)

for cls in ("AI", "AII", "D", "C", "DIII", "AIII"):
    tau, lift = class_involution(cls, n=8, p=5, q=3)
    h = sample(EnsembleSpec(cls, n=8, p=5, q=3, seed=3)).matrix
    print(cls, [f"{membership_defect(time_evolution(lift(h), t), tau):.1e}" for t in (0.1, 1.0, 7.5)])

# %% Cartan embedding of U(4)/O(4): k -> k k^T, and the geodesic inversion stays inside
conj = Involution.antiunitary(np.eye(4))
g = RngStream(0)
p0, p = (cartan_embed(haar_unitary(g, 4), conj) for _ in range(2))
print("p0 p^-1 p0 in M:", membership_defect(geodesic_inversion(p0, p), conj))

# %% Fixed-point groups: U(2N) for DIII, U(N) for CI
print("DIII", [class_fixed_point_dimension("DIII", 4 * n) for n in (2, 3)])
print("CI  ", [class_fixed_point_dimension("CI", 2 * n) for n in (2, 4)])
