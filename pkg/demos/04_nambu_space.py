"""Bogoliubov-de Gennes Hamiltonians on Nambu space."""
import numpy as np

from tenfold.linalg import RngStream, dagger, gaussian_complex, random_hermitian
from tenfold.nambu import QuadraticHamiltonian, assemble_bdg, majorana_basis, particle_hole_op
from tenfold.symmetric_space import time_evolution

n = 3
g = RngStream(7)
b = gaussian_complex(g, (n, n))
h = assemble_bdg(QuadraticHamiltonian(random_hermitian(g, n), b - b.T))

# %% particle-hole conjugation maps H to -H, so the spectrum is +-E symmetric
c = particle_hole_op(n)
print("C H C^-1 + H:", np.abs(c.conjugate(h) + h).max())
print(np.round(np.linalg.eigvalsh(h), 4))

# %% in the Majorana basis H is imaginary skew and exp(-iHt) is real orthogonal
w = majorana_basis(n)
u = w @ time_evolution(h, 0.9) @ dagger(w)
print("imag part:", np.abs(u.imag).max(), " O^T O - 1:", np.abs(u.real.T @ u.real - np.eye(2 * n)).max())
