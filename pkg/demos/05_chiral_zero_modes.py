"""Chiral Dirac operators and the index theorem.

A p x q block Z makes D = [[0, Z], [Z^dag, 0]] have at least |p - q| zero
modes; for random Z the bound is an equality.
"""
from tenfold.dirac import gamma_matrices, majorana_dirac_hamiltonian, chirality_recast_check, sample_chiral, zero_mode_report
from tenfold.linalg import RngStream

for p, q, field in ((3, 1, "complex"), (5, 2, "real"), (4, 4, "complex"), (3, 1, "quaternion")):
    rep = zero_mode_report(sample_chiral(p, q, field, 1.0, RngStream(11)))
    print(f"p={p} q={q} {field:10s} zero modes={rep.raw} nu={rep.nu}")

# %% Majorana-basis gammas: exact Clifford algebra over the Gaussian integers
print(gamma_matrices().checks())

# %% A free Dirac Hamiltonian in that basis carries the BDI-style structure
ds = majorana_dirac_hamiltonian([0.2, 1.0, -0.5, 0.3], n_colours=2)
print(chirality_recast_check(ds.h, ds.gamma5))
