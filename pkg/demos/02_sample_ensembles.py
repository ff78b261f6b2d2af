"""Gaussian ensembles in all ten classes.

Every sample is built in the canonical block form of its class, so the
symmetry relations hold to rounding error.
"""
import numpy as np

from tenfold import SymmetryClass
from tenfold.ensembles import EnsembleSpec, sample, validate_structure

for cls in SymmetryClass:
    spec = EnsembleSpec(cls, n=8, p=5, q=3, seed=42)
    h = sample(spec)
    ok, report = validate_structure(h)
    worst = max(report["deviations"].values(), default=0.0)
    e = np.linalg.eigvalsh(h.matrix)
    print(f"{cls.value:5s} dim={spec.dim:2d} ok={ok} worst={worst:.1e} "
          f"spectrum=[{e[0]:+.2f} .. {e[-1]:+.2f}]")

# %% Kramers pairs in AII, +-E pairs in C
e = np.linalg.eigvalsh(sample(EnsembleSpec("AII", n=6, seed=1)).matrix)
print(np.round(e, 6))
e = np.linalg.eigvalsh(sample(EnsembleSpec("C", n=6, seed=1)).matrix)
print(np.round(e, 6))
