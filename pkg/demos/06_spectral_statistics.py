"""Level statistics: spacing distributions and the density near zero."""
import numpy as np

from tenfold.ensembles import EnsembleSpec, sample_many
from tenfold.spectra import bulk_spacings, kramers_deduplicate, low_energy_density, spacing_ks


def spectra(cls, n, count):
    return [np.linalg.eigvalsh(h.matrix) for h in sample_many(EnsembleSpec(cls, n=n, seed=0), count)]


# %% Wigner-Dyson: each ensemble is closest to its own surmise
for cls, n in (("AI", 200), ("A", 200), ("AII", 400)):
    sp = np.concatenate([bulk_spacings(kramers_deduplicate(e)) for e in spectra(cls, n, 60)])
    print(cls, {b: round(spacing_ks(sp, b), 4) for b in (1, 2, 4)})

# %% class C levels are repelled from zero, class D levels are not
for cls in ("C", "D"):
    rep = low_energy_density(spectra(cls, 100, 200))
    print(cls, "first bin / bulk =", round(rep.first_bin_ratio, 3))
