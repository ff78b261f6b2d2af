"""Spectral statistics: unfolding, Wigner surmises, KS distances, +-E pairing
and the density of levels near zero energy."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial
from scipy import special, stats

from .classifier import SymmetryClass
from .errors import InputError, InvalidBeta, InvalidDegree, TooFewLevels, TooFewSpacings

__all__ = [
    "SURMISE_SCALE", "unfold", "bulk_spacings", "wigner_surmise", "surmise_cdf",
    "sample_surmise", "spacing_ks", "best_beta", "symmetric_spectrum_check",
    "kramers_deduplicate", "LowEnergyDensity", "low_energy_density",
    "SpectralReport", "spectral_report", "zero_mode_histogram", "merge_histograms",
]

MIN_LEVELS = 20
MIN_SPACINGS = 1000
MIN_LOW_ENERGY_LEVELS = 10_000
BULK_FRACTION = 0.8
KRAMERS_REL_GAP = 1e-6

# p_beta(s) = c_beta s^beta exp(-a_beta s^2)
SURMISE_SCALE = {1: np.pi / 4, 2: 4 / np.pi, 4: 64 / (9 * np.pi)}
_SURMISE_NORM = {1: np.pi / 2, 2: 32 / np.pi ** 2, 4: 2 ** 18 / (3 ** 6 * np.pi ** 3)}


def _beta(beta) -> int:
    if beta not in SURMISE_SCALE:
        raise InvalidBeta(f"beta must be 1, 2 or 4, got {beta!r}")
    return int(beta)


def unfold(levels, poly_degree: int = 7) -> np.ndarray:
    """Map sorted levels through a polynomial fit of the level staircase.

    The staircase value at the ``i``-th level (0-based) is ``i + 1/2``.
    """
    if int(poly_degree) != poly_degree or poly_degree < 1:
        raise InvalidDegree(f"polynomial degree must be a positive integer, got {poly_degree!r}")
    e = np.sort(np.asarray(levels, dtype=float))
    if e.size < MIN_LEVELS:
        raise TooFewLevels(f"need at least {MIN_LEVELS} levels, got {e.size}")
    staircase = np.arange(e.size) + 0.5
    fit = Polynomial.fit(e, staircase, int(poly_degree))
    return fit(e)


def _bulk_slice(n, fraction=BULK_FRACTION):
    cut = int(round(n * (1 - fraction) / 2))
    return slice(cut, n - cut)


def bulk_spacings(levels, poly_degree: int = 7, fraction=BULK_FRACTION) -> np.ndarray:
    """Nearest-neighbour spacings of the unfolded middle ``fraction`` of a spectrum."""
    x = unfold(levels, poly_degree)
    return np.diff(x[_bulk_slice(x.size, fraction)])


def wigner_surmise(beta, s):
    """Spacing density of the 2 x 2 Gaussian ensemble with Dyson index ``beta``."""
    b = _beta(beta)
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise InputError("spacings must be non-negative")
    out = _SURMISE_NORM[b] * s ** b * np.exp(-SURMISE_SCALE[b] * s ** 2)
    return out if out.ndim else float(out)


def surmise_cdf(beta, s):
    b = _beta(beta)
    s = np.clip(np.asarray(s, dtype=float), 0, None)
    out = special.gammainc((b + 1) / 2, SURMISE_SCALE[b] * s ** 2)
    return out if out.ndim else float(out)


def sample_surmise(beta, size, rng) -> np.ndarray:
    """Inverse-CDF draws from the surmise."""
    from .linalg import _gen

    b = _beta(beta)
    u = _gen(rng).random(size)
    return np.sqrt(special.gammaincinv((b + 1) / 2, u) / SURMISE_SCALE[b])


def spacing_ks(spacings, beta) -> float:
    """Kolmogorov-Smirnov distance between the spacings and the surmise."""
    b = _beta(beta)
    s = np.asarray(spacings, dtype=float).ravel()
    if s.size < MIN_SPACINGS:
        raise TooFewSpacings(f"need at least {MIN_SPACINGS} spacings, got {s.size}")
    return float(stats.kstest(s, lambda x: surmise_cdf(b, x)).statistic)


def best_beta(spacings) -> int:
    ks = {b: spacing_ks(spacings, b) for b in (1, 2, 4)}
    return min(ks, key=ks.get)


def symmetric_spectrum_check(levels) -> float:
    """``max |lambda_i + lambda_{n+1-i}|`` over the sorted spectrum."""
    e = np.sort(np.asarray(levels, dtype=float))
    if e.size == 0:
        return 0.0
    return float(np.max(np.abs(e + e[::-1])))


def kramers_deduplicate(levels, rel_gap=KRAMERS_REL_GAP) -> np.ndarray:
    """Keep one level of every degenerate pair.

    Consecutive sorted levels closer than ``rel_gap`` times the spectral radius
    form a pair; unpaired levels are kept as they are.
    """
    e = np.sort(np.asarray(levels, dtype=float))
    if e.size == 0:
        return e
    thr = rel_gap * float(np.max(np.abs(e)))
    keep, i = [], 0
    while i < e.size:
        keep.append(e[i])
        i += 2 if i + 1 < e.size and e[i + 1] - e[i] < thr else 1
    return np.asarray(keep)


@dataclass
class LowEnergyDensity:
    """Density of positive levels in units of the mean level spacing."""

    edges: np.ndarray
    density: np.ndarray
    bulk_density: float
    bulk_window: tuple

    @property
    def first_bin_ratio(self) -> float:
        return float(self.density[0] / self.bulk_density)

    def as_dict(self):
        return {"edges": self.edges.tolist(), "density": self.density.tolist(),
                "bulk_density": self.bulk_density, "bulk_window": list(self.bulk_window),
                "first_bin_ratio": self.first_bin_ratio}


def low_energy_density(spectra, bin_width=0.25, x_max=15.0, bulk_window=(3.0, 15.0),
                       poly_degree=7) -> LowEnergyDensity:
    """Histogram of unfolded positive levels near zero energy.

    Each spectrum is unfolded on its own; positive levels are measured from
    the unfolded position of zero, ``x = xi(lambda) - xi(0)``, so the bulk
    density is 1 per unit ``x``.
    """
    spectra = [np.sort(np.asarray(s, dtype=float)) for s in spectra]
    total = sum(s.size for s in spectra)
    if total < MIN_LOW_ENERGY_LEVELS:
        raise TooFewLevels(f"need at least {MIN_LOW_ENERGY_LEVELS} levels, got {total}")
    xs = []
    for e in spectra:
        if e.size < MIN_LEVELS:
            raise TooFewLevels("every spectrum needs at least 20 levels")
        fit = Polynomial.fit(e, np.arange(e.size) + 0.5, poly_degree)
        pos = e[e > 0]
        xs.append(fit(pos) - fit(0.0))
    x = np.concatenate(xs)
    edges = np.arange(0.0, x_max + bin_width / 2, bin_width)
    counts, _ = np.histogram(x, edges)
    density = counts / (len(spectra) * bin_width)
    lo, hi = bulk_window
    sel = (edges[:-1] >= lo) & (edges[1:] <= hi)
    return LowEnergyDensity(edges, density, float(density[sel].mean()), (lo, hi))


def zero_mode_histogram(spectra, rel_tol=1e-8) -> dict:
    """Frequency of the number of ``|lambda| <= rel_tol * radius`` per spectrum."""
    hist: dict[int, int] = {}
    for e in spectra:
        a = np.abs(np.asarray(e, dtype=float))
        k = int(np.count_nonzero(a <= rel_tol * a.max())) if a.size else 0
        hist[k] = hist.get(k, 0) + 1
    return dict(sorted(hist.items()))


def merge_histograms(parts) -> dict:
    """Sum partial histograms; the result does not depend on the order of ``parts``."""
    out: dict = {}
    for p in parts:
        for k, v in p.items():
            out[k] = out.get(k, 0) + v
    return dict(sorted(out.items()))


_PAIRED = frozenset({SymmetryClass.D, SymmetryClass.DIII, SymmetryClass.C, SymmetryClass.CI,
                     SymmetryClass.AIII, SymmetryClass.BDI, SymmetryClass.CII})
_KRAMERS = frozenset({SymmetryClass.AII, SymmetryClass.DIII, SymmetryClass.CII})


@dataclass
class SpectralReport:
    symmetry_class: SymmetryClass
    n_samples: int
    spacings: np.ndarray = field(repr=False)
    ks_beta1: float | None
    ks_beta2: float | None
    ks_beta4: float | None
    zero_mode_histogram: dict
    symmetry_violation: float | None
    low_energy: LowEnergyDensity | None = None

    @property
    def mean_spacing(self) -> float:
        return float(np.mean(self.spacings)) if self.spacings.size else float("nan")

    def as_dict(self, include_spacings=False):
        d = {
            "class": str(self.symmetry_class),
            "n_samples": self.n_samples,
            "n_spacings": int(self.spacings.size),
            "mean_spacing": self.mean_spacing,
            "ks_beta1": self.ks_beta1,
            "ks_beta2": self.ks_beta2,
            "ks_beta4": self.ks_beta4,
            "zero_mode_histogram": {str(k): v for k, v in self.zero_mode_histogram.items()},
            "symmetry_violation": self.symmetry_violation,
            "low_energy_density": self.low_energy.as_dict() if self.low_energy else None,
        }
        if include_spacings:
            d["spacings"] = self.spacings.tolist()
        return d


def spectral_report(spectra, symmetry_class, poly_degree=7, bin_width=0.25) -> SpectralReport:
    """Aggregate statistics of many spectra of one class.

    Degenerate Kramers pairs are removed before unfolding for AII, DIII and
    CII.  KS distances need at least 1000 bulk spacings and are None
    otherwise; the low-energy table needs 10^4 levels of a +-E symmetric class.
    """
    cls = SymmetryClass(symmetry_class)
    spectra = [np.sort(np.asarray(s, dtype=float)) for s in spectra]
    if not spectra:
        raise TooFewLevels("no spectra given")
    reduced = [kramers_deduplicate(s) if cls in _KRAMERS else s for s in spectra]
    sp = np.concatenate([bulk_spacings(s, poly_degree) for s in reduced])
    ks = {b: (spacing_ks(sp, b) if sp.size >= MIN_SPACINGS else None) for b in (1, 2, 4)}
    violation = max(symmetric_spectrum_check(s) for s in spectra) if cls in _PAIRED else None
    low = None
    if cls in _PAIRED and sum(s.size for s in reduced) >= MIN_LOW_ENERGY_LEVELS:
        low = low_energy_density(reduced, bin_width, poly_degree=poly_degree)
    return SpectralReport(cls, len(spectra), sp, ks[1], ks[2], ks[4],
                          zero_mode_histogram(spectra), violation, low)
