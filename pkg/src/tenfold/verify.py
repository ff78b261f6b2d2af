"""Invariant suite run by ``tenfold --command verify``.

Each check measures a deviation and compares it with a tolerance.  Exact
checks (integer arithmetic, label matches) report a mismatch count against a
tolerance of 0 that ``--tol`` does not override.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import classifier as clf
from . import dirac, ensembles, nambu, spectra, symmetric_space as ssp
from .classifier import SymmetryClass
from .linalg import (
    ISIGMA_Y,
    TOL_EIG,
    TOL_STRUCT,
    AntiUnitaryOp,
    RngStream,
    dagger,
    gaussian_complex,
    haar_unitary,
    hermitian_eig,
    max_dev,
    random_hermitian,
)

__all__ = ["CheckResult", "MODULES", "run_suite"]

MODULES = ("core_linalg", "classifier", "ensembles", "symmetric_space", "nambu",
           "dirac_chiral", "spectra")


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    deviation: float
    tolerance: float
    exact: bool = False

    @property
    def passed(self) -> bool:
        return bool(self.deviation <= self.tolerance)

    def as_dict(self):
        return {"module": self.module, "name": self.name, "deviation": self.deviation,
                "tolerance": self.tolerance, "exact": self.exact, "passed": self.passed}


_REGISTRY: list = []


def _check(module, name, tol=None, exact=False):
    def deco(fn):
        _REGISTRY.append((module, name, fn, 0.0 if exact else tol, exact))
        return fn
    return deco


# --- core_linalg -------------------------------------------------------------

@_check("core_linalg", "hermitian_eig residual and unitarity", TOL_EIG)
def _eig(seed):
    worst = 0.0
    for k, n in enumerate((2, 7, 16, 40, 64)):
        h = random_hermitian(RngStream(seed, k), n)
        w, v = hermitian_eig(h)
        worst = max(worst, max_dev(h @ v, v * w), max_dev(dagger(v) @ v, np.eye(n)))
    return worst


@_check("core_linalg", "antiunitary applied twice = square_sign", TOL_STRUCT)
def _twice(seed):
    worst = 0.0
    for k, w in enumerate((np.eye(4), np.kron(ISIGMA_Y, np.eye(3)), haar_unitary(RngStream(seed, 9), 1))):
        op = AntiUnitaryOp(w)
        psi = gaussian_complex(RngStream(seed, k), op.dim)
        worst = max(worst, max_dev(op(op(psi)), op.square_sign() * psi))
    return worst


@_check("core_linalg", "antiunitary preserves the scalar product up to conjugation", TOL_STRUCT)
def _scalar(seed):
    g = RngStream(seed, 3)
    op = AntiUnitaryOp(haar_unitary(g, 6))
    a, b = gaussian_complex(g, 6), gaussian_complex(g, 6)
    return abs(np.vdot(op(a), op(b)) - np.conj(np.vdot(a, b)))


# --- classifier --------------------------------------------------------------

@_check("classifier", "Dyson anchors (trivial G0 with T^2=+-1, quaternion spin with T^2=-1)", exact=True)
def _anchors(seed):
    from .linalg import SIGMA_X

    m = 2
    cases = [
        (clf.SymmetryData(4, [], AntiUnitaryOp(np.eye(4))), "AI"),
        (clf.SymmetryData(4, [], AntiUnitaryOp(np.kron(ISIGMA_Y, np.eye(2)))), "AII"),
        (clf.SymmetryData(2 * m, [np.kron(1j * SIGMA_X, np.eye(m)), np.kron(ISIGMA_Y, np.eye(m))],
                          AntiUnitaryOp(np.kron(ISIGMA_Y, np.eye(m)))), "AI"),
    ]
    bad = 0
    for data, label in cases:
        rep = clf.classify(data, RngStream(seed, 1))
        bad += len(rep) != 1 or rep[0].symmetry_class.value != label
    return float(bad)


@_check("classifier", "random instances: labels and commutant dimension", exact=True)
def _random_instances(seed):
    from .finite_groups import random_instance
    from .oracles import character_commutant_dimension

    bad = 0
    for k in range(20):
        inst = random_instance(RngStream(seed, 100 + k).generator)
        group = clf.group_closure(inst.data.generators)
        rep = clf.classify(inst.data, RngStream(seed, 200 + k))
        got = sorted((r.block_dim, r.irrep_dim, r.multiplicity, r.symmetry_class.value) for r in rep)
        sm = sum(m * m for m in inst.multiplicities.values())
        bad += got != inst.expected
        bad += not (clf.commutant_dimension(group) == character_commutant_dimension(group) == sm)
    return float(bad)


@_check("classifier", "ten-way table agrees with canonical involutions", exact=True)
def _table(seed):
    bad = 0
    for cls in SymmetryClass:
        ops = ensembles.canonical_involutions(cls, n=8, p=2, q=2)
        sig = (ops["t"].square_sign() if ops["t"] else 0, ops["c"].square_sign() if ops["c"] else 0,
               ops["chirality"] is not None)
        bad += clf.classify_by_involutions(*sig) is not cls
    return float(bad)


# --- ensembles ---------------------------------------------------------------

@_check("ensembles", "validate_structure(sample) for all ten classes", TOL_STRUCT)
def _roundtrip(seed):
    worst = 0.0
    for cls in SymmetryClass:
        spec = ensembles.EnsembleSpec(cls, n=16, p=5, q=3, seed=seed)
        for h in ensembles.sample_many(spec, 20):
            _, rep = ensembles.validate_structure(h, TOL_STRUCT)
            worst = max(worst, max(rep["deviations"].values()))
    return worst


@_check("ensembles", "+-E spectral symmetry of the paired classes", TOL_EIG)
def _pm(seed):
    worst = 0.0
    for cls in ("D", "DIII", "C", "CI", "AIII", "BDI", "CII"):
        h = ensembles.sample(ensembles.EnsembleSpec(cls, n=16, p=5, q=3, seed=seed))
        worst = max(worst, spectra.symmetric_spectrum_check(np.linalg.eigvalsh(h.matrix)))
    return worst


@_check("ensembles", "Kramers degeneracy of AII", TOL_EIG)
def _kramers(seed):
    h = ensembles.sample(ensembles.EnsembleSpec("AII", n=20, seed=seed))
    e = np.linalg.eigvalsh(h.matrix)
    return max_dev(e[0::2], e[1::2])


@_check("ensembles", "GUE weight invariance under unitary conjugation", 1e-12)
def _weight(seed):
    g = RngStream(seed, 5)
    h = random_hermitian(g, 8, 0.3)
    u = haar_unitary(g, 8)
    return abs(ensembles.gue_weight(h) - ensembles.gue_weight(u @ h @ dagger(u)))


# --- symmetric space -----------------------------------------------------------

@_check("symmetric_space", "time evolutions lie in M for every class", TOL_EIG)
def _membership(seed):
    g = np.random.default_rng(seed)
    worst = 0.0
    for cls in SymmetryClass:
        tau, lift = ssp.class_involution(cls, n=8, p=3, q=2)
        for h in ensembles.sample_many(ensembles.EnsembleSpec(cls, n=8, p=3, q=2, seed=seed), 10):
            u = ssp.time_evolution(lift(h.matrix), g.uniform(-5, 5))
            worst = max(worst, ssp.membership_defect(u, tau))
    return worst


@_check("symmetric_space", "fixed-point dimensions DIII 4N^2 and CI N^2", exact=True)
def _fixed(seed):
    bad = sum(ssp.class_fixed_point_dimension("DIII", 4 * n) != 4 * n * n for n in (2, 3))
    bad += sum(ssp.class_fixed_point_dimension("CI", 2 * n) != n * n for n in (2, 4))
    return float(bad)


@_check("symmetric_space", "geodesic inversion keeps Cartan-embedded points in M", TOL_EIG)
def _inversion(seed):
    g = RngStream(seed, 7)
    tau = ssp.Involution.antiunitary(np.eye(6))
    p0 = ssp.cartan_embed(haar_unitary(g, 6), tau)
    p = ssp.cartan_embed(haar_unitary(g, 6), tau)
    return ssp.membership_defect(ssp.geodesic_inversion(p0, p), tau)


# --- nambu ---------------------------------------------------------------------

@_check("nambu", "<C psi1, psi2> = {psi1, psi2} and C^2 = +Id", 1e-12)
def _pairing(seed):
    g = RngStream(seed, 11)
    c = nambu.particle_hole_op(5)
    worst = max_dev(c.square(), np.eye(10))
    for _ in range(10):
        a, b = gaussian_complex(g, 10), gaussian_complex(g, 10)
        worst = max(worst, abs(np.vdot(c(a), b) - nambu.symmetric_form(a, b)))
    return worst


@_check("nambu", "Q = iCT: Q^2 = Id, Tr Q = 0, equal eigenspaces", 1e-12)
def _q(seed):
    ops = ensembles.canonical_involutions("DIII", n=8)
    q, vp, vm = nambu.q_split(ops["c"], ops["t"])
    return max(max_dev(q @ q, np.eye(8)), abs(np.trace(q)), abs(vp.shape[1] - vm.shape[1]))


@_check("nambu", "Majorana-basis evolution is real orthogonal", TOL_EIG)
def _orth(seed):
    g = RngStream(seed, 12)
    n = 4
    a = random_hermitian(g, n)
    b = gaussian_complex(g, (n, n))
    h = nambu.assemble_bdg(nambu.QuadraticHamiltonian(a, b - b.T))
    w = nambu.majorana_basis(n)
    u = w @ ssp.time_evolution(h, 0.7) @ dagger(w)
    return max(max_dev(u.imag), max_dev(u.real.T @ u.real, np.eye(2 * n)))


@_check("nambu", "spin factorization identity", TOL_STRUCT)
def _spin(seed):
    sf = nambu.spin_factorize(2)
    e = sf.embedding
    lhs = e.T @ nambu.pairing_matrix(4) @ e
    return max_dev(lhs, np.kron(sf.skew_form, sf.eps))


# --- dirac ---------------------------------------------------------------------

@_check("dirac_chiral", "gamma matrices in exact arithmetic", exact=True)
def _gammas(seed):
    return float(sum(not v for v in dirac.gamma_matrices().checks().values()))


@_check("dirac_chiral", "Majorana Dirac operator: imaginary skew, chiral, U(1)-symmetric", TOL_STRUCT)
def _dirac_h(seed):
    g = np.random.default_rng(seed)
    nc = 3
    a = []
    for _ in range(4):
        x = g.normal(size=(nc, nc)) + 1j * g.normal(size=(nc, nc))
        x = x - dagger(x)
        a.append(x - np.trace(x) / nc * np.eye(nc))
    ds = dirac.majorana_dirac_hamiltonian(g.normal(size=4), a)
    _, dev = dirac.chirality_recast_check(ds.h, ds.gamma5)
    return max(max(dev.values()), max_dev(ds.q_gen @ ds.h, ds.h @ ds.q_gen))


@_check("dirac_chiral", "zero modes equal |nu| for generic chiral samples", exact=True)
def _zero(seed):
    bad = 0
    for p, q in ((3, 1), (5, 2), (4, 4)):
        for f in ("complex", "real"):
            for k in range(50):
                op = dirac.sample_chiral(p, q, f, 1.0, RngStream(seed, 1000 * p + 10 * q + k))
                bad += dirac.zero_modes(op) != abs(p - q)
    return float(bad)


# --- spectra -------------------------------------------------------------------

@_check("spectra", "surmise normalization and unit mean", 1e-10)
def _surmise(seed):
    worst = 0.0
    for b in (1, 2, 4):
        z = integrate.quad(lambda s: spectra.wigner_surmise(b, s), 0, np.inf, epsabs=1e-13)[0]
        m = integrate.quad(lambda s: s * spectra.wigner_surmise(b, s), 0, np.inf, epsabs=1e-13)[0]
        worst = max(worst, abs(z - 1), abs(m - 1))
    return worst


@_check("spectra", "KS self-test on surmise draws", 0.01)
def _ks(seed):
    return max(spectra.spacing_ks(spectra.sample_surmise(b, 100_000, RngStream(seed, b)), b)
               for b in (1, 2, 4))


@_check("spectra", "GUE bulk spacings vs beta=2 surmise", 0.05)
def _gue(seed):
    spec = ensembles.EnsembleSpec("A", n=100, seed=seed)
    sp = np.concatenate([spectra.bulk_spacings(np.linalg.eigvalsh(h.matrix))
                         for h in ensembles.sample_many(spec, 40)])
    return spectra.spacing_ks(sp, 2)


def run_suite(modules=None, tol=None, seed=20240611) -> list[CheckResult]:
    """Run the registered checks.

    Parameters
    ----------
    modules : iterable of str, optional
        Restrict to these module names.
    tol : float, optional
        Replace every non-exact tolerance.
    """
    wanted = set(modules) if modules else None
    if wanted is not None:
        unknown = wanted - set(MODULES)
        if unknown:
            from .errors import InputError

            raise InputError(f"unknown module(s) {sorted(unknown)}; choose from {list(MODULES)}")
    out = []
    for module, name, fn, t, exact in _REGISTRY:
        if wanted is not None and module not in wanted:
            continue
        dev = float(fn(seed))
        out.append(CheckResult(module, name, dev, t if exact or tol is None else float(tol), exact))
    return out
