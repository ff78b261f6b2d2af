"""Chiral Dirac operators.

Two pictures of the same symmetry:

* the Majorana realization of a massless Dirac operator,
  ``H = i Gamma^mu (d_mu - A_mu)``, with explicit real symmetric 8 x 8 gamma
  matrices.  ``H`` is imaginary skew and anti-commutes with ``Gamma_5``, so
  ``T psi = Gamma_5 conj(psi)`` is a genuine anti-unitary symmetry;
* the chiral random-matrix model ``D = [[0, Z], [Z^dag, 0]]`` with a
  ``p x q`` block, whose kernel has dimension at least ``|p - q|``.

Derivatives are replaced by a single plane-wave mode: ``d_mu -> k_mu J`` with
``J`` the real skew 2 x 2 unit on an extra mode factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .ensembles import chiral_block, sample_z
from .errors import IndexTheoremViolation, NotSuNc, SpecInvalid, ToleranceAmbiguous
from .linalg import ISIGMA_Y, SIGMA_Y, TOL_STRUCT, dagger, max_dev
from .nambu import QuadraticHamiltonian, assemble_bdg, majorana_basis

__all__ = [
    "GaussianIntMatrix", "GammaSet", "gamma_matrices", "majorana_gauge",
    "DiracSystem", "majorana_dirac_hamiltonian", "chirality_recast_check",
    "ChiralOperator", "sample_chiral", "ZeroModeReport", "zero_mode_report", "zero_modes",
    "majorana_embed",
]


@dataclass(frozen=True, eq=False)
class GaussianIntMatrix:
    """Matrix with entries in ``Z[i]``, stored as integer real and imaginary parts."""

    re: np.ndarray
    im: np.ndarray

    @classmethod
    def real(cls, a):
        a = np.asarray(a, dtype=np.int64)
        return cls(a, np.zeros_like(a))

    @property
    def shape(self):
        return self.re.shape

    def __matmul__(self, o):
        return GaussianIntMatrix(self.re @ o.re - self.im @ o.im, self.re @ o.im + self.im @ o.re)

    def __add__(self, o):
        return GaussianIntMatrix(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return GaussianIntMatrix(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return GaussianIntMatrix(-self.re, -self.im)

    def kron(self, o):
        return GaussianIntMatrix(np.kron(self.re, o.re) - np.kron(self.im, o.im),
                                 np.kron(self.re, o.im) + np.kron(self.im, o.re))

    @property
    def T(self):
        return GaussianIntMatrix(self.re.T, self.im.T)

    def equals(self, o) -> bool:
        return bool(np.array_equal(self.re, o.re) and np.array_equal(self.im, o.im))

    def is_zero(self) -> bool:
        return not (self.re.any() or self.im.any())

    def is_real(self) -> bool:
        return not self.im.any()

    def to_complex(self) -> np.ndarray:
        return self.re + 1j * self.im


_ONE = GaussianIntMatrix.real(np.eye(2))
_SX = GaussianIntMatrix.real([[0, 1], [1, 0]])
_SZ = GaussianIntMatrix.real([[1, 0], [0, -1]])
_SY = GaussianIntMatrix(np.zeros((2, 2), np.int64), np.array([[0, -1], [1, 0]], np.int64))


def _kron(*ms):
    return reduce(lambda a, b: a.kron(b), ms)


@dataclass(frozen=True, eq=False)
class GammaSet:
    """The four gamma matrices, ``Gamma_5`` and the U(1) generator, all exact."""

    gammas: tuple
    gamma5: GaussianIntMatrix
    q_gen: GaussianIntMatrix

    def checks(self) -> dict:
        """Exact checks of the Clifford algebra and the reality properties."""
        eye = GaussianIntMatrix.real(np.eye(8))
        g = self.gammas
        out = {}
        out["clifford"] = all(
            (g[a] @ g[b] + g[b] @ g[a]).equals(eye + eye if a == b else eye - eye)
            for a in range(4) for b in range(4))
        out["gamma_real"] = all(x.is_real() for x in g)
        out["gamma_symmetric"] = all(x.T.equals(x) for x in g)
        out["gamma5_real_symmetric"] = self.gamma5.is_real() and self.gamma5.T.equals(self.gamma5)
        out["gamma5_involution"] = (self.gamma5 @ self.gamma5).equals(eye)
        out["gamma5_anticommutes"] = all((self.gamma5 @ x + x @ self.gamma5).is_zero() for x in g)
        out["q_commutes_gamma5"] = (self.q_gen @ self.gamma5 - self.gamma5 @ self.q_gen).is_zero()
        out["q_commutes_gamma"] = all((self.q_gen @ x - x @ self.q_gen).is_zero() for x in g)
        qd = GaussianIntMatrix(self.q_gen.re.T, -self.q_gen.im.T)
        out["q_unitary"] = (qd @ self.q_gen).equals(eye)
        return out

    def as_complex(self):
        return [x.to_complex() for x in self.gammas], self.gamma5.to_complex(), self.q_gen.to_complex()


def gamma_matrices() -> GammaSet:
    g0 = _kron(_ONE, _SZ, _ONE)
    g1 = _kron(_SX, _SY, _SY)
    g2 = _kron(_SY, _SY, _ONE)
    g3 = _kron(_SZ, _SY, _SY)
    g5 = _kron(_ONE, _SX, _ONE)
    q = _kron(_ONE, _ONE, _SY)
    return GammaSet((g0, g1, g2, g3), g5, q)


def _check_su(a, tol):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSuNc("gauge field components must be square")
    if max_dev(a, -dagger(a)) > tol:
        raise NotSuNc("gauge field component is not anti-Hermitian")
    if abs(np.trace(a)) > tol * max(1, a.shape[0]):
        raise NotSuNc("gauge field component is not traceless")
    return a


def majorana_gauge(a_mu, tol=TOL_STRUCT) -> list[np.ndarray]:
    """``1 (x) 1 (x) (A^(-) - A^(+) sigma_y)`` for each component.

    ``A^(+-) = (A +- A^T) / 2``; the colour factor is the fastest index.  Every
    output is real skew of size ``8 N_c``.
    """
    a_mu = [_check_su(a, tol) for a in a_mu]
    if len(a_mu) != 4:
        raise NotSuNc(f"need four components, got {len(a_mu)}")
    nc = a_mu[0].shape[0]
    if any(a.shape != (nc, nc) for a in a_mu):
        raise NotSuNc("components of different colour dimension")
    out = []
    for a in a_mu:
        ap = (a + a.T) / 2
        am = (a - a.T) / 2
        inner = np.kron(np.eye(2), am) - np.kron(SIGMA_Y, ap)
        m = np.kron(np.eye(4), inner)
        out.append(m.real if max_dev(m.imag) < tol else m)
    return out


@dataclass(frozen=True, eq=False)
class DiracSystem:
    """``H`` on ``C^8 (x) C^{N_c} (x) C^2`` (mode) with its ``Gamma_5`` and ``Q``."""

    h: np.ndarray
    gamma5: np.ndarray
    q_gen: np.ndarray


def majorana_dirac_hamiltonian(k, a_mu=None, n_colours=None, gammas: GammaSet | None = None) -> DiracSystem:
    """``H = i Gamma^mu (k_mu J - A_mu)`` for a real momentum ``k``.

    ``a_mu`` are four ``su(N_c)`` matrices (zero field when None, with
    ``n_colours`` giving ``N_c``).
    """
    gs = gammas or gamma_matrices()
    gam, g5, q = gs.as_complex()
    k = np.asarray(k, dtype=float)
    if k.shape != (4,):
        raise SpecInvalid("momentum must have four real components")
    if a_mu is None:
        nc = int(n_colours or 1)
        big_a = [np.zeros((8 * nc, 8 * nc))] * 4
    else:
        big_a = majorana_gauge(a_mu)
        nc = big_a[0].shape[0] // 8
    e_c, e_m = np.eye(nc), np.eye(2)
    j = ISIGMA_Y.real
    x = np.zeros((16 * nc, 16 * nc))
    for mu in range(4):
        gm = np.kron(gam[mu].real, e_c)
        x += k[mu] * np.kron(gm, j) - np.kron(gm @ big_a[mu].real, e_m)
    h = 1j * x
    return DiracSystem(h, np.kron(np.kron(g5, e_c), e_m), np.kron(np.kron(q, e_c), e_m))


def chirality_recast_check(h, gamma5, tol=TOL_STRUCT):
    """Chiral symmetry of an imaginary ``H`` as the anti-unitary ``T = Gamma_5 conj``.

    Returns
    -------
    ok : bool
        ``conj(H) = -H`` and ``Gamma_5 H Gamma_5 = -H``, and consequently
        ``Gamma_5 conj(H) Gamma_5 = H``.
    report : dict
        Max deviation of each of the three relations.
    """
    h = np.asarray(h, dtype=complex)
    g = np.asarray(gamma5, dtype=complex)
    dev = {
        "conj(H) = -H": max_dev(np.conj(h), -h),
        "G5 H G5 = -H": max_dev(g @ h @ g, -h),
        "G5 conj(H) G5 = H": max_dev(g @ np.conj(h) @ g, h),
    }
    ok = dev["conj(H) = -H"] <= tol and dev["G5 H G5 = -H"] <= tol
    if ok and dev["G5 conj(H) G5 = H"] > 2 * tol:  # implied by the first two
        ok = False
    return ok, dev


@dataclass(frozen=True, eq=False)
class ChiralOperator:
    """``D = [[0, Z], [Z^dag, 0]]``.

    For ``field == "quaternion"`` the block ``z`` is the ``2p x 2q`` complex
    image of a ``p x q`` quaternion matrix.
    """

    z: np.ndarray
    field: str = "complex"

    @property
    def p(self):
        return self.z.shape[0] // (2 if self.field == "quaternion" else 1)

    @property
    def q(self):
        return self.z.shape[1] // (2 if self.field == "quaternion" else 1)

    @property
    def nu(self) -> int:
        return self.p - self.q

    @property
    def d(self) -> np.ndarray:
        return chiral_block(self.z)

    @property
    def gamma5(self) -> np.ndarray:
        a, b = self.z.shape
        return np.diag(np.r_[np.ones(a), -np.ones(b)]).astype(complex)


def sample_chiral(p, q, field="complex", sigma=1.0, rng=None) -> ChiralOperator:
    if field not in ("complex", "real", "quaternion"):
        raise SpecInvalid(f"unknown field {field!r}")
    return ChiralOperator(sample_z(rng, int(p), int(q), field, sigma), field)


@dataclass(frozen=True)
class ZeroModeReport:
    raw: int  # kernel dimension of the complex matrix
    quaternionic: int | None  # raw / 2 for quaternion fields
    tol: float
    nu: int


def zero_mode_report(op: ChiralOperator, tol=None, rel_tol=1e-8) -> ZeroModeReport:
    """Count eigenvalues of ``D`` with ``|lambda| <= tol``.

    ``tol`` defaults to ``rel_tol`` times the spectral radius.  Raises
    ``ToleranceAmbiguous`` when an eigenvalue falls in ``(tol, 10 tol)`` and
    ``IndexTheoremViolation`` when fewer than ``|nu|`` (complex count) are found.
    """
    vals = np.abs(np.linalg.eigvalsh(op.d))
    radius = float(vals.max()) if vals.size else 0.0
    if tol is None:
        tol = rel_tol * radius
    raw = int(np.count_nonzero(vals <= tol))
    if np.any((vals > tol) & (vals < 10 * tol)):
        raise ToleranceAmbiguous(f"eigenvalue within a decade above tol={tol:.3e}")
    f = 2 if op.field == "quaternion" else 1
    if raw < f * abs(op.nu):
        raise IndexTheoremViolation(f"{raw} zero modes for |nu| = {abs(op.nu)}")
    return ZeroModeReport(raw, raw // 2 if f == 2 else None, float(tol), op.nu)


def zero_modes(op: ChiralOperator, tol=None, rel_tol=1e-8) -> int:
    """Kernel dimension of ``D`` (complex count; see :func:`zero_mode_report`)."""
    return zero_mode_report(op, tol, rel_tol).raw


def majorana_embed(op: ChiralOperator):
    """Chiral operator as a Majorana-basis Hamiltonian.

    ``D`` is placed in Nambu space as ``assemble_bdg(A=D, B=0)`` and rotated to
    the Majorana basis.  Returns ``(H, Gamma)`` with ``H`` imaginary skew and
    ``Gamma = diag(gamma_5, gamma_5)`` real, anti-commuting with ``H``.
    """
    d = op.d
    n = d.shape[0]
    h_nambu = assemble_bdg(QuadraticHamiltonian(d, np.zeros_like(d)))
    w = majorana_basis(n)
    g = op.gamma5
    gam = np.block([[g, np.zeros_like(g)], [np.zeros_like(g), g]])
    return w @ h_nambu @ dagger(w), w @ gam @ dagger(w)
