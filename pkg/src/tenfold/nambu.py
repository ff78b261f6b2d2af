"""Nambu space of a fermionic system with ``N`` single-particle orbitals.

A Nambu vector is ``psi = (u, v)`` with ``u`` the ``N`` creation-side
amplitudes followed by the ``N`` annihilation-side amplitudes.  The space
carries the usual Hermitian scalar product and the symmetric bilinear form
``{psi1, psi2} = u1.v2 + u2.v1``; particle-hole conjugation ``C`` relates
the two.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AlgebraViolation, DimensionMismatch, DimensionNotDivisible, StructureViolation
from .linalg import TOL_STRUCT, AntiUnitaryOp, dagger, is_unitary, max_dev

__all__ = [
    "NambuSpace", "QuadraticHamiltonian",
    "symmetric_form", "pairing_matrix", "particle_hole_op", "assemble_bdg",
    "majorana_basis", "spin_factorize", "SpinFactorization", "q_split",
]


@dataclass(frozen=True)
class NambuSpace:
    n_orbitals: int

    @property
    def dim(self):
        return 2 * self.n_orbitals

    @property
    def c_op(self) -> AntiUnitaryOp:
        return particle_hole_op(self.n_orbitals)


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    """``H = sum A c^dag c + 1/2 sum (B c^dag c^dag + conj(B) c c)``."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex)
        b = np.asarray(self.b, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or b.shape != a.shape:
            raise StructureViolation(f"A and B must be square of equal size, got {a.shape}, {b.shape}")
        if max_dev(a, dagger(a)) > TOL_STRUCT:
            raise StructureViolation("A must be Hermitian")
        if max_dev(b, -b.T) > TOL_STRUCT:
            raise StructureViolation("B must be skew-symmetric")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n_orbitals(self):
        return self.a.shape[0]


def pairing_matrix(n_orbitals: int) -> np.ndarray:
    """Gram matrix ``F`` of the symmetric form: ``{x, y} = x^T F y``."""
    n = n_orbitals
    f = np.zeros((2 * n, 2 * n))
    f[:n, n:] = np.eye(n)
    f[n:, :n] = np.eye(n)
    return f


def symmetric_form(psi1, psi2) -> complex:
    psi1 = np.asarray(psi1)
    psi2 = np.asarray(psi2)
    if psi1.shape != psi2.shape or psi1.shape[0] % 2:
        raise DimensionMismatch("Nambu vectors must have equal even length")
    n = psi1.shape[0] // 2
    u1, v1 = psi1[:n], psi1[n:]
    u2, v2 = psi2[:n], psi2[n:]
    return complex(u1 @ v2 + u2 @ v1)


def particle_hole_op(n_orbitals: int) -> AntiUnitaryOp:
    """``C (u, v) = (conj v, conj u)``, so that ``<C psi1, psi2> = {psi1, psi2}``."""
    if n_orbitals < 1:
        raise DimensionMismatch("need at least one orbital")
    return AntiUnitaryOp(pairing_matrix(n_orbitals).astype(complex))


def assemble_bdg(h: QuadraticHamiltonian) -> np.ndarray:
    """Nambu matrix ``[[A, B], [-conj B, -conj A]]``."""
    a, b = h.a, h.b
    return np.block([[a, b], [-np.conj(b), -np.conj(a)]])


def majorana_basis(n_orbitals: int) -> np.ndarray:
    """Unitary ``W`` to the Majorana basis.

    Rows are the Majorana combinations ``(u + v)/sqrt 2`` and
    ``i (u - v)/sqrt 2``; ``W H W^dag`` is imaginary antisymmetric for every
    Bogoliubov-de Gennes matrix ``H`` and ``C`` becomes plain conjugation.
    """
    n = n_orbitals
    e = np.eye(n)
    return np.block([[e, e], [1j * e, -1j * e]]) / np.sqrt(2)


@dataclass(frozen=True, eq=False)
class SpinFactorization:
    """``V = W (x) C^2`` for ``n_half`` spatial orbitals with spin 1/2.

    ``embedding`` maps ``W (x) C^2`` (spin index fastest) unitarily onto Nambu
    space with orbitals ordered ``alpha = 2 r + sigma``.  ``skew_form`` is the
    Gram matrix of ``[.,.]`` on ``W`` and ``eps`` that of the spinor form.
    """

    n_half: int
    embedding: np.ndarray
    skew_form: np.ndarray
    eps: np.ndarray

    @property
    def w_dim(self):
        return 2 * self.n_half

    def spin_rotation(self, g) -> np.ndarray:
        """Action of a spin matrix ``g`` on Nambu space: ``conj(g)`` on creation, ``g`` on annihilation."""
        e = np.eye(self.n_half)
        return np.block([[np.kron(e, np.conj(g)), np.zeros((2 * self.n_half,) * 2)],
                         [np.zeros((2 * self.n_half,) * 2), np.kron(e, g)]])

    def lift(self, x_w) -> np.ndarray:
        """Image of an operator on ``W`` acting as ``x_w (x) Id_2`` on Nambu space."""
        return self.embedding @ np.kron(x_w, np.eye(2)) @ dagger(self.embedding)


def spin_factorize(n_half: int) -> SpinFactorization:
    """Factor the symmetric form as ``[w1, w2] * eps(s1, s2)``.

    ``W`` has a particle half (annihilation side, orbitals ``(r, s)``) and a
    hole half built from creation amplitudes contracted with ``eps``, so spin
    rotations act on the ``C^2`` factor only.
    """
    if n_half < 1:
        raise DimensionNotDivisible("Nambu dimension must be a positive multiple of 4")
    n_orb = 2 * n_half
    dim = 2 * n_orb
    eps = np.array([[0, 1], [-1, 0]], dtype=complex)  # s1^T (i sigma_y) s2
    e = np.zeros((dim, dim), dtype=complex)
    # W basis index (half, r), half 0 = particle, 1 = hole; tensor index ((half, r), s)
    for r in range(n_half):
        for s in range(2):
            col_p = (0 * n_half + r) * 2 + s
            e[n_orb + 2 * r + s, col_p] = 1.0  # v_{r,s}
            col_h = (1 * n_half + r) * 2 + s
            for sig in range(2):
                if eps[sig, s] != 0:
                    e[2 * r + sig, col_h] = eps[sig, s]  # sum_sig eps(sig, s) u_{r,sig}
    omega = np.zeros((n_orb, n_orb), dtype=complex)
    omega[:n_half, n_half:] = np.eye(n_half)
    omega[n_half:, :n_half] = -np.eye(n_half)
    return SpinFactorization(n_half, e, omega, eps)


def q_split(c: AntiUnitaryOp, t: AntiUnitaryOp, tol=TOL_STRUCT):
    """Eigenspaces of ``Q = i C T``.

    Returns
    -------
    q : ndarray
        The unitary ``Q``.
    v_plus, v_minus : ndarray
        Orthonormal bases (columns) of the +1 and -1 eigenspaces.
    """
    if c.dim != t.dim:
        raise DimensionMismatch("C and T act on different spaces")
    if c.square_sign(tol) != 1:
        raise AlgebraViolation("C^2 must be +Id")
    if t.square_sign(tol) != -1:
        raise AlgebraViolation("T^2 must be -Id")
    ct, tc = c.compose(t), t.compose(c)
    if max_dev(ct, tc) > tol:
        raise AlgebraViolation("C and T must commute")
    q = 1j * ct
    n = q.shape[0]
    if not is_unitary(q, tol):
        raise AlgebraViolation("Q is not unitary")
    if max_dev(q @ q, np.eye(n)) > tol:
        raise AlgebraViolation("Q^2 != Id")
    if abs(np.trace(q)) > tol * n:
        raise AlgebraViolation("Tr Q != 0")
    vals, vecs = np.linalg.eigh((q + dagger(q)) / 2)
    minus = vecs[:, vals < 0]
    plus = vecs[:, vals > 0]
    return q, plus, minus
