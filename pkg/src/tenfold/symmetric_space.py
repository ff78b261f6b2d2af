"""Time evolutions, the Cartan embedding and the symmetric space ``M``.

For an involutive automorphism ``tau`` of a unitary group ``K`` the set
``M = {U in K : U = tau(U)^-1}`` is a symmetric space: it is the image of the
Cartan embedding ``k -> k tau(k)^-1`` and is closed under the geodesic
inversion ``p -> p0 p^-1 p0``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classifier import SymmetryClass
from .ensembles import CHIRAL_CLASSES, Hamiltonian, canonical_involutions
from .errors import DimensionMismatch, InputError, NotInM
from .linalg import (
    SIGMA_X,
    TOL_EIG,
    AntiUnitaryOp,
    antihermitian_basis,
    dagger,
    hermitian_eig,
    is_unitary,
    max_dev,
    real_solution_dimension,
)

__all__ = [
    "Involution", "time_evolution", "cartan_embed", "geodesic_inversion",
    "membership", "membership_defect", "closure_under_inversion_product",
    "class_involution", "fixed_point_dimension", "class_fixed_point_dimension",
]


@dataclass(frozen=True, eq=False)
class Involution:
    """``tau(U) = T U T^-1`` for an anti-unitary ``T`` or ``G U G^-1`` for a unitary ``G``."""

    kind: str  # "antiunitary" or "unitary"
    op: object

    def __post_init__(self):
        if self.kind == "antiunitary":
            if not isinstance(self.op, AntiUnitaryOp):
                object.__setattr__(self, "op", AntiUnitaryOp(self.op))
        elif self.kind == "unitary":
            g = np.asarray(self.op, dtype=complex)
            if not is_unitary(g):
                raise InputError("unitary involution must be given by a unitary matrix")
            object.__setattr__(self, "op", g)
        else:
            raise InputError(f"unknown involution kind {self.kind!r}")

    @classmethod
    def antiunitary(cls, op):
        return cls("antiunitary", op)

    @classmethod
    def unitary(cls, g):
        return cls("unitary", g)

    @property
    def dim(self):
        return self.op.dim if self.kind == "antiunitary" else self.op.shape[0]

    def __call__(self, u):
        u = np.asarray(u, dtype=complex)
        if u.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"matrix of shape {u.shape} for involution on C^{self.dim}")
        if self.kind == "antiunitary":
            return self.op.conjugate(u)
        return self.op @ u @ dagger(self.op)


def _matrix(h):
    return h.matrix if isinstance(h, Hamiltonian) else np.asarray(h, dtype=complex)


def time_evolution(h, t: float) -> np.ndarray:
    """``exp(-i t H)`` through the eigendecomposition of ``H``."""
    vals, vecs = hermitian_eig(_matrix(h))
    return (vecs * np.exp(-1j * t * vals)) @ dagger(vecs)


def cartan_embed(k, tau: Involution) -> np.ndarray:
    k = np.asarray(k, dtype=complex)
    if k.shape != (tau.dim, tau.dim):
        raise DimensionMismatch("k and tau act on different spaces")
    return k @ dagger(tau(k))


def geodesic_inversion(p0, p) -> np.ndarray:
    """``p0 p^-1 p0`` for unitary ``p0`` and ``p``."""
    p0 = np.asarray(p0, dtype=complex)
    p = np.asarray(p, dtype=complex)
    if p0.shape != p.shape or p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise DimensionMismatch(f"shapes {p0.shape} and {p.shape}")
    return p0 @ dagger(p) @ p0


def membership_defect(u, tau: Involution) -> float:
    """``max|U - tau(U)^-1|``."""
    u = np.asarray(u, dtype=complex)
    return max_dev(u, dagger(tau(u)))


def membership(u, tau: Involution, tol=TOL_EIG) -> bool:
    return membership_defect(u, tau) <= tol


def closure_under_inversion_product(p0, p, tau: Involution, tol=TOL_EIG) -> np.ndarray:
    """``p0 p^-1 p0`` for members ``p0, p`` of ``M``; the result is checked to lie in ``M``."""
    for name, x in (("p0", p0), ("p", p)):
        d = membership_defect(x, tau)
        if d > tol:
            raise NotInM(f"{name} is not in M (defect {d:.3e})")
    r = geodesic_inversion(p0, p)
    d = membership_defect(r, tau)
    if d > tol:
        raise NotInM(f"p0 p^-1 p0 left M (defect {d:.3e})")
    return r


# ---------------------------------------------------------------------------
# per-class involutions

_TYPE_II = frozenset({SymmetryClass.A, SymmetryClass.D, SymmetryClass.C})


def class_involution(symmetry_class, n=None, p=None, q=None):
    """Involution whose ``M`` contains the class's time evolutions.

    Returns
    -------
    tau : Involution
    lift : callable
        Maps a Hamiltonian matrix of the class to the generator whose time
        evolutions lie in ``M``.  For A, D and C (groups, i.e. type II spaces)
        this is ``diag(H, conj H)`` on the doubled space with ``tau`` the swap
        composed with conjugation; otherwise it is the identity.
    """
    cls = SymmetryClass(symmetry_class)
    if cls in _TYPE_II:
        if n is None:
            raise InputError("non-chiral classes need n")
        swap = np.kron(SIGMA_X, np.eye(n))
        return Involution.antiunitary(swap), lambda h: np.block(
            [[h, np.zeros_like(h)], [np.zeros_like(h), np.conj(h)]])
    ops = canonical_involutions(cls, n=n, p=p, q=q)
    if cls in CHIRAL_CLASSES:
        return Involution.unitary(ops["chirality"]), lambda h: h
    return Involution.antiunitary(ops["t"]), lambda h: h


def _tau_linear(tau: Involution):
    if tau.kind == "antiunitary":
        w = tau.op.w
        return lambda x: w @ np.conj(x) @ dagger(w)
    g = tau.op
    return lambda x: g @ x @ dagger(g)


def fixed_point_dimension(tau: Involution, group_ops=()) -> int:
    """Real dimension of the Lie algebra of ``K_tau`` at the identity.

    ``K`` is the subgroup of ``U(n)`` commuting with every anti-unitary in
    ``group_ops`` (all of ``U(n)`` if empty).  The count is the nullity of the
    linear system ``X = -X^dag``, ``C X C^-1 = X`` for ``C`` in ``group_ops`` and
    ``tau(X) = X``.
    """
    n = tau.dim
    lin = _tau_linear(tau)
    ops = list(group_ops)

    def residual(x):
        parts = [lin(x) - x] + [c.conjugate(x) - x for c in ops]
        return np.concatenate([r.ravel() for r in parts])

    return real_solution_dimension(antihermitian_basis(n), residual)


def class_fixed_point_dimension(symmetry_class, n) -> int:
    """``dim K_tau`` for DIII and CI with ``K`` cut out by ``C`` and ``tau`` given by ``T``."""
    cls = SymmetryClass(symmetry_class)
    if cls not in (SymmetryClass.DIII, SymmetryClass.CI):
        raise InputError("fixed-point dimensions are provided for DIII and CI")
    ops = canonical_involutions(cls, n=n)
    return fixed_point_dimension(Involution.antiunitary(ops["t"]), [ops["c"]])
