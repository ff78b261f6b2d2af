"""Brute-force reference computations used to cross-check the classifier.

These work from the enumerated group elements only (characters, group
averages) and share no code path with the null-space machinery of
:mod:`tenfold.classifier`.
"""

from __future__ import annotations

import numpy as np

from .linalg import AntiUnitaryOp, dagger, hermitian_basis

__all__ = [
    "character_commutant_dimension", "frobenius_schur_indicator",
    "twirl_invariant_dimension", "dyson_oracle",
]


def character_commutant_dimension(group) -> int:
    """``(1/|G|) sum_g |chi(g)|^2``, which equals ``sum m_lambda^2``."""
    chi = np.array([np.trace(g) for g in group])
    val = float(np.mean(np.abs(chi) ** 2))
    k = int(round(val))
    if abs(val - k) > 1e-6:
        raise ArithmeticError(f"character norm {val} is not an integer")
    return k


def frobenius_schur_indicator(group) -> int:
    """``(1/|G|) sum_g chi(g^2)`` for the elements of an irreducible representation."""
    val = np.mean([np.trace(g @ g) for g in group])
    k = int(round(val.real))
    if abs(val - k) > 1e-6:
        raise ArithmeticError(f"indicator {val} is not an integer")
    return k


def twirl_invariant_dimension(group, t_op: AntiUnitaryOp | None, basis) -> int:
    """Real dimension of the ``G``- and ``T``-invariant Hermitian operators on a subspace.

    The projector ``P = S o E`` with ``E(H) = avg_g g H g^dag`` and
    ``S(H) = (H + T H T^-1) / 2`` is applied to an orthogonal basis of the
    Hermitian operators on ``span(basis)``; its trace is the dimension.
    ``E`` and ``S`` commute because ``T`` normalizes ``G``.
    """
    v = np.asarray(basis)
    gs = np.array([dagger(v) @ g @ v for g in group])
    w = None if t_op is None else dagger(v) @ t_op.w @ np.conj(v)
    tr = 0.0
    for b in hermitian_basis(v.shape[1]):
        e = np.einsum("gij,jk,glk->il", gs, b, np.conj(gs)) / len(gs)
        if w is not None:
            e = (e + w @ np.conj(e) @ dagger(w)) / 2
        tr += np.real(np.vdot(b, e)) / np.real(np.vdot(b, b))
    k = int(round(tr))
    if abs(tr - k) > 1e-6:
        raise ArithmeticError(f"projector trace {tr} is not an integer")
    return k


def dyson_oracle(group, t_op, basis, multiplicity) -> str:
    """A, AI or AII for one isotypic block from the twirl dimension count."""
    if t_op is None:
        return "A"
    v = np.asarray(basis)
    p = v @ dagger(v)
    if np.max(np.abs(t_op.w @ np.conj(p) @ dagger(t_op.w) - p)) > 1e-8:
        return "A"
    d = twirl_invariant_dimension(group, t_op, v)
    m = multiplicity
    if d == m * (m + 1) // 2:
        return "AI"
    if d == m * (m - 1) // 2:
        return "AII"
    raise ArithmeticError(f"twirl dimension {d} fits neither AI nor AII for m={m}")
