"""Small finite groups with explicit irreducible representations.

Used to build classifier inputs whose answer is known by construction:
cyclic groups, dihedral groups, the quaternion group and direct products of
these.  Each irrep stores the matrices of the group generators, a unitary
``j`` with ``rho_partner(g) = j conj(rho(g)) j^-1`` and the scalar
``j conj(j)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classifier import SymmetryClass, SymmetryData
from .linalg import ISIGMA_Y, SIGMA_X, AntiUnitaryOp, dagger, haar_unitary

__all__ = ["Irrep", "FiniteGroup", "cyclic", "dihedral", "quaternion", "direct_product",
           "GROUP_LIBRARY", "Instance", "build_instance", "random_instance"]


@dataclass(frozen=True, eq=False)
class Irrep:
    name: str
    mats: tuple  # one matrix per group generator
    j: np.ndarray
    jsq: int  # j conj(j) = jsq * Id
    partner: int  # index of the conjugate irrep (itself when self-conjugate)

    @property
    def dim(self):
        return self.mats[0].shape[0]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    order: int
    irreps: tuple

    def fs_type(self, k) -> int:
        """Frobenius-Schur type of irrep ``k``: +1 real, -1 quaternionic, 0 complex."""
        ir = self.irreps[k]
        return ir.jsq if ir.partner == k else 0


def _mat(x):
    return np.atleast_2d(np.asarray(x, dtype=complex))


def cyclic(n: int) -> FiniteGroup:
    irreps = []
    for k in range(n):
        w = np.exp(2j * np.pi * k / n)
        irreps.append(Irrep(f"Z{n}[{k}]", (_mat(w),), _mat(1), 1, (-k) % n))
    return FiniteGroup(f"Z{n}", n, tuple(irreps))


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` generated by a rotation and a flip."""
    one = _mat(1)
    chars = [(1, 1), (1, -1)]
    if n % 2 == 0:
        chars += [(-1, 1), (-1, -1)]
    irreps = [Irrep(f"D{n}[{a},{b}]", (_mat(a), _mat(b)), one, 1, i)
              for i, (a, b) in enumerate(chars)]
    flip = np.diag([1.0, -1.0]).astype(complex)
    for k in range(1, (n - 1) // 2 + 1):
        t = 2 * np.pi * k / n
        rot = np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]], dtype=complex)
        irreps.append(Irrep(f"D{n}[rho{k}]", (rot, flip), np.eye(2, dtype=complex), 1,
                            len(irreps)))
    return FiniteGroup(f"D{n}", 2 * n, tuple(irreps))


def quaternion() -> FiniteGroup:
    """Quaternion group generated by ``i sigma_x`` and ``i sigma_y``."""
    one = _mat(1)
    irreps = [Irrep(f"Q8[{a},{b}]", (_mat(a), _mat(b)), one, 1, i)
              for i, (a, b) in enumerate([(1, 1), (1, -1), (-1, 1), (-1, -1)])]
    irreps.append(Irrep("Q8[spin]", (1j * SIGMA_X, ISIGMA_Y.copy()), ISIGMA_Y.copy(), -1, 4))
    return FiniteGroup("Q8", 8, tuple(irreps))


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    irreps = []
    n2 = len(g2.irreps)
    for i, a in enumerate(g1.irreps):
        for k, b in enumerate(g2.irreps):
            ea, eb = np.eye(a.dim), np.eye(b.dim)
            mats = tuple(np.kron(m, eb) for m in a.mats) + tuple(np.kron(ea, m) for m in b.mats)
            irreps.append(Irrep(f"{a.name}x{b.name}", mats, np.kron(a.j, b.j), a.jsq * b.jsq,
                                a.partner * n2 + b.partner))
    return FiniteGroup(f"{g1.name}x{g2.name}", g1.order * g2.order, tuple(irreps))


GROUP_LIBRARY = {
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "Z5": lambda: cyclic(5),
    "Z6": lambda: cyclic(6),
    "Z8": lambda: cyclic(8),
    "Z12": lambda: cyclic(12),
    "D3": lambda: dihedral(3),
    "D4": lambda: dihedral(4),
    "D5": lambda: dihedral(5),
    "D6": lambda: dihedral(6),
    "D12": lambda: dihedral(12),
    "Q8": quaternion,
    "Z2xZ2": lambda: direct_product(cyclic(2), cyclic(2)),
    "Z3xZ4": lambda: direct_product(cyclic(3), cyclic(4)),
    "Q8xZ2": lambda: direct_product(quaternion(), cyclic(2)),
    "Q8xZ3": lambda: direct_product(quaternion(), cyclic(3)),
    "Q8xZ6": lambda: direct_product(quaternion(), cyclic(6)),
    "D4xZ3": lambda: direct_product(dihedral(4), cyclic(3)),
    "D3xZ4": lambda: direct_product(dihedral(3), cyclic(4)),
    "Q8xD3": lambda: direct_product(quaternion(), dihedral(3)),
}


def _symplectic_unit(m):
    h = m // 2
    j = np.zeros((m, m), dtype=complex)
    j[:h, h:] = np.eye(h)
    j[h:, :h] = -np.eye(h)
    return j


@dataclass
class Instance:
    data: SymmetryData
    group: FiniteGroup
    multiplicities: dict  # irrep index -> multiplicity
    t_sign: int
    expected: list  # sorted (block_dim, irrep_dim, multiplicity, class label)
    block_bases: dict = None  # irrep index -> orthonormal columns spanning its block


def build_instance(group: FiniteGroup, multiplicities: dict, t_sign: int = 0, rng=None,
                   random_basis: bool = True) -> Instance:
    """Representation ``sum rho_k (x) Id_{m_k}`` with an optional time reversal.

    ``t_sign`` in {0, +1, -1} selects no ``T`` or a ``T`` with that square.
    With ``T`` present, conjugate partners of complex irreps are added with
    equal multiplicity, and multiplicities are made even wherever the
    multiplicity-space form must be symplectic.  The expected class of every
    block is AI/AII from the sign of that form, or A for complex irreps.
    """
    mult = {int(k): int(m) for k, m in multiplicities.items() if m > 0}
    if t_sign:
        for k in list(mult):
            p = group.irreps[k].partner
            mult[p] = max(mult.get(p, 0), mult[k])
        for k in mult:
            ir = group.irreps[k]
            if ir.partner == k and t_sign * ir.jsq == -1 and mult[k] % 2:
                mult[k] += 1
    order = sorted(mult)
    n_gens = len(group.irreps[0].mats)
    offsets, pos = {}, 0
    for k in order:
        offsets[k] = pos
        pos += group.irreps[k].dim * mult[k]
    n = pos
    gens = [np.zeros((n, n), dtype=complex) for _ in range(n_gens)]
    for k in order:
        ir, m, o = group.irreps[k], mult[k], offsets[k]
        sz = ir.dim * m
        for g, mat in zip(gens, ir.mats):
            g[o:o + sz, o:o + sz] = np.kron(mat, np.eye(m))

    expected = []
    w0 = None
    if t_sign:
        w0 = np.zeros((n, n), dtype=complex)
        for k in order:
            ir, m = group.irreps[k], mult[k]
            sz = ir.dim * m
            src = offsets[k]
            dst = offsets[ir.partner]
            if ir.partner == k:
                b = t_sign * ir.jsq  # sign of the multiplicity-space form
                bm = np.eye(m) if b == 1 else _symplectic_unit(m)
                w0[dst:dst + sz, src:src + sz] = np.kron(ir.j, bm)
                cls = SymmetryClass.AI if b == 1 else SymmetryClass.AII
            else:
                # pair (k, partner): the two off-diagonal pieces multiply to t_sign
                kappa = t_sign * ir.jsq if k < ir.partner else 1
                w0[dst:dst + sz, src:src + sz] = kappa * np.kron(ir.j, np.eye(m))
                cls = SymmetryClass.A
            expected.append((sz, ir.dim, m, cls.value))
    else:
        expected = [(group.irreps[k].dim * mult[k], group.irreps[k].dim, mult[k], "A")
                    for k in order]

    if random_basis:
        v = haar_unitary(rng, n)
    else:
        v = np.eye(n, dtype=complex)
    gens = [v @ g @ dagger(v) for g in gens]
    t_op = AntiUnitaryOp(v @ w0 @ v.T) if t_sign else None
    data = SymmetryData(dim=n, g0_generators=gens, t_op=t_op)
    bases = {k: v[:, offsets[k]:offsets[k] + group.irreps[k].dim * mult[k]] for k in order}
    return Instance(data, group, mult, t_sign, sorted(expected), bases)


def random_instance(rng, max_dim=12, max_order=48) -> Instance:
    """Random group from the library, random irreps, multiplicities, ``T`` and basis."""
    gen = rng.generator if hasattr(rng, "generator") else rng
    names = [k for k, f in GROUP_LIBRARY.items() if f().order <= max_order]
    while True:
        group = GROUP_LIBRARY[names[gen.integers(len(names))]]()
        t_sign = int(gen.choice([0, 1, -1]))
        n_irreps = int(gen.integers(1, 4))
        picks = gen.choice(len(group.irreps), size=min(n_irreps, len(group.irreps)), replace=False)
        mult = {int(k): int(gen.integers(1, 4)) for k in picks}
        inst = build_instance(group, mult, t_sign, gen)
        if inst.data.dim <= max_dim:
            return inst
