"""Symmetry classification of explicit symmetry data.

Given generators of a finite unitary group ``G0`` acting on ``C^n`` and
optional anti-unitary operators, the module

* enumerates the group and its commutant,
* splits ``C^n`` into ``G0``-isotypic blocks,
* decides, block by block, between classes A, AI and AII by counting the real
  dimension of the invariant Hermitian space, with the inner-automorphism sign
  ``epsilon`` as a cross-check,
* maps signatures ``(T^2, C^2, chirality)`` to one of the ten class labels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    DegenerateGenericElement,
    DimensionCountMismatch,
    DimensionMismatch,
    GroupTooLarge,
    InputError,
    InvalidSignature,
    NonScalarSquare,
    NonUnitaryGenerator,
    NotNormalizing,
    NumericalError,
    OuterAutomorphism,
    StructureViolation,
)
from .linalg import (
    RANK_TOL,
    TOL_GROUP,
    TOL_STRUCT,
    AntiUnitaryOp,
    RngStream,
    dagger,
    hermitian_basis,
    is_unitary,
    max_dev,
    nullspace,
    real_solution_dimension,
)

__all__ = [
    "SymmetryClass", "SymmetryData", "IsotypicBlock", "BlockReport",
    "MAX_GROUP_ORDER",
    "group_closure", "commutant_basis", "commutant_dimension",
    "isotypic_decompose", "irreducible_copies", "conjugation_intertwiner",
    "frobenius_schur_sign", "find_inner_element", "effective_square",
    "invariant_hermitian_dimension", "dyson_block_class",
    "classify_by_involutions", "classify",
]

MAX_GROUP_ORDER = 1024
_MAX_RETRIES = 5


class SymmetryClass(str, enum.Enum):
    A = "A"
    AI = "AI"
    AII = "AII"
    AIII = "AIII"
    BDI = "BDI"
    CII = "CII"
    D = "D"
    DIII = "DIII"
    C = "C"
    CI = "CI"

    def __str__(self):
        return self.value


@dataclass
class SymmetryData:
    """Input of the classifier.

    Attributes
    ----------
    dim : int
        Dimension of the Hilbert space.
    g0_generators : list of ndarray
        Unitary generators of the finite group ``G0``.  Empty means trivial.
    t_op, c_op : AntiUnitaryOp, optional
        Time reversal and particle-hole conjugation.
    chirality : ndarray, optional
        Unitary involution anti-commuting with the Hamiltonians.
    nambu : bool
        Whether ``C^dim`` is a Nambu space (creation components first).
    """

    dim: int
    g0_generators: list = field(default_factory=list)
    t_op: AntiUnitaryOp | None = None
    c_op: AntiUnitaryOp | None = None
    chirality: np.ndarray | None = None
    nambu: bool = False

    def __post_init__(self):
        if int(self.dim) < 1:
            raise InputError("dim must be positive")
        self.dim = int(self.dim)
        gens = []
        for g in self.g0_generators:
            g = np.asarray(g, dtype=complex)
            if g.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"generator of shape {g.shape} on C^{self.dim}")
            if not is_unitary(g, TOL_STRUCT):
                raise NonUnitaryGenerator("every generator of G0 must be unitary")
            gens.append(g)
        self.g0_generators = gens
        for name in ("t_op", "c_op"):
            op = getattr(self, name)
            if op is not None and op.dim != self.dim:
                raise DimensionMismatch(f"{name} acts on C^{op.dim}, data on C^{self.dim}")
        if self.chirality is not None:
            g = np.asarray(self.chirality, dtype=complex)
            if g.shape != (self.dim, self.dim) or not is_unitary(g):
                raise InputError("chirality must be a unitary matrix on C^dim")
            if max_dev(g @ g, np.eye(self.dim)) > TOL_STRUCT:
                raise InputError("chirality must square to the identity")
            self.chirality = g

    @property
    def generators(self) -> list[np.ndarray]:
        return self.g0_generators or [np.eye(self.dim, dtype=complex)]


@dataclass
class IsotypicBlock:
    """One ``G0``-isotypic component ``V_lambda (x) C^m``."""

    basis: np.ndarray = field(repr=False)
    irrep_dim: int
    multiplicity: int
    t_invariant: bool = False
    block_class: SymmetryClass | None = None
    epsilon: int | None = None

    @property
    def projection(self) -> np.ndarray:
        return self.basis @ dagger(self.basis)

    @property
    def block_dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class BlockReport:
    block_dim: int
    irrep_dim: int
    multiplicity: int
    symmetry_class: SymmetryClass
    epsilon: int | None = None
    t_square: int = 0
    c_square: int = 0
    chiral: bool = False

    def as_dict(self):
        return {
            "block_dim": self.block_dim,
            "irrep_dim": self.irrep_dim,
            "multiplicity": self.multiplicity,
            "class": str(self.symmetry_class),
            "epsilon": self.epsilon,
            "t_square": self.t_square,
            "c_square": self.c_square,
            "chiral": self.chiral,
        }


# ---------------------------------------------------------------------------
# groups and commutants


def _default_rng(rng):
    return rng if rng is not None else RngStream(0x7E4F01D, 0)


def group_closure(generators, max_order=MAX_GROUP_ORDER, tol=TOL_GROUP) -> list[np.ndarray]:
    """All elements of the finite group generated by ``generators``.

    Elements are identified when their Frobenius distance is below ``tol``.
    The identity comes first.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if not gens:
        raise InputError("at least one generator is required")
    n = gens[0].shape[0]
    for g in gens:
        if g.shape != (n, n):
            raise DimensionMismatch("generators of different shapes")
        if not is_unitary(g, TOL_STRUCT):
            raise NonUnitaryGenerator("generator is not unitary")
    buf = np.empty((min(64, max_order + 1), n, n), dtype=complex)
    buf[0] = np.eye(n)
    size = 1
    frontier = [buf[0].copy()]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                p = g @ a
                d = np.linalg.norm((buf[:size] - p).reshape(size, -1), axis=1)
                if d.min() < tol:
                    continue
                if size >= max_order:
                    raise GroupTooLarge(f"group order exceeds {max_order}")
                if size == buf.shape[0]:
                    buf = np.concatenate([buf, np.empty_like(buf)])
                buf[size] = p
                size += 1
                nxt.append(p)
        frontier = nxt
    return [buf[i].copy() for i in range(size)]


def _commutator_system(mats):
    n = mats[0].shape[0]
    eye = np.eye(n)
    # row-major vec: vec(gX) = (g x I) vec X, vec(Xg) = (I x g^T) vec X
    return np.concatenate([np.kron(g, eye) - np.kron(eye, g.T) for g in mats])


def commutant_basis(mats) -> list[np.ndarray]:
    """Basis of ``{X : X g = g X for all g in mats}`` (complex)."""
    mats = [np.asarray(m, dtype=complex) for m in mats]
    n = mats[0].shape[0]
    ns = nullspace(_commutator_system(mats), atol=RANK_TOL)
    return [ns[:, k].reshape(n, n) for k in range(ns.shape[1])]


def commutant_dimension(group) -> int:
    """Complex dimension of the commutant of ``group`` (nullity of the stacked commutators)."""
    return len(commutant_basis(group))


def _generic_hermitian(basis, gen):
    y = np.zeros_like(basis[0])
    for z in basis:
        a, b = gen.standard_normal(2)
        y += a * (z + dagger(z)) / 2 + b * 1j * (z - dagger(z)) / 2
    return (y + dagger(y)) / 2


def _clusters(values, scale):
    """Split sorted ``values`` into runs of numerically equal entries."""
    tol = 1e-7 * max(scale, 1.0)
    groups, start = [], 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > tol:
            groups.append((start, i))
            start = i
    return groups


def _min_cluster_gap(values, groups):
    reps = [values[a] for a, _ in groups]
    return min(np.diff(reps)) if len(reps) > 1 else np.inf


def _isqrt_exact(k):
    r = int(round(np.sqrt(k)))
    if r * r != k:
        raise NumericalError(f"commutant dimension {k} of an isotypic block is not a square")
    return r


def isotypic_decompose(data: SymmetryData, rng=None) -> list[IsotypicBlock]:
    """Split ``C^dim`` into ``G0``-isotypic blocks.

    The minimal central idempotents of the commutant are the isotypic
    projections.  They are read off as eigenspaces of a random Hermitian
    element of the centre of the commutant; a draw whose eigenvalue count
    differs from the dimension of the centre is retried.
    """
    gen = _default_rng(rng).generator
    gens = data.generators
    comm = commutant_basis(gens)
    center = commutant_basis(list(gens) + comm)
    n_center = len(center)
    for _ in range(_MAX_RETRIES):
        y = _generic_hermitian(center, gen)
        vals, vecs = np.linalg.eigh(y)
        scale = float(np.max(np.abs(vals))) if vals.size else 1.0
        groups = _clusters(vals, scale)
        if len(groups) == n_center and _min_cluster_gap(vals, groups) > 1e-3 * scale:
            break
    else:
        raise DegenerateGenericElement("no generic centre element found after retries")

    blocks = []
    for a, b in groups:
        basis = vecs[:, a:b]
        restricted = [dagger(basis) @ g @ basis for g in gens]
        m = _isqrt_exact(commutant_dimension(restricted))
        bd = b - a
        if bd % m:
            raise NumericalError(f"block dimension {bd} not divisible by multiplicity {m}")
        t_inv = False
        if data.t_op is not None:
            p = basis @ dagger(basis)
            t_inv = max_dev(data.t_op.conjugate(p), p) < TOL_GROUP
        blocks.append(IsotypicBlock(basis=basis, irrep_dim=bd // m, multiplicity=m,
                                    t_invariant=t_inv))
    return blocks


def _intertwiner(rho_a, rho_b):
    """Unitary ``X`` with ``rho_a(g) X = X rho_b(g)``, or None."""
    d = rho_a[0].shape[0]
    eye = np.eye(d)
    system = np.concatenate([np.kron(a, eye) - np.kron(eye, b.T) for a, b in zip(rho_a, rho_b)])
    ns = nullspace(system, atol=RANK_TOL)
    if ns.shape[1] == 0:
        return None
    if ns.shape[1] > 1:
        raise NumericalError("intertwiner space between irreducible copies is not one-dimensional")
    x = ns[:, 0].reshape(d, d)
    c = np.trace(dagger(x) @ x).real / d
    x = x / np.sqrt(c)
    if not is_unitary(x, 1e-8):
        raise NonScalarSquare("intertwiner is not proportional to a unitary")
    return x


def irreducible_copies(block: IsotypicBlock, generators, rng=None) -> np.ndarray:
    """Adapted basis of a block, in block coordinates.

    Returns a unitary ``A`` (block_dim x block_dim) whose column groups
    ``A[:, j*d:(j+1)*d]`` span irreducible copies on which every generator acts
    by the same ``d x d`` matrix.
    """
    gen = _default_rng(rng).generator
    basis = block.basis
    rho = [dagger(basis) @ g @ basis for g in generators]
    d, m = block.irrep_dim, block.multiplicity
    b = block.block_dim
    if m == 1:
        return np.eye(b, dtype=complex)
    comm = commutant_basis(rho)
    for _ in range(_MAX_RETRIES):
        y = _generic_hermitian(comm, gen)
        vals, vecs = np.linalg.eigh(y)
        scale = float(np.max(np.abs(vals)))
        groups = _clusters(vals, scale)
        if (len(groups) == m and all(hi - lo == d for lo, hi in groups)
                and _min_cluster_gap(vals, groups) > 1e-3 * scale):
            break
    else:
        raise DegenerateGenericElement("could not separate irreducible copies")
    copies = [vecs[:, lo:hi] for lo, hi in groups]
    rho1 = [dagger(copies[0]) @ r @ copies[0] for r in rho]
    cols = [copies[0]]
    for c in copies[1:]:
        rhoj = [dagger(c) @ r @ c for r in rho]
        x = _intertwiner(rhoj, rho1)
        if x is None:
            raise NumericalError("copies inside an isotypic block are inequivalent")
        cols.append(c @ x)
    return np.concatenate(cols, axis=1)


def conjugation_intertwiner(block: IsotypicBlock, group, rng=None):
    """Unitary ``s`` with ``conj(g) = s^-1 g s`` on one irreducible copy.

    Returns
    -------
    s : ndarray or None
        ``d x d`` unitary in the coordinates of the first adapted copy, None
        when the irrep is not equivalent to its conjugate.
    fs_sign : int
        +1 or -1 from ``s conj(s) = fs_sign Id``; 0 when not self-conjugate.
    """
    a = irreducible_copies(block, group, rng)
    d = block.irrep_dim
    copy = block.basis @ a[:, :d]
    rho = [dagger(copy) @ g @ copy for g in group]
    s = _intertwiner(rho, [np.conj(r) for r in rho])
    if s is None:
        return None, 0
    sq = s @ np.conj(s)
    c = np.trace(sq) / d
    if max_dev(sq, c * np.eye(d)) > 1e-8 or abs(abs(c) - 1) > 1e-8:
        raise NonScalarSquare("s conj(s) is not +-Id")
    return s, (1 if c.real > 0 else -1)


def frobenius_schur_sign(block: IsotypicBlock, group, rng=None) -> int:
    """Convenience wrapper returning only the sign of :func:`conjugation_intertwiner`."""
    return conjugation_intertwiner(block, group, rng)[1]


# ---------------------------------------------------------------------------
# the AI / AII dichotomy


def find_inner_element(block: IsotypicBlock, op: AntiUnitaryOp, generators, group, tol=TOL_GROUP):
    """Group element ``R`` with ``op g op^-1 = R^-1 g R`` on the block, or None."""
    v = block.basis
    w = dagger(v) @ op.w @ np.conj(v)
    gens_b = [dagger(v) @ g @ v for g in generators]
    targets = [w @ np.conj(g) @ dagger(w) for g in gens_b]
    for r in group:
        rb = dagger(v) @ r @ v
        if all(max_dev(dagger(rb) @ g @ rb, t) < tol for g, t in zip(gens_b, targets)):
            return r
    return None


def effective_square(block: IsotypicBlock, op: AntiUnitaryOp, generators, group, rng=None) -> int:
    """Square of ``op' = R op S`` on a block preserved by ``op``.

    ``S`` applies the conjugation intertwiner copy by copy and ``R`` is a group
    element realizing the automorphism ``g -> op g op^-1``.  The result is the
    sign that governs the multiplicity space: +1 (orthogonal) or -1
    (symplectic).
    """
    r = find_inner_element(block, op, generators, group)
    if r is None:
        raise OuterAutomorphism("automorphism induced on G0 is not inner")
    a = irreducible_copies(block, generators, rng)
    m, d = block.multiplicity, block.irrep_dim
    copy = block.basis @ a[:, :d]
    rho = [dagger(copy) @ g @ copy for g in generators]
    s = _intertwiner(rho, [np.conj(x) for x in rho])
    if s is None:
        raise NumericalError("block is invariant but its irrep is not self-conjugate")
    full = block.basis @ a  # adapted orthonormal basis of the block
    t_lin = dagger(full) @ op.w @ np.conj(full)
    r_lin = dagger(full) @ r @ full
    s_lin = np.kron(np.eye(m), s)
    tp = r_lin @ t_lin @ np.conj(s_lin)
    sq = tp @ np.conj(tp)
    c = np.trace(sq) / sq.shape[0]
    if max_dev(sq, c * np.eye(sq.shape[0])) > 1e-7:
        raise NonScalarSquare("square of the reduced anti-unitary is not scalar")
    return 1 if c.real > 0 else -1


def invariant_hermitian_dimension(block: IsotypicBlock, generators, t_op: AntiUnitaryOp) -> int:
    """Real dimension of ``{H Hermitian on the block : [H, g] = 0, T H T^-1 = H}``."""
    v = block.basis
    gens_b = [dagger(v) @ g @ v for g in generators]
    w = dagger(v) @ t_op.w @ np.conj(v)

    def residual(h):
        parts = [h @ g - g @ h for g in gens_b]
        parts.append(w @ np.conj(h) @ dagger(w) - h)
        return np.concatenate([p.ravel() for p in parts])

    return real_solution_dimension(hermitian_basis(block.block_dim), residual)


def dyson_block_class(block: IsotypicBlock, data: SymmetryData, group=None, rng=None):
    """Class A, AI or AII of one isotypic block.

    Returns
    -------
    cls : SymmetryClass
    epsilon : int or None
        Square of the reduced time reversal when the induced automorphism is
        inner, else None.
    """
    if data.t_op is None or not block.t_invariant:
        return SymmetryClass.A, None
    gens = data.generators
    m = block.multiplicity
    dim_h = invariant_hermitian_dimension(block, gens, data.t_op)
    if dim_h == m * (m + 1) // 2:
        cls = SymmetryClass.AI
    elif dim_h == m * (m - 1) // 2:
        cls = SymmetryClass.AII
    else:
        raise DimensionCountMismatch(
            f"invariant Hermitian dimension {dim_h} fits neither AI nor AII for m={m}")
    if group is None:
        group = group_closure(gens)
    eps = None
    try:
        eps = effective_square(block, data.t_op, gens, group, rng)
    except OuterAutomorphism:
        eps = None
    if eps is not None and (eps == 1) != (cls is SymmetryClass.AI):
        raise DimensionCountMismatch(f"epsilon={eps} contradicts dimension count ({cls})")
    return cls, eps


# ---------------------------------------------------------------------------
# the ten-way table

_TABLE = {
    (0, 0, False): SymmetryClass.A,
    (1, 0, False): SymmetryClass.AI,
    (-1, 0, False): SymmetryClass.AII,
    (0, 1, False): SymmetryClass.D,
    (0, -1, False): SymmetryClass.C,
    (0, 0, True): SymmetryClass.AIII,
    (1, 1, True): SymmetryClass.BDI,
    (-1, -1, True): SymmetryClass.CII,
    (-1, 1, True): SymmetryClass.DIII,
    (1, -1, True): SymmetryClass.CI,
}


def classify_by_involutions(t_square: int, c_square: int, has_chirality: bool) -> SymmetryClass:
    """Class label from ``T^2``, ``C^2`` (0 = absent) and the chirality flag.

    When both ``T`` and ``C`` are present the chirality ``TC`` is implied, so
    the flag may be given either way.
    """
    if t_square not in (-1, 0, 1) or c_square not in (-1, 0, 1):
        raise InvalidSignature(f"squares must be in {{-1, 0, 1}}, got ({t_square}, {c_square})")
    chiral = bool(has_chirality) or (t_square != 0 and c_square != 0)
    try:
        return _TABLE[(t_square, c_square, chiral)]
    except KeyError:
        raise InvalidSignature(
            f"signature (T^2={t_square}, C^2={c_square}, chiral={has_chirality}) "
            "is not one of the ten classes") from None


# ---------------------------------------------------------------------------
# driver


def _check_normalizes(op, generators, group, name):
    for g in generators:
        img = op.conjugate(g)
        if min(max_dev(img, h) for h in group) > TOL_GROUP:
            raise NotNormalizing(f"{name} does not normalize G0")


def _preserves(op_conj, basis):
    p = basis @ dagger(basis)
    return max_dev(op_conj(p), p) < TOL_GROUP


def classify(data: SymmetryData, rng=None) -> list[BlockReport]:
    """Per-block class report for ``data``.

    Without particle-hole conjugation or chirality the Dyson dichotomy is run
    on every isotypic block.  Otherwise (always for Nambu data) each block's
    effective ``T^2`` and ``C^2`` are computed on the multiplicity space and
    looked up in the ten-way table.
    """
    rng = _default_rng(rng)
    gens = data.generators
    group = group_closure(gens)
    if data.t_op is not None:
        _check_normalizes(data.t_op, gens, group, "T")
    blocks = isotypic_decompose(data, rng)

    involution_path = data.nambu or data.c_op is not None or data.chirality is not None
    if not involution_path:
        out = []
        for b in blocks:
            cls, eps = dyson_block_class(b, data, group, rng)
            t_sq = 0
            if cls is not SymmetryClass.A:
                t_sq = 1 if cls is SymmetryClass.AI else -1
            out.append(BlockReport(b.block_dim, b.irrep_dim, b.multiplicity, cls, eps, t_square=t_sq))
        return out

    c_op = data.c_op
    if data.nambu:
        from .nambu import particle_hole_op

        if data.dim % 2:
            raise StructureViolation("Nambu space must have even dimension")
        canonical = particle_hole_op(data.dim // 2)
        if c_op is None:
            c_op = canonical
        elif max_dev(c_op.w, canonical.w) > TOL_STRUCT:
            raise StructureViolation("c_op does not realize the canonical Nambu pairing")
        for g in gens:
            if max_dev(c_op.conjugate(g), g) > TOL_STRUCT:
                raise StructureViolation("G0 does not preserve the Nambu pairing")
    if c_op is not None:
        _check_normalizes(c_op, gens, group, "C")
    t_op = data.t_op
    if t_op is not None and c_op is not None:
        if max_dev(c_op.compose(t_op), t_op.compose(c_op)) > TOL_STRUCT:
            raise StructureViolation("T and C must commute")

    out = []
    for b in blocks:
        t_sq = c_sq = 0
        if t_op is not None and _preserves(t_op.conjugate, b.basis):
            t_sq = effective_square(b, t_op, gens, group, rng)
        if c_op is not None and _preserves(c_op.conjugate, b.basis):
            c_sq = effective_square(b, c_op, gens, group, rng)
        chiral = False
        if data.chirality is not None:
            gam = data.chirality
            chiral = _preserves(lambda p: gam @ p @ dagger(gam), b.basis)
        if t_op is not None and c_op is not None and not chiral:
            ct = c_op.compose(t_op)
            chiral = _preserves(lambda p: ct @ p @ dagger(ct), b.basis)
        cls = classify_by_involutions(t_sq, c_sq, chiral)
        out.append(BlockReport(b.block_dim, b.irrep_dim, b.multiplicity, cls, None,
                               t_square=t_sq, c_square=c_sq, chiral=chiral))
    return out


def annotate(blocks, data: SymmetryData, rng=None) -> list[IsotypicBlock]:
    """Fill ``block_class`` and ``epsilon`` of blocks from :func:`isotypic_decompose`."""
    group = group_closure(data.generators)
    return [replace(b, block_class=c, epsilon=e)
            for b in blocks for c, e in [dyson_block_class(b, data, group, rng)]]
