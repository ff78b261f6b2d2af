"""Gaussian random-matrix ensembles in the canonical form of each class.

Every sampler draws from the weight ``exp(-Tr H^2 / 2 sigma^2)`` restricted to
the class's Hamiltonian space: a real coordinate ``x`` that enters
``Tr H^2 = sum |H_ij|^2`` as ``k x^2`` gets variance ``sigma^2 / k``.

Canonical forms (``n`` is the total matrix size for the non-chiral classes)::

    A     Hermitian
    AI    real symmetric
    AII   [[A, B], [-conj B, conj A]]     A Hermitian, B skew      n even
    D     i X                             X real skew
    C     [[A, B], [conj B, -conj A]]     A Hermitian, B symmetric n even
    CI    [[0, Z], [conj Z, 0]]           Z complex symmetric      n even
    DIII  [[0, Z], [-conj Z, 0]]          Z complex skew           n % 4 == 0
    AIII  [[0, Z], [Z^dag, 0]]            Z complex p x q
    BDI   same, Z real p x q
    CII   same, Z quaternion (complex 2p x 2q)

Quaternion-valued matrices use the outer layout ``[[A, B], [-conj B, conj A]]``
so that time reversal is ``(i sigma_y (x) Id) conj``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classifier import SymmetryClass
from .errors import SpecInvalid
from .linalg import (
    ISIGMA_Y,
    SIGMA_X,
    SIGMA_Y,
    TOL_STRUCT,
    AntiUnitaryOp,
    RngStream,
    _gen,
    dagger,
    max_dev,
)

__all__ = [
    "CHIRAL_CLASSES", "BDG_CLASSES", "EnsembleSpec", "Hamiltonian",
    "sample", "sample_many", "sample_z", "chiral_block",
    "validate_structure", "canonical_involutions", "gue_weight",
]

CHIRAL_CLASSES = frozenset({SymmetryClass.AIII, SymmetryClass.BDI, SymmetryClass.CII})
BDG_CLASSES = frozenset({SymmetryClass.D, SymmetryClass.DIII, SymmetryClass.C, SymmetryClass.CI})

_DIVISOR = {SymmetryClass.AII: 2, SymmetryClass.C: 2, SymmetryClass.CI: 2, SymmetryClass.DIII: 4}


@dataclass(frozen=True)
class EnsembleSpec:
    """Sampler configuration.

    ``n`` is the matrix size for non-chiral classes.  Chiral classes use the
    block sizes ``p`` and ``q`` (quaternion blocks for CII, so the matrix is
    ``2(p + q)`` square).  Draws come from ``RngStream(seed, stream_id)``.
    """

    symmetry_class: SymmetryClass
    n: int | None = None
    p: int | None = None
    q: int | None = None
    sigma: float = 1.0
    seed: int = 0
    stream_id: int = 0

    def __post_init__(self):
        try:
            cls = SymmetryClass(self.symmetry_class)
        except ValueError:
            raise SpecInvalid(f"unknown symmetry class {self.symmetry_class!r}") from None
        object.__setattr__(self, "symmetry_class", cls)
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise SpecInvalid(f"sigma must be positive, got {self.sigma!r}")
        if cls in CHIRAL_CLASSES:
            if self.p is None or self.q is None or int(self.p) < 1 or int(self.q) < 1:
                raise SpecInvalid(f"class {cls} needs p >= 1 and q >= 1")
        else:
            if self.n is None or int(self.n) < 1:
                raise SpecInvalid(f"class {cls} needs n >= 1")
            k = _DIVISOR.get(cls, 1)
            if int(self.n) % k:
                raise SpecInvalid(f"class {cls} needs n divisible by {k}, got {self.n}")

    @property
    def dim(self) -> int:
        if self.symmetry_class in CHIRAL_CLASSES:
            f = 2 if self.symmetry_class is SymmetryClass.CII else 1
            return f * (self.p + self.q)
        return int(self.n)

    @property
    def nu(self) -> int | None:
        if self.symmetry_class in CHIRAL_CLASSES:
            return self.p - self.q
        return None

    def rng(self) -> RngStream:
        return RngStream(self.seed, self.stream_id)


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    matrix: np.ndarray
    symmetry_class: SymmetryClass
    block_meta: dict = field(default_factory=dict)

    @property
    def dim(self):
        return self.matrix.shape[0]


# ---------------------------------------------------------------------------
# building blocks


def _hermitian(g, m, sigma, diag_k=1, off_k=2):
    """Hermitian m x m with diagonal variance sigma^2/diag_k, off-diagonal parts sigma^2/off_k."""
    h = np.zeros((m, m), dtype=complex)
    iu = np.triu_indices(m, 1)
    s_off = sigma / np.sqrt(off_k)
    h[iu] = g.normal(0, s_off, len(iu[0])) + 1j * g.normal(0, s_off, len(iu[0]))
    h = h + dagger(h)
    h[np.diag_indices(m)] = g.normal(0, sigma / np.sqrt(diag_k), m)
    return h


def _real_symmetric(g, m, sigma):
    h = np.zeros((m, m))
    iu = np.triu_indices(m, 1)
    h[iu] = g.normal(0, sigma / np.sqrt(2), len(iu[0]))
    h = h + h.T
    h[np.diag_indices(m)] = g.normal(0, sigma, m)
    return h.astype(complex)


def _skew(g, m, scale, complex_=True):
    b = np.zeros((m, m), dtype=complex)
    iu = np.triu_indices(m, 1)
    k = len(iu[0])
    b[iu] = g.normal(0, scale, k) + (1j * g.normal(0, scale, k) if complex_ else 0)
    return b - b.T


def _symmetric(g, m, diag_scale, off_scale):
    b = np.zeros((m, m), dtype=complex)
    iu = np.triu_indices(m, 1)
    k = len(iu[0])
    b[iu] = g.normal(0, off_scale, k) + 1j * g.normal(0, off_scale, k)
    b = b + b.T
    b[np.diag_indices(m)] = g.normal(0, diag_scale, m) + 1j * g.normal(0, diag_scale, m)
    return b


def _quaternion_embed(a, b):
    """Complex image ``[[a, b], [-conj b, conj a]]`` of the quaternion matrix ``a + b j``."""
    return np.block([[a, b], [-np.conj(b), np.conj(a)]])


def sample_z(rng, p, q, field="complex", sigma=1.0) -> np.ndarray:
    """Off-diagonal chiral block with the variance fixed by the chiral weight.

    ``field`` is ``"complex"`` (p x q), ``"real"`` (p x q) or ``"quaternion"``
    (2p x 2q, outer layout).
    """
    g = _gen(rng)
    if p < 1 or q < 1:
        raise SpecInvalid("chiral blocks need p >= 1 and q >= 1")
    if not (np.isfinite(sigma) and sigma > 0):
        raise SpecInvalid(f"sigma must be positive, got {sigma!r}")
    if field == "real":
        return g.normal(0, sigma / np.sqrt(2), (p, q)).astype(complex)
    if field == "complex":
        s = sigma / np.sqrt(2)
        return g.normal(0, s, (p, q)) + 1j * g.normal(0, s, (p, q))
    if field == "quaternion":
        s = sigma / 2
        a = g.normal(0, s, (p, q)) + 1j * g.normal(0, s, (p, q))
        b = g.normal(0, s, (p, q)) + 1j * g.normal(0, s, (p, q))
        return _quaternion_embed(a, b)
    raise SpecInvalid(f"unknown field {field!r}")


def chiral_block(z) -> np.ndarray:
    """``[[0, Z], [Z^dag, 0]]``."""
    z = np.asarray(z, dtype=complex)
    p, q = z.shape
    return np.block([[np.zeros((p, p)), z], [dagger(z), np.zeros((q, q))]])


_FIELD = {SymmetryClass.AIII: "complex", SymmetryClass.BDI: "real", SymmetryClass.CII: "quaternion"}


def sample(spec: EnsembleSpec, rng=None) -> Hamiltonian:
    """One Hamiltonian from the class's Gaussian ensemble.

    ``rng`` overrides the stream derived from ``spec.seed`` and ``spec.stream_id``.
    """
    g = _gen(rng if rng is not None else spec.rng())
    cls, s = spec.symmetry_class, spec.sigma
    if cls in CHIRAL_CLASSES:
        z = sample_z(g, spec.p, spec.q, _FIELD[cls], s)
        return Hamiltonian(chiral_block(z), cls, {"p": spec.p, "q": spec.q, "nu": spec.nu})
    n = spec.dim
    m = n // 2
    if cls is SymmetryClass.A:
        h = _hermitian(g, n, s)
    elif cls is SymmetryClass.AI:
        h = _real_symmetric(g, n, s)
    elif cls is SymmetryClass.AII:
        a = _hermitian(g, m, s, diag_k=2, off_k=4)
        h = _quaternion_embed(a, _skew(g, m, s / 2))
    elif cls is SymmetryClass.D:
        h = 1j * _skew(g, n, s / np.sqrt(2), complex_=False).real
    elif cls is SymmetryClass.C:
        a = _hermitian(g, m, s, diag_k=2, off_k=4)
        b = _symmetric(g, m, s / np.sqrt(2), s / 2)
        h = np.block([[a, b], [np.conj(b), -np.conj(a)]])
    elif cls is SymmetryClass.CI:
        z = _symmetric(g, m, s / np.sqrt(2), s / 2)
        h = np.block([[np.zeros((m, m)), z], [np.conj(z), np.zeros((m, m))]])
    elif cls is SymmetryClass.DIII:
        z = _skew(g, m, s / 2)
        h = np.block([[np.zeros((m, m)), z], [-np.conj(z), np.zeros((m, m))]])
    else:  # pragma: no cover - enum is exhaustive
        raise SpecInvalid(f"no sampler for {cls}")
    return Hamiltonian(np.ascontiguousarray(h, dtype=complex), cls, {"n": n})


def sample_many(spec: EnsembleSpec, count: int, start: int = 0) -> list[Hamiltonian]:
    """``count`` samples; sample ``k`` uses ``RngStream(spec.seed, start + k)``."""
    return [sample(spec, RngStream(spec.seed, start + k)) for k in range(count)]


# ---------------------------------------------------------------------------
# reference operators and validation


def _j(m):
    return np.kron(ISIGMA_Y, np.eye(m))


def canonical_involutions(symmetry_class, n=None, p=None, q=None) -> dict:
    """Reference ``T``, ``C`` and chirality of a class's canonical form.

    Returns
    -------
    dict
        Keys ``"t"``, ``"c"`` (AntiUnitaryOp or None) and ``"chirality"``
        (unitary or None).  For DIII and CI the chirality is the product of
        ``T`` and ``C`` and is not listed separately.
    """
    try:
        cls = SymmetryClass(symmetry_class)
    except ValueError:
        raise SpecInvalid(f"unknown symmetry class {symmetry_class!r}") from None
    t = c = gamma = None
    if cls in CHIRAL_CLASSES:
        if p is None or q is None or p < 1 or q < 1:
            raise SpecInvalid(f"class {cls} needs p, q >= 1")
        if cls is SymmetryClass.CII:
            gamma = np.diag(np.r_[np.ones(2 * p), -np.ones(2 * q)]).astype(complex)
            jp, jq = _j(p), _j(q)
            z = np.zeros((2 * p, 2 * q))
            t = AntiUnitaryOp(np.block([[jp, z], [z.T, jq]]))
            c = AntiUnitaryOp(np.block([[jp, z], [z.T, -jq]]))
        else:
            gamma = np.diag(np.r_[np.ones(p), -np.ones(q)]).astype(complex)
            if cls is SymmetryClass.BDI:
                t = AntiUnitaryOp(np.eye(p + q))
                c = AntiUnitaryOp(gamma)
        return {"t": t, "c": c, "chirality": gamma}
    if n is None or n < 1 or n % _DIVISOR.get(cls, 1):
        raise SpecInvalid(f"class {cls} incompatible with n={n}")
    m = n // 2
    e = np.eye(m) if m else None
    if cls is SymmetryClass.AI:
        t = AntiUnitaryOp(np.eye(n))
    elif cls is SymmetryClass.AII:
        t = AntiUnitaryOp(_j(m))
    elif cls is SymmetryClass.D:
        c = AntiUnitaryOp(np.eye(n))
    elif cls is SymmetryClass.C:
        c = AntiUnitaryOp(np.kron(SIGMA_Y, e))
    elif cls is SymmetryClass.CI:
        t = AntiUnitaryOp(np.kron(SIGMA_X, e))
        c = AntiUnitaryOp(np.kron(SIGMA_Y, e))
    elif cls is SymmetryClass.DIII:
        t = AntiUnitaryOp(_j(m))
        c = AntiUnitaryOp(np.kron(1j * SIGMA_X, e))
    return {"t": t, "c": c, "chirality": gamma}


def validate_structure(h: Hamiltonian, tol=TOL_STRUCT):
    """Check the defining relations of ``h.symmetry_class``.

    Returns
    -------
    ok : bool
    report : dict
        ``"deviations"`` maps each relation to its max absolute defect and
        ``"violations"`` lists the relations exceeding ``tol``.
    """
    m = np.asarray(h.matrix, dtype=complex)
    cls = SymmetryClass(h.symmetry_class)
    dev = {}
    if m.ndim != 2 or m.shape[0] != m.shape[1] or not np.all(np.isfinite(m)):
        return False, {"deviations": {}, "violations": ["H is not a finite square matrix"]}
    dev["H = H^dag"] = max_dev(m, dagger(m))
    n = m.shape[0]
    try:
        if cls in CHIRAL_CLASSES:
            p, q = h.block_meta.get("p"), h.block_meta.get("q")
            if p is None or q is None:
                raise SpecInvalid("chiral Hamiltonian needs p and q in block_meta")
            ops = canonical_involutions(cls, p=p, q=q)
        else:
            ops = canonical_involutions(cls, n=n)
    except SpecInvalid as exc:
        return False, {"deviations": dev, "violations": [str(exc)]}
    if ops["chirality"] is not None and ops["chirality"].shape[0] != n:
        return False, {"deviations": dev, "violations": ["block sizes do not match the matrix"]}

    if cls is SymmetryClass.D:
        dev["conj(H) = -H"] = max_dev(np.conj(m), -m)
    elif cls is SymmetryClass.AI or cls is SymmetryClass.BDI:
        dev["conj(H) = H"] = max_dev(np.conj(m), m)
    if ops["t"] is not None and cls not in (SymmetryClass.AI, SymmetryClass.BDI):
        dev["T H T^-1 = H"] = max_dev(ops["t"].conjugate(m), m)
    if ops["c"] is not None and cls is not SymmetryClass.D:
        dev["C H C^-1 = -H"] = max_dev(ops["c"].conjugate(m), -m)
    if ops["chirality"] is not None:
        gam = ops["chirality"]
        dev["G H G = -H"] = max_dev(gam @ m @ gam, -m)
    violations = [k for k, v in dev.items() if v > tol]
    return not violations, {"deviations": dev, "violations": violations}


def gue_weight(h, sigma=1.0) -> float:
    """Gaussian weight ``exp(-Tr H^2 / 2 sigma^2)``."""
    m = h.matrix if isinstance(h, Hamiltonian) else np.asarray(h)
    tr = float(np.sum(np.abs(m) ** 2))  # Tr H^2 for Hermitian H
    return float(np.exp(-tr / (2 * sigma ** 2)))
