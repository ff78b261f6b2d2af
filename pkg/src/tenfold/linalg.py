"""Dense complex linear algebra shared by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  An
anti-unitary operator is stored by its linear part ``w`` only; its action on a
vector is ``psi -> w @ conj(psi)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidSigma,
    NoConvergence,
    NotHermitian,
    NotInvolutive,
    RankAmbiguous,
)

__all__ = [
    "TOL_STRUCT", "TOL_EIG", "TOL_GROUP", "RANK_GAP", "RANK_TOL",
    "SIGMA_0", "SIGMA_X", "SIGMA_Y", "SIGMA_Z", "ISIGMA_Y",
    "RngStream", "AntiUnitaryOp",
    "max_dev", "is_hermitian", "is_unitary", "dagger",
    "hermitian_eig", "apply_antiunitary", "antiunitary_square_sign",
    "gaussian_real", "gaussian_complex", "haar_unitary", "random_hermitian",
    "nullspace", "numeric_rank", "real_solution_dimension",
    "hermitian_basis", "antihermitian_basis",
]

TOL_STRUCT = 1e-10
TOL_EIG = 1e-9
TOL_GROUP = 1e-8
# singular values below RANK_TOL * s_max count as zero; the neighbours at the
# cut must be separated by at least RANK_GAP
RANK_TOL = 1e-9
RANK_GAP = 1e6

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
ISIGMA_Y = 1j * SIGMA_Y  # real: [[0, 1], [-1, 0]]


def dagger(a):
    return np.conj(np.swapaxes(a, -1, -2))


def max_dev(a, b=0.0) -> float:
    """Largest absolute entry of ``a - b`` (0 for empty input)."""
    d = np.abs(np.asarray(a) - b)
    return float(d.max()) if d.size else 0.0


def is_hermitian(h, tol=TOL_STRUCT) -> bool:
    h = np.asarray(h)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and max_dev(h, dagger(h)) <= tol


def is_unitary(u, tol=TOL_STRUCT) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return max_dev(dagger(u) @ u, np.eye(u.shape[0])) <= tol


class RngStream:
    """Reproducible random stream identified by ``(seed, stream_id)``.

    Backed by numpy's counter-based Philox generator keyed through
    ``SeedSequence(seed, spawn_key=(stream_id,))``; identical keys give
    bit-identical draws, distinct stream ids give independent streams.
    """

    algorithm = "numpy.random.Philox(SeedSequence(seed, spawn_key=(stream_id,)))"

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.Philox(ss))

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"

    def child(self, stream_id: int) -> "RngStream":
        return RngStream(self.seed, stream_id)


def _gen(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def gaussian_real(rng, n, sigma=1.0) -> np.ndarray:
    """I.i.d. normal draws with mean 0 and standard deviation ``sigma``.

    ``n`` may be an int or a shape tuple.
    """
    if not (np.isfinite(sigma) and sigma > 0):
        raise InvalidSigma(f"sigma must be positive and finite, got {sigma!r}")
    return _gen(rng).normal(0.0, sigma, n)


def gaussian_complex(rng, shape, sigma=1.0) -> np.ndarray:
    """Complex normal draws whose real and imaginary parts each have std ``sigma``."""
    g = _gen(rng)
    if not (np.isfinite(sigma) and sigma > 0):
        raise InvalidSigma(f"sigma must be positive and finite, got {sigma!r}")
    return g.normal(0.0, sigma, shape) + 1j * g.normal(0.0, sigma, shape)


def haar_unitary(rng, n) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary (QR with phase fix)."""
    z = gaussian_complex(rng, (n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hermitian(rng, n, sigma=1.0) -> np.ndarray:
    z = gaussian_complex(rng, (n, n), sigma)
    return (z + dagger(z)) / 2


def hermitian_eig(h, tol=TOL_STRUCT):
    """Eigen-decomposition of a Hermitian matrix.

    Returns
    -------
    eigenvalues : ndarray
        Real, ascending.
    eigenvectors : ndarray
        Unitary matrix whose columns are the eigenvectors.
    """
    h = np.asarray(h, dtype=complex)
    if not np.all(np.isfinite(h)):
        raise NotHermitian("matrix has non-finite entries")
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {h.shape}")
    if not is_hermitian(h, tol):
        raise NotHermitian(f"max|H - H^dag| = {max_dev(h, dagger(h)):.3e}")
    try:
        w, v = np.linalg.eigh((h + dagger(h)) / 2)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    return w, v


@dataclass(frozen=True, eq=False)
class AntiUnitaryOp:
    """Anti-unitary operator ``psi -> w @ conj(psi)``."""

    w: np.ndarray = field(repr=False)

    def __post_init__(self):
        w = np.array(self.w, dtype=complex)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise DimensionMismatch(f"linear part must be square, got shape {w.shape}")
        if not is_unitary(w, TOL_STRUCT):
            raise DimensionMismatch("linear part of an anti-unitary operator must be unitary")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def dim(self) -> int:
        return self.w.shape[0]

    def __call__(self, psi):
        return apply_antiunitary(self, psi)

    def square(self) -> np.ndarray:
        """Linear operator ``A^2 = w conj(w)``."""
        return self.w @ np.conj(self.w)

    def square_sign(self, tol=TOL_STRUCT) -> int:
        return antiunitary_square_sign(self, tol)

    def conjugate(self, m) -> np.ndarray:
        """Return the linear operator ``A m A^{-1} = w conj(m) w^dag``."""
        return self.w @ np.conj(m) @ dagger(self.w)

    def compose(self, other: "AntiUnitaryOp") -> np.ndarray:
        """Linear (unitary) matrix of ``self o other``."""
        return self.w @ np.conj(other.w)

    def after(self, u) -> "AntiUnitaryOp":
        """Anti-unitary ``self o u`` for a unitary ``u``."""
        return AntiUnitaryOp(self.w @ np.conj(u))

    def before(self, u) -> "AntiUnitaryOp":
        """Anti-unitary ``u o self`` for a unitary ``u``."""
        return AntiUnitaryOp(u @ self.w)

    def in_basis(self, basis) -> "AntiUnitaryOp":
        """Restriction to the span of the orthonormal columns of ``basis``.

        Only meaningful when the span is invariant under the operator.
        """
        return AntiUnitaryOp(dagger(basis) @ self.w @ np.conj(basis))


def apply_antiunitary(op: AntiUnitaryOp, psi):
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[0] != op.dim:
        raise DimensionMismatch(f"vector of length {psi.shape[0]} for operator of dim {op.dim}")
    return op.w @ np.conj(psi)


def antiunitary_square_sign(op: AntiUnitaryOp, tol=TOL_STRUCT) -> int:
    """The sign ``z`` in ``w conj(w) = z Id``."""
    sq = op.square()
    n = op.dim
    c = np.trace(sq) / n
    if max_dev(sq, c * np.eye(n)) > tol:
        raise NotInvolutive("w conj(w) is not a multiple of the identity")
    if abs(c.imag) > tol or abs(abs(c.real) - 1) > tol:
        raise NotInvolutive(f"square is {c}, expected +-1")
    return 1 if c.real > 0 else -1


def _svd_rank(a, rank_tol, gap, atol=0.0):
    a = np.asarray(a)
    if a.size == 0:
        return 0, np.zeros(0), np.eye(a.shape[1] if a.ndim == 2 else 0)
    try:
        # the complete right factor is needed for the null space; the left one never is
        if a.shape[0] >= a.shape[1]:
            s, vh = np.linalg.svd(a, full_matrices=False, compute_uv=True)[1:]
        else:
            s, vh = np.linalg.svd(a, full_matrices=True)[1:]
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NoConvergence(str(exc)) from exc
    if s.size == 0 or s[0] <= atol:
        return 0, s, vh
    cut = max(rank_tol * s[0], atol)
    r = int(np.count_nonzero(s > cut))
    if r < s.size:
        below = s[r]
        above = s[r - 1]
        if below > 0 and above / below < gap:
            raise RankAmbiguous(
                f"singular values {above:.3e} / {below:.3e} straddle the rank cut")
    return r, s, vh


def numeric_rank(a, rank_tol=RANK_TOL, gap=RANK_GAP, atol=0.0) -> int:
    """Rank by the singular-value gap rule (raises ``RankAmbiguous``).

    Singular values below ``max(rank_tol * s_max, atol)`` count as zero; use
    ``atol`` when the natural scale of ``a`` is known, so that an all-round-off
    matrix has rank 0.
    """
    return _svd_rank(a, rank_tol, gap, atol)[0]


def nullspace(a, rank_tol=RANK_TOL, gap=RANK_GAP, atol=0.0) -> np.ndarray:
    """Orthonormal basis (columns) of the null space of ``a``."""
    a = np.asarray(a)
    r, _, vh = _svd_rank(a, rank_tol, gap, atol)
    return np.conj(vh[r:]).T


def hermitian_basis(n) -> list[np.ndarray]:
    """Real basis of the n^2-dimensional space of Hermitian n x n matrices."""
    basis = []
    for i in range(n):
        e = np.zeros((n, n), complex)
        e[i, i] = 1
        basis.append(e)
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), complex)
            e[i, j] = e[j, i] = 1
            basis.append(e)
            e = np.zeros((n, n), complex)
            e[i, j], e[j, i] = -1j, 1j
            basis.append(e)
    return basis


def antihermitian_basis(n) -> list[np.ndarray]:
    return [1j * e for e in hermitian_basis(n)]


def real_solution_dimension(basis, constraint, rank_tol=RANK_TOL, gap=RANK_GAP, atol=RANK_TOL) -> int:
    """Real dimension of ``{x in span_R(basis) : constraint(x) = 0}``.

    ``basis`` must be linearly independent over the reals.  ``constraint``
    maps a matrix to an array of complex residuals and must be real-linear.
    Real and imaginary parts of the residuals are stacked into a real system
    whose nullity is returned.
    """
    cols = []
    for b in basis:
        r = np.atleast_1d(np.asarray(constraint(b))).ravel()
        cols.append(np.concatenate([r.real, r.imag]))
    if not cols:
        return 0
    system = np.array(cols).T
    if system.shape[0] == 0:
        return len(basis)
    return len(basis) - numeric_rank(system, rank_tol, gap, atol)
