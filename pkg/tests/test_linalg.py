import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tenfold.errors import DimensionMismatch, InvalidSigma, NotHermitian, NotInvolutive
from tenfold.linalg import (
    ISIGMA_Y,
    SIGMA_X,
    AntiUnitaryOp,
    RngStream,
    apply_antiunitary,
    antiunitary_square_sign,
    dagger,
    gaussian_complex,
    gaussian_real,
    haar_unitary,
    hermitian_eig,
    max_dev,
    nullspace,
    numeric_rank,
    random_hermitian,
)
from tenfold.errors import RankAmbiguous


def test_eig_diagonal():
    w, v = hermitian_eig(np.diag([3.0, 1.0]))
    assert np.allclose(w, [1, 3])
    assert np.allclose(np.abs(v), [[0, 1], [1, 0]])


def test_eig_sigma_x():
    w, v = hermitian_eig(SIGMA_X)
    assert np.allclose(w, [-1, 1])
    assert np.allclose(np.abs(v), 1 / np.sqrt(2))


def test_eig_random_residual():
    h = random_hermitian(RngStream(1), 6)
    w, v = hermitian_eig(h)
    assert max_dev(h @ v, v * w) < 1e-10


@settings(max_examples=1000, deadline=None)
@given(n=st.integers(2, 64), seed=st.integers(0, 2**32 - 1))
def test_eig_property(n, seed):
    h = random_hermitian(RngStream(seed), n)
    w, v = hermitian_eig(h)
    assert np.all(np.diff(w) >= 0)
    assert max_dev(h @ v, v * w) <= 1e-9
    assert max_dev(dagger(v) @ v, np.eye(n)) <= 1e-9


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0, 1], [0, 0]]))
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[np.nan, 0], [0, 1]]))
    with pytest.raises(NotHermitian):
        hermitian_eig(np.ones((2, 3)))


def test_apply_antiunitary_examples():
    assert np.allclose(apply_antiunitary(AntiUnitaryOp(np.eye(2)), [1j, 0]), [-1j, 0])
    assert np.allclose(AntiUnitaryOp(ISIGMA_Y)([1, 0]), [0, -1])
    with pytest.raises(DimensionMismatch):
        apply_antiunitary(AntiUnitaryOp(np.eye(2)), np.ones(3))


def test_square_sign_examples():
    assert antiunitary_square_sign(AntiUnitaryOp(np.eye(3))) == 1
    assert antiunitary_square_sign(AntiUnitaryOp(ISIGMA_Y)) == -1
    assert AntiUnitaryOp(np.kron(np.eye(5), ISIGMA_Y)).square_sign() == -1


def test_square_sign_not_involutive():
    w = np.array([[0, 1], [1j, 0]])  # w conj(w) = diag(-i, i)
    with pytest.raises(NotInvolutive):
        antiunitary_square_sign(AntiUnitaryOp(w))


def test_antiunitary_requires_unitary():
    with pytest.raises(DimensionMismatch):
        AntiUnitaryOp(np.diag([1.0, 2.0]))


@settings(max_examples=100, deadline=None)
@given(n=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_scalar_product_conjugated(n, seed):
    g = RngStream(seed)
    op = AntiUnitaryOp(haar_unitary(g, n))
    a, b = gaussian_complex(g, n), gaussian_complex(g, n)
    assert abs(np.vdot(op(a), op(b)) - np.conj(np.vdot(a, b))) < 1e-10
    assert abs(np.vdot(op(a), op(a)) - np.vdot(a, a)) < 1e-10


@settings(max_examples=50, deadline=None)
@given(m=st.integers(1, 4), sign=st.sampled_from([1, -1]), seed=st.integers(0, 2**32 - 1))
def test_twice_is_sign(m, sign, seed):
    g = RngStream(seed)
    base = np.eye(2) if sign == 1 else ISIGMA_Y
    u = haar_unitary(g, 2 * m)
    # u T u^-1 keeps the square
    op = AntiUnitaryOp(u @ np.kron(np.eye(m), base) @ u.T)
    psi = gaussian_complex(g, 2 * m)
    assert max_dev(op(op(psi)), sign * psi) <= 1e-10
    assert op.square_sign() == sign


def test_composition_is_unitary():
    g = RngStream(4)
    a, b = AntiUnitaryOp(haar_unitary(g, 5)), AntiUnitaryOp(haar_unitary(g, 5))
    c = a.compose(b)
    assert max_dev(dagger(c) @ c, np.eye(5)) < 1e-12
    psi = gaussian_complex(g, 5)
    assert max_dev(a(b(psi)), c @ psi) < 1e-12


def test_gaussian_real_moments():
    x = gaussian_real(RngStream(0), 10**6, 1.0)
    assert abs(x.mean()) < 5e-3
    y = gaussian_real(RngStream(1), 10**6, 2.0)
    assert abs(y.var() / 4 - 1) < 0.02


def test_gaussian_determinism():
    a = gaussian_real(RngStream(9, 3), 100)
    b = gaussian_real(RngStream(9, 3), 100)
    c = gaussian_real(RngStream(9, 4), 100)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_invalid_sigma():
    for s in (0, -1, np.inf, np.nan):
        with pytest.raises(InvalidSigma):
            gaussian_real(RngStream(0), 3, s)


def test_rank_gap_rule():
    assert numeric_rank(np.diag([1.0, 1e-14])) == 1
    assert nullspace(np.diag([1.0, 0.0])).shape == (2, 1)
    with pytest.raises(RankAmbiguous):
        numeric_rank(np.diag([1.0, 1e-8, 1e-10]))
