import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tenfold.classifier import SymmetryClass, classify_by_involutions
from tenfold.ensembles import (
    EnsembleSpec,
    Hamiltonian,
    canonical_involutions,
    gue_weight,
    sample,
    sample_many,
    validate_structure,
)
from tenfold.errors import SpecInvalid
from tenfold.linalg import ISIGMA_Y, SIGMA_X, RngStream, dagger, haar_unitary, max_dev, random_hermitian
from tenfold.spectra import symmetric_spectrum_check

ALL = list(SymmetryClass)
PAIRED = ["D", "DIII", "C", "CI", "AIII", "BDI", "CII"]


def _spec(cls, **kw):
    base = dict(n=8, p=3, q=2, sigma=1.0, seed=1)
    base.update(kw)
    return EnsembleSpec(cls, **base)


def test_class_a_scalar():
    h = sample(EnsembleSpec("A", n=1, seed=3)).matrix
    assert h.shape == (1, 1) and h[0, 0].imag == 0


def test_class_d_two_by_two():
    h = sample(EnsembleSpec("D", n=2, seed=4)).matrix
    b = h[0, 1].imag
    assert h[0, 0] == 0 and h[1, 1] == 0 and h[0, 1].real == 0
    assert h[1, 0] == -1j * b
    assert np.allclose(np.linalg.eigvalsh(h), [-abs(b), abs(b)])


def test_aiii_zero_mode():
    h = sample(EnsembleSpec("AIII", p=2, q=1, seed=5)).matrix
    assert h.shape == (3, 3)
    e = np.abs(np.linalg.eigvalsh(h))
    assert np.sum(e < 1e-12) == 1


@pytest.mark.parametrize("cls", ALL)
def test_round_trip(cls):
    for h in sample_many(_spec(cls, n=12, p=4, q=2), 200):
        ok, rep = validate_structure(h, 1e-10)
        assert ok, rep


@pytest.mark.parametrize("cls", ALL)
def test_mean_square_matches_weight(cls):
    # E[Tr H^2] = sigma^2 times the real dimension of the Hamiltonian space
    dims = {"A": 64, "AI": 36, "AII": 28, "D": 28, "C": 36, "CI": 20, "DIII": 12,
            "AIII": 12, "BDI": 6, "CII": 24}
    sigma = 0.7
    tr = [np.sum(np.abs(h.matrix) ** 2) for h in sample_many(_spec(cls, sigma=sigma), 4000)]
    assert abs(np.mean(tr) / (sigma ** 2 * dims[cls.value]) - 1) < 0.03


def test_gue_fails_class_d():
    h = Hamiltonian(random_hermitian(RngStream(0), 4), SymmetryClass.D)
    ok, rep = validate_structure(h)
    assert not ok and "conj(H) = -H" in rep["violations"]


def test_diii_handmade():
    g = np.random.default_rng(0)
    z = g.normal(size=(4, 4)) + 1j * g.normal(size=(4, 4))
    z = z - z.T
    h = np.block([[np.zeros((4, 4)), z], [-np.conj(z), np.zeros((4, 4))]])
    assert validate_structure(Hamiltonian(h, SymmetryClass.DIII))[0]


@pytest.mark.parametrize("cls", ALL)
def test_signatures_map_back(cls):
    ops = canonical_involutions(cls, n=8, p=2, q=3)
    t = ops["t"].square_sign() if ops["t"] else 0
    c = ops["c"].square_sign() if ops["c"] else 0
    assert classify_by_involutions(t, c, ops["chirality"] is not None) is cls


def test_canonical_examples():
    ops = canonical_involutions("DIII", n=8)
    assert max_dev(ops["c"].w, np.kron(1j * SIGMA_X, np.eye(4))) == 0
    assert max_dev(ops["t"].w, np.kron(ISIGMA_Y, np.eye(4))) == 0
    assert ops["c"].square_sign() == 1 and ops["t"].square_sign() == -1
    ops = canonical_involutions("AI", n=3)
    assert ops["c"] is None and max_dev(ops["t"].w, np.eye(3)) == 0
    ops = canonical_involutions("AIII", p=2, q=3)
    assert ops["t"] is None and ops["c"] is None
    assert np.array_equal(np.diag(ops["chirality"]).real, [1, 1, -1, -1, -1])


@pytest.mark.parametrize("cls", PAIRED)
def test_pm_symmetry(cls):
    for h in sample_many(_spec(cls), 20):
        assert symmetric_spectrum_check(np.linalg.eigvalsh(h.matrix)) < 1e-9


def test_kramers_pairs():
    for h in sample_many(_spec("AII", n=10), 20):
        e = np.linalg.eigvalsh(h.matrix)
        assert max_dev(e[0::2], e[1::2]) < 1e-9


@pytest.mark.parametrize("kw", [
    dict(symmetry_class="AII", n=3), dict(symmetry_class="DIII", n=6), dict(symmetry_class="A", n=0),
    dict(symmetry_class="AIII", p=0, q=2), dict(symmetry_class="A", n=2, sigma=0),
    dict(symmetry_class="XYZ", n=2), dict(symmetry_class="C", n=5),
])
def test_spec_invalid(kw):
    with pytest.raises(SpecInvalid):
        EnsembleSpec(**kw)


def test_gue_weight():
    assert gue_weight(np.zeros((3, 3))) == 1
    s = 1.7
    assert abs(gue_weight(np.diag([s, -s]), s) - np.exp(-1)) < 1e-15


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 10))
def test_gue_weight_invariance(seed, n):
    g = RngStream(seed)
    h = random_hermitian(g, n, 0.4)
    u = haar_unitary(g, n)
    assert abs(gue_weight(h) - gue_weight(u @ h @ dagger(u))) < 1e-12


def test_sampling_determinism():
    a = sample(_spec("CII"))
    b = sample(_spec("CII"))
    c = sample(_spec("CII", stream_id=1))
    assert np.array_equal(a.matrix, b.matrix)
    assert not np.array_equal(a.matrix, c.matrix)
