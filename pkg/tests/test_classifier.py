import numpy as np
import pytest

from tenfold.classifier import (
    SymmetryClass,
    SymmetryData,
    classify,
    classify_by_involutions,
    commutant_dimension,
    conjugation_intertwiner,
    dyson_block_class,
    group_closure,
    invariant_hermitian_dimension,
    isotypic_decompose,
)
from tenfold.errors import (
    GroupTooLarge,
    InvalidSignature,
    NonUnitaryGenerator,
    NotNormalizing,
    StructureViolation,
)
from tenfold.finite_groups import build_instance, cyclic, quaternion, random_instance
from tenfold.linalg import ISIGMA_Y, SIGMA_X, SIGMA_Z, AntiUnitaryOp, RngStream, dagger, haar_unitary, max_dev
from tenfold.nambu import particle_hole_op, spin_factorize
from tenfold.oracles import character_commutant_dimension, frobenius_schur_indicator

Q8_GENS = [1j * SIGMA_X, ISIGMA_Y]


def _labels(reports):
    return sorted(r.symmetry_class.value for r in reports)


def _quaternion_data(m, t=True):
    gens = [np.kron(g, np.eye(m)) for g in Q8_GENS]
    t_op = AntiUnitaryOp(np.kron(ISIGMA_Y, np.eye(m))) if t else None
    return SymmetryData(2 * m, gens, t_op)


# group closure / commutant

def test_closure_examples():
    assert len(group_closure([np.eye(3)])) == 1
    assert len(group_closure([SIGMA_Z])) == 2
    q = group_closure(Q8_GENS)
    assert len(q) == 8
    for a in q:
        for b in q:
            assert min(max_dev(a @ b, c) for c in q) < 1e-12
        assert min(max_dev(dagger(a), c) for c in q) < 1e-12


def test_closure_errors():
    with pytest.raises(GroupTooLarge):
        group_closure([np.diag([1, np.exp(2j * np.pi / 50)])], max_order=10)
    with pytest.raises(NonUnitaryGenerator):
        group_closure([np.diag([1.0, 2.0])])
    with pytest.raises(NonUnitaryGenerator):
        SymmetryData(2, [np.diag([1.0, 2.0])])


def test_commutant_examples():
    assert commutant_dimension([np.eye(3)]) == 9
    assert commutant_dimension(group_closure([SIGMA_Z])) == 2
    assert commutant_dimension(group_closure(Q8_GENS)) == 1


# isotypic decomposition

def test_isotypic_trivial():
    (b,) = isotypic_decompose(SymmetryData(5, []))
    assert (b.block_dim, b.irrep_dim, b.multiplicity) == (5, 1, 5)


def test_isotypic_sigma_z():
    bs = isotypic_decompose(SymmetryData(2, [SIGMA_Z]))
    assert sorted((b.block_dim, b.multiplicity) for b in bs) == [(1, 1), (1, 1)]


def test_isotypic_cyclic_shift():
    shift = np.roll(np.eye(3), 1, axis=0)
    bs = isotypic_decompose(SymmetryData(3, [shift]))
    assert len(bs) == 3
    # each block is spanned by a Fourier vector with character omega^k
    chars = sorted(np.round(np.angle(np.trace(dagger(b.basis) @ shift @ b.basis)) / (2 * np.pi / 3)) % 3
                   for b in bs)
    assert chars == [0, 1, 2]


def test_projections_partition_identity():
    inst = build_instance(quaternion(), {0: 1, 4: 2, 2: 1}, 0, RngStream(3))
    bs = isotypic_decompose(inst.data)
    total = sum(b.projection for b in bs)
    assert max_dev(total, np.eye(inst.data.dim)) < 1e-10
    for i, a in enumerate(bs):
        assert max_dev(a.projection @ a.projection, a.projection) < 1e-10
        for b in bs[i + 1:]:
            assert max_dev(a.projection @ b.projection) < 1e-10
        assert a.block_dim == a.irrep_dim * a.multiplicity
    group = group_closure(inst.data.generators)
    assert sum(b.multiplicity ** 2 for b in bs) == commutant_dimension(group)


# Frobenius-Schur

def test_intertwiner_trivial():
    (b,) = isotypic_decompose(SymmetryData(1, []))
    s, sign = conjugation_intertwiner(b, [np.eye(1)])
    assert sign == 1 and abs(abs(s[0, 0]) - 1) < 1e-12


def test_intertwiner_quaternion():
    group = group_closure(Q8_GENS)
    (b,) = isotypic_decompose(SymmetryData(2, Q8_GENS))
    s, sign = conjugation_intertwiner(b, group)
    assert sign == -1
    for g in group:
        assert max_dev(np.conj(g), np.linalg.inv(s) @ g @ s) < 1e-10
    assert frobenius_schur_indicator(group) == -1


def test_intertwiner_complex_character():
    w = np.exp(2j * np.pi / 3)
    (b,) = isotypic_decompose(SymmetryData(1, [np.array([[w]])]))
    s, sign = conjugation_intertwiner(b, group_closure([np.array([[w]])]))
    assert s is None and sign == 0


@pytest.mark.parametrize("name,k,expected", [("Z3", 1, 0), ("Q8", 4, -1), ("Q8", 1, 1)])
def test_fs_sign_matches_character_oracle(name, k, expected):
    grp = quaternion() if name == "Q8" else cyclic(3)
    inst = build_instance(grp, {k: 1}, 0, RngStream(k))
    group = group_closure(inst.data.generators)
    (b,) = isotypic_decompose(inst.data)
    _, sign = conjugation_intertwiner(b, group)
    assert sign == frobenius_schur_indicator(group) == expected


# Dyson dichotomy

def test_dyson_trivial_ai():
    n = 4
    data = SymmetryData(n, [], AntiUnitaryOp(np.eye(n)))
    (b,) = isotypic_decompose(data)
    assert invariant_hermitian_dimension(b, data.generators, data.t_op) == n * (n + 1) // 2
    (r,) = classify(data)
    assert r.symmetry_class is SymmetryClass.AI and r.epsilon == 1


def test_dyson_trivial_aii():
    n = 3
    data = SymmetryData(2 * n, [], AntiUnitaryOp(np.kron(ISIGMA_Y, np.eye(n))))
    (r,) = classify(data)
    assert r.symmetry_class is SymmetryClass.AII and r.epsilon == -1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_dyson_quaternion_spin(m):
    data = _quaternion_data(m)
    (b,) = isotypic_decompose(data)
    assert invariant_hermitian_dimension(b, data.generators, data.t_op) == m * (m + 1) // 2
    cls, eps = dyson_block_class(b, data)
    assert cls is SymmetryClass.AI and eps == 1


def test_dyson_basis_covariance():
    data = _quaternion_data(2)
    u = haar_unitary(RngStream(8), 4)
    moved = SymmetryData(4, [u @ g @ dagger(u) for g in data.g0_generators],
                         AntiUnitaryOp(u @ data.t_op.w @ u.T))
    assert _labels(classify(data)) == _labels(classify(moved)) == ["AI"]


def test_sigma_z_with_conjugation():
    reps = classify(SymmetryData(2, [SIGMA_Z], AntiUnitaryOp(np.eye(2))))
    assert [(r.symmetry_class.value, r.multiplicity) for r in reps] == [("AI", 1), ("AI", 1)]


def test_complex_pair_is_class_a():
    inst = build_instance(cyclic(3), {1: 2}, 1, RngStream(2))
    assert _labels(classify(inst.data)) == ["A", "A"]


def test_not_normalizing():
    g = np.diag([1, np.exp(2j * np.pi / 3)])
    t = AntiUnitaryOp(SIGMA_X @ haar_unitary(RngStream(1), 2))
    with pytest.raises(NotNormalizing):
        classify(SymmetryData(2, [g], t))


def test_epsilon_matches_dimension_count_on_random_instances():
    seen = set()
    for k in range(60):
        inst = random_instance(RngStream(77, k).generator)
        reps = classify(inst.data, RngStream(78, k))
        got = sorted((r.block_dim, r.irrep_dim, r.multiplicity, r.symmetry_class.value) for r in reps)
        assert got == inst.expected
        for r in reps:
            if r.epsilon is not None:
                assert (r.epsilon == 1) == (r.symmetry_class is SymmetryClass.AI)
                seen.add(r.symmetry_class.value)
        group = group_closure(inst.data.generators)
        assert commutant_dimension(group) == character_commutant_dimension(group)
    assert seen == {"AI", "AII"}


# ten-way table

@pytest.mark.parametrize("sig,label", [
    ((0, 0, False), "A"), ((1, 0, False), "AI"), ((-1, 0, False), "AII"),
    ((0, 1, False), "D"), ((0, -1, False), "C"), ((0, 0, True), "AIII"),
    ((1, 1, True), "BDI"), ((-1, -1, True), "CII"), ((-1, 1, True), "DIII"),
    ((1, -1, True), "CI"), ((-1, 1, False), "DIII"), ((1, -1, False), "CI"),
])
def test_table(sig, label):
    assert classify_by_involutions(*sig).value == label


@pytest.mark.parametrize("sig", [(1, 0, True), (0, -1, True), (2, 0, False)])
def test_table_invalid(sig):
    with pytest.raises(InvalidSignature):
        classify_by_involutions(*sig)


def test_table_agrees_with_dyson_on_trivial_g0():
    for t_sq, w in ((0, None), (1, np.eye(2)), (-1, ISIGMA_Y)):
        data = SymmetryData(2, [], None if w is None else AntiUnitaryOp(w))
        (r,) = classify(data)
        assert r.symmetry_class is classify_by_involutions(t_sq, 0, False)


# Nambu path

def test_nambu_no_symmetry_is_d():
    (r,) = classify(SymmetryData(6, [], nambu=True))
    assert r.symmetry_class is SymmetryClass.D


def test_nambu_spin_rotation_is_c_and_ci():
    sf = spin_factorize(2)
    gens = [sf.spin_rotation(g) for g in Q8_GENS]
    (r,) = classify(SymmetryData(8, gens, nambu=True))
    assert r.symmetry_class is SymmetryClass.C and r.c_square == -1
    t = AntiUnitaryOp(np.kron(np.eye(2), np.kron(np.eye(2), ISIGMA_Y)))
    (r,) = classify(SymmetryData(8, gens, t_op=t, nambu=True))
    assert r.symmetry_class is SymmetryClass.CI and r.t_square == 1
    (r,) = classify(SymmetryData(8, [], t_op=t, nambu=True))
    assert r.symmetry_class is SymmetryClass.DIII


def test_nambu_rejects_foreign_c():
    with pytest.raises(StructureViolation):
        classify(SymmetryData(4, [], c_op=AntiUnitaryOp(np.eye(4)), nambu=True))
    (r,) = classify(SymmetryData(4, [], c_op=particle_hole_op(2), nambu=True))
    assert r.symmetry_class is SymmetryClass.D
