"""Acceptance criteria, one test per criterion.

Each test prints ``ACCEPTANCE k: PASS|FAIL`` with the measured numbers; the
summary is repeated at the end of the pytest run.  Run directly with
``python tests/test_acceptance.py``.
"""

import os
import sys
import time

import numpy as np
import pytest

from tenfold import classifier as clf
from tenfold.classifier import SymmetryClass
from tenfold.cli import main
from tenfold.dirac import gamma_matrices, sample_chiral, zero_modes
from tenfold.ensembles import EnsembleSpec, canonical_involutions, sample_many, validate_structure
from tenfold.finite_groups import random_instance
from tenfold.linalg import (ISIGMA_Y, SIGMA_X, AntiUnitaryOp, RngStream, TOL_EIG, TOL_STRUCT, max_dev)
from tenfold.nambu import NambuSpace, q_split
from tenfold.oracles import character_commutant_dimension, dyson_oracle
from tenfold.spectra import bulk_spacings, kramers_deduplicate, low_energy_density, spacing_ks
from tenfold.symmetric_space import class_fixed_point_dimension, class_involution, membership_defect, time_evolution


# 1. structural round trip ---------------------------------------------------

def test_criterion_1_round_trip(acceptance):
    t0 = time.perf_counter()
    failures = {}
    for cls in SymmetryClass:
        spec = EnsembleSpec(cls, n=64, p=36, q=28, seed=1)
        failures[cls.value] = sum(not validate_structure(h, TOL_STRUCT)[0] for h in sample_many(spec, 1000))
    dt = time.perf_counter() - t0
    ok = sum(failures.values()) == 0 and dt < 60
    acceptance(1, ok, f"failures={failures} runtime={dt:.1f}s")
    assert ok


# 2. classifier vs oracles ---------------------------------------------------

def test_criterion_2_classifier_oracle(acceptance):
    commutant_ok = label_ok = 0
    n_cases = 200
    for k in range(n_cases):
        inst = random_instance(RngStream(2024, k).generator, max_dim=12, max_order=48)
        group = clf.group_closure(inst.data.generators)
        sm = sum(m * m for m in inst.multiplicities.values())
        commutant_ok += clf.commutant_dimension(group) == character_commutant_dimension(group) == sm
        reports = clf.classify(inst.data, RngStream(2025, k))
        got = sorted((r.block_dim, r.symmetry_class.value) for r in reports)
        want = sorted((inst.block_bases[i].shape[1],
                       dyson_oracle(group, inst.data.t_op, inst.block_bases[i], m))
                      for i, m in inst.multiplicities.items())
        label_ok += got == want
    ok = commutant_ok == label_ok == n_cases
    acceptance(2, ok, f"commutant {commutant_ok}/{n_cases}, AI/AII labels {label_ok}/{n_cases}")
    assert ok


# 3. Dyson anchors -----------------------------------------------------------

def test_criterion_3_dyson_anchors(acceptance):
    m = 2
    q8 = [np.kron(1j * SIGMA_X, np.eye(m)), np.kron(ISIGMA_Y, np.eye(m))]
    cases = [
        ("trivial, T^2=+1", clf.SymmetryData(4, [], AntiUnitaryOp(np.eye(4))), "AI", None),
        ("trivial, T^2=-1", clf.SymmetryData(4, [], AntiUnitaryOp(np.kron(ISIGMA_Y, np.eye(2)))), "AII", None),
        ("Q8 spin, T^2=-1", clf.SymmetryData(2 * m, q8, AntiUnitaryOp(np.kron(ISIGMA_Y, np.eye(m)))), "AI", 1),
    ]
    got = []
    for name, data, label, eps in cases:
        (r,) = clf.classify(data, RngStream(3))
        good = r.symmetry_class.value == label and (eps is None or r.epsilon == eps)
        got.append((name, r.symmetry_class.value, r.epsilon, good))
    ok = all(g[-1] for g in got)
    acceptance(3, ok, "; ".join(f"{n} -> {c} (eps={e})" for n, c, e, _ in got))
    assert ok


# 4. index theorem -----------------------------------------------------------

def test_criterion_4_index_theorem(acceptance):
    bad = {}
    for p, q in ((3, 1), (5, 2), (4, 4)):
        for field in ("complex", "real"):
            wrong = sum(zero_modes(sample_chiral(p, q, field, 1.0, RngStream(4, k)), rel_tol=1e-8) != abs(p - q)
                        for k in range(1000))
            bad[f"({p},{q},{field})"] = wrong
    ok = sum(bad.values()) == 0
    acceptance(4, ok, f"mismatching draws out of 1000: {bad}")
    assert ok


# 5. Cartan membership -------------------------------------------------------

def test_criterion_5_cartan_membership(acceptance):
    worst = {}
    for cls in SymmetryClass:
        tau, lift = class_involution(cls, n=8, p=5, q=3)
        ts = RngStream(5, 1).generator.uniform(-20, 20, 100)
        hs = sample_many(EnsembleSpec(cls, n=8, p=5, q=3, seed=5), 100)
        worst[cls.value] = max(membership_defect(time_evolution(lift(h.matrix), t), tau) for h, t in zip(hs, ts))
    ok = max(worst.values()) <= TOL_EIG
    acceptance(5, ok, f"max defect {max(worst.values()):.2e} (tol {TOL_EIG:g})")
    assert ok


# 6. fixed-point dimensions --------------------------------------------------

def test_criterion_6_fixed_points(acceptance):
    got = {f"DIII N={n}": (class_fixed_point_dimension("DIII", 4 * n), 4 * n * n) for n in (2, 3)}
    got.update({f"CI N={n}": (class_fixed_point_dimension("CI", 2 * n), n * n) for n in (2, 4)})
    ok = all(a == b for a, b in got.values())
    acceptance(6, ok, ", ".join(f"{k}: {a} (want {b})" for k, (a, b) in got.items()))
    assert ok


# 7. spacing universality ----------------------------------------------------

def _spacings(cls, n, dedup):
    out = []
    for h in sample_many(EnsembleSpec(cls, n=n, seed=7), 200):
        e = np.linalg.eigvalsh(h.matrix)
        out.append(bulk_spacings(kramers_deduplicate(e) if dedup else e))
    return np.concatenate(out)


def test_criterion_7_spacing_universality(acceptance):
    t0 = time.perf_counter()
    # AII: n = 400 so that 200 distinct levels remain after Kramers deduplication
    cases = {"A": (200, False, 2), "AI": (200, False, 1), "AII": (400, True, 4)}
    details, ok = [], True
    for cls, (n, dedup, beta) in cases.items():
        sp = _spacings(cls, n, dedup)
        ks = {b: spacing_ks(sp, b) for b in (1, 2, 4)}
        best = min(ks, key=ks.get)
        ok &= ks[beta] < 0.05 and best == beta
        details.append(f"{cls}: KS(b={beta})={ks[beta]:.4f} best={best}")
    dt = time.perf_counter() - t0
    ok &= dt < 600
    acceptance(7, ok, "; ".join(details) + f"; runtime={dt:.1f}s")
    assert ok


# 8. class D vs C near zero --------------------------------------------------

def test_criterion_8_low_energy_contrast(acceptance):
    ratio = {}
    for cls in ("C", "D"):
        spectra = [np.linalg.eigvalsh(h.matrix) for h in sample_many(EnsembleSpec(cls, n=100, seed=8), 500)]
        ratio[cls] = low_energy_density(spectra, bin_width=0.25).first_bin_ratio
    ok = ratio["C"] < 0.6 and ratio["D"] >= 0.8
    acceptance(8, ok, f"first-bin/bulk: C={ratio['C']:.3f} (<0.6), D={ratio['D']:.3f} (>=0.8)")
    assert ok


# 9. exact algebra -----------------------------------------------------------

def test_criterion_9_exact_algebra(acceptance):
    checks = gamma_matrices().checks()
    devs = {}
    # DIII: the canonical pair and the Nambu pair (particle-hole C, spinless T)
    nambu = NambuSpace(4)
    pairs = {"DIII": (canonical_involutions("DIII", n=8)["c"], canonical_involutions("DIII", n=8)["t"]),
             "Nambu": (nambu.c_op, AntiUnitaryOp(np.kron(np.eye(4), ISIGMA_Y)))}
    for name, (c, t) in pairs.items():
        q, _, _ = q_split(c, t)
        devs[f"{name} Q^2-Id"] = max_dev(q @ q, np.eye(8))
        devs[f"{name} TrQ"] = abs(np.trace(q))
        devs[f"{name} CT-TC"] = max_dev(c.compose(t), t.compose(c))
        devs[f"{name} C^2-Id"] = max_dev(c.square(), np.eye(8))
    devs["Nambu C^2-Id"] = max_dev(NambuSpace(5).c_op.square(), np.eye(10))
    ok = all(checks.values()) and max(devs.values()) <= 1e-12
    failed = [k for k, v in checks.items() if not v]
    acceptance(9, ok, f"gamma checks failed: {failed or 'none'}; max deviation {max(devs.values()):.1e}")
    assert ok


# 10. determinism ------------------------------------------------------------

def _sample_bytes(path, fmt):
    main(["--command", "sample", "--class", "CII", "--p", "6", "--q", "4", "--samples", "40", "--seed", "10",
          "--format", fmt, "--output", str(path)])
    if fmt == "json":
        return path.read_bytes()
    return {f: (path / f).read_bytes() for f in sorted(os.listdir(path)) if f != "manifest.json"}


def test_criterion_10_determinism(acceptance, tmp_path, monkeypatch):
    same = {}
    for fmt in ("json", "csv"):
        runs = []
        for i, threads in enumerate(("1", "1", "8")):
            monkeypatch.setenv("TENFOLD_THREADS", threads)
            runs.append(_sample_bytes(tmp_path / f"{fmt}{i}", fmt))
        same[fmt] = (runs[0] == runs[1], runs[0] == runs[2])
    ok = all(a and b for a, b in same.values())
    acceptance(10, ok, ", ".join(f"{f}: rerun={a} threads1v8={b}" for f, (a, b) in same.items()))
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
