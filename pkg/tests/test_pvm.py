import numpy as np
import pytest

from qfcalc import funcalc as fc
from qfcalc import pvm
from qfcalc.errors import SliceViolation
from qfcalc.fixtures import (
    SPHERE_ATOMS,
    commuting_polynomial,
    multiplication_operator,
    random_degenerate_normal,
    random_normal,
    random_qmatrix,
    random_qvector,
    random_unitary,
    sphere_atoms,
)
from qfcalc.qmatrix import QMatrix, adjoint, opnorm
from qfcalc.qspace import inner
from qfcalc.quaternion import DEFAULT_FRAME, I, J, K, Frame, Quaternion
from qfcalc.spectral import eigendecompose


def samples(n, rng, count=10):
    return [(random_qvector(n, rng), random_qvector(n, rng)) for _ in range(count)]


def test_measure_examples():
    f = pvm.spectral_measure(QMatrix.diag([Quaternion(1, 1), Quaternion(2)]))
    assert len(f.atoms) == 2
    assert f.keys[0].is_close(Quaternion(1, 1)) and f.keys[1].is_close(Quaternion(2))
    assert f.projection(0).allclose(QMatrix.diag([1.0, 0.0]), 1e-12)
    assert f.projection(1).allclose(QMatrix.diag([0.0, 1.0]), 1e-12)

    f = pvm.spectral_measure(QMatrix.identity(3))
    assert len(f.atoms) == 1 and f.keys[0].is_close(Quaternion(1)) and f.rank(0) == 3

    f = pvm.spectral_measure(QMatrix.diag([I, J]))
    assert len(f.atoms) == 1 and f.keys[0].is_close(I, 1e-12) and f.rank(0) == 2
    assert f.projection(0).allclose(QMatrix.identity(2), 1e-12)


def test_axioms_hold_for_spectral_measures(rng):
    for _ in range(20):
        n = int(rng.integers(1, 6))
        t = random_normal(n, rng)
        rep = pvm.check_axioms(pvm.spectral_measure(t), samples(n, rng))
        assert rep.passed, rep.residuals
        assert rep.residuals["additivity"] < 1e-12


def test_axioms_detect_a_non_self_adjoint_atom(rng):
    f = pvm.spectral_measure(QMatrix.diag([Quaternion(1, 1), Quaternion(2)]))
    bad = QMatrix([[1.0, 1.0], [0.0, 0.0]])
    broken = pvm.QPVM(((f.keys[0], bad), f.atoms[1]), f.frame, f.basis)
    rep = pvm.check_axioms(broken, samples(2, rng))
    assert "self_adjoint" in rep.failures and not rep.passed


def test_integrate_examples(rng):
    t = random_normal(4, rng)
    f = pvm.spectral_measure(t)
    assert opnorm(pvm.integrate(fc.identity(), f) - t) < 1e-10
    assert opnorm(pvm.integrate(fc.constant(1.0), f) - QMatrix.identity(4)) < 1e-12
    target = f.keys[0]
    ind = fc.QFunction(lambda q: Quaternion(1.0 if (q - target).norm() < 1e-9 else 0.0), "atom0")
    assert opnorm(pvm.integrate(ind, f) - f.projection(0)) < 1e-12


def test_integral_equals_full_calculus(rng):
    for _ in range(20):
        t = random_normal(int(rng.integers(1, 6)), rng)
        es = eigendecompose(t)
        f = pvm.spectral_measure(t, es=es)
        for fn in (fc.eg1(), fc.exponential(), fc.constant(Quaternion(0, 1, 2, 3))):
            assert opnorm(pvm.integrate(fn, f) - fc.full_calculus(t, fn, es=es)) < 1e-10


def test_representation_examples(rng):
    t = random_normal(4, rng)
    rep = pvm.representation_check(t, fc.identity(), trials=50)
    assert rep.scalar_form < 1e-10 and rep.split_form < 1e-10
    rep = pvm.representation_check(t, fc.constant(Quaternion(0.5, 2)), trials=50)
    assert rep.passed

    atoms = multiplication_operator(SPHERE_ATOMS)
    rep = pvm.representation_check(atoms, fc.eg1(), trials=50)
    assert rep.passed
    ft = fc.full_calculus(atoms, fc.eg1())
    target = QMatrix.diag([s + 1 for s in SPHERE_ATOMS])
    for _ in range(20):
        x, y = random_qvector(3, rng), random_qvector(3, rng)
        assert (inner(x, ft @ y) - inner(x, target @ y)).norm() < 1e-10


@pytest.mark.parametrize("fr", [DEFAULT_FRAME, Frame(J, K)])
def test_representation_random(rng, fr):
    for seed in range(10):
        t = random_normal(int(rng.integers(1, 6)), rng, fr)
        for fn in (fc.eg1(fr), fc.conjugation(), fc.QFunction(lambda q: q * K + 1, "qk+1")):
            assert pvm.representation_check(t, fn, trials=50, fr=fr, seed=seed).passed


def test_commutant_examples(rng):
    t = random_normal(4, rng)
    rep = pvm.commutant_check(t, t, fc.exponential())
    assert rep.applicable and rep.passed
    s = commuting_polynomial(t, rng.standard_normal((3, 3)))
    rep = pvm.commutant_check(s, t, fc.monomial(3))
    assert rep.applicable and rep.passed
    rep = pvm.commutant_check(random_qmatrix(4, rng), t, fc.exponential())
    assert not rep.applicable and not rep.passed


def test_commutant_requires_slice_valued_function(rng):
    t = random_normal(3, rng, real_fraction=0.0)
    rep = pvm.commutant_check(t, t, fc.constant(K))
    assert not rep.applicable and "C_m" in rep.reason


def test_uniqueness_examples(rng):
    t = random_degenerate_normal([2, 2, 1], rng, real=[False, True, False])
    f = pvm.spectral_measure(t)
    assert pvm.uniqueness_check(f, f, t).equal

    zeroed = pvm.QPVM(((f.keys[0], QMatrix.zeros(t.n)),) + f.atoms[1:], f.frame, f.basis)
    verdict = pvm.uniqueness_check(f, zeroed, t)
    assert not verdict.equal
    assert any("reconstruct" in d for d in verdict.diagnostics)
    assert pvm.check_axioms(zeroed).residuals["completeness"] > 0.5

    # a second eigensystem, computed from a rotated copy of T and rotated back
    w = random_unitary(t.n, rng)
    es1 = eigendecompose(t)
    es2 = eigendecompose(adjoint(w) @ t @ w).rotated(w)
    assert opnorm(es1.U - es2.U) > 1e-3
    g = pvm.spectral_measure(t, es=es2)
    verdict = pvm.uniqueness_check(pvm.spectral_measure(t, es=es1), g, t, [fc.exponential(), fc.eg1()])
    assert verdict.equal, verdict.diagnostics


def test_jordan_identity(rng):
    for _ in range(10):
        t = random_normal(int(rng.integers(1, 5)), rng)
        f = pvm.spectral_measure(t)
        assert pvm.jordan_dE_identity_check(f, fc.identity()) < 1e-10
        assert pvm.jordan_dE_identity_check(f, fc.exponential()) < 1e-10
    with pytest.raises(SliceViolation):
        pvm.jordan_dE_identity_check(f, fc.constant(J))


def test_sphere_operator_measure():
    t = multiplication_operator(sphere_atoms(5))
    f = pvm.spectral_measure(t)
    assert len(f.atoms) == 1 and f.rank(0) == 5 and f.keys[0].is_close(I, 1e-12)
    assert np.allclose(f.projection(0).array, QMatrix.identity(5).array, atol=1e-12)
