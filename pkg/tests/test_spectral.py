import math

import numpy as np
import pytest

from qfcalc.errors import PreconditionError
from qfcalc.fixtures import (
    multiplication_operator,
    random_degenerate_normal,
    random_normal,
    random_qmatrix,
    random_unitary,
    SPHERE_ATOMS,
)
from qfcalc.qmatrix import QMatrix, adjoint, chi_embed, delta_q, opnorm, polyval
from qfcalc.quaternion import DEFAULT_FRAME, I, J, K, Frame, Quaternion, SphereClass, sample_sphere_class
from qfcalc.spectral import (
    build_J,
    build_Jprime,
    eigendecompose,
    extend_tilde,
    in_spherical_spectrum,
    restrict_plus,
    spherical_spectrum,
)

FRAMES = [DEFAULT_FRAME, Frame(J, K), Frame.from_axes(Quaternion(0, 1, 2, 2), Quaternion(0, 2, -1, 0))]


def check_eigensystem(t, es, fr):
    n = t.n
    assert (adjoint(es.U) @ es.U).allclose(QMatrix.identity(n), 1e-10)
    for l, lam in enumerate(es.lambdas):
        col = es.U.column(l)
        assert (t @ col).allclose(col * lam, 1e-9 * max(1.0, opnorm(t)))
        assert fr.in_slice(lam, 1e-12)
        assert fr.to_complex(lam).imag >= 0.0


def test_diagonal_example():
    t = QMatrix.diag([Quaternion(1, 1), Quaternion(2)])
    es = eigendecompose(t)
    assert es.U.allclose(QMatrix.identity(2), 1e-12)
    assert es.lambdas[0].is_close(Quaternion(1, 1), 1e-12) and es.lambdas[1].is_close(Quaternion(2), 1e-12)


def test_j_example():
    es = eigendecompose(QMatrix.diag([J]))
    u = (Quaternion(1) + K) / math.sqrt(2)
    assert es.U[0, 0].is_close(u, 1e-12)
    assert es.lambdas[0].is_close(I, 1e-12)
    # j (1+k) = (1+k) i
    assert (J * (1 + K)).is_close((1 + K) * I)


def test_real_example():
    es = eigendecompose(QMatrix.diag([2.0]))
    assert es.U.allclose(QMatrix.identity(1), 1e-12)
    assert es.lambdas[0].is_close(Quaternion(2), 1e-12)


def test_rejects_non_normal():
    with pytest.raises(PreconditionError):
        eigendecompose(QMatrix([[0.0, 1.0], [0.0, 0.0]]))


@pytest.mark.parametrize("fr", FRAMES)
def test_random_normal_eigensystems(rng, fr):
    for _ in range(30):
        n = int(rng.integers(1, 7))
        t = random_normal(n, rng, fr)
        es = eigendecompose(t, fr)
        check_eigensystem(t, es, fr)
        assert es.reconstruct().allclose(t, 1e-10)


def test_degenerate_and_real_eigenspaces(rng):
    for real in ([False, False], [True, False], [True, True], [False, True, False]):
        t = random_degenerate_normal([2, 3, 1][: len(real)], rng, real=real)
        es = eigendecompose(t)
        check_eigensystem(t, es, DEFAULT_FRAME)
        assert sorted(len(g) for g in es.groups()) == sorted([2, 3, 1][: len(real)])


def test_self_adjoint_and_zero():
    a = QMatrix([[2.0, Quaternion(0, 1, 1, 0)], [Quaternion(0, -1, -1, 0), -1.0]])
    es = eigendecompose(a)
    check_eigensystem(a, es, DEFAULT_FRAME)
    assert all(lam.im_norm() == 0.0 for lam in es.lambdas)
    z = eigendecompose(QMatrix.zeros(3))
    assert all(lam == Quaternion() for lam in z.lambdas)


def test_spectrum_examples():
    sigma = spherical_spectrum(QMatrix.diag([Quaternion(1, 1), Quaternion(2)]))
    assert sigma.to_records() == [{"re": 1.0, "rad": 1.0, "multiplicity": 1}, {"re": 2.0, "rad": 0.0, "multiplicity": 1}]
    sigma = spherical_spectrum(QMatrix.diag([I, J]))
    assert sigma.to_records() == [{"re": 0.0, "rad": 1.0, "multiplicity": 2}]
    sigma = spherical_spectrum(multiplication_operator(SPHERE_ATOMS))
    assert [c for c, _ in sigma.classes] == [SphereClass(0.0, 1.0)]


def test_spectrum_agrees_with_singular_values(rng):
    for _ in range(10):
        t = random_normal(4, rng, separation=0.2)
        sigma = spherical_spectrum(t)
        for c in sigma.spheres():
            for q in sample_sphere_class(c, 16):
                assert np.linalg.svd(chi_embed(delta_q(t, q)), compute_uv=False)[-1] < 1e-6
                assert in_spherical_spectrum(t, q)
        for _ in range(20):
            probe = SphereClass(rng.uniform(-2, 2), rng.uniform(0, 2))
            if min(probe.distance(c) for c in sigma.spheres()) < 0.1:
                continue
            q = probe.representative(I)
            verdicts = {in_spherical_spectrum(t, p) for p in sample_sphere_class(probe, 16)}
            assert verdicts == {False}
            assert np.linalg.svd(chi_embed(delta_q(t, q)), compute_uv=False)[-1] > 1e-3


def test_build_j_examples():
    assert build_J(QMatrix.diag([J])).allclose(QMatrix.diag([J]), 1e-12)
    assert build_J(QMatrix.diag([Quaternion(1, 1), Quaternion(2)])).allclose(QMatrix.diag([I, I]), 1e-12)
    es = eigendecompose(QMatrix.diag([Quaternion(1, 1), Quaternion(2)]))
    assert build_Jprime(es).allclose(QMatrix.diag([J, J]), 1e-12)
    # T = [j]: U = (1+k)/√2 so J' = U j U* = -i
    es = eigendecompose(QMatrix.diag([J]))
    assert build_Jprime(es).allclose(QMatrix.diag([-I]), 1e-12)


@pytest.mark.parametrize("fr", FRAMES)
def test_j_and_jprime_properties(rng, fr):
    for _ in range(20):
        n = int(rng.integers(1, 6))
        t = random_normal(n, rng, fr)
        es = eigendecompose(t, fr)
        j, jp = build_J(t, fr, es), build_Jprime(es, fr)
        eye = QMatrix.identity(n)
        assert (j @ j).allclose(-eye, 1e-10)
        assert adjoint(j).allclose(-j, 1e-10)
        assert (j @ jp + jp @ j).allclose(QMatrix.zeros(n), 1e-10)
        assert opnorm(j @ t - t @ j) < 1e-9
        assert opnorm(j @ adjoint(t) - adjoint(t) @ j) < 1e-9


def test_restrict_and_extend(rng):
    t = random_normal(4, rng)
    es = eigendecompose(t)
    lam = np.array([DEFAULT_FRAME.to_complex(l) for l in es.lambdas])
    assert np.allclose(restrict_plus(t, es), np.diag(lam), atol=1e-10)
    assert np.allclose(restrict_plus(QMatrix.identity(4), es), np.eye(4), atol=1e-12)
    assert np.allclose(restrict_plus(t @ t, es), np.diag(lam**2), atol=1e-9)
    assert extend_tilde(np.diag(lam), es).allclose(t, 1e-10)
    assert extend_tilde(np.eye(4), es).allclose(QMatrix.identity(4), 1e-12)
    assert extend_tilde(np.diag([1j] * 4), es).allclose(es.J, 1e-12)
    with pytest.raises(PreconditionError):
        restrict_plus(random_qmatrix(4, rng), es)


def test_restrict_extend_round_trip_and_inverses(rng):
    t = random_normal(5, rng, separation=0.3, real_fraction=0.0)
    es = eigendecompose(t)
    th = adjoint(t)
    s = polyval(t, [0.5, -1.0, 0.25]) + th @ th * 0.3
    assert extend_tilde(restrict_plus(s, es), es).allclose(s, 1e-10)
    # inverses map to inverses
    tinv = QMatrix.from_complex(np.linalg.inv(restrict_plus(t, es)))
    lhs = extend_tilde(tinv.to_complex(), es)
    assert (lhs @ t).allclose(QMatrix.identity(5), 1e-9)
    assert np.allclose(restrict_plus(lhs, es), np.linalg.inv(restrict_plus(t, es)), atol=1e-9)


def test_invariance_under_unitary_rotation(rng):
    t = random_normal(4, rng, separation=0.2)
    w = random_unitary(4, rng)
    a = spherical_spectrum(t).spheres()
    b = spherical_spectrum(w @ t @ adjoint(w)).spheres()
    assert len(a) == len(b)
    for c in a:
        assert min(c.distance(d) for d in b) < 1e-9
