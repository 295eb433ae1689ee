import math

import numpy as np
import pytest
import scipy.linalg
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qfcalc.errors import DomainError, StructureError
from qfcalc.quaternion import (
    DEFAULT_FRAME,
    I,
    J,
    K,
    ONE,
    Frame,
    Quaternion,
    SphereClass,
    circularize,
    frame_compose,
    frame_decompose,
    inverse,
    mul,
    sample_sphere_class,
    sphere_class_of,
)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def random_frame(rng):
    m = Quaternion(0.0, *rng.standard_normal(3))
    m = m / m.norm()
    v = Quaternion(0.0, *rng.standard_normal(3))
    v = v - m * (-(m * v).re)  # remove the m-component of v
    v = v / v.norm()
    return Frame.from_axes(m, v)


def test_defining_relations():
    assert mul(I, J) == K
    assert mul(J, K) == I
    assert mul(K, I) == J
    for u in (I, J, K):
        assert u * u == -ONE
    assert I * J * K == -ONE


def test_simple_products():
    assert (Quaternion(1, 1) * Quaternion(1, -1)).is_close(Quaternion(2))


def test_product_matches_sympy():
    p = Quaternion(1, 1, 1, 0)
    q = Quaternion(2, 0, 0, -1)
    ref = sympy.algebras.Quaternion(1, 1, 1, 0) * sympy.algebras.Quaternion(2, 0, 0, -1)
    expected = Quaternion(*(float(c) for c in (ref.a, ref.b, ref.c, ref.d)))
    assert (p * q).is_close(expected)
    # hand expansion: 2 + i + 3j - k
    assert (p * q).is_close(Quaternion(2, 1, 3, -1))


def test_product_against_sympy_random(rng):
    for _ in range(50):
        a, b = rng.integers(-5, 6, size=(2, 4))
        ref = sympy.algebras.Quaternion(*map(int, a)) * sympy.algebras.Quaternion(*map(int, b))
        got = Quaternion(*map(float, a)) * Quaternion(*map(float, b))
        assert got.to_list() == [float(ref.a), float(ref.b), float(ref.c), float(ref.d)]


def test_inverse_examples():
    assert inverse(I).is_close(-I)
    assert inverse(Quaternion(2)).is_close(Quaternion(0.5))
    q = Quaternion(1, 1, 1, 1)
    assert inverse(q).is_close(Quaternion(1, -1, -1, -1) / 4)
    assert (q * inverse(q)).is_close(ONE)
    with pytest.raises(DomainError):
        inverse(Quaternion())


@settings(max_examples=200, deadline=None)
@given(quats, quats)
def test_norm_is_multiplicative(p, q):
    assert abs((p * q).norm() - p.norm() * q.norm()) <= 1e-12 * max(1.0, p.norm() * q.norm())


def test_norm_multiplicative_1000_pairs(rng):
    a = rng.standard_normal((1000, 2, 4))
    for x, y in a:
        p, q = Quaternion(*x), Quaternion(*y)
        assert abs((p * q).norm() - p.norm() * q.norm()) < 1e-12


@settings(max_examples=100, deadline=None)
@given(quats, quats)
def test_conjugation_laws(p, q):
    assert p.conj().conj() == p
    assert (p * q).conj().is_close(q.conj() * p.conj(), 1e-9 * max(1.0, p.norm() * q.norm()))
    assert abs(p.norm2() - (p.w**2 + p.x**2 + p.y**2 + p.z**2)) <= 1e-9 * max(1.0, p.norm2())


def test_frame_decompose_examples():
    assert frame_decompose(Quaternion(3, 2, -1, 5), DEFAULT_FRAME) == pytest.approx((3, 2, -1, 5))
    fr = Frame(J, K)
    assert fr.mn.is_close(I)
    assert frame_decompose(Quaternion(1, 1, 1, 1), fr) == pytest.approx((1, 1, 1, 1))
    assert frame_decompose(fr.m, fr) == pytest.approx((0, 1, 0, 0))


def test_frame_round_trip_random_frames(rng):
    for _ in range(100):
        fr = random_frame(rng)
        q = Quaternion(*rng.standard_normal(4))
        assert frame_compose(frame_decompose(q, fr), fr).is_close(q, 1e-12)
        assert frame_decompose(fr.m, fr) == pytest.approx((0, 1, 0, 0), abs=1e-12)


def test_frame_validation():
    with pytest.raises(StructureError):
        Frame(I, I)
    with pytest.raises(StructureError):
        Frame(I, Quaternion(0, 0, 2, 0))
    with pytest.raises(StructureError):
        Frame.from_axes(Quaternion(0, 1, 1, 0), Quaternion(0, 1, 0, 0))
    fr = Frame.from_axes(Quaternion(0, 3, 0, 0), Quaternion(0, 0, 0, -2))
    assert fr.m == I and fr.n == -K


def test_slice_membership_by_commutation(rng):
    for _ in range(100):
        fr = random_frame(rng)
        a, b = rng.standard_normal(2)
        inside = fr.slice_point(a, b)
        assert inside.commutes_with(fr.m, 1e-12) and fr.in_slice(inside)
        outside = inside + fr.n * 0.5
        assert not outside.commutes_with(fr.m, 1e-12) and not fr.in_slice(outside)


def test_two_slices_meet_in_reals(rng):
    basis = [ONE, I, J, K]
    for _ in range(50):
        fr = random_frame(rng)
        # q -> (qm - mq, qn - nq) as a real 8x4 matrix; its kernel is C_m ∩ C_n
        cols = [np.concatenate([(e * fr.m - fr.m * e).to_array(), (e * fr.n - fr.n * e).to_array()]) for e in basis]
        kernel = scipy.linalg.null_space(np.array(cols).T, rcond=1e-12)
        assert kernel.shape[1] == 1
        assert np.allclose(np.abs(kernel[:, 0]), [1, 0, 0, 0], atol=1e-12)


def test_sphere_class_examples():
    assert sphere_class_of(Quaternion(1, 1)) == SphereClass(1, 1)
    assert sphere_class_of(Quaternion(2)) == SphereClass(2, 0)
    assert sphere_class_of(I).contains(J)
    assert SphereClass(3, 1e-13).rad == 0.0
    with pytest.raises(DomainError):
        SphereClass(0, -1)


def test_circularize():
    assert circularize([2]) == [SphereClass(2, 0)]
    assert circularize([1 + 1j]) == [SphereClass(1, 1)]
    assert circularize([I]) == [SphereClass(0, 1)]
    assert circularize([I, J, K, -I]) == [SphereClass(0, 1)]


def test_sample_sphere_class():
    assert sample_sphere_class(SphereClass(2, 0), 5) == [Quaternion(2)] * 5
    pts = sample_sphere_class(SphereClass(0, 1), 6)
    for axis in (I, -I, J, -J, K, -K):
        assert any(p.is_close(axis) for p in pts)
    for p in sample_sphere_class(SphereClass(1, 1), 40):
        assert abs((p - 1).norm() - 1) < 1e-12
        assert sphere_class_of(p).distance(SphereClass(1, 1)) < 1e-12
    assert sample_sphere_class(SphereClass(0, 1), 30) == sample_sphere_class(SphereClass(0, 1), 30)


def test_scalar_arithmetic_mixes_with_floats():
    q = Quaternion(1, 2, 3, 4)
    assert 2 * q == q * 2 == Quaternion(2, 4, 6, 8)
    assert (1 - q) == Quaternion(0, -2, -3, -4)
    assert math.isclose(abs(q), math.sqrt(30))
