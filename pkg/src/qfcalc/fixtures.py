"""Test operators: random unitaries and normal matrices, and atomic multiplication operators."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .qmatrix import QMatrix, adjoint
from .qspace import QVector, gram_schmidt
from .quaternion import DEFAULT_FRAME, I, J, K, Frame, Quaternion, SphereClass, as_imaginary_unit


def random_qvector(n: int, rng: np.random.Generator) -> QVector:
    return QVector(rng.standard_normal((n, 4)))


def random_qmatrix(n: int, rng: np.random.Generator, scale: float = 1.0) -> QMatrix:
    return QMatrix(scale * rng.standard_normal((n, n, 4)))


def random_unitary(n: int, rng: np.random.Generator) -> QMatrix:
    """Quaternionic unitary from Gram–Schmidt on Gaussian columns."""
    while True:
        cols = gram_schmidt([random_qvector(n, rng) for _ in range(n)], tol=1e-6)
        if len(cols) == n:
            return QMatrix.from_columns(cols)


def random_unit_imaginary(rng: np.random.Generator) -> Quaternion:
    v = rng.standard_normal(3)
    return as_imaginary_unit(Quaternion(0.0, *v))


def random_eigenvalues(
    n: int,
    rng: np.random.Generator,
    fr: Frame = DEFAULT_FRAME,
    separation: float = 0.0,
    real_fraction: float = 0.3,
    radius: float = 1.5,
) -> list[Quaternion]:
    """Representatives in C_m⁺ whose sphere classes are pairwise ``separation`` apart.

    Non-real ones also keep ``separation`` / 2 away from the real axis.
    """
    classes: list[SphereClass] = []
    while len(classes) < n:
        alpha = rng.uniform(-radius, radius)
        beta = 0.0 if rng.random() < real_fraction else rng.uniform(separation / 2, radius)
        c = SphereClass(alpha, beta)
        if all(c.distance(o) >= separation for o in classes):
            classes.append(c)
    return [c.representative(fr.m) for c in classes]


def normal_from_spectrum(lambdas: Sequence, u: QMatrix) -> QMatrix:
    return u @ QMatrix.diag(lambdas) @ adjoint(u)


def random_normal(
    n: int,
    rng: np.random.Generator,
    fr: Frame = DEFAULT_FRAME,
    separation: float = 0.0,
    real_fraction: float = 0.3,
    radius: float = 1.5,
) -> QMatrix:
    """U diag(λ) U* with Haar-like U and random λ in C_m⁺."""
    lams = random_eigenvalues(n, rng, fr, separation, real_fraction, radius)
    return normal_from_spectrum(lams, random_unitary(n, rng))


def random_degenerate_normal(
    multiplicities: Sequence[int], rng: np.random.Generator, fr: Frame = DEFAULT_FRAME, real: Sequence[bool] = ()
) -> QMatrix:
    """Normal matrix with repeated eigenvalues (block sizes ``multiplicities``)."""
    lams: list[Quaternion] = []
    for k, mult in enumerate(multiplicities):
        is_real = real[k] if k < len(real) else False
        alpha = float(k) - 0.5 * len(multiplicities)
        beta = 0.0 if is_real else 0.6 + 0.3 * k
        lams += [fr.slice_point(alpha, beta)] * mult
    return normal_from_spectrum(lams, random_unitary(len(lams), rng))


def multiplication_operator(atoms: Sequence) -> QMatrix:
    """(Tg)(s) = s g(s) on L²(Ω; ℍ; μ) for a finite atomic measure.

    With atoms as coordinates (weights folded into the coordinates) the
    operator is diagonal and independent of the weights.
    """
    return QMatrix.diag([Quaternion.coerce(s) for s in atoms])


#: atoms of the standard imaginary-sphere example
SPHERE_ATOMS = (I, J, K)


def sphere_atoms(k: int, rng: np.random.Generator | None = None) -> list[Quaternion]:
    """k points of 𝕊: i, j, k first, then random unit imaginaries."""
    pts = list(SPHERE_ATOMS[:k])
    rng = rng if rng is not None else np.random.default_rng(0)
    while len(pts) < k:
        pts.append(random_unit_imaginary(rng))
    return pts


def commuting_polynomial(t: QMatrix, coeffs: np.ndarray) -> QMatrix:
    """Σ c_ab Tᵃ (T*)ᵇ for a real coefficient grid ``coeffs[a, b]``."""
    th = adjoint(t)
    n = t.n
    powers_t = [QMatrix.identity(n)]
    powers_th = [QMatrix.identity(n)]
    for _ in range(coeffs.shape[0] - 1):
        powers_t.append(powers_t[-1] @ t)
    for _ in range(coeffs.shape[1] - 1):
        powers_th.append(powers_th[-1] @ th)
    out = QMatrix.zeros(n)
    for a in range(coeffs.shape[0]):
        for b in range(coeffs.shape[1]):
            out = out + (powers_t[a] @ powers_th[b]) * float(coeffs[a, b])
    return out
