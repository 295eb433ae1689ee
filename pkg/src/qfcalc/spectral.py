"""Eigenstructure of normal quaternionic matrices.

A normal T is diagonalized as T = U diag(λ) U* with U unitary and every
right eigenvalue λ in the closed upper half slice C_m⁺ of the chosen frame.
The columns of U form the Hilbert basis 𝒩_m, which fixes

* the anti-self-adjoint unitary J = U diag(m) U* commuting with T,
* its partner J′ = U diag(n) U* (the left multiplication by n),
* the restriction of J-commuting operators to the slice space
  {x : Jx = x m}, which in the basis 𝒩_m is just U* S U read over C_m,
* and its inverse, the right-linear extension ("tilde").

Numerically, the eigenvectors come from a complex Schur decomposition of
the embedding chi(T).  Eigenvalues of chi(T) appear in conjugate pairs; one
eigenvector per pair is kept.  Real eigenvalues collapse each pair into a
double root, so for them the choice is made by pivoted Gram–Schmidt against
the span of already accepted vectors *and* their quaternionic partners
(the antiunitary symmetry of chi), never by eigenvalue proximity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import ConvergenceError, PreconditionError, StructureError
from .qmatrix import QMatrix, adjoint, chi_embed, classify, delta_q, min_singular_value, opnorm
from .qspace import HilbertBasis, QVector, gram_schmidt, inner
from .quaternion import (
    DEFAULT_FRAME,
    NEAR_REAL_TOL,
    Frame,
    Quaternion,
    SphereClass,
    join_complex,
    qmul,
    sphere_class_of,
    split_complex,
)

#: relative distance below which two eigenvalue representatives are one atom
MERGE_RTOL = 1e-8
#: smallest singular value of chi(Δ_q) relative to ‖Δ_q‖ declaring q ∈ σ_S(T)
MEMBERSHIP_RTOL = 1e-8


@dataclass(frozen=True)
class EigenSystem:
    """Unitary U and right eigenvalues λ_ℓ ∈ C_m⁺ with T U_ℓ = U_ℓ λ_ℓ."""

    U: QMatrix
    lambdas: tuple[Quaternion, ...]
    frame: Frame = DEFAULT_FRAME
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    @property
    def n(self) -> int:
        return self.U.n

    @property
    def basis(self) -> HilbertBasis:
        return HilbertBasis(self.U.array)

    def operator(self, values: Sequence) -> QMatrix:
        """U diag(values) U*."""
        d = np.array([Quaternion.coerce(v).to_array() for v in values]).reshape(-1, 4)
        u = self.U.array
        scaled = qmul(u, d[None, :, :])  # column ℓ right-multiplied by values[ℓ]
        return QMatrix(scaled) @ adjoint(self.U)

    def left_mult(self, q) -> QMatrix:
        """L_q, the left multiplication induced by the basis 𝒩_m."""
        return self.operator([q] * self.n)

    @property
    def J(self) -> QMatrix:
        if "J" not in self._cache:
            self._cache["J"] = self.left_mult(self.frame.m)
        return self._cache["J"]

    @property
    def Jprime(self) -> QMatrix:
        if "Jp" not in self._cache:
            self._cache["Jp"] = self.left_mult(self.frame.n)
        return self._cache["Jp"]

    def reconstruct(self) -> QMatrix:
        return self.operator(self.lambdas)

    def groups(self, rtol: float = MERGE_RTOL) -> list[list[int]]:
        """Indices of eigenvalues sharing a (numerically) common representative."""
        return group_close(self.lambdas, rtol)

    def rotated(self, w: QMatrix) -> EigenSystem:
        """Eigensystem of W T W* obtained by moving the basis along with T."""
        return EigenSystem(w @ self.U, self.lambdas, self.frame)


def group_close(values: Sequence[Quaternion], rtol: float = MERGE_RTOL) -> list[list[int]]:
    """Connected components of the relation |a − b| ≤ rtol·max(1, |a|, |b|)."""
    parent = list(range(len(values)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(values)):
        for b in range(a + 1, len(values)):
            va, vb = values[a], values[b]
            if (va - vb).norm() <= rtol * max(1.0, va.norm(), vb.norm()):
                parent[find(b)] = find(a)
    groups: dict[int, list[int]] = {}
    for a in range(len(values)):
        groups.setdefault(find(a), []).append(a)
    return list(groups.values())


def _partner(v: np.ndarray) -> np.ndarray:
    """chi-image of x·n for the quaternion vector x represented by v = [a; b]."""
    h = v.shape[0] // 2
    a, b = v[:h], v[h:]
    return np.concatenate([b.conj(), -a.conj()])


def _select_vectors(z: np.ndarray, ev: np.ndarray, n: int, real_tol: float) -> list[np.ndarray]:
    """Pick n chi-eigenvectors whose quaternionic counterparts are orthonormal."""
    accepted: list[np.ndarray] = []
    span: list[np.ndarray] = []

    def project_out(v):
        if not span:
            return v
        q = np.stack(span, axis=1)
        return v - q @ (q.conj().T @ v)

    def accept(v):
        v = v / np.linalg.norm(v)
        accepted.append(v)
        span.append(v)
        w = project_out(_partner(v))
        span.append(w / np.linalg.norm(w))

    upper = [k for k in range(len(ev)) if ev[k].imag > real_tol]
    pool = [k for k in range(len(ev)) if abs(ev[k].imag) <= real_tol]
    for k in upper:
        if len(accepted) == n:
            break
        w = project_out(z[:, k])
        if np.linalg.norm(w) < 0.5:
            raise ConvergenceError("eigenvectors of conjugate-pair eigenvalues are not separated")
        accept(w)
    while len(accepted) < n:
        best, best_norm = None, -1.0
        for k in pool:
            w = project_out(z[:, k])
            nw = float(np.linalg.norm(w))
            if nw > best_norm + 1e-12:
                best, best_norm = w, nw
        if best is None or best_norm < 0.1:
            raise ConvergenceError("could not pair real eigenvectors of the complex embedding")
        accept(best)
    return accepted


def _phase_normalize(col: np.ndarray, fr: Frame) -> np.ndarray:
    """Right-multiply by a unit of C_m so the dominant entry has a positive C_m part."""
    mags = np.sqrt(np.sum(col**2, axis=-1))
    top = float(mags.max())
    p = int(np.argmax(mags >= (1 - 1e-6) * top))
    c, d = split_complex(col[p], fr)
    c, d = complex(c), complex(d)
    if abs(c) > 1e-8 * top:
        phase = c.conjugate() / abs(c)
    else:
        phase = d / abs(d)
    unit = join_complex(np.array(phase), np.array(0j), fr)
    return qmul(col, unit)


def eigendecompose(t: QMatrix, fr: Frame = DEFAULT_FRAME, tol: float = 1e-9) -> EigenSystem:
    """Diagonalize a normal quaternionic matrix with eigenvalues in C_m⁺.

    Raises :class:`PreconditionError` for non-normal input (tested to ``tol``
    relative to ‖T‖²) and :class:`ConvergenceError` when the final residual
    ‖TU − U diag(λ)‖ exceeds 1e-7·max(1, ‖T‖).
    """
    n = t.n
    if n == 0:
        return EigenSystem(QMatrix.zeros(0), (), fr)
    cls = classify(t, tol)
    if not cls.normal:
        raise PreconditionError(f"operator is not normal (‖T*T − TT*‖ = {cls.normal_residual:.3g})")
    scale = max(1.0, opnorm(t))
    c = chi_embed(t, fr)
    s, z = scipy.linalg.schur(c, output="complex")
    ev = np.diag(s)
    vecs = _select_vectors(z, ev, n, real_tol=1e-9 * scale)

    cols = []
    for v in vecs:
        a, b = v[:n], v[n:]
        cols.append(join_complex(a, -b.conj(), fr))

    # eigenvalue representatives via Rayleigh quotients, flipped into C_m⁺
    lambdas: list[Quaternion] = []
    for k, col in enumerate(cols):
        x = QVector(col)
        rho = inner(x, t @ x)
        alpha, beta = fr.to_complex(rho).real, fr.to_complex(rho).imag
        if beta < 0:
            cols[k] = qmul(col, fr.n.to_array())
            beta = -beta
        if beta <= NEAR_REAL_TOL * scale:
            beta = 0.0
        lambdas.append(fr.slice_point(alpha, beta))

    # re-orthonormalize inside degenerate eigenspaces, in declaration order
    for grp in group_close(lambdas):
        if len(grp) > 1:
            ortho = gram_schmidt([QVector(cols[k]) for k in grp])
            if len(ortho) != len(grp):
                raise ConvergenceError("degenerate eigenspace lost rank during orthonormalization")
            for k, v in zip(grp, ortho):
                cols[k] = v.array

    cols = [_phase_normalize(col, fr) for col in cols]
    u = QMatrix(np.stack(cols, axis=1))
    es = EigenSystem(u, tuple(lambdas), fr)

    ortho_err = (adjoint(u) @ u - QMatrix.identity(n)).max_abs()
    resid = opnorm(t @ u - u @ QMatrix.diag(lambdas))
    if resid > 1e-7 * scale or ortho_err > 1e-10:
        raise ConvergenceError(f"eigendecomposition residual {resid:.3g}, orthogonality error {ortho_err:.3g}")
    return es


@dataclass(frozen=True)
class SphericalSpectrum:
    """σ_S(T) as sphere classes with multiplicities (counted over ℍⁿ)."""

    classes: tuple[tuple[SphereClass, int], ...]

    def spheres(self) -> list[SphereClass]:
        return [c for c, _ in self.classes]

    def contains(self, q: Quaternion, tol: float = 1e-8) -> bool:
        c = sphere_class_of(Quaternion.coerce(q))
        return any(c.distance(s) <= tol for s in self.spheres())

    def to_records(self) -> list[dict]:
        return [{"re": c.re, "rad": c.rad, "multiplicity": k} for c, k in self.classes]


def spectrum_from_eigensystem(es: EigenSystem) -> SphericalSpectrum:
    out = []
    for grp in es.groups():
        lam = es.lambdas[grp[0]]
        out.append((sphere_class_of(lam), len(grp)))
    return SphericalSpectrum(tuple(out))


def spherical_spectrum(t: QMatrix, fr: Frame = DEFAULT_FRAME, tol: float = 1e-9) -> SphericalSpectrum:
    """Circularization of σ(T₊), with multiplicities."""
    return spectrum_from_eigensystem(eigendecompose(t, fr, tol))


def in_spherical_spectrum(t: QMatrix, q, fr: Frame = DEFAULT_FRAME) -> bool:
    """Direct test: is Δ_q(T) singular (relative threshold on chi's smallest singular value)?"""
    d = delta_q(t, q)
    return min_singular_value(d) <= MEMBERSHIP_RTOL * opnorm(d)


def build_J(t: QMatrix, fr: Frame = DEFAULT_FRAME, es: EigenSystem | None = None) -> QMatrix:
    """Anti-self-adjoint unitary J = L_m commuting with T and T*."""
    if es is None:
        es = eigendecompose(t, fr)
    return es.J


def build_Jprime(es: EigenSystem, fr: Frame | None = None) -> QMatrix:
    """J′ = L_n for the basis of ``es``; anticommutes with J."""
    if fr is not None and fr != es.frame:
        if not fr.m.is_close(es.frame.m, 1e-12):
            raise StructureError("J′ must use the same axis m as the eigensystem")
        es = EigenSystem(es.U, es.lambdas, fr)
    return es.Jprime


def restrict_plus(s: QMatrix, es: EigenSystem, tol: float = 1e-9) -> np.ndarray:
    """Matrix of S₊ on the slice space in the basis 𝒩_m, as a complex array."""
    j = es.J
    comm = opnorm(s @ j - j @ s)
    if comm > tol * max(1.0, opnorm(s)):
        raise PreconditionError(f"operator does not commute with J (‖SJ − JS‖ = {comm:.3g})")
    m = adjoint(es.U) @ s @ es.U
    return m.to_complex(es.frame, tol=max(tol, 1e-9))


def extend_tilde(m: np.ndarray, es: EigenSystem) -> QMatrix:
    """The unique right-linear extension of a C_m-linear operator on the slice space."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (es.n, es.n):
        raise StructureError(f"expected a {es.n}x{es.n} complex matrix, got {m.shape}")
    return es.U @ QMatrix.from_complex(m, es.frame) @ adjoint(es.U)
