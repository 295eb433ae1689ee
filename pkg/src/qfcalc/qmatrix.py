"""Bounded right-linear operators on ℍⁿ as quaternionic matrices.

Also hosts the complex embedding ``chi``: relative to a frame (m, n) each
entry a = c + d n (c, d ∈ C_m ≅ ℂ) becomes the block [[c, d], [-d̄, c̄]], and
an n×n quaternionic matrix becomes the 2n×2n complex matrix
[[C, D], [-D̄, C̄]].  ``chi`` is an injective *-homomorphism, so norms,
singular values and spectra can be computed with dense complex LAPACK.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import StructureError
from .qspace import QVector
from .quaternion import DEFAULT_FRAME, Frame, Quaternion, join_complex, qabs, qconj, split_complex


def _qmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of quaternion arrays shaped (p, q, 4) @ (q, r, 4) or (q, 4)."""
    aw, ax, ay, az = np.moveaxis(a, -1, 0)
    bw, bx, by, bz = np.moveaxis(b, -1, 0)
    return np.stack(
        [
            aw @ bw - ax @ bx - ay @ by - az @ bz,
            aw @ bx + ax @ bw + ay @ bz - az @ by,
            aw @ by - ax @ bz + ay @ bw + az @ bx,
            aw @ bz + ax @ by - ay @ bx + az @ bw,
        ],
        axis=-1,
    )


class QMatrix:
    """An n×n quaternionic matrix acting on column vectors from the left.

    Stored as an immutable (n, n, 4) float array.  Right-linearity
    A(x q) = (A x) q holds by construction.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        if isinstance(entries, QMatrix):
            a = entries._a
        elif isinstance(entries, np.ndarray):
            a = np.array(entries, dtype=float)
        else:
            rows = [[Quaternion.coerce(e).to_array() for e in row] for row in entries]
            a = np.array(rows, dtype=float)
        if a.ndim != 3 or a.shape[2] != 4 or a.shape[0] != a.shape[1]:
            raise ValueError(f"matrix array must have shape (n, n, 4), got {a.shape}")
        a.setflags(write=False)
        self._a = a

    # constructors
    @classmethod
    def zeros(cls, n: int) -> QMatrix:
        return cls(np.zeros((n, n, 4)))

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        a = np.zeros((n, n, 4))
        a[np.arange(n), np.arange(n), 0] = 1.0
        return cls(a)

    @classmethod
    def diag(cls, values: Sequence) -> QMatrix:
        n = len(values)
        a = np.zeros((n, n, 4))
        for k, v in enumerate(values):
            a[k, k] = Quaternion.coerce(v).to_array()
        return cls(a)

    @classmethod
    def from_columns(cls, cols: Sequence[QVector]) -> QMatrix:
        return cls(np.stack([QVector(c).array for c in cols], axis=1))

    @classmethod
    def from_complex(cls, m: np.ndarray, fr: Frame = DEFAULT_FRAME) -> QMatrix:
        """Read a complex matrix as a C_m-valued quaternionic matrix (i ↦ m)."""
        m = np.asarray(m, dtype=complex)
        return cls(join_complex(m, np.zeros_like(m), fr))

    # accessors
    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def n(self) -> int:
        return self._a.shape[0]

    def __getitem__(self, ij) -> Quaternion:
        return Quaternion.from_array(self._a[ij])

    def column(self, k: int) -> QVector:
        return QVector(self._a[:, k])

    def diagonal(self) -> list[Quaternion]:
        return [self[k, k] for k in range(self.n)]

    # algebra
    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            return QMatrix(_qmatmul(self._a, other._a))
        if isinstance(other, QVector):
            return QVector(_qmatmul(self._a, other.array))
        return NotImplemented

    def __add__(self, other: QMatrix) -> QMatrix:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return QMatrix(self._a + other._a)

    def __sub__(self, other: QMatrix) -> QMatrix:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return QMatrix(self._a - other._a)

    def __neg__(self) -> QMatrix:
        return QMatrix(-self._a)

    def __mul__(self, r) -> QMatrix:
        """Multiplication by a real scalar."""
        if isinstance(r, (int, float, np.floating, np.integer)):
            return QMatrix(self._a * float(r))
        return NotImplemented

    __rmul__ = __mul__

    def adjoint(self) -> QMatrix:
        return adjoint(self)

    @property
    def H(self) -> QMatrix:
        return adjoint(self)

    def norm(self) -> float:
        return opnorm(self)

    def max_abs(self) -> float:
        """Largest entry modulus."""
        return float(np.max(qabs(self._a), initial=0.0))

    def allclose(self, other: QMatrix, tol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= tol

    def to_complex(self, fr: Frame = DEFAULT_FRAME, tol: float = 1e-9) -> np.ndarray:
        """The C_m-valued matrix as complex numbers; fails if entries leave C_m."""
        c, d = split_complex(self._a, fr)
        scale = max(1.0, self.max_abs())
        if np.max(np.abs(d), initial=0.0) > tol * scale:
            raise StructureError("matrix entries are not C_m-valued")
        return c

    def to_list(self) -> list:
        return self._a.tolist()

    def __repr__(self):
        return f"QMatrix({self._a.tolist()!r})"


def adjoint(a: QMatrix) -> QMatrix:
    """Conjugate transpose; ⟨x|Ay⟩ = ⟨A* x|y⟩."""
    return QMatrix(qconj(np.swapaxes(a.array, 0, 1)))


def chi_embed(a: QMatrix, fr: Frame = DEFAULT_FRAME) -> np.ndarray:
    c, d = split_complex(a.array, fr)
    return np.block([[c, d], [-d.conj(), c.conj()]])


def chi_unembed(m: np.ndarray, fr: Frame = DEFAULT_FRAME, tol: float = 1e-10) -> QMatrix:
    """Left inverse of :func:`chi_embed`; checks the block symmetry first."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise StructureError(f"expected an even square matrix, got shape {m.shape}")
    n = m.shape[0] // 2
    p, q = m[:n, :n], m[:n, n:]
    r, s = m[n:, :n], m[n:, n:]
    scale = max(1.0, float(np.max(np.abs(m), initial=0.0)))
    err = max(
        float(np.max(np.abs(s - p.conj()), initial=0.0)),
        float(np.max(np.abs(r + q.conj()), initial=0.0)),
    )
    if err > tol * scale:
        raise StructureError(f"matrix lacks the quaternionic block symmetry (deviation {err:.3g})")
    c = (p + s.conj()) / 2
    d = (q - r.conj()) / 2
    return QMatrix(join_complex(c, d, fr))


def singular_values(a: QMatrix) -> np.ndarray:
    """Singular values of ``a``, each listed once (chi doubles them)."""
    s = np.linalg.svd(chi_embed(a), compute_uv=False)
    return s[::2]


def opnorm(a: QMatrix) -> float:
    if a.n == 0:
        return 0.0
    return float(np.linalg.norm(chi_embed(a), 2))


def min_singular_value(a: QMatrix) -> float:
    return float(np.linalg.svd(chi_embed(a), compute_uv=False)[-1])


@dataclass(frozen=True)
class Classification:
    normal: bool
    self_adjoint: bool
    anti_self_adjoint: bool
    unitary: bool
    positive: bool
    normal_residual: float

    @property
    def flags(self) -> set[str]:
        names = ("normal", "self_adjoint", "anti_self_adjoint", "unitary", "positive")
        return {name for name in names if getattr(self, name)}


def classify(a: QMatrix, tol: float = 1e-10) -> Classification:
    """Operator classes, each tested to ``tol`` relative to ‖A‖ (or ‖A‖²)."""
    ah = adjoint(a)
    nrm = max(1.0, opnorm(a))
    eye = QMatrix.identity(a.n)
    normal_res = opnorm(ah @ a - a @ ah)
    normal = normal_res <= tol * nrm**2
    self_adj = opnorm(ah - a) <= tol * nrm
    anti = opnorm(ah + a) <= tol * nrm
    unitary = max(opnorm(ah @ a - eye), opnorm(a @ ah - eye)) <= tol * nrm**2
    positive = False
    if self_adj:
        h = chi_embed(a)
        h = (h + h.conj().T) / 2
        positive = bool(np.linalg.eigvalsh(h).min(initial=0.0) >= -tol * nrm)
    return Classification(normal, self_adj, anti, unitary, positive, normal_res)


def delta_q(t: QMatrix, q) -> QMatrix:
    """Δ_q(T) = T² − T(q + q̄) + I|q|²."""
    q = Quaternion.coerce(q)
    return t @ t - t * (2.0 * q.re) + QMatrix.identity(t.n) * q.norm2()


def polyval(t: QMatrix, coeffs: Sequence[float]) -> QMatrix:
    """Σ c_k Tᵏ for real coefficients (lowest degree first), by Horner's rule."""
    cs = [float(c) for c in coeffs]
    if not cs:
        return QMatrix.zeros(t.n)
    eye = QMatrix.identity(t.n)
    acc = eye * cs[-1]
    for c in reversed(cs[:-1]):
        acc = acc @ t + eye * c
    return acc
