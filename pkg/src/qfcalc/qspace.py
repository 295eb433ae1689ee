"""The right quaternionic Hilbert space ℍⁿ.

Scalars act on vectors from the right; the inner product is conjugate-linear
in its first slot and right-linear in its second.  A left scalar action only
exists relative to a Hilbert basis (:func:`left_multiply`).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, StructureError
from .quaternion import ONE, I, J, K, Quaternion, qconj, qmul

BASIS_TOL = 1e-10


class QVector:
    """A column vector in ℍⁿ, stored as an (n, 4) float array."""

    __slots__ = ("_a",)

    def __init__(self, entries):
        if isinstance(entries, QVector):
            a = entries._a
        elif isinstance(entries, np.ndarray):
            a = np.array(entries, dtype=float)
        else:
            a = np.array([Quaternion.coerce(e).to_array() for e in entries], dtype=float).reshape(-1, 4)
        if a.ndim != 2 or a.shape[1] != 4:
            raise ValueError(f"vector array must have shape (n, 4), got {a.shape}")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def zeros(cls, n: int) -> QVector:
        return cls(np.zeros((n, 4)))

    @classmethod
    def unit(cls, n: int, k: int) -> QVector:
        a = np.zeros((n, 4))
        a[k, 0] = 1.0
        return cls(a)

    @property
    def array(self) -> np.ndarray:
        return self._a

    def __len__(self):
        return self._a.shape[0]

    def __getitem__(self, k) -> Quaternion:
        return Quaternion.from_array(self._a[k])

    def __iter__(self):
        return (Quaternion.from_array(r) for r in self._a)

    def __add__(self, other: QVector) -> QVector:
        return QVector(self._a + other._a)

    def __sub__(self, other: QVector) -> QVector:
        return QVector(self._a - other._a)

    def __neg__(self) -> QVector:
        return QVector(-self._a)

    def __mul__(self, q) -> QVector:
        """Right scalar multiplication x·q."""
        q = Quaternion.coerce(q)
        return QVector(qmul(self._a, q.to_array()))

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self._a**2)))

    def allclose(self, other: QVector, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self._a - other._a), initial=0.0) <= tol)

    def to_list(self) -> list[list[float]]:
        return self._a.tolist()

    def __repr__(self):
        return f"QVector({self._a.tolist()!r})"


def inner(x: QVector, y: QVector, weights: Sequence[float] | None = None) -> Quaternion:
    """⟨x|y⟩ = Σ conj(x_l) y_l, optionally with positive atom weights."""
    if len(x) != len(y):
        raise DomainError(f"length mismatch: {len(x)} vs {len(y)}")
    terms = qmul(qconj(x.array), y.array)
    if weights is not None:
        terms = terms * np.asarray(weights, dtype=float)[:, None]
    return Quaternion.from_array(terms.sum(axis=0))


class HilbertBasis:
    """An orthonormal basis of ℍⁿ, stored as the columns of an (n, n, 4) array.

    Orthonormality is checked at construction; nothing is re-orthonormalized.
    """

    __slots__ = ("_cols",)

    def __init__(self, vectors: Iterable[QVector] | np.ndarray, tol: float = BASIS_TOL):
        if isinstance(vectors, np.ndarray):
            cols = np.array(vectors, dtype=float)
        else:
            vs = [QVector(v) for v in vectors]
            cols = np.stack([v.array for v in vs], axis=1) if vs else np.zeros((0, 0, 4))
        n = cols.shape[0]
        if cols.shape != (n, n, 4):
            raise StructureError(f"a basis of ℍ^{n} needs {n} vectors")
        gram = np.einsum("lai,lbj,ijk->abk", qconj(cols), cols, _MULT)
        target = np.zeros_like(gram)
        target[..., 0] = np.eye(n)
        err = float(np.max(np.abs(gram - target), initial=0.0))
        if err > tol:
            raise StructureError(f"vectors are not orthonormal (max Gram deviation {err:.3g})")
        cols.setflags(write=False)
        self._cols = cols

    @classmethod
    def standard(cls, n: int) -> HilbertBasis:
        cols = np.zeros((n, n, 4))
        cols[np.arange(n), np.arange(n), 0] = 1.0
        return cls(cols)

    @property
    def columns(self) -> np.ndarray:
        return self._cols

    @property
    def dim(self) -> int:
        return self._cols.shape[0]

    def __len__(self):
        return self.dim

    def __getitem__(self, k) -> QVector:
        return QVector(self._cols[:, k])

    def __iter__(self):
        return (self[k] for k in range(self.dim))

    def coefficients(self, x: QVector) -> np.ndarray:
        """The (n, 4) array of ⟨z|x⟩ over basis vectors z."""
        return np.einsum("lai,lj,ijk->ak", qconj(self._cols), x.array, _MULT)

    def reconstruct(self, coeffs: np.ndarray) -> QVector:
        """Σ_z z c_z."""
        return QVector(np.einsum("lai,aj,ijk->lk", self._cols, coeffs, _MULT))


def _multiplication_table() -> np.ndarray:
    units = [ONE, I, J, K]
    t = np.zeros((4, 4, 4))
    for a, p in enumerate(units):
        for b, q in enumerate(units):
            t[a, b] = (p * q).to_array()
    return t


#: structure constants: (e_a e_b)[c] = _MULT[a, b, c]
_MULT = _multiplication_table()


def left_multiply(q, x: QVector, basis: HilbertBasis | None = None) -> QVector:
    """q·x = Σ_z z q ⟨z|x⟩, the left scalar action induced by ``basis``."""
    q = Quaternion.coerce(q)
    if basis is None:
        basis = HilbertBasis.standard(len(x))
    if basis.dim != len(x):
        raise StructureError("basis and vector dimensions differ")
    coeffs = qmul(q.to_array(), basis.coefficients(x))
    return basis.reconstruct(coeffs)


_POLAR_UNITS = (ONE, I, J, K)


def check_polarization(x: QVector, y: QVector) -> float:
    """|4⟨x|y⟩ − Σ_l (‖xl+y‖² − ‖xl−y‖²) l| over l ∈ {1, i, j, k}."""
    if len(x) != len(y):
        raise DomainError(f"length mismatch: {len(x)} vs {len(y)}")
    rhs = Quaternion()
    for unit in _POLAR_UNITS:
        xl = x * unit
        rhs = rhs + ((xl + y).norm() ** 2 - (xl - y).norm() ** 2) * unit
    return (4 * inner(x, y) - rhs).norm()


def gram_schmidt(vectors: Sequence[QVector], tol: float = 1e-12) -> list[QVector]:
    """Modified Gram–Schmidt with right quaternionic coefficients.

    Vectors that become numerically dependent are dropped.
    """
    out: list[QVector] = []
    for v in vectors:
        w = QVector(v)
        for u in out:
            w = w - u * inner(u, w)
        nrm = w.norm()
        if nrm > tol:
            out.append(w * (1.0 / nrm))
    return out
