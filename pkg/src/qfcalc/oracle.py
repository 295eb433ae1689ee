"""Brute-force cross-checks that avoid the eigendecomposition entirely.

* :func:`brute_spectrum` scans sphere classes (re, rad) for singular Δ_q(T).
* :func:`direct_poly` evaluates real polynomials by Horner's rule.
* :func:`chi_exp` exponentiates the complex embedding with scipy's expm.

The scan and Horner code keep their own embedding and product routines so a
bug in the library path cannot cancel out against itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .qmatrix import QMatrix, chi_embed, chi_unembed
from .quaternion import DEFAULT_FRAME, Frame, SphereClass, sample_sphere_class


@dataclass(frozen=True)
class ScanGrid:
    re_min: float
    re_max: float
    re_step: float
    rad_max: float
    rad_step: float
    sphere_samples: int = 4
    rad_min: float = 0.0

    def __post_init__(self):
        if self.re_step <= 0 or self.rad_step <= 0:
            raise ValueError("grid steps must be positive")
        if self.sphere_samples < 1:
            raise ValueError("need at least one sphere sample per class")

    @classmethod
    def covering(cls, t: QMatrix, step: float = 0.05, sphere_samples: int = 4) -> ScanGrid:
        """A grid containing every class of modulus at most ‖T‖."""
        bound = _norm(_embed(t.array)) * 1.05 + 2 * step
        return cls(-bound, bound, step, bound, step, sphere_samples)

    def re_values(self) -> np.ndarray:
        k = int(math.floor((self.re_max - self.re_min) / self.re_step + 1e-9))
        return self.re_min + self.re_step * np.arange(k + 1)

    def rad_values(self) -> np.ndarray:
        k = int(math.floor((self.rad_max - self.rad_min) / self.rad_step + 1e-9))
        return self.rad_min + self.rad_step * np.arange(k + 1)


def _embed(a: np.ndarray) -> np.ndarray:
    """[[C, D], [-D̄, C̄]] with a = C + D j over the standard axes."""
    c = a[..., 0] + 1j * a[..., 1]
    d = a[..., 2] + 1j * a[..., 3]
    return np.block([[c, d], [-d.conj(), c.conj()]])


def _norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def _smin_grid(c: np.ndarray, c2: np.ndarray, re: np.ndarray, rad: np.ndarray) -> np.ndarray:
    """Smallest singular value of embed(Δ) for every (re, rad) pair (broadcast)."""
    eye = np.eye(c.shape[0])
    re = np.asarray(re, dtype=float)
    rad = np.asarray(rad, dtype=float)
    shape = np.broadcast(re, rad).shape
    re_f = np.broadcast_to(re, shape).ravel()
    rad_f = np.broadcast_to(rad, shape).ravel()
    mats = c2[None] - 2 * re_f[:, None, None] * c[None] + (re_f**2 + rad_f**2)[:, None, None] * eye[None]
    s = np.linalg.svd(mats, compute_uv=False)[:, -1]
    return s.reshape(shape)


def _local_minima(s: np.ndarray) -> list[tuple[int, int]]:
    padded = np.pad(s, 1, constant_values=np.inf)
    out = []
    for i in range(s.shape[0]):
        for j in range(s.shape[1]):
            window = padded[i : i + 3, j : j + 3]
            if s[i, j] <= window.min():
                out.append((i, j))
    return out


def _refine(c, c2, a: float, r: float, h: float, depth: int) -> tuple[float, float, float]:
    """Pattern search with step halving, rad clamped at 0."""
    best = float(_smin_grid(c, c2, a, r))
    halvings = moves = 0
    offsets = [(da, dr) for da in (-1, 0, 1) for dr in (-1, 0, 1) if da or dr]
    while halvings < depth and moves < 400:
        cand_a = np.array([a + da * h for da, _ in offsets])
        cand_r = np.array([max(0.0, r + dr * h) for _, dr in offsets])
        vals = _smin_grid(c, c2, cand_a, cand_r)
        k = int(np.argmin(vals))
        if vals[k] < best:
            a, r, best = float(cand_a[k]), float(cand_r[k]), float(vals[k])
            moves += 1
        else:
            h /= 2
            halvings += 1
    return a, r, best


def brute_spectrum(
    t: QMatrix,
    grid: ScanGrid | None = None,
    threshold: float | None = None,
    depth: int = 32,
) -> list[SphereClass]:
    """Sphere classes where Δ_q(T) is singular, found by scanning and refining.

    A class is reported when the minimum over its sphere samples of the
    smallest singular value of the embedded Δ_q drops below ``threshold``
    (default 1e-6·(1 + ‖T‖²)) after refinement.

    Near a non-real class the singular value grows linearly with the
    distance (slope about 2·rad), so the refinement keeps halving the step
    ``depth`` times; a 0.05 grid ends with steps near 1e-11.
    """
    c = _embed(t.array)
    c2 = c @ c
    tn = _norm(c)
    if threshold is None:
        threshold = 1e-6 * (1 + tn**2)
    if grid is None:
        grid = ScanGrid.covering(t)
    if t.n == 0:
        return []
    re_vals, rad_vals = grid.re_values(), grid.rad_values()
    s = _smin_grid(c, c2, re_vals[:, None], rad_vals[None, :])
    h = min(grid.re_step, grid.rad_step)
    found: list[SphereClass] = []
    for i, j in _local_minima(s):
        a, r, _ = _refine(c, c2, float(re_vals[i]), float(rad_vals[j]), h, depth)
        cls = SphereClass(a, r if r > 1e-9 else 0.0)
        if min(_sphere_smin(t, c2, cls, grid.sphere_samples)) >= threshold:
            continue
        if not any(cls.distance(o) < 1e-3 for o in found):
            found.append(cls)
    return sorted(found, key=lambda x: (x.re, x.rad))


def _sphere_smin(t: QMatrix, c2: np.ndarray, cls: SphereClass, count: int) -> list[float]:
    """Smallest singular value of embed(Δ_q) at sampled points q of a class."""
    eye = np.eye(c2.shape[0])
    c = _embed(t.array)
    out = []
    for q in sample_sphere_class(cls, count):
        two_re = (q + q.conj()).re
        mat = c2 - two_re * c + q.norm2() * eye
        out.append(float(np.linalg.svd(mat, compute_uv=False)[-1]))
    return out


def _qmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    aw, ax, ay, az = (a[..., k] for k in range(4))
    bw, bx, by, bz = (b[..., k] for k in range(4))
    return np.stack(
        [
            aw @ bw - ax @ bx - ay @ by - az @ bz,
            aw @ bx + ax @ bw + ay @ bz - az @ by,
            aw @ by - ax @ bz + ay @ bw + az @ bx,
            aw @ bz + ax @ by - ay @ bx + az @ bw,
        ],
        axis=-1,
    )


def direct_poly(t: QMatrix, real_coeffs: Sequence[float]) -> QMatrix:
    """Σ c_k Tᵏ (lowest degree first) by Horner's rule with quaternionic products."""
    n = t.n
    eye = np.zeros((n, n, 4))
    eye[np.arange(n), np.arange(n), 0] = 1.0
    cs = [float(c) for c in real_coeffs]
    acc = np.zeros((n, n, 4))
    for c in reversed(cs):
        acc = _qmatmul(acc, t.array) + c * eye
    return QMatrix(acc)


def chi_exp(t: QMatrix, fr: Frame = DEFAULT_FRAME) -> QMatrix:
    """exp(T) via scaling-and-squaring on chi(T), mapped back to ℍ."""
    return chi_unembed(scipy.linalg.expm(chi_embed(t, fr)), fr, tol=1e-9)
