"""Continuous functional calculus for normal quaternionic matrices.

Two layers:

* C_m-valued functions (values on σ(T₊) lie in the slice C_m) are applied
  through the complex calculus on the slice space and extended back:
  f(T) = (f₊(T₊))~, which in the eigenbasis is U diag(f(λ)) U*.
* An arbitrary ℍ-valued f is split along the frame as f = F₁ + F₂·n with
  F₁, F₂ C_m-valued, and f(T) = F₁(T) + F₂(T) J′.

Functions are only ever evaluated at the eigenvalue representatives in C_m⁺;
continuity is the caller's business.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError, SliceViolation
from .qmatrix import QMatrix, adjoint, opnorm
from .quaternion import (
    DEFAULT_FRAME,
    NEAR_REAL_TOL,
    ONE,
    Frame,
    Quaternion,
    as_imaginary_unit,
    frame_decompose,
)
from .spectral import EigenSystem, eigendecompose, extend_tilde

SLICE_TOL = 1e-10


def polar_parts(q: Quaternion, default_axis: Quaternion) -> tuple[float, float, Quaternion]:
    """(α, β, j) with q = α + jβ, β ≥ 0 and j ∈ 𝕊; real q gets ``default_axis``."""
    beta = q.im_norm()
    if beta <= NEAR_REAL_TOL:
        return q.re, 0.0, default_axis
    return q.re, beta, q.im / beta


@dataclass(frozen=True)
class QFunction:
    """A quaternion-valued function on a spherical spectrum.

    ``intrinsic`` marks functions that map every slice C_j into itself (so
    they are C_m-valued on σ(T₊) for whichever frame is used);
    ``slice_axis`` marks functions known to take values in one fixed C_m.
    ``real_coeffs`` is set for polynomials with real coefficients.
    """

    func: Callable[[Quaternion], Quaternion]
    name: str = "f"
    slice_axis: Quaternion | None = None
    intrinsic: bool = False
    real_coeffs: tuple[float, ...] | None = None

    def __call__(self, q) -> Quaternion:
        return Quaternion.coerce(self.func(Quaternion.coerce(q)))

    def is_cm_valued(self, m: Quaternion) -> bool:
        if self.intrinsic:
            return True
        if self.slice_axis is None:
            return False
        return self.slice_axis.is_close(m, 1e-10) or self.slice_axis.is_close(-m, 1e-10)

    def conj(self) -> QFunction:
        """q ↦ conj(f(q))."""
        return QFunction(lambda q: self(q).conj(), f"conj({self.name})", self.slice_axis, self.intrinsic)

    def _combine(self, other: QFunction, op, symbol: str) -> QFunction:
        intrinsic = self.intrinsic and other.intrinsic
        axis = None
        if not intrinsic:
            if self.slice_axis is not None and (other.intrinsic or other.is_cm_valued(self.slice_axis)):
                axis = self.slice_axis
            elif other.slice_axis is not None and (self.intrinsic or self.is_cm_valued(other.slice_axis)):
                axis = other.slice_axis
        return QFunction(lambda q: op(self(q), other(q)), f"({self.name}{symbol}{other.name})", axis, intrinsic)

    def __add__(self, other: QFunction) -> QFunction:
        return self._combine(other, lambda a, b: a + b, "+")

    def __mul__(self, other: QFunction) -> QFunction:
        return self._combine(other, lambda a, b: a * b, "*")


# --- builtin library -------------------------------------------------------


def identity() -> QFunction:
    return QFunction(lambda q: q, "id", intrinsic=True, real_coeffs=(0.0, 1.0))


def constant(c) -> QFunction:
    c = Quaternion.coerce(c)
    if c.im_norm() <= NEAR_REAL_TOL:
        return QFunction(lambda q: c, f"const({c})", intrinsic=True, real_coeffs=(c.re,))
    return QFunction(lambda q: c, f"const({c})", slice_axis=as_imaginary_unit(c.im))


def real_part() -> QFunction:
    return QFunction(lambda q: Quaternion(q.re), "re", intrinsic=True)


def im_magnitude() -> QFunction:
    return QFunction(lambda q: Quaternion(q.im_norm()), "im", intrinsic=True)


def conjugation() -> QFunction:
    return QFunction(lambda q: q.conj(), "conj", intrinsic=True)


def _exp(q: Quaternion) -> Quaternion:
    alpha, beta, j = polar_parts(q, ONE)
    if beta == 0.0:
        return Quaternion(math.exp(alpha))
    return math.exp(alpha) * (math.cos(beta) + j * math.sin(beta))


def exponential() -> QFunction:
    """e^{α + jβ} = e^α (cos β + j sin β) on each slice."""
    return QFunction(_exp, "exp", intrinsic=True)


def square_root(axis: Quaternion = DEFAULT_FRAME.m) -> QFunction:
    """Principal square root on each slice; negative reals map onto ``axis``."""

    def f(q: Quaternion) -> Quaternion:
        alpha, beta, j = polar_parts(q, axis)
        w = complex(alpha, beta) ** 0.5
        return w.real + j * w.imag

    return QFunction(f, "sqrt", intrinsic=True)


def monomial(k: int) -> QFunction:
    if k < 0:
        raise DomainError("monomial degree must be nonnegative")

    def f(q: Quaternion) -> Quaternion:
        out = ONE
        for _ in range(k):
            out = out * q
        return out

    return QFunction(f, f"q^{k}", intrinsic=True, real_coeffs=tuple([0.0] * k + [1.0]))


def polynomial(coeffs: Sequence, fr: Frame = DEFAULT_FRAME) -> QFunction:
    """Σ c_t q^t with coefficients in C_m (complex numbers read as α + mβ)."""
    cs = []
    for c in coeffs:
        q = fr.from_complex(c) if isinstance(c, complex) else Quaternion.coerce(c)
        if not fr.in_slice(q, SLICE_TOL):
            raise SliceViolation(f"polynomial coefficient {q} is not in the slice of m={fr.m}")
        cs.append(q)

    def f(q: Quaternion) -> Quaternion:
        acc = Quaternion()
        for c in reversed(cs):
            acc = acc * q + c
        return acc

    real = all(c.im_norm() <= NEAR_REAL_TOL for c in cs)
    name = "poly[" + ",".join(str(c) for c in cs) + "]"
    if real:
        return QFunction(f, name, intrinsic=True, real_coeffs=tuple(c.re for c in cs))
    return QFunction(f, name, slice_axis=fr.m)


def indicator(re_min: float, re_max: float, rad_min: float, rad_max: float) -> QFunction:
    """1 on the sphere classes with re ∈ [re_min, re_max], rad ∈ [rad_min, rad_max]."""

    def f(q: Quaternion) -> Quaternion:
        inside = re_min <= q.re <= re_max and rad_min <= q.im_norm() <= rad_max
        return Quaternion(1.0 if inside else 0.0)

    return QFunction(f, f"indicator[{re_min},{re_max},{rad_min},{rad_max}]", intrinsic=True)


def eg1(fr: Frame = DEFAULT_FRAME) -> QFunction:
    """The non-slice function f(α + jβ) = (α + mβ) + j(α − mβ).

    Real points (β = 0) use j = m.
    """
    m = fr.m

    def f(q: Quaternion) -> Quaternion:
        alpha, beta, j = polar_parts(q, m)
        return (alpha + m * beta) + j * (alpha - m * beta)

    return QFunction(f, "eg1")


BUILTIN_SLICE_SUITE = ("id", "exp", "sqrt", "conj", "re", "im", "q^2", "q^3", "indicator")


def builtin_suite(fr: Frame = DEFAULT_FRAME) -> dict[str, QFunction]:
    """Slice-preserving builtins, keyed by name."""
    return {
        "id": identity(),
        "exp": exponential(),
        "sqrt": square_root(fr.m),
        "conj": conjugation(),
        "re": real_part(),
        "im": im_magnitude(),
        "q^2": monomial(2),
        "q^3": monomial(3),
        "indicator": indicator(-0.5, 0.5, 0.0, 10.0),
    }


# --- frame splitting -------------------------------------------------------


@dataclass(frozen=True)
class FrameSplit:
    """f = f₀ + f₁m + f₂n + f₃mn = F₁ + F₂·n along a frame."""

    f: QFunction
    frame: Frame

    def components(self, q) -> tuple[float, float, float, float]:
        return frame_decompose(self.f(q), self.frame)

    def f0(self, q) -> float:
        return self.components(q)[0]

    def f1(self, q) -> float:
        return self.components(q)[1]

    def f2(self, q) -> float:
        return self.components(q)[2]

    def f3(self, q) -> float:
        return self.components(q)[3]

    @property
    def F1(self) -> QFunction:
        fr = self.frame

        def g(q):
            c = self.components(q)
            return c[0] + fr.m * c[1]

        return QFunction(g, f"F1({self.f.name})", slice_axis=fr.m)

    @property
    def F2(self) -> QFunction:
        fr = self.frame

        def g(q):
            c = self.components(q)
            return c[2] + fr.m * c[3]

        return QFunction(g, f"F2({self.f.name})", slice_axis=fr.m)

    def recombination_error(self, samples: Iterable) -> float:
        err = 0.0
        for q in samples:
            q = Quaternion.coerce(q)
            err = max(err, (self.F1(q) + self.F2(q) * self.frame.n - self.f(q)).norm())
        return err


def frame_split(f: QFunction, fr: Frame = DEFAULT_FRAME) -> FrameSplit:
    return FrameSplit(f, fr)


# --- stem and slice functions ---------------------------------------------


@dataclass(frozen=True)
class StemFunction:
    """A pair (S₁, S₂) on a subset of C_m with S₁(z̄) = S₁(z), S₂(z̄) = −S₂(z)."""

    S1: Callable[[Quaternion], Quaternion]
    S2: Callable[[Quaternion], Quaternion]
    frame: Frame = DEFAULT_FRAME

    def symmetry_residual(self, samples: Iterable) -> float:
        err = 0.0
        for z in samples:
            z = Quaternion.coerce(z)
            zb = z.conj()
            err = max(
                err,
                (Quaternion.coerce(self.S1(zb)) - Quaternion.coerce(self.S1(z))).norm(),
                (Quaternion.coerce(self.S2(zb)) + Quaternion.coerce(self.S2(z))).norm(),
            )
        return err


def default_stem_samples(fr: Frame = DEFAULT_FRAME) -> list[Quaternion]:
    return [fr.slice_point(a, b) for a in (-1.5, -0.3, 0.0, 0.7, 2.0) for b in (0.0, 0.4, 1.3)]


def induce_slice_function(
    s: StemFunction, samples: Iterable | None = None, tol: float = 1e-10
) -> QFunction:
    """The slice function α + jβ ↦ S₁(α + mβ) + j S₂(α + mβ)."""
    fr = s.frame
    pts = default_stem_samples(fr) if samples is None else list(samples)
    res = s.symmetry_residual(pts)
    if res > tol:
        raise DomainError(f"not a stem function: conjugate symmetry fails by {res:.3g}")

    def f(q: Quaternion) -> Quaternion:
        alpha, beta, j = polar_parts(q, fr.m)
        z = fr.slice_point(alpha, beta)
        return Quaternion.coerce(s.S1(z)) + j * Quaternion.coerce(s.S2(z))

    return QFunction(f, "slice")


# --- the calculus ----------------------------------------------------------


def _eigensystem(t: QMatrix, fr: Frame, es: EigenSystem | None) -> EigenSystem:
    if es is None:
        return eigendecompose(t, fr)
    if es.frame != fr:
        raise DomainError("eigensystem was computed for a different frame")
    return es


def restrict_function(f: QFunction, es: EigenSystem) -> list[Quaternion]:
    """The values of f at the eigenvalue representatives λ_ℓ ∈ C_m⁺ (f₊ when C_m-valued)."""
    out = []
    for lam in es.lambdas:
        try:
            out.append(f(lam))
        except (ArithmeticError, ValueError) as exc:
            raise DomainError(f"{f.name} failed at spectral point {lam}: {exc}") from exc
    return out


def _require_slice_values(f: QFunction, values: Sequence[Quaternion], fr: Frame):
    for lam_val in values:
        if not fr.in_slice(lam_val, SLICE_TOL):
            raise SliceViolation(f"{f.name} takes the value {lam_val} outside C_m on σ(T₊)")


def cm_calculus(
    t: QMatrix, f: QFunction, fr: Frame = DEFAULT_FRAME, es: EigenSystem | None = None
) -> QMatrix:
    """f(T) := (f₊(T₊))~ for f with values in C_m on the spectrum."""
    es = _eigensystem(t, fr, es)
    values = restrict_function(f, es)
    _require_slice_values(f, values, fr)
    fplus = np.diag([fr.to_complex(v) for v in values]).astype(complex)
    return extend_tilde(fplus, es)


def full_calculus(
    t: QMatrix, f: QFunction, fr: Frame = DEFAULT_FRAME, es: EigenSystem | None = None
) -> QMatrix:
    """f(T) = F₁(T) + F₂(T) J′ for any ℍ-valued f."""
    es = _eigensystem(t, fr, es)
    split = frame_split(f, fr)
    f1 = cm_calculus(t, split.F1, fr, es)
    f2 = cm_calculus(t, split.F2, fr, es)
    return f1 + f2 @ es.Jprime


def closed_form(t: QMatrix, f: QFunction, fr: Frame = DEFAULT_FRAME, es: EigenSystem | None = None) -> QMatrix:
    """U diag(f(λ)) U*, the eigenbasis form of f(T)."""
    es = _eigensystem(t, fr, es)
    return es.operator(restrict_function(f, es))


def poly_calculus(
    t: QMatrix, coeffs: Sequence, fr: Frame = DEFAULT_FRAME, es: EigenSystem | None = None
) -> QMatrix:
    """p(T) for a polynomial with C_m coefficients (lowest degree first)."""
    return cm_calculus(t, polynomial(coeffs, fr), fr, es)


def _require_cm_on_spectrum(f: QFunction, es: EigenSystem):
    _require_slice_values(f, restrict_function(f, es), es.frame)


def adjoint_law_check(
    t: QMatrix, f: QFunction, fr: Frame = DEFAULT_FRAME, es: EigenSystem | None = None
) -> float:
    """‖f(T)* − f̄(T)‖ for f that is C_m-valued on the spectrum."""
    es = _eigensystem(t, fr, es)
    _require_cm_on_spectrum(f, es)
    return opnorm(adjoint(full_calculus(t, f, fr, es)) - full_calculus(t, f.conj(), fr, es))


def jprime_law_check(
    t: QMatrix, f: QFunction, fr: Frame = DEFAULT_FRAME, es: EigenSystem | None = None
) -> float:
    """‖f(T)J′ − J′f(T)*‖ for f that is C_m-valued on the spectrum."""
    es = _eigensystem(t, fr, es)
    _require_cm_on_spectrum(f, es)
    ft = full_calculus(t, f, fr, es)
    jp = es.Jprime
    return opnorm(ft @ jp - jp @ adjoint(ft))
