"""Real quaternions, imaginary frames and similarity (sphere) classes.

Scalars are the immutable :class:`Quaternion`; bulk data (vectors and
matrices) is stored as float arrays whose trailing axis holds the four
components ``[w, x, y, z]``.  The array helpers at the bottom of this module
(`qmul`, `qconj`, ...) operate on such arrays with numpy broadcasting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, StructureError

#: |im(q)| below this is treated as a real point.
NEAR_REAL_TOL = 1e-12


@dataclass(frozen=True)
class Quaternion:
    """q = w + x i + y j + z k."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_array(cls, a: Sequence[float]) -> Quaternion:
        if len(a) != 4:
            raise ValueError(f"expected 4 components, got {len(a)}")
        return cls(*a)

    @classmethod
    def coerce(cls, value) -> Quaternion:
        """Accept a Quaternion, a real number or a 4-sequence."""
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, (int, float, np.floating, np.integer)):
            return cls(float(value))
        return cls.from_array(list(value))

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    # algebra
    def __add__(self, other):
        o = _as_quat(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_quat(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        o = _as_quat(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        o = _as_quat(other)
        if o is None:
            return NotImplemented
        return mul(self, o)

    def __rmul__(self, other):
        o = _as_quat(other)
        if o is None:
            return NotImplemented
        return mul(o, self)

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        return NotImplemented

    def __abs__(self) -> float:
        return self.norm()

    def conj(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)

    def norm2(self) -> float:
        return self.w**2 + self.x**2 + self.y**2 + self.z**2

    @property
    def re(self) -> float:
        return self.w

    @property
    def im(self) -> Quaternion:
        return Quaternion(0.0, self.x, self.y, self.z)

    def im_norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    def inverse(self) -> Quaternion:
        return inverse(self)

    def commutes_with(self, other: Quaternion, tol: float = 1e-12) -> bool:
        return (self * other - other * self).norm() <= tol

    def is_close(self, other, tol: float = 1e-12) -> bool:
        return (self - Quaternion.coerce(other)).norm() <= tol

    def is_imaginary_unit(self, tol: float = 1e-10) -> bool:
        return abs(self.w) <= tol and abs(self.im_norm() - 1.0) <= tol

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"

    def __str__(self):
        return f"{self.w:g}{self.x:+g}i{self.y:+g}j{self.z:+g}k"


def _as_quat(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (int, float, np.floating, np.integer)):
        return Quaternion(float(value))
    return None


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def inverse(q: Quaternion) -> Quaternion:
    n2 = q.norm2()
    if n2 == 0.0:
        raise DomainError("zero quaternion has no inverse")
    return q.conj() / n2


def as_imaginary_unit(q, tol: float = 1e-10) -> Quaternion:
    """Normalize a purely imaginary quaternion onto the unit sphere 𝕊."""
    q = Quaternion.coerce(q)
    r = q.im_norm()
    if r == 0.0 or abs(q.w) > tol * max(1.0, r):
        raise DomainError(f"{q} is not purely imaginary")
    return Quaternion(0.0, q.x / r, q.y / r, q.z / r)


@dataclass(frozen=True)
class Frame:
    """An anticommuting pair of imaginary units (m, n).

    Every quaternion has unique real coordinates on the orthonormal basis
    (1, m, n, mn); see :func:`frame_decompose`.
    """

    m: Quaternion = I
    n: Quaternion = J

    def __post_init__(self):
        for name in ("m", "n"):
            if not getattr(self, name).is_imaginary_unit():
                raise StructureError(f"frame axis {name}={getattr(self, name)} is not in 𝕊")
        if (self.m * self.n + self.n * self.m).norm() > 1e-10:
            raise StructureError("frame axes m and n do not anticommute")

    @classmethod
    def from_axes(cls, m, n, tol: float = 1e-8) -> Frame:
        """Build a frame from raw axes, normalizing them first."""
        m = as_imaginary_unit(m)
        n = as_imaginary_unit(n)
        if abs(float(np.dot(m.to_array(), n.to_array()))) > tol:
            raise StructureError("frame axes m and n do not anticommute")
        return cls(m, n)

    @property
    def mn(self) -> Quaternion:
        return self.m * self.n

    def basis(self) -> np.ndarray:
        """Rows are the components of 1, m, n, mn (an orthogonal 4x4 matrix)."""
        return np.array([ONE.to_array(), self.m.to_array(), self.n.to_array(), self.mn.to_array()])

    def in_slice(self, q: Quaternion, tol: float = 1e-10) -> bool:
        """True when q lies in C_m (equivalently, commutes with m)."""
        c = frame_decompose(q, self)
        return math.hypot(c[2], c[3]) <= tol * max(1.0, q.norm())

    def slice_point(self, alpha: float, beta: float) -> Quaternion:
        return alpha + self.m * beta

    def to_complex(self, q: Quaternion) -> complex:
        """Identify alpha + m beta in C_m with alpha + i beta; other parts dropped."""
        c = frame_decompose(q, self)
        return complex(c[0], c[1])

    def from_complex(self, z: complex) -> Quaternion:
        return self.slice_point(z.real, z.imag)

    def to_list(self) -> dict:
        return {"m": self.m.to_list(), "n": self.n.to_list()}


DEFAULT_FRAME = Frame()


def frame_decompose(q: Quaternion, fr: Frame = DEFAULT_FRAME) -> tuple[float, float, float, float]:
    """Real coordinates (q0, q1, q2, q3) with q = q0 + q1 m + q2 n + q3 mn."""
    mn = fr.mn
    q0 = (q + q.conj()).re / 2
    qm, qn, qmn = q * fr.m, q * fr.n, q * mn
    q1 = -(qm + qm.conj()).re / 2
    q2 = -(qn + qn.conj()).re / 2
    q3 = -(qmn + qmn.conj()).re / 2
    return q0, q1, q2, q3


def frame_compose(coords: Sequence[float], fr: Frame = DEFAULT_FRAME) -> Quaternion:
    q0, q1, q2, q3 = coords
    return q0 + fr.m * q1 + fr.n * q2 + fr.mn * q3


@dataclass(frozen=True)
class SphereClass:
    """Similarity class [q] = {p : re(p) = re, |im(p)| = rad}."""

    re: float
    rad: float

    def __post_init__(self):
        re, rad = float(self.re), float(self.rad)
        if rad < -NEAR_REAL_TOL:
            raise DomainError(f"sphere radius must be nonnegative, got {rad}")
        if abs(rad) < NEAR_REAL_TOL:
            rad = 0.0
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "rad", rad)

    def contains(self, p: Quaternion, tol: float = 1e-10) -> bool:
        return self.distance(sphere_class_of(p)) <= tol

    def representative(self, m: Quaternion = I) -> Quaternion:
        """The point re + m rad of the class in C_m⁺."""
        return self.re + m * self.rad

    def distance(self, other: SphereClass) -> float:
        return math.hypot(self.re - other.re, self.rad - other.rad)

    def is_real(self) -> bool:
        return self.rad == 0.0


def sphere_class_of(q: Quaternion) -> SphereClass:
    return SphereClass(q.re, q.im_norm())


def circularize(points: Iterable, m: Quaternion | None = None, tol: float = 1e-10) -> list[SphereClass]:
    """Sphere classes swept out by rotating slice points over all of 𝕊.

    Points may be quaternions or complex numbers (read as alpha + m beta).
    With ``m`` given, quaternion inputs must lie in C_m.  Classes closer than
    ``tol`` are reported once.
    """
    out: list[SphereClass] = []
    for p in points:
        if isinstance(p, complex):
            c = SphereClass(p.real, abs(p.imag))
        else:
            q = Quaternion.coerce(p)
            if m is not None and not q.commutes_with(m, tol * max(1.0, q.norm())):
                raise DomainError(f"{q} does not lie in the slice of {m}")
            c = sphere_class_of(q)
        if not any(c.distance(o) <= tol for o in out):
            out.append(c)
    return out


_AXES = (I, -I, J, -J, K, -K)


def sample_sphere_class(c: SphereClass, count: int, seed: int = 0) -> list[Quaternion]:
    """Deterministic, roughly uniform points alpha + m' beta, m' ∈ 𝕊.

    The first six axes are ±i, ±j, ±k; further points follow a Fibonacci
    lattice rotated by an angle derived from ``seed``.
    """
    if count < 1:
        raise ValueError("count must be positive")
    axes = list(_AXES[:count])
    extra = count - len(axes)
    if extra > 0:
        golden = math.pi * (3.0 - math.sqrt(5.0))
        offset = (seed * 0.6180339887498949) % 1.0 * 2 * math.pi
        for t in range(extra):
            zc = 1.0 - 2.0 * (t + 0.5) / extra
            r = math.sqrt(max(0.0, 1.0 - zc * zc))
            phi = offset + golden * t
            axes.append(Quaternion(0.0, r * math.cos(phi), r * math.sin(phi), zc))
    return [c.re + a * c.rad for a in axes]


# ---------------------------------------------------------------------------
# array helpers: trailing axis of length 4 holds [w, x, y, z]


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcasting elementwise Hamilton product of quaternion arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = np.moveaxis(a, -1, 0)
    bw, bx, by, bz = np.moveaxis(b, -1, 0)
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def qconj(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def qabs(a: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.asarray(a, dtype=float) ** 2, axis=-1))


def to_frame_coords(a: np.ndarray, fr: Frame) -> np.ndarray:
    """Coordinates on (1, m, n, mn) for every quaternion in ``a``."""
    return np.asarray(a, dtype=float) @ fr.basis().T


def from_frame_coords(c: np.ndarray, fr: Frame) -> np.ndarray:
    return np.asarray(c, dtype=float) @ fr.basis()


def split_complex(a: np.ndarray, fr: Frame) -> tuple[np.ndarray, np.ndarray]:
    """Write each entry as c + d n with c, d in C_m; return (c, d) as complex arrays."""
    co = to_frame_coords(a, fr)
    c = co[..., 0] + 1j * co[..., 1]
    d = co[..., 2] + 1j * co[..., 3]
    return c, d


def join_complex(c: np.ndarray, d: np.ndarray, fr: Frame) -> np.ndarray:
    """Inverse of :func:`split_complex`."""
    c = np.asarray(c, dtype=complex)
    d = np.asarray(d, dtype=complex)
    co = np.stack([c.real, c.imag, d.real, d.imag], axis=-1)
    return from_frame_coords(co, fr)
