"""Quaternionic projection-valued spectral measures (finitely many atoms).

On ℍⁿ the σ-algebra of σ(T₊) is the power set of its atoms, so a measure
is a list of (λ, F({λ})) pairs and a Borel set ω is a collection of atom
indices.  Integrals place the scalar on the left through the left
multiplication L induced by the measure's basis:

    ∫ f dF = Σ_λ L_{f(λ)} F({λ}).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, SliceViolation
from .funcalc import QFunction, frame_split, full_calculus, identity, restrict_function
from .qmatrix import QMatrix, adjoint, opnorm
from .qspace import QVector, inner
from .quaternion import DEFAULT_FRAME, Frame, Quaternion, qmul, split_complex
from .spectral import MERGE_RTOL, EigenSystem, eigendecompose

AXIOM_TOL = 1e-10
REPRESENTATION_TOL = 1e-9
COMMUTANT_TOL = 1e-9


@dataclass(frozen=True)
class QPVM:
    """Atoms λ ∈ σ(T₊) with their projections, plus the basis 𝒩_m."""

    atoms: tuple[tuple[Quaternion, QMatrix], ...]
    frame: Frame
    basis: QMatrix

    @property
    def n(self) -> int:
        return self.basis.n

    @property
    def keys(self) -> list[Quaternion]:
        return [lam for lam, _ in self.atoms]

    def projection(self, k: int) -> QMatrix:
        return self.atoms[k][1]

    def __call__(self, omega: Iterable[int]) -> QMatrix:
        """F(ω) for a set of atom indices."""
        out = QMatrix.zeros(self.n)
        for k in sorted(set(omega)):
            out = out + self.atoms[k][1]
        return out

    def everything(self) -> list[int]:
        return list(range(len(self.atoms)))

    def index_of(self, lam, rtol: float = MERGE_RTOL) -> int:
        lam = Quaternion.coerce(lam)
        for k, (key, _) in enumerate(self.atoms):
            if (key - lam).norm() <= rtol * max(1.0, key.norm(), lam.norm()):
                return k
        raise KeyError(f"{lam} is not an atom")

    def scalar_measure(self, x: QVector, y: QVector, omega: Iterable[int]) -> Quaternion:
        """F_{x,y}(ω) = ⟨x|F(ω)y⟩."""
        return inner(x, self(omega) @ y)

    def left_mult(self, q) -> QMatrix:
        """L_q for the basis of this measure."""
        q = Quaternion.coerce(q)
        u = self.basis.array
        return QMatrix(qmul(u, q.to_array())) @ adjoint(self.basis)

    def rank(self, k: int) -> int:
        return int(round(float(np.trace(self.atoms[k][1].array[..., 0]))))


def spectral_measure(t: QMatrix, fr: Frame = DEFAULT_FRAME, es: EigenSystem | None = None) -> QPVM:
    """F({λ}) = U P_λ U*, i.e. the extension of the complex spectral projection E({λ})."""
    if es is None:
        es = eigendecompose(t, fr)
    atoms = []
    for grp in es.groups():
        sel = [1.0 if k in grp else 0.0 for k in range(es.n)]
        atoms.append((es.lambdas[grp[0]], es.operator(sel)))
    return QPVM(tuple(atoms), es.frame, es.U)


@dataclass
class AxiomReport:
    residuals: dict[str, float]
    tol: float = AXIOM_TOL

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.residuals.items() if not v < self.tol]

    @property
    def passed(self) -> bool:
        return not self.failures


def check_axioms(f: QPVM, samples: Sequence[tuple[QVector, QVector]] = (), tol: float = AXIOM_TOL) -> AxiomReport:
    """Residuals of the qPVM axioms over all atoms and the sample vector pairs."""
    idx = f.everything()
    eye = QMatrix.identity(f.n)
    res = {
        "empty": f([]).max_abs(),
        "completeness": opnorm(f(idx) - eye),
        "self_adjoint": max((opnorm(p - adjoint(p)) for _, p in f.atoms), default=0.0),
    }
    mult = 0.0
    for a in idx:
        for b in idx:
            inter = [a] if a == b else []
            mult = max(mult, opnorm(f(inter) - f([a]) @ f([b])))
        rest = [k for k in idx if k != a]
        mult = max(mult, opnorm(f([]) - f([a]) @ f(rest)))
    res["multiplicative"] = mult

    add = 0.0
    for x, y in samples:
        add = max(add, (f.scalar_measure(x, y, idx) - inner(x, y)).norm())
        for a in idx:
            for b in idx:
                if a < b:
                    lhs = f.scalar_measure(x, y, [a, b])
                    rhs = f.scalar_measure(x, y, [a]) + f.scalar_measure(x, y, [b])
                    add = max(add, (lhs - rhs).norm())
    res["additivity"] = add
    return AxiomReport(res, tol)


def integrate(fn: QFunction, f: QPVM) -> QMatrix:
    """∫ fn dF = Σ_λ L_{fn(λ)} F({λ})."""
    out = QMatrix.zeros(f.n)
    for lam, p in f.atoms:
        out = out + f.left_mult(fn(lam)) @ p
    return out


@dataclass
class RepresentationReport:
    scalar_form: float
    split_form: float
    tol: float = REPRESENTATION_TOL

    @property
    def passed(self) -> bool:
        return self.scalar_form < self.tol and self.split_form < self.tol


def _random_vector(n: int, rng: np.random.Generator) -> QVector:
    return QVector(rng.standard_normal((n, 4)))


def representation_check(
    t: QMatrix,
    fn: QFunction,
    trials: int = 50,
    fr: Frame = DEFAULT_FRAME,
    es: EigenSystem | None = None,
    seed: int = 0,
) -> RepresentationReport:
    """Compare ⟨x|f(T)y⟩ with both integral forms on random vector pairs.

    scalar form: ⟨x|(∫ f dF) y⟩
    split form:  ⟨x|(∫ F₁ dF) y⟩ + ⟨x|(∫ F₂ dF)(n·y)⟩, n· being L_n
    """
    if es is None:
        es = eigendecompose(t, fr)
    f = spectral_measure(t, fr, es)
    ft = full_calculus(t, fn, fr, es)
    whole = integrate(fn, f)
    split = frame_split(fn, fr)
    i1 = integrate(split.F1, f)
    i2 = integrate(split.F2, f)
    ln = f.left_mult(fr.n)
    rng = np.random.default_rng(seed)
    r1 = r2 = 0.0
    for _ in range(trials):
        x, y = _random_vector(t.n, rng), _random_vector(t.n, rng)
        lhs = inner(x, ft @ y)
        r1 = max(r1, (lhs - inner(x, whole @ y)).norm())
        r2 = max(r2, (lhs - (inner(x, i1 @ y) + inner(x, i2 @ (ln @ y)))).norm())
    return RepresentationReport(r1, r2)


@dataclass
class CommutantReport:
    applicable: bool
    reason: str = ""
    pre_residuals: dict[str, float] = field(default_factory=dict)
    calculus_residual: float = float("nan")
    atom_residual: float = float("nan")
    tol: float = COMMUTANT_TOL

    @property
    def passed(self) -> bool:
        return self.applicable and self.calculus_residual < self.tol and self.atom_residual < self.tol


def commutant_check(
    s: QMatrix,
    t: QMatrix,
    fn: QFunction,
    f: QPVM | None = None,
    fr: Frame = DEFAULT_FRAME,
    es: EigenSystem | None = None,
    pre_tol: float = 1e-10,
) -> CommutantReport:
    """Residuals ‖S f(T) − f(T) S‖ and max_ω ‖S F(ω) − F(ω) S‖.

    Applicable when S commutes with T and T*.  The guarantee also needs S to
    commute with J; this is automatic off the real axis, but on real
    eigenspaces J is not canonical, so that case is reported as inapplicable.
    """
    th = adjoint(t)
    pre = {"ST-TS": opnorm(s @ t - t @ s), "ST*-T*S": opnorm(s @ th - th @ s)}
    if pre["ST-TS"] >= pre_tol or pre["ST*-T*S"] >= pre_tol:
        return CommutantReport(False, "S does not commute with T and T*", pre)
    if es is None:
        es = eigendecompose(t, fr)
    if f is None:
        f = spectral_measure(t, fr, es)
    j = es.J
    pre["SJ-JS"] = opnorm(s @ j - j @ s)
    if pre["SJ-JS"] >= max(pre_tol, 1e-9 * max(1.0, opnorm(s))):
        return CommutantReport(False, "S does not commute with J on the real part of the spectrum", pre)
    values = restrict_function(fn, es)
    if not all(fr.in_slice(v) for v in values):
        return CommutantReport(False, f"{fn.name} is not C_m-valued on the spectrum", pre)
    ft = full_calculus(t, fn, fr, es)
    calc = opnorm(s @ ft - ft @ s)
    atoms = max((opnorm(s @ p - p @ s) for _, p in f.atoms), default=0.0)
    return CommutantReport(True, "", pre, calc, atoms)


@dataclass
class UniquenessVerdict:
    equal: bool
    max_difference: float
    diagnostics: list[str] = field(default_factory=list)


def uniqueness_check(
    f: QPVM,
    g: QPVM,
    t: QMatrix | None = None,
    f_suite: Sequence[QFunction] = (),
    tol: float = REPRESENTATION_TOL,
) -> UniquenessVerdict:
    """Atom-by-atom comparison of two measures after aligning their keys."""
    diags: list[str] = []
    if t is not None:
        for h, name in ((f, "F"), (g, "G")):
            r = opnorm(integrate(identity(), h) - t)
            if r >= tol:
                diags.append(f"{name} does not reconstruct T (residual {r:.3g})")
        for fn in f_suite:
            r = opnorm(integrate(fn, f) - integrate(fn, g))
            diags.append(f"∫{fn.name} dF vs dG: {r:.3g}")
    if len(f.atoms) != len(g.atoms):
        diags.append(f"atom counts differ: {len(f.atoms)} vs {len(g.atoms)}")
        return UniquenessVerdict(False, float("inf"), diags)
    worst = 0.0
    for lam, p in f.atoms:
        try:
            k = g.index_of(lam, rtol=1e-7)
        except KeyError:
            diags.append(f"atom {lam} has no counterpart")
            return UniquenessVerdict(False, float("inf"), diags)
        worst = max(worst, opnorm(p - g.projection(k)))
    if worst >= tol:
        diags.append(f"projections differ by {worst:.3g}")
    return UniquenessVerdict(worst < tol, worst, diags)


def jordan_dE_identity_check(
    f: QPVM, fn: QFunction, trials: int = 20, seed: int = 0
) -> float:
    """max |n̄·∫f₊ dE_{a,b} + (∫ conj(f₊) dE_{b,a})·n| over a, b in the slice space.

    a, b are projections of random vectors onto {x : Jx = x m}; the complex
    measures E_{a,b} are evaluated through the restricted projections.
    """
    fr = f.frame
    m, nn = fr.m, fr.n
    values = [fn(lam) for lam, _ in f.atoms]
    if not all(fr.in_slice(v) for v in values):
        raise SliceViolation(f"{fn.name} is not C_m-valued on σ(T₊)")
    fplus = [fr.to_complex(v) for v in values]
    uh = adjoint(f.basis)
    restricted = [(uh @ p @ f.basis).to_complex(fr) for _, p in f.atoms]
    j = f.left_mult(m)
    rng = np.random.default_rng(seed)

    def slice_coords(x: QVector) -> np.ndarray:
        a = (x - (j @ x) * m) * 0.5
        return _coords(uh @ a, fr)

    worst = 0.0
    for _ in range(trials):
        ca = slice_coords(_random_vector(f.n, rng))
        cb = slice_coords(_random_vector(f.n, rng))
        i_ab = sum(v * (ca.conj() @ e @ cb) for v, e in zip(fplus, restricted))
        i_ba = sum(v.conjugate() * (cb.conj() @ e @ ca) for v, e in zip(fplus, restricted))
        lhs = nn.conj() * fr.from_complex(complex(i_ab))
        rhs = -(fr.from_complex(complex(i_ba)) * nn)
        worst = max(worst, (lhs - rhs).norm())
    return worst


def _coords(v: QVector, fr: Frame) -> np.ndarray:
    """Complex coordinates of a C_m-valued coefficient vector."""
    c, d = split_complex(v.array, fr)
    if np.max(np.abs(d), initial=0.0) > 1e-9 * max(1.0, v.norm()):
        raise DomainError("vector does not lie in the slice space")
    return c

