"""Command-line front end.

Commands::

    qfcalc spectrum MATRIX          sphere classes and the plus spectrum
    qfcalc apply MATRIX FUNC        f(T) as a matrix file (+ sidecar report)
    qfcalc measure MATRIX           atoms of the spectral measure, axiom residuals
    qfcalc verify MATRIX            property suite, exit 0 iff everything passes
    qfcalc random N                 write a random normal matrix
    qfcalc sphere-operator K        write diag(s_1, ..., s_K) with s_l in 𝕊

Exit codes: 0 success, 1 verification failure, 2 precondition (e.g. the
matrix is not normal), 3 unparsable input, 4 bad function description,
5 function leaves the slice C_m where it must stay inside it.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import fixtures, funcalc, oracle, pvm
from .dsl import parse_function
from .errors import (
    ConvergenceError,
    DomainError,
    DSLError,
    ParseError,
    PreconditionError,
    SliceViolation,
    StructureError,
)
from .io import read_matrix, write_matrix, write_report
from .qmatrix import QMatrix, classify, opnorm, polyval
from .qspace import check_polarization
from .quaternion import DEFAULT_FRAME, Frame, Quaternion
from .spectral import EigenSystem, eigendecompose, spectrum_from_eigensystem

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_PRECONDITION = 2
EXIT_PARSE = 3
EXIT_DSL = 4
EXIT_SLICE = 5

DEFAULT_TOL = 1e-9

VERIFY_SUITE = (
    "eigen",
    "reconstruction",
    "adjoint_law",
    "jprime_law",
    "axioms",
    "representation",
    "commutant",
    "polarization",
    "poly_oracle",
    "exp_oracle",
    "brute_spectrum",
)


def _axis(text: str | None, default: Quaternion, flag: str) -> Quaternion:
    if text is None:
        return default
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{flag}: expected a 4-array such as [0,1,0,0], got {text!r}") from exc
    if not (isinstance(obj, list) and len(obj) == 4 and all(isinstance(v, (int, float)) for v in obj)):
        raise ParseError(f"{flag}: expected a 4-array, got {text!r}")
    return Quaternion(*map(float, obj))


def frame_from_args(args) -> Frame:
    m = _axis(args.frame_m, DEFAULT_FRAME.m, "--frame-m")
    n = _axis(args.frame_n, DEFAULT_FRAME.n, "--frame-n")
    try:
        return Frame.from_axes(m, n)
    except (StructureError, ValueError) as exc:
        raise PreconditionError(f"invalid frame: {exc}") from exc


def _load_normal(args, fr: Frame) -> tuple[QMatrix, EigenSystem]:
    t = read_matrix(args.matrix)
    cls = classify(t, tol=args.tol)
    if not cls.normal:
        raise PreconditionError(f"operator is not normal (‖T*T − TT*‖ = {cls.normal_residual:.3g})")
    return t, eigendecompose(t, fr, tol=args.tol)


def _header(command: str, fr: Frame, args) -> dict:
    return {"command": command, "frame": fr.to_list(), "tol": args.tol}


def _emit(args, report: dict):
    write_report(getattr(args, "report", None) or getattr(args, "out", None), report)


# --- commands --------------------------------------------------------------


def cmd_spectrum(args) -> int:
    fr = frame_from_args(args)
    _, es = _load_normal(args, fr)
    sigma = spectrum_from_eigensystem(es)
    report = _header("spectrum", fr, args)
    report["classes"] = sigma.to_records()
    report["plus_spectrum"] = [es.lambdas[g[0]].to_list() for g in es.groups()]
    _emit(args, report)
    return EXIT_OK


def cmd_apply(args) -> int:
    fr = frame_from_args(args)
    fn = parse_function(args.function, fr)
    t, es = _load_normal(args, fr)
    reference = funcalc.closed_form(t, fn, fr, es)
    computed = funcalc.full_calculus(t, fn, fr, es)
    if fn.real_coeffs is not None:
        # Real polynomials are evaluated exactly by Horner's rule, so that
        # poly:[0,1] reproduces the input bit for bit.
        result = polyval(t, fn.real_coeffs)
        method = "horner"
    else:
        result = computed
        method = "F1(T) + F2(T) J'"
    write_matrix(args.out, result)
    sidecar = args.report or (f"{args.out}.report.json" if args.out and args.out != "-" else None)
    if sidecar:
        report = _header("apply", fr, args)
        report["function"] = fn.name
        report["method"] = method
        report["residual_closed_form"] = opnorm(result - reference)
        report["residual_split_form"] = opnorm(computed - reference)
        write_report(sidecar, report)
    return EXIT_OK


def cmd_measure(args) -> int:
    fr = frame_from_args(args)
    t, es = _load_normal(args, fr)
    f = pvm.spectral_measure(t, fr, es)
    rng = np.random.default_rng(args.seed)
    samples = [(fixtures.random_qvector(t.n, rng), fixtures.random_qvector(t.n, rng)) for _ in range(10)]
    axioms = pvm.check_axioms(f, samples)
    report = _header("measure", fr, args)
    report["atoms"] = [
        {"lambda": lam.to_list(), "rank": f.rank(k), "projection": p.array.reshape(-1, 4).tolist()}
        for k, (lam, p) in enumerate(f.atoms)
    ]
    report["axiom_residuals"] = axioms.residuals
    report["axioms_passed"] = axioms.passed
    _emit(args, report)
    return EXIT_OK


def run_suite(t: QMatrix, es: EigenSystem, fr: Frame, names, seed: int = 42) -> dict[str, dict]:
    """Evaluate the named properties; each entry carries residual, tolerance and verdict."""
    rng = np.random.default_rng(seed)
    out: dict[str, dict] = {}
    scale = max(1.0, opnorm(t))

    def record(name, residual, tol, **extra):
        out[name] = {"residual": float(residual), "tol": tol, "passed": bool(residual < tol), **extra}

    suite = funcalc.builtin_suite(fr)
    f = pvm.spectral_measure(t, fr, es)
    for name in names:
        if name == "eigen":
            record(name, opnorm(es.reconstruct() - t) / scale, 1e-10)
        elif name == "reconstruction":
            record(name, opnorm(pvm.integrate(funcalc.identity(), f) - t) / scale, 1e-10)
        elif name == "adjoint_law":
            record(name, max(funcalc.adjoint_law_check(t, fn, fr, es) for fn in suite.values()), 1e-10)
        elif name == "jprime_law":
            record(name, max(funcalc.jprime_law_check(t, fn, fr, es) for fn in suite.values()), 1e-10)
        elif name == "axioms":
            samples = [(fixtures.random_qvector(t.n, rng), fixtures.random_qvector(t.n, rng)) for _ in range(10)]
            rep = pvm.check_axioms(f, samples)
            record(name, max(rep.residuals.values(), default=0.0), rep.tol, components=rep.residuals)
        elif name == "representation":
            worst = 0.0
            for fn in (funcalc.eg1(fr), funcalc.exponential(), funcalc.conjugation()):
                rep = pvm.representation_check(t, fn, trials=50, fr=fr, es=es, seed=seed)
                worst = max(worst, rep.scalar_form, rep.split_form)
            record(name, worst, pvm.REPRESENTATION_TOL)
        elif name == "commutant":
            s = fixtures.commuting_polynomial(t, rng.standard_normal((3, 3)))
            rep = pvm.commutant_check(s, t, funcalc.exponential(), f, fr, es)
            if rep.applicable:
                record(name, max(rep.calculus_residual, rep.atom_residual), rep.tol)
            else:
                out[name] = {"residual": None, "tol": rep.tol, "passed": True, "skipped": rep.reason}
        elif name == "polarization":
            worst = max(
                check_polarization(fixtures.random_qvector(t.n, rng), fixtures.random_qvector(t.n, rng))
                for _ in range(50)
            )
            record(name, worst, 1e-10)
        elif name == "poly_oracle":
            coeffs = rng.standard_normal(5)
            direct = oracle.direct_poly(t, coeffs)
            res = opnorm(funcalc.poly_calculus(t, list(coeffs), fr, es) - direct) / (1 + opnorm(direct))
            record(name, res, 1e-8)
        elif name == "exp_oracle":
            ref = oracle.chi_exp(t, fr)
            res = opnorm(funcalc.full_calculus(t, funcalc.exponential(), fr, es) - ref) / (1 + opnorm(ref))
            record(name, res, 1e-8)
        elif name == "brute_spectrum":
            if t.n > 8:
                out[name] = {"residual": None, "tol": 5e-4, "passed": True, "skipped": "n > 8"}
                continue
            ours = spectrum_from_eigensystem(es).spheres()
            brute = oracle.brute_spectrum(t)
            dist = max(
                [min((a.distance(b) for b in brute), default=np.inf) for a in ours]
                + [min((b.distance(a) for a in ours), default=np.inf) for b in brute],
                default=0.0,
            )
            record(name, dist, 5e-4, brute_classes=[{"re": c.re, "rad": c.rad} for c in brute])
        else:
            raise ParseError(f"unknown property {name!r}; choose from {', '.join(VERIFY_SUITE)}")
    return out


def cmd_verify(args) -> int:
    fr = frame_from_args(args)
    t = read_matrix(args.matrix)
    report = _header("verify", fr, args)
    cls = classify(t, tol=args.tol)
    report["normality"] = {"residual": cls.normal_residual, "passed": cls.normal}
    if not cls.normal:
        report["status"] = "skipped: operator is not normal"
        _emit(args, report)
        print(f"error: operator is not normal (‖T*T − TT*‖ = {cls.normal_residual:.3g})", file=sys.stderr)
        return EXIT_PRECONDITION
    es = eigendecompose(t, fr, tol=args.tol)
    names = VERIFY_SUITE if args.suite in (None, "all") else [s.strip() for s in args.suite.split(",") if s.strip()]
    results = run_suite(t, es, fr, names, seed=args.seed)
    report["properties"] = results
    ok = all(r["passed"] for r in results.values())
    report["status"] = "pass" if ok else "fail"
    _emit(args, report)
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def cmd_random(args) -> int:
    fr = frame_from_args(args)
    rng = np.random.default_rng(args.seed)
    t = fixtures.random_normal(args.n, rng, fr, separation=args.separation)
    write_matrix(args.out, t)
    return EXIT_OK


def cmd_sphere_operator(args) -> int:
    if not 1 <= args.k:
        raise PreconditionError("need at least one atom")
    t = fixtures.multiplication_operator(fixtures.sphere_atoms(args.k, np.random.default_rng(args.seed)))
    write_matrix(args.out, t)
    return EXIT_OK


# --- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--frame-m", help="first frame axis as a 4-array (default [0,1,0,0])")
    common.add_argument("--frame-n", help="second frame axis as a 4-array (default [0,0,1,0])")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="normality and eigen residual tolerance")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--report", help="report path")
    common.add_argument("--seed", type=int, default=42, help="seed for randomized checks")

    parser = argparse.ArgumentParser(prog="qfcalc", description="Functional calculus for quaternionic normal matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="spherical spectrum report")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("apply", parents=[common], help="apply a function to a normal matrix")
    p.add_argument("matrix")
    p.add_argument("function", help="e.g. exp, eg1, poly:[0,1], indicator:0,1,0,2")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("measure", parents=[common], help="spectral measure report")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("verify", parents=[common], help="run the property suite")
    p.add_argument("matrix")
    p.add_argument("--suite", default="all", help=f"comma-separated subset of: {', '.join(VERIFY_SUITE)}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", parents=[common], help="write a random normal matrix")
    p.add_argument("n", type=int)
    p.add_argument("--separation", type=float, default=0.2)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("sphere-operator", parents=[common], help="write diag(s_1..s_k), s_l imaginary units")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_sphere_operator)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DSLError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DSL
    except SliceViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SLICE
    except (PreconditionError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL


if __name__ == "__main__":
    sys.exit(main())
