"""The small function language accepted by ``qfcalc apply``.

Grammar (whitespace around tokens is ignored)::

    id | exp | conj | re | im | sqrt | eg1
    pow:K                       q^K for an integer K >= 0
    const:C                     constant function, C a number or 4-array
    poly:[c0, c1, ...]          Σ c_k q^k, each c_k a number or 4-array in C_m
    indicator:a,b,c,d           1 on classes with re in [a, b], rad in [c, d]
"""

from __future__ import annotations

import json

from . import funcalc
from .errors import DSLError
from .funcalc import QFunction
from .quaternion import DEFAULT_FRAME, Frame, Quaternion

SIMPLE = ("id", "exp", "conj", "re", "im", "sqrt", "eg1")


def _number_or_quaternion(obj, what: str) -> Quaternion:
    if isinstance(obj, bool):
        raise DSLError(f"{what}: expected a number or 4-array, got {obj!r}")
    if isinstance(obj, (int, float)):
        return Quaternion(float(obj))
    if isinstance(obj, list) and len(obj) == 4 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj
    ):
        return Quaternion(*map(float, obj))
    raise DSLError(f"{what}: expected a number or 4-array, got {obj!r}")


def _json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DSLError(f"{what}: cannot parse {text!r}") from exc


def parse_function(text: str, fr: Frame = DEFAULT_FRAME) -> QFunction:
    """Turn a DSL string into a :class:`QFunction`.

    Raises :class:`DSLError` on malformed input and
    :class:`~qfcalc.errors.SliceViolation` for polynomial coefficients
    outside C_m.
    """
    if not isinstance(text, str) or not text.strip():
        raise DSLError("empty function description")
    name, sep, arg = text.strip().partition(":")
    name = name.strip().lower()
    arg = arg.strip()
    if name in SIMPLE:
        if sep:
            raise DSLError(f"{name} takes no parameters")
        return {
            "id": funcalc.identity,
            "exp": funcalc.exponential,
            "conj": funcalc.conjugation,
            "re": funcalc.real_part,
            "im": funcalc.im_magnitude,
            "sqrt": lambda: funcalc.square_root(fr.m),
            "eg1": lambda: funcalc.eg1(fr),
        }[name]()
    if not sep or not arg:
        raise DSLError(f"unknown function or missing parameters: {text!r}")
    if name == "poly":
        coeffs = _json(arg, "poly")
        if not isinstance(coeffs, list) or not coeffs:
            raise DSLError("poly: expected a non-empty list of coefficients")
        return funcalc.polynomial([_number_or_quaternion(c, "poly") for c in coeffs], fr)
    if name == "const":
        return funcalc.constant(_number_or_quaternion(_json(arg, "const"), "const"))
    if name == "pow":
        try:
            k = int(arg)
        except ValueError as exc:
            raise DSLError(f"pow: expected an integer, got {arg!r}") from exc
        if k < 0:
            raise DSLError("pow: exponent must be nonnegative")
        return funcalc.monomial(k)
    if name == "indicator":
        parts = [p.strip() for p in arg.split(",")]
        if len(parts) != 4:
            raise DSLError("indicator: expected re_min,re_max,rad_min,rad_max")
        try:
            a, b, c, d = (float(p) for p in parts)
        except ValueError as exc:
            raise DSLError(f"indicator: bad bounds {arg!r}") from exc
        return funcalc.indicator(a, b, c, d)
    raise DSLError(f"unknown function {name!r}")
