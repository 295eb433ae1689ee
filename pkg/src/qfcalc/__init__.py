"""Continuous functional calculus for normal matrices over the quaternions.

The main entry points:

* :class:`Quaternion`, :class:`Frame` and :class:`SphereClass` for scalars,
* :class:`QMatrix` with the complex embedding :func:`chi_embed`,
* :func:`eigendecompose` and :func:`spherical_spectrum`,
* :func:`full_calculus` for f(T) with any quaternion-valued f,
* :func:`spectral_measure` and :func:`integrate` for the projection-valued measure.
"""

from .errors import (
    ConvergenceError,
    DomainError,
    DSLError,
    ParseError,
    PreconditionError,
    QuaternionError,
    SliceViolation,
    StructureError,
)
from .funcalc import (
    QFunction,
    closed_form,
    cm_calculus,
    frame_split,
    full_calculus,
    induce_slice_function,
    poly_calculus,
)
from .pvm import QPVM, check_axioms, integrate, representation_check, spectral_measure, uniqueness_check
from .qmatrix import QMatrix, adjoint, chi_embed, chi_unembed, classify, delta_q, opnorm
from .qspace import HilbertBasis, QVector, inner
from .quaternion import DEFAULT_FRAME, Frame, Quaternion, SphereClass, sphere_class_of
from .spectral import EigenSystem, build_J, build_Jprime, eigendecompose, spherical_spectrum

__all__ = [
    "ConvergenceError",
    "DomainError",
    "DSLError",
    "ParseError",
    "PreconditionError",
    "QuaternionError",
    "SliceViolation",
    "StructureError",
    "QFunction",
    "closed_form",
    "cm_calculus",
    "frame_split",
    "full_calculus",
    "induce_slice_function",
    "poly_calculus",
    "QPVM",
    "check_axioms",
    "integrate",
    "representation_check",
    "spectral_measure",
    "uniqueness_check",
    "QMatrix",
    "adjoint",
    "chi_embed",
    "chi_unembed",
    "classify",
    "delta_q",
    "opnorm",
    "HilbertBasis",
    "QVector",
    "inner",
    "DEFAULT_FRAME",
    "Frame",
    "Quaternion",
    "SphereClass",
    "sphere_class_of",
    "EigenSystem",
    "build_J",
    "build_Jprime",
    "eigendecompose",
    "spherical_spectrum",
]
