"""Exact crystal and canonical-basis computations on odd-index windows."""

from .ratfunc import LaurentPoly, RatFunc, parse_ratfunc, qfact, qint
from .multisegment import (
    Multisegment,
    Segment,
    cartan,
    cmp_cry,
    cmp_cry_multiseg,
    cmp_pbw,
    enumerate_multisegments,
    epsilon,
    etilde,
    ftilde,
    multisegments_of_content,
    signature_ops,
)
from .theta import (
    crystal_E,
    crystal_F,
    crystal_eps,
    enumerate_theta,
    symmetrized_content,
    theta_Etilde,
    theta_Ftilde,
    theta_epsilon,
    theta_of_symmetrized_content,
    theta_signature_ops,
)
from .wordalg import WordAlgebra, WordVector
from .thetamodule import ThetaClassVector, ThetaModule
from .canonical import (
    TransitionMatrix,
    bar_matrix,
    balanced_split,
    global_lower,
    global_upper,
    multiplicity_polys,
    q1_specialization,
    theta_block,
    typeA_block,
)

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "parse_ratfunc",
    "qint",
    "qfact",
    "Segment",
    "Multisegment",
    "cartan",
    "cmp_pbw",
    "cmp_cry",
    "cmp_cry_multiseg",
    "epsilon",
    "etilde",
    "ftilde",
    "signature_ops",
    "enumerate_multisegments",
    "multisegments_of_content",
    "crystal_eps",
    "crystal_E",
    "crystal_F",
    "theta_epsilon",
    "theta_Etilde",
    "theta_Ftilde",
    "theta_signature_ops",
    "symmetrized_content",
    "enumerate_theta",
    "theta_of_symmetrized_content",
    "WordAlgebra",
    "WordVector",
    "ThetaModule",
    "ThetaClassVector",
    "TransitionMatrix",
    "typeA_block",
    "theta_block",
    "bar_matrix",
    "global_lower",
    "global_upper",
    "balanced_split",
    "multiplicity_polys",
    "q1_specialization",
]

__version__ = "0.1.0"
