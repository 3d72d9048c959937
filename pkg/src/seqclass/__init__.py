"""seqclass: sequence-class norms and summing norms of multilinear operators.

A numerical laboratory for vector-valued sequence norms (sup, strong-p,
weak-p, Rademacher, Cohen) over finite-dimensional l_q spaces, and for the
operator norms they induce on multilinear maps via the finite-sequence
transport inequality. Supremum-defined quantities are returned as
certified brackets with explicit witnesses.
"""

__version__ = "0.1.0"

from .spaces import (
    INF,
    Space,
    Vector,
    conjugate_exponent,
    norming_functional,
    pairing,
    vector_norm,
)
from .seqnorm import (
    NormBracket,
    SeqClassSpec,
    VecSeq,
    norm_cohen,
    norm_rad,
    norm_rad_mc,
    norm_rad_prefix_sup,
    norm_strong_p,
    norm_sup,
    norm_weak_p,
    seq_norm,
    truncate,
)
from .multiop import (
    MultiOp,
    OpNormEstimate,
    compose,
    decoupling_check,
    diag_operator,
    evaluate,
    finite_type,
    op_norm,
    scalar_multiplication,
)
from .idealnorm import (
    IdealNormEstimate,
    IdealSpec,
    growth_experiment,
    ideal_norm,
    ideal_ratio,
    limit_stability_experiment,
    stability_report,
)

__all__ = [
    "__version__",
    "INF",
    "Space",
    "Vector",
    "conjugate_exponent",
    "norming_functional",
    "pairing",
    "vector_norm",
    "NormBracket",
    "SeqClassSpec",
    "VecSeq",
    "norm_cohen",
    "norm_rad",
    "norm_rad_mc",
    "norm_rad_prefix_sup",
    "norm_strong_p",
    "norm_sup",
    "norm_weak_p",
    "seq_norm",
    "truncate",
    "MultiOp",
    "OpNormEstimate",
    "compose",
    "decoupling_check",
    "diag_operator",
    "evaluate",
    "finite_type",
    "op_norm",
    "scalar_multiplication",
    "IdealNormEstimate",
    "IdealSpec",
    "growth_experiment",
    "ideal_norm",
    "ideal_ratio",
    "limit_stability_experiment",
    "stability_report",
]
