"""Dominance analysis and weighted gain bounds on vertical strips.

The package works with proper SISO rational transfer functions and their
state-space realizations.  Norms are taken along vertical lines
Re(s) = -lam for decay rates lam >= 0 and over open strips of such lines;
dominance certificates count and certify eigenvalues right of a shifted
axis, and the two notions combine through a small-gain feedback test.
"""

from .errors import (
    DivergentIntegral,
    EigenvalueInStrip,
    IllPosed,
    ImproperTransferFunction,
    InvalidInput,
    MarginalRate,
    NoCommonROC,
    NotPDominant,
    NotPDominantAtSlope,
    NumericalFailure,
    PoleInROC,
    PoleInStrip,
    PoleOnLine,
    PoleProximity,
    SingularSylvester,
    StripgainError,
    Unsupported,
    WindowTooShort,
)
from .regions import Line, Strip
from .rational import (
    PartialFractionTerm,
    PolePartition,
    Polynomial,
    RationalFunction,
    partial_fractions,
    pole_partition,
    poly_roots,
    rational_eval,
    recombine,
    shift,
)
from .statespace import (
    ModalSplit,
    SampledSignal,
    StateSpace,
    convolve,
    impulse_response,
    modal_split,
    realize,
    tf_of,
    weighted_l2_norm,
)
from .stripnorm import (
    HamiltonianMatrix,
    NormResult,
    build_hamiltonian,
    decompose_line,
    frequency_response_data,
    h2_line_norm,
    line_norm_bisection,
    line_norm_grid,
    maxmod_slack,
    singular_value_test,
    strip_norm,
)
from .dominance import (
    DominanceCertificate,
    GainCertificate,
    GainLmiReport,
    Inertia,
    SectorGainResult,
    SlopeLoop,
    SmallGainReport,
    classify_attractors,
    dominance_check,
    feedback_compose,
    inertia,
    l2p_gain,
    sector_slope_gain,
    slope_closed_loop,
    small_gain_check,
    strip_gain,
    verify_gain_lmi,
)
from .laplace import (
    ANTICAUSAL,
    CAUSAL,
    LaplacePair,
    ROC,
    SignalSpec,
    SignalTerm,
    eval_signal,
    eval_signal_grid,
    forward,
    inverse,
    roc_options,
)

__version__ = "0.1.0"

__all__ = [
    "ANTICAUSAL",
    "CAUSAL",
    "DivergentIntegral",
    "DominanceCertificate",
    "EigenvalueInStrip",
    "GainCertificate",
    "GainLmiReport",
    "HamiltonianMatrix",
    "IllPosed",
    "ImproperTransferFunction",
    "Inertia",
    "InvalidInput",
    "LaplacePair",
    "Line",
    "MarginalRate",
    "ModalSplit",
    "NoCommonROC",
    "NormResult",
    "NotPDominant",
    "NotPDominantAtSlope",
    "NumericalFailure",
    "PartialFractionTerm",
    "PoleInROC",
    "PoleInStrip",
    "PoleOnLine",
    "PolePartition",
    "PoleProximity",
    "Polynomial",
    "ROC",
    "RationalFunction",
    "SampledSignal",
    "SectorGainResult",
    "SignalSpec",
    "SignalTerm",
    "SingularSylvester",
    "SlopeLoop",
    "SmallGainReport",
    "StateSpace",
    "Strip",
    "StripgainError",
    "Unsupported",
    "WindowTooShort",
    "build_hamiltonian",
    "classify_attractors",
    "convolve",
    "decompose_line",
    "dominance_check",
    "eval_signal",
    "eval_signal_grid",
    "feedback_compose",
    "forward",
    "frequency_response_data",
    "h2_line_norm",
    "impulse_response",
    "inertia",
    "inverse",
    "l2p_gain",
    "line_norm_bisection",
    "line_norm_grid",
    "maxmod_slack",
    "modal_split",
    "partial_fractions",
    "pole_partition",
    "poly_roots",
    "rational_eval",
    "realize",
    "recombine",
    "roc_options",
    "sector_slope_gain",
    "shift",
    "singular_value_test",
    "slope_closed_loop",
    "small_gain_check",
    "strip_gain",
    "strip_norm",
    "tf_of",
    "verify_gain_lmi",
    "weighted_l2_norm",
]
