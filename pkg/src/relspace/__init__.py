"""Complex two-dimensional Hilbert-space models of sequential binary relevance judgments.

The package fits model parameters from observed sequential response
probabilities, certifies quantumness via quasi-probability negativity,
quantifies incompatibility (non-commuting question observables) and
interference (total-probability violation), and simulates projective
measurement cascades to generate synthetic data.
"""

from .errors import (
    DomainError,
    DuplicateRespondent,
    EmptyGroup,
    InfeasibleModel,
    InvalidSequence,
    MissingProbability,
    ParseError,
    RelspaceError,
    UnknownSequenceTag,
    ZeroProbabilityCollapse,
)
from .hilbert import (
    ATOL,
    Basis2,
    Ket2,
    Observable2,
    change_of_basis,
    collapse,
    commutator,
    inner,
    observable_from_basis,
    prob_projection,
    projector,
    same_up_to_phase,
    sequential_prob,
)
from .model import (
    Dimension,
    Outcome,
    QueryModel,
    RelevanceParams,
    basis_kets,
    initial_state,
    interference_term,
    observable,
    predict_sequence_prob,
    ru_overlap_prob,
)
from .estimation import (
    FitReport,
    ProbEstimate,
    QuestionOrder,
    ResponseDataset,
    ResponseRecord,
    SequentialProbabilities,
    ThetaFit,
    TwoProportionTest,
    aggregate,
    chi_square_two_proportions,
    fit_model,
    fit_r,
    fit_t,
    fit_theta,
    fit_u,
    probabilities_from_conditionals,
)
from .quantumness import (
    CommutatorEntry,
    EffectRow,
    EffectTable,
    EffectTables,
    LtpReport,
    ThetaSweepRow,
    WignerDistribution,
    commutator_report,
    effect_tables,
    ltp_report,
    negativity,
    sweep_theta,
    wigner,
)
from .simulate import (
    CascadeSpec,
    CascadeStage,
    SimConfig,
    SpinAxis,
    StageCounts,
    preset_cascade,
    run_cascade,
    simulate_dataset,
    simulate_respondent,
    spin_basis,
)

__version__ = "0.1.0"

__all__ = [
    "ATOL",
    "Basis2",
    "CascadeSpec",
    "CascadeStage",
    "CommutatorEntry",
    "Dimension",
    "DomainError",
    "DuplicateRespondent",
    "EffectRow",
    "EffectTable",
    "EffectTables",
    "EmptyGroup",
    "FitReport",
    "InfeasibleModel",
    "InvalidSequence",
    "Ket2",
    "LtpReport",
    "MissingProbability",
    "Observable2",
    "Outcome",
    "ParseError",
    "ProbEstimate",
    "QueryModel",
    "QuestionOrder",
    "RelevanceParams",
    "RelspaceError",
    "ResponseDataset",
    "ResponseRecord",
    "SequentialProbabilities",
    "SimConfig",
    "SpinAxis",
    "StageCounts",
    "ThetaFit",
    "ThetaSweepRow",
    "TwoProportionTest",
    "UnknownSequenceTag",
    "WignerDistribution",
    "ZeroProbabilityCollapse",
    "aggregate",
    "basis_kets",
    "change_of_basis",
    "chi_square_two_proportions",
    "collapse",
    "commutator",
    "commutator_report",
    "effect_tables",
    "fit_model",
    "fit_r",
    "fit_t",
    "fit_theta",
    "fit_u",
    "initial_state",
    "inner",
    "interference_term",
    "ltp_report",
    "negativity",
    "observable",
    "observable_from_basis",
    "predict_sequence_prob",
    "preset_cascade",
    "prob_projection",
    "probabilities_from_conditionals",
    "projector",
    "ru_overlap_prob",
    "run_cascade",
    "same_up_to_phase",
    "sequential_prob",
    "simulate_dataset",
    "simulate_respondent",
    "spin_basis",
    "sweep_theta",
    "wigner",
]
