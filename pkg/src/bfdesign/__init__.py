"""Exact two-stage Bayes factor trial designs with binary endpoints.

The package computes the operating characteristics of two-stage single-arm
designs whose decisions are driven by Bayes factors, corrects them exactly
for the interim futility look, and searches for the design minimizing the
expected sample size under the null, all without simulation.
"""

from .bayesfactor import (
    AnalysisPrior,
    CriticalValues,
    Hypotheses,
    bf01,
    critical_efficacy,
    critical_futility,
    critical_values,
    marginal_likelihood,
)
from .calibration import (
    CalibratedDesign,
    CalibrationConstraints,
    ScanRow,
    base_sample_size,
    calibrate,
    optimal_calibrate,
    scan,
)
from .operating import (
    BranchProbabilities,
    OperatingCharacteristics,
    PathProbabilities,
    TwoStageDesign,
    adjusted_rate,
    branch_probabilities,
    enumerate_oracle,
    enumerate_paths,
    evaluate,
    expected_n,
    futility_erased,
    path_probabilities,
    prob_futility_stop,
    unadjusted_rate,
)
from .predictive import (
    PredictivePmf,
    joint_predictive_matrix,
    joint_predictive_pmf,
    predictive_distribution,
    predictive_pmf,
    predictive_vector,
)
from .priors import DesignPrior, PointMass, TruncatedBeta
from .simon import SimonDesign, simon_oc, simon_search
from .special import log_beta, reg_inc_beta

__all__ = [
    "AnalysisPrior",
    "BranchProbabilities",
    "CalibratedDesign",
    "CalibrationConstraints",
    "CriticalValues",
    "DesignPrior",
    "Hypotheses",
    "OperatingCharacteristics",
    "PathProbabilities",
    "PointMass",
    "PredictivePmf",
    "ScanRow",
    "SimonDesign",
    "TruncatedBeta",
    "TwoStageDesign",
    "adjusted_rate",
    "base_sample_size",
    "bf01",
    "branch_probabilities",
    "calibrate",
    "critical_efficacy",
    "critical_futility",
    "critical_values",
    "enumerate_oracle",
    "enumerate_paths",
    "evaluate",
    "expected_n",
    "futility_erased",
    "joint_predictive_matrix",
    "joint_predictive_pmf",
    "log_beta",
    "marginal_likelihood",
    "optimal_calibrate",
    "path_probabilities",
    "predictive_distribution",
    "predictive_pmf",
    "predictive_vector",
    "prob_futility_stop",
    "reg_inc_beta",
    "scan",
    "simon_oc",
    "simon_search",
    "unadjusted_rate",
]

__version__ = "0.1.0"
