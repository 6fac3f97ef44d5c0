"""Search for calibrated and optimal two-stage designs.

A design (n1, n2) is calibrated when its adjusted type-I error stays at or
below alpha, its adjusted power reaches 1 - beta, and (optionally) the
probability of compelling evidence for H0 at the interim exceeds a floor f.

Binomial error rates oscillate in the sample size, so the smallest n whose
single-look power clears the target may be followed by sizes that miss it
again.  The non-sequential baseline search therefore requires the power to
keep holding for the next `window` sample sizes before accepting n.  The
two-stage grid searches themselves use plain per-design feasibility: the
published reference designs are only reproduced without a lookahead on the
(n1, n2) grid, where the interim adjustment already absorbs the worst of the
oscillation.

The optimal design minimizes the expected sample size under the null design
prior over the whole feasible rectangle.  Final sizes whose single-look power
already misses the target cannot become feasible by adding an interim look
(the adjustment only lowers power), so those columns are skipped wholesale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .bayesfactor import AnalysisPrior, Hypotheses
from .operating import (
    OperatingCharacteristics,
    TwoStageDesign,
    evaluate,
    path_probabilities,
    prob_futility_stop,
    unadjusted_rate,
)
from .priors import DesignPrior, PointMass


@dataclass(frozen=True)
class CalibrationConstraints:
    """Targets and search bounds for calibration.

    f is the optional floor on the probability of compelling evidence for H0
    at the interim (strict inequality).  window is the stability lookahead of
    the single-look baseline; 0 disables it.
    """

    alpha: float
    beta: float
    f: Optional[float] = None
    n_min: int = 5
    n_max: int = 60
    window: int = 10

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        if self.f is not None and not 0.0 < self.f < 1.0:
            raise ValueError(f"f must lie in (0, 1) when given, got {self.f}")
        if not 1 <= self.n_min < self.n_max:
            raise ValueError(
                f"need 1 <= n_min < n_max, got n_min={self.n_min}, n_max={self.n_max}"
            )
        if self.window < 0:
            raise ValueError(f"window must be nonnegative, got {self.window}")


@dataclass(frozen=True)
class CalibratedDesign:
    """A design returned by a search, with its operating characteristics."""

    design: TwoStageDesign
    oc: OperatingCharacteristics
    feasible: bool
    objective: float


@dataclass(frozen=True)
class ScanRow:
    """One interim size of a design-characteristic sweep at fixed n2."""

    n2: int
    n1: int
    power_adjusted: float
    type_i_adjusted: float
    pce: float
    e_n_h0: float
    feasible: bool


class DesignGrid:
    """Memoized per-(n1, n2) rates for one calibration scenario.

    The heavy primitives (Bayes factor curves, predictive vectors) are cached
    globally, so this only avoids re-walking the per-design sums.
    """

    def __init__(
        self,
        k: float,
        k_f: float,
        hyp: Hypotheses,
        ap: AnalysisPrior,
        power_prior: DesignPrior,
        null_prior: Optional[DesignPrior] = None,
    ) -> None:
        self.k = k
        self.k_f = k_f
        self.hyp = hyp
        self.ap = ap
        self.power_prior = power_prior
        self.null_prior = null_prior if null_prior is not None else PointMass(hyp.p0)
        self._rates: dict[tuple[int, int], tuple[float, float, float, float]] = {}
        self._nonseq_power: dict[int, float] = {}

    def rates(self, n1: int, n2: int) -> tuple[float, float, float, float]:
        """(adjusted power, adjusted type-I, PCE, E[N|H0]) at one design."""
        key = (n1, n2)
        cached = self._rates.get(key)
        if cached is not None:
            return cached
        design = TwoStageDesign(n1, n2, self.k, self.k_f)
        h1 = path_probabilities(design, self.hyp, self.ap, self.power_prior)
        h0 = path_probabilities(design, self.hyp, self.ap, self.null_prior)
        pce = prob_futility_stop(n1, self.k_f, self.hyp, self.ap, PointMass(self.hyp.p0))
        out = (h1.adjusted, h0.adjusted, pce, h0.expected_n)
        self._rates[key] = out
        return out

    def nonsequential_power(self, n2: int) -> float:
        """Single-look power at n2, the upper bound for any interim split."""
        cached = self._nonseq_power.get(n2)
        if cached is None:
            cached = unadjusted_rate(n2, self.k, self.hyp, self.ap, self.power_prior)
            self._nonseq_power[n2] = cached
        return cached

    def feasible(self, n1: int, n2: int, cons: CalibrationConstraints) -> bool:
        """Whether one design meets every constraint."""
        power_adj, type_i_adj, pce, _ = self.rates(n1, n2)
        if type_i_adj > cons.alpha or power_adj < 1.0 - cons.beta:
            return False
        return cons.f is None or pce > cons.f

    def calibrated(self, n1: int, n2: int) -> CalibratedDesign:
        design = TwoStageDesign(n1, n2, self.k, self.k_f)
        oc = evaluate(design, self.hyp, self.ap, self.power_prior, self.null_prior)
        return CalibratedDesign(
            design=design, oc=oc, feasible=True, objective=oc.e_n_h0
        )


def base_sample_size(
    k: float,
    hyp: Hypotheses,
    ap: AnalysisPrior,
    power_prior: DesignPrior,
    cons: CalibrationConstraints,
    null_prior: Optional[DesignPrior] = None,
) -> Optional[int]:
    """Smallest single-look sample size meeting both error-rate targets.

    The power requirement must hold at n and at each of the next `window`
    sample sizes, which irons out the oscillations of the discrete binomial
    power curve; the type-I requirement is checked at n itself.  None when no
    n up to n_max qualifies.
    """
    if null_prior is None:
        null_prior = PointMass(hyp.p0)
    power_ok: dict[int, bool] = {}

    def power_holds(n: int) -> bool:
        cached = power_ok.get(n)
        if cached is None:
            cached = unadjusted_rate(n, k, hyp, ap, power_prior) >= 1.0 - cons.beta
            power_ok[n] = cached
        return cached

    for n in range(1, cons.n_max + 1):
        if not all(power_holds(n + w) for w in range(cons.window + 1)):
            continue
        if unadjusted_rate(n, k, hyp, ap, null_prior) <= cons.alpha:
            return n
    return None


def calibrate(
    cons: CalibrationConstraints,
    k: float,
    k_f: float,
    hyp: Hypotheses,
    ap: AnalysisPrior,
    power_prior: DesignPrior,
    null_prior: Optional[DesignPrior] = None,
) -> Optional[CalibratedDesign]:
    """First calibrated design in the plain iteration order.

    Walks n1 upward within each n2 and bumps n2 once the interim sizes are
    exhausted.  Final sizes whose single-look power misses the target are
    skipped outright, since no interim split can repair power.  None when no
    design with n2 <= n_max qualifies, including the case of a futility
    threshold no interim size can realize.
    """
    grid = DesignGrid(k, k_f, hyp, ap, power_prior, null_prior)
    for n2 in range(cons.n_min + 1, cons.n_max + 1):
        if grid.nonsequential_power(n2) < 1.0 - cons.beta:
            continue
        for n1 in range(cons.n_min, n2):
            if grid.feasible(n1, n2, cons):
                return grid.calibrated(n1, n2)
    return None


def optimal_calibrate(
    cons: CalibrationConstraints,
    k: float,
    k_f: float,
    hyp: Hypotheses,
    ap: AnalysisPrior,
    power_prior: DesignPrior,
    null_prior: Optional[DesignPrior] = None,
    prune: bool = True,
) -> Optional[CalibratedDesign]:
    """Feasible design minimizing the expected sample size under H0.

    Ties go to the smaller n2, then the smaller n1.  With prune enabled,
    final sizes whose single-look power misses the target are skipped without
    an interim search; this cannot change the argmin because the interim
    adjustment only ever lowers power.
    """
    grid = DesignGrid(k, k_f, hyp, ap, power_prior, null_prior)
    best: Optional[tuple[float, int, int]] = None
    for n2 in range(cons.n_min + 1, cons.n_max + 1):
        if prune and grid.nonsequential_power(n2) < 1.0 - cons.beta:
            continue
        for n1 in range(cons.n_min, n2):
            if not grid.feasible(n1, n2, cons):
                continue
            _, _, _, e_n_h0 = grid.rates(n1, n2)
            key = (e_n_h0, n2, n1)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    return grid.calibrated(best[2], best[1])


def scan(
    n2_values: int | Iterable[int],
    cons: CalibrationConstraints,
    k: float,
    k_f: float,
    hyp: Hypotheses,
    ap: AnalysisPrior,
    power_prior: DesignPrior,
    null_prior: Optional[DesignPrior] = None,
) -> list[ScanRow]:
    """Characteristics of every interim size below each requested n2.

    One row per n1 in [n_min, n2 - 1], in deterministic ascending order;
    exposes the error-rate oscillations in the interim size.
    """
    if isinstance(n2_values, int):
        n2_values = [n2_values]
    grid = DesignGrid(k, k_f, hyp, ap, power_prior, null_prior)
    rows: list[ScanRow] = []
    for n2 in n2_values:
        for n1 in range(cons.n_min, n2):
            power_adj, type_i_adj, pce, e_n_h0 = grid.rates(n1, n2)
            rows.append(
                ScanRow(
                    n2=n2,
                    n1=n1,
                    power_adjusted=power_adj,
                    type_i_adjusted=type_i_adj,
                    pce=pce,
                    e_n_h0=e_n_h0,
                    feasible=grid.feasible(n1, n2, cons),
                )
            )
    return rows
