"""Bayes factors for a binomial success count and their critical values.

The test compares H0: p <= p0 against H1: p > p0.  Each hypothesis carries a
Beta analysis prior truncated to its region, and the Bayes factor BF01 is the
ratio of the two marginal likelihoods of the observed count.  Flat shapes
(a = b = 1) on both regions are the default.

Decision thresholds act on BF01 directly: values below k count as compelling
evidence for H1 (efficacy), values above k_f as compelling evidence for H0
(futility).  Because the marginal likelihood ratio decreases as successes
accumulate, each threshold corresponds to a critical success count, found
here by exhaustive scan rather than root-finding so that no monotonicity
assumption is baked in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.special import betaln

from .priors import TruncatedBeta
from .special import log_binom_coeff_vector, log_trunc_beta_mass_vector

_CACHE_SIZE = 4096


@dataclass(frozen=True)
class Hypotheses:
    """One-sided hypotheses H0: p <= p0 versus H1: p > p0."""

    p0: float

    def __post_init__(self) -> None:
        if not 0.0 < self.p0 < 1.0:
            raise ValueError(f"p0 must lie strictly inside (0, 1), got {self.p0}")


@dataclass(frozen=True)
class AnalysisPrior:
    """Pair of truncated Beta priors, one on each hypothesis region.

    h0 must be truncated to exactly [0, p0] and h1 to [p0, 1]; use the
    factories to get that right.
    """

    h0: TruncatedBeta
    h1: TruncatedBeta

    @classmethod
    def flat(cls, p0: float) -> "AnalysisPrior":
        """Flat (a = b = 1) priors on both regions, the default choice."""
        return cls.from_shapes(p0, 1.0, 1.0, 1.0, 1.0)

    @classmethod
    def from_shapes(
        cls, p0: float, a0: float, b0: float, a1: float, b1: float
    ) -> "AnalysisPrior":
        return cls(
            h0=TruncatedBeta(a0, b0, 0.0, p0),
            h1=TruncatedBeta(a1, b1, p0, 1.0),
        )


@dataclass(frozen=True)
class CriticalValues:
    """Success-count thresholds realizing the Bayes factor cutoffs at size n.

    efficacy: smallest count whose BF01 falls below k (None if unreachable).
    futility: largest count whose BF01 exceeds k_f (None if unreachable).
    """

    efficacy: Optional[int]
    futility: Optional[int]


def _check_regions(hyp: Hypotheses, ap: AnalysisPrior) -> None:
    if ap.h0.l != 0.0 or ap.h0.u != hyp.p0:
        raise ValueError(
            f"H0 analysis prior must be truncated to [0, {hyp.p0}], got [{ap.h0.l}, {ap.h0.u}]"
        )
    if ap.h1.l != hyp.p0 or ap.h1.u != 1.0:
        raise ValueError(
            f"H1 analysis prior must be truncated to [{hyp.p0}, 1], got [{ap.h1.l}, {ap.h1.u}]"
        )


@lru_cache(maxsize=_CACHE_SIZE)
def _log_marginal_curve(region_prior: TruncatedBeta, n: int) -> np.ndarray:
    """log marginal likelihood of y = 0..n successes under one region prior."""
    y = np.arange(n + 1, dtype=float)
    a_post = region_prior.a + y
    b_post = region_prior.b + n - y
    out = (
        log_binom_coeff_vector(n)
        + betaln(a_post, b_post)
        + log_trunc_beta_mass_vector(a_post, b_post, region_prior.l, region_prior.u)
        - betaln(region_prior.a, region_prior.b)
        - log_trunc_beta_mass_vector(
            np.array([region_prior.a]), np.array([region_prior.b]),
            region_prior.l, region_prior.u,
        )[0]
    )
    out.flags.writeable = False
    return out


def marginal_likelihood(y_s: int, n: int, region_prior: TruncatedBeta) -> float:
    """Marginal probability of y_s successes in n trials under a region prior.

    This integrates the binomial likelihood against the truncated Beta prior
    over its truncation interval.
    """
    if n < 1:
        raise ValueError(f"sample size must be at least 1, got n={n}")
    if y_s < 0 or y_s > n:
        raise ValueError(f"success count out of range: y_s={y_s}, n={n}")
    return float(math.exp(_log_marginal_curve(region_prior, n)[y_s]))


@lru_cache(maxsize=_CACHE_SIZE)
def _log_bf01_curve(n: int, hyp: Hypotheses, ap: AnalysisPrior) -> np.ndarray:
    out = _log_marginal_curve(ap.h0, n) - _log_marginal_curve(ap.h1, n)
    out.flags.writeable = False
    return out


def log_bf01_curve(n: int, hyp: Hypotheses, ap: AnalysisPrior) -> np.ndarray:
    """log BF01 for every success count y = 0..n (read-only, cached)."""
    if n < 1:
        raise ValueError(f"sample size must be at least 1, got n={n}")
    _check_regions(hyp, ap)
    return _log_bf01_curve(n, hyp, ap)


def bf01(y_s: int, n: int, hyp: Hypotheses, ap: AnalysisPrior) -> float:
    """Bayes factor BF01 of y_s successes in n trials (H0 over H1)."""
    if y_s < 0 or y_s > n:
        raise ValueError(f"success count out of range: y_s={y_s}, n={n}")
    return float(math.exp(log_bf01_curve(n, hyp, ap)[y_s]))


def critical_efficacy(
    n: int, k: float, hyp: Hypotheses, ap: AnalysisPrior
) -> Optional[int]:
    """Smallest success count at size n with BF01 < k, or None.

    None means no count up to n can produce evidence for H1 past k.
    """
    if not 0.0 < k < 1.0:
        raise ValueError(f"efficacy threshold must satisfy 0 < k < 1, got k={k}")
    below = np.flatnonzero(log_bf01_curve(n, hyp, ap) < math.log(k))
    return int(below[0]) if below.size else None


def critical_futility(
    n: int, k_f: float, hyp: Hypotheses, ap: AnalysisPrior
) -> Optional[int]:
    """Largest success count at size n with BF01 > k_f, or None.

    None means even zero successes out of n cannot carry evidence for H0
    past k_f, so a futility stop is impossible at this size.
    """
    if k_f <= 1.0:
        raise ValueError(f"futility threshold must satisfy k_f > 1, got k_f={k_f}")
    above = np.flatnonzero(log_bf01_curve(n, hyp, ap) > math.log(k_f))
    return int(above[-1]) if above.size else None


def critical_values(
    n: int, k: float, k_f: float, hyp: Hypotheses, ap: AnalysisPrior
) -> CriticalValues:
    """Both critical counts at one analysis size."""
    return CriticalValues(
        efficacy=critical_efficacy(n, k, hyp, ap),
        futility=critical_futility(n, k_f, hyp, ap),
    )
