"""Exact search for Simon's two-stage phase II designs.

A Simon design (r1, n1, r, n2) enrolls n1 patients, stops for futility when
at most r1 respond, otherwise continues to n2 patients and rejects H0 when
the total number of responders exceeds r.  Everything here is computed by
exact binomial enumeration; the optimal and minimax designs provide an
independent cross-check for the Bayes factor design search, which recovers
the optimal design under frequentist power and moderate evidence thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import binom


@dataclass(frozen=True)
class SimonDesign:
    """One two-stage design with its attained operating characteristics."""

    r1: int
    n1: int
    r: int
    n2: int
    alpha_attained: float
    power_attained: float
    pet_p0: float
    e_n_h0: float


def simon_oc(r1: int, n1: int, r: int, n2: int, p: float) -> tuple[float, float, float]:
    """(rejection probability, PET, E[N]) of a design at success rate p.

    PET is the probability of early termination, P(X1 <= r1).  H0 is
    rejected when the trial continues and the total count exceeds r.
    """
    if not (0 <= r1 <= n1 < n2 and r1 <= r <= n2):
        raise ValueError(f"invalid design bounds: r1={r1}, n1={n1}, r={r}, n2={n2}")
    pet = float(binom.cdf(r1, n1, p))
    m = n2 - n1
    reject = 0.0
    for x1 in range(r1 + 1, n1 + 1):
        reject += float(binom.pmf(x1, n1, p)) * float(binom.sf(r - x1, m, p))
    e_n = n1 + (1.0 - pet) * m
    return reject, pet, e_n


def _reject_matrix(n1: int, n2: int, p: float) -> np.ndarray:
    """reject[r1, r] = P(X1 > r1, X1 + X2 > r) for all bounds at once."""
    m = n2 - n1
    pmf1 = binom.pmf(np.arange(n1 + 1), n1, p)
    # sf2[t] = P(X2 > t) with t = r - x1 clipped into [-1, m]
    t = np.arange(-1, m + 1)
    sf2 = binom.sf(t, m, p)
    idx = np.clip(np.arange(n2 + 1)[None, :] - np.arange(n1 + 1)[:, None], -1, m)
    cell = pmf1[:, None] * sf2[idx + 1]  # cell[x1, r]
    # sum over x1 > r1: reversed cumulative sum down the rows
    tail = np.cumsum(cell[::-1, :], axis=0)[::-1, :]
    reject = np.zeros((n1 + 1, n2 + 1))
    reject[:n1, :] = tail[1:, :]
    return reject


def simon_search(
    p0: float,
    p1: float,
    alpha: float,
    beta: float,
    n_max: int = 60,
) -> Optional[tuple[SimonDesign, SimonDesign]]:
    """Exhaustive (optimal, minimax) Simon design search.

    Optimal minimizes the expected sample size under p0; minimax minimizes
    the maximum sample size n2 and breaks ties by the same expectation.
    None when no design with n2 <= n_max meets the error targets.
    """
    if not 0.0 < p0 < p1 < 1.0:
        raise ValueError(f"need 0 < p0 < p1 < 1, got p0={p0}, p1={p1}")
    if not (0.0 < alpha < 1.0 and 0.0 < beta < 1.0):
        raise ValueError(f"error targets must lie in (0, 1), got {alpha}, {beta}")

    best_optimal: Optional[SimonDesign] = None
    best_minimax: Optional[SimonDesign] = None
    for n2 in range(2, n_max + 1):
        for n1 in range(1, n2):
            reject_p0 = _reject_matrix(n1, n2, p0)
            reject_p1 = _reject_matrix(n1, n2, p1)
            valid = np.arange(n2 + 1)[None, :] >= np.arange(n1 + 1)[:, None]
            feasible = (reject_p0 <= alpha) & (reject_p1 >= 1.0 - beta) & valid
            if not feasible.any():
                continue
            pet = binom.cdf(np.arange(n1 + 1), n1, p0)
            # E[N|p0] depends on r1 only; the largest feasible r1 wins
            r1_candidates = np.flatnonzero(feasible.any(axis=1))
            r1 = int(r1_candidates[np.argmax(pet[r1_candidates])])
            r = int(np.flatnonzero(feasible[r1, :])[0])
            e_n = n1 + (1.0 - float(pet[r1])) * (n2 - n1)
            design = SimonDesign(
                r1=r1,
                n1=n1,
                r=r,
                n2=n2,
                alpha_attained=float(reject_p0[r1, r]),
                power_attained=float(reject_p1[r1, r]),
                pet_p0=float(pet[r1]),
                e_n_h0=e_n,
            )
            if best_optimal is None or design.e_n_h0 < best_optimal.e_n_h0:
                best_optimal = design
            if best_minimax is None or (design.n2, design.e_n_h0) < (
                best_minimax.n2,
                best_minimax.e_n_h0,
            ):
                best_minimax = design
    if best_optimal is None or best_minimax is None:
        return None
    return best_optimal, best_minimax
