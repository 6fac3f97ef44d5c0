"""Log-domain special functions for beta-binomial computations.

Everything downstream (predictive masses, Bayes factors) is assembled from
log beta functions and regularized incomplete beta functions.  The double
precision path uses scipy's cephes routines; extreme tails that underflow a
double are recomputed in arbitrary precision via mpmath so that log-scale
quantities stay finite and accurate.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np
from scipy.special import betainc, betaincc, betaln, gammaln

# Below this, a regularized incomplete beta value computed in doubles is
# re-evaluated in arbitrary precision before taking the log.
_UNDERFLOW = 1e-290

_MP_DPS = 40


def log_beta(a: float, b: float) -> float:
    """Natural log of the complete beta function B(a, b)."""
    if a <= 0 or b <= 0:
        raise ValueError(f"beta function requires positive shapes, got a={a}, b={b}")
    return float(betaln(a, b))


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta function I_x(a, b).

    This is the cdf at x of a Beta(a, b) random variable.
    """
    if a <= 0 or b <= 0:
        raise ValueError(f"reg_inc_beta requires positive shapes, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"reg_inc_beta requires x in [0, 1], got x={x}")
    return float(betainc(a, b, x))


def log_binom_coeff(n: int, y: int) -> float:
    """log C(n, y) via log-gamma."""
    if y < 0 or y > n:
        raise ValueError(f"binomial coefficient index out of range: n={n}, y={y}")
    return float(gammaln(n + 1) - gammaln(y + 1) - gammaln(n - y + 1))


def log_binom_coeff_vector(n: int) -> np.ndarray:
    """log C(n, y) for y = 0..n."""
    y = np.arange(n + 1)
    return gammaln(n + 1) - gammaln(y + 1) - gammaln(n - y + 1)


def trunc_beta_mass(a: float, b: float, l: float, u: float) -> float:
    """I_u(a, b) - I_l(a, b), evaluated from the numerically smaller tail.

    When both cdf values sit near 1 the direct difference cancels, so the
    complemented form (survival functions) is used instead.
    """
    if l == 0.0 and u == 1.0:
        return 1.0
    if l == 0.0:
        return float(betainc(a, b, u))
    if u == 1.0:
        return float(betaincc(a, b, l))
    lo = float(betainc(a, b, l))
    if lo > 0.5:
        return float(betaincc(a, b, l) - betaincc(a, b, u))
    return float(betainc(a, b, u)) - lo


def _log_trunc_beta_mass_mp(a: float, b: float, l: float, u: float) -> float:
    # lower tails are direct; the upper tail uses I_x(a,b) = 1 - I_{1-x}(b,a)
    # so that no fixed working precision has to resolve 1 - (1 - tiny)
    if l == 0.0:
        with mpmath.workdps(_MP_DPS):
            mass = mpmath.betainc(a, b, x1=0, x2=u, regularized=True)
            return float(mpmath.log(mass)) if mass > 0 else float("-inf")
    if u == 1.0:
        with mpmath.workdps(_MP_DPS):
            mass = mpmath.betainc(b, a, x1=0, x2=1.0 - l, regularized=True)
            return float(mpmath.log(mass)) if mass > 0 else float("-inf")
    for dps in (_MP_DPS, 200, 1000):
        with mpmath.workdps(dps):
            upper = mpmath.betainc(a, b, x1=0, x2=u, regularized=True)
            mass = upper - mpmath.betainc(a, b, x1=0, x2=l, regularized=True)
            # accept once the difference clearly survives the cancellation
            if mass > 0 and (upper == 0 or mass / upper > mpmath.mpf(10) ** (15 - dps)):
                return float(mpmath.log(mass))
    return float("-inf")


def log_trunc_beta_mass(a: float, b: float, l: float, u: float) -> float:
    """log of the Beta(a, b) probability mass on [l, u]."""
    m = trunc_beta_mass(a, b, l, u)
    if m > _UNDERFLOW:
        return math.log(m)
    return _log_trunc_beta_mass_mp(a, b, l, u)


def log_trunc_beta_mass_vector(
    a: np.ndarray, b: np.ndarray, l: float, u: float
) -> np.ndarray:
    """Vectorized log_trunc_beta_mass over paired shape arrays.

    Entries whose double-precision mass underflows are recomputed with mpmath,
    which keeps far-tail log masses accurate instead of -inf.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if l == 0.0 and u == 1.0:
        return np.zeros_like(a)
    if l == 0.0:
        mass = betainc(a, b, u)
    elif u == 1.0:
        mass = betaincc(a, b, l)
    else:
        lo = betainc(a, b, l)
        mass = np.where(
            lo > 0.5,
            betaincc(a, b, l) - betaincc(a, b, u),
            betainc(a, b, u) - lo,
        )
    mass = np.asarray(mass, dtype=float)
    out = np.full(mass.shape, -np.inf)
    ok = mass > _UNDERFLOW
    out[ok] = np.log(mass[ok])
    for idx in np.flatnonzero(~ok):
        out[idx] = _log_trunc_beta_mass_mp(float(a[idx]), float(b[idx]), l, u)
    return out


def log_binom_pmf_vector(n: int, p: float) -> np.ndarray:
    """log Bin(y; n, p) for y = 0..n, with exact handling of p in {0, 1}."""
    y = np.arange(n + 1)
    if p == 0.0:
        out = np.full(n + 1, -np.inf)
        out[0] = 0.0
        return out
    if p == 1.0:
        out = np.full(n + 1, -np.inf)
        out[n] = 0.0
        return out
    return log_binom_coeff_vector(n) + y * math.log(p) + (n - y) * math.log1p(-p)
