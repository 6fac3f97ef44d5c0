"""Prior distributions over the latent success probability.

Two kinds of design prior drive every predictive computation: a point mass
(frequentist planning value) and a Beta law truncated to an interval.  Both
are frozen dataclasses so they can key the internal caches.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .special import trunc_beta_mass


@dataclass(frozen=True)
class TruncatedBeta:
    """Beta(a, b) distribution restricted to [l, u] and renormalized.

    The untruncated law (l, u) = (0, 1) is the common special case.
    """

    a: float
    b: float
    l: float = 0.0
    u: float = 1.0

    def __post_init__(self) -> None:
        if self.a <= 0 or self.b <= 0:
            raise ValueError(f"shape parameters must be positive, got a={self.a}, b={self.b}")
        if not (0.0 <= self.l < self.u <= 1.0):
            raise ValueError(f"truncation must satisfy 0 <= l < u <= 1, got l={self.l}, u={self.u}")
        if trunc_beta_mass(self.a, self.b, self.l, self.u) <= 0.0:
            raise ValueError(
                f"degenerate truncation: Beta({self.a}, {self.b}) has no mass on [{self.l}, {self.u}]"
            )


@dataclass(frozen=True)
class PointMass:
    """Degenerate prior concentrated at success probability p."""

    p: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"point mass requires p in [0, 1], got p={self.p}")


DesignPrior = Union[PointMass, TruncatedBeta]
