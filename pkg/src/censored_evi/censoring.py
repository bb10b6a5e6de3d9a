"""Censored samples and the tail censoring theory.

Observation model: instead of the variable of interest X one records
Z = min(X, C) together with the indicator delta = 1 when X <= C (the
observation is uncensored).  A ``CensoredSample`` keeps the order
statistics Z_(1) <= ... <= Z_(n) and their concomitant indicators.

When X and C both have a negative tail index and share their right
endpoint, the pooled variable Z has index
``gamma = gamma_x*gamma_c/(gamma_x + gamma_c)`` and a fraction
``p = gamma_c/(gamma_x + gamma_c)`` of the extreme observations stays
uncensored in the limit.  ``theory_from_indices`` packages those derived
quantities; ``tail_uncensored_proportion`` is their empirical counterpart
(mean of the top-k indicators).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CensoredSample",
    "TailTheory",
    "make_censored",
    "from_observations",
    "tail_uncensored_proportion",
    "theory_from_indices",
]


@dataclass(frozen=True)
class CensoredSample:
    """Sorted censored observations with concomitant indicators.

    ``z`` is ascending, ``delta`` is aligned with it (delta[i] = 1 when
    z[i] came from an uncensored observation), both read-only arrays of
    common length ``n >= 2``.
    """

    z: np.ndarray
    delta: np.ndarray
    n: int


def _sort_with_tiebreak(z: np.ndarray, delta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Ties are a null event for continuous data; if they occur anyway,
    # uncensored observations are placed first (events before censorings).
    order = np.lexsort((-delta, z))
    z, delta = z[order], delta[order]
    if np.any(z[1:] == z[:-1]):
        warnings.warn("tied observation values; uncensored ordered first", stacklevel=3)
    return z, delta


def _freeze(z: np.ndarray, delta: np.ndarray) -> CensoredSample:
    z = np.ascontiguousarray(z, dtype=float)
    delta = np.ascontiguousarray(delta, dtype=np.int64)
    z.flags.writeable = False
    delta.flags.writeable = False
    return CensoredSample(z=z, delta=delta, n=len(z))


def make_censored(x, c, *, require_positive: bool = True) -> CensoredSample:
    """Build the censored sample z_i = min(x_i, c_i), delta_i = 1_{x_i <= c_i}.

    Args:
        x: observations of interest.
        c: censoring values, same length as x.
        require_positive: reject non-positive entries (the default).  The
            simulation engine passes False because endpoint-x* families can
            put mass below zero; only the top order statistics ever enter a
            tail formula and the threshold positivity is re-checked there.

    Returns:
        CensoredSample sorted ascending with the uncensored-first tie rule.
    """
    x = np.asarray(x, dtype=float)
    c = np.asarray(c, dtype=float)
    if x.ndim != 1 or c.ndim != 1 or len(x) != len(c):
        raise ValueError("x and c must be one-dimensional and of equal length")
    if len(x) < 2:
        raise ValueError("need at least 2 observations")
    if require_positive and (np.any(x <= 0) or np.any(c <= 0)):
        raise ValueError("all observations must be strictly positive")
    z = np.minimum(x, c)
    delta = (x <= c).astype(np.int64)
    return _freeze(*_sort_with_tiebreak(z, delta))


def from_observations(z, delta) -> CensoredSample:
    """Build a sample from already-censored pairs (z_i, delta_i).

    Used for data ingestion: validates delta in {0,1} and z > 0, then
    sorts with the same tie rule as make_censored.
    """
    z = np.asarray(z, dtype=float)
    delta = np.asarray(delta)
    if z.ndim != 1 or delta.ndim != 1 or len(z) != len(delta):
        raise ValueError("z and delta must be one-dimensional and of equal length")
    if len(z) < 2:
        raise ValueError("need at least 2 observations")
    if np.any(z <= 0):
        raise ValueError("all z must be strictly positive")
    if not np.all(np.isin(delta, (0, 1))):
        raise ValueError("delta entries must be 0 or 1")
    return _freeze(*_sort_with_tiebreak(z, delta.astype(np.int64)))


def tail_uncensored_proportion(s: CensoredSample, k: int) -> float:
    """Fraction of uncensored observations among the top k: mean of the
    concomitant indicators of Z_(n), ..., Z_(n-k+1)."""
    if not 1 <= k < s.n:
        raise ValueError(f"k must satisfy 1 <= k < n, got k={k}, n={s.n}")
    return float(np.mean(s.delta[s.n - k:]))


@dataclass(frozen=True)
class TailTheory:
    """Derived tail quantities for a censoring pair with common endpoint."""

    gamma_x: float
    gamma_c: float
    gamma: float
    p: float

    @property
    def strong_censoring(self) -> bool:
        """True when more than half of the extreme observations are
        censored in the limit (equivalently gamma_x < gamma_c)."""
        return 1.0 - self.p > 0.5


def theory_from_indices(gamma_x: float, gamma_c: float) -> TailTheory:
    """Pooled index and limit uncensored proportion for negative indices."""
    if not (gamma_x < 0 and gamma_c < 0):
        raise ValueError("both tail indices must be strictly negative")
    gamma = gamma_x * gamma_c / (gamma_x + gamma_c)
    p = gamma_c / (gamma_x + gamma_c)
    return TailTheory(gamma_x=gamma_x, gamma_c=gamma_c, gamma=gamma, p=p)
