"""Tail index estimators for censored data: three moment combinations
crossed with three weighting methods.

Families (how moments are combined into an index estimate):

* ``mom``   -- m1 + 1 - 0.5/(1 - m1^2/m2), from orders (1, 2).
* ``type1`` -- 1/(1/V + alpha + 1) with
               V = 1 - ((alpha+2)/(alpha+1)) * m_{a+1}^2/(m_a * m_{a+2}).
* ``type2`` -- (1-(alpha+1)R)/((alpha+1)(1-R)) with R = m1*m_a/m_{a+1},
               evaluated as 1 - (alpha/(alpha+1))/(1-R).

Methods (which sample moments are fed in):

* ``km``  -- product-limit weighted moments (estimate the index of X).
* ``l``   -- increment-weighted moments (same target).
* ``efg`` -- unweighted moments; the combination estimates the pooled
  index of Z = min(X, C), so the result is divided by the empirical
  uncensored tail proportion p_hat to point back at X.

Singular combinations (zero moments, R = 1, V = 0, p_hat = 0) yield a
record flagged degenerate with a NaN value instead of raising, so large
k-sweeps never abort.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .censoring import CensoredSample, tail_uncensored_proportion
from .kaplan_meier import KaplanMeierCurves
from .moments import moment_km, moment_leurgans, moment_unweighted

__all__ = [
    "Family",
    "Method",
    "EstimatorSpec",
    "EstimateRecord",
    "combine_moment",
    "combine_type1",
    "combine_type2",
    "estimate",
]

_NAN = float("nan")


class Family(enum.Enum):
    MOMENT = "mom"
    TYPE1 = "type1"
    TYPE2 = "type2"


class Method(enum.Enum):
    KM = "km"
    LEURGANS = "l"
    EFG = "efg"


@dataclass(frozen=True)
class EstimatorSpec:
    """One estimator: combining family, weighting method, tuning alpha.

    alpha is ignored by the mom family (it always uses orders 1 and 2)
    but carried anyway so every estimator is addressed uniformly.
    """

    family: Family
    method: Method
    alpha: float = 2.0

    def __post_init__(self):
        if not self.alpha >= 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")

    @property
    def label(self) -> str:
        return f"{self.family.value}/{self.method.value}"


@dataclass(frozen=True)
class EstimateRecord:
    k: int
    spec: EstimatorSpec
    value: float
    p_hat: float
    degenerate: bool


def combine_moment(m1: float, m2: float) -> float:
    """m1 + 1 - 0.5/(1 - m1^2/m2); NaN when m2 <= 0 or m1^2 = m2."""
    if not m2 > 0:
        return _NAN
    den = 1.0 - m1 * m1 / m2
    if den == 0.0:
        return _NAN
    return m1 + 1.0 - 0.5 / den


def combine_type1(m_a: float, m_a1: float, m_a2: float, alpha: float) -> float:
    """1/(1/V + alpha + 1) with V the scale-free triple ratio; NaN on any
    zero denominator."""
    if not (m_a > 0 and m_a2 > 0):
        return _NAN
    v = 1.0 - (alpha + 2.0) / (alpha + 1.0) * (m_a1 * m_a1) / (m_a * m_a2)
    if v == 0.0:
        return _NAN
    den = 1.0 / v + alpha + 1.0
    if den == 0.0:
        return _NAN
    return 1.0 / den


def combine_type2(m1: float, m_a: float, m_a1: float, alpha: float) -> float:
    """(1-(alpha+1)R)/((alpha+1)(1-R)) with R = m1*m_a/m_{a+1}; NaN when
    R = 1.  Evaluated in the rearranged form 1 - (alpha/(alpha+1))/(1-R),
    which at alpha=1 is bit-identical to the mom-style expression."""
    if not m_a1 > 0:
        return _NAN
    r = m1 * m_a / m_a1
    if r == 1.0:
        return _NAN
    return 1.0 - (alpha / (alpha + 1.0)) / (1.0 - r)


def _moment(s: CensoredSample, k: int, alpha: float, curves: KaplanMeierCurves,
            method: Method) -> float:
    if method is Method.KM:
        return moment_km(s, k, alpha, curves)
    if method is Method.LEURGANS:
        return moment_leurgans(s, k, alpha, curves)
    return moment_unweighted(s, k, alpha)


def _combine(s: CensoredSample, k: int, spec: EstimatorSpec, curves: KaplanMeierCurves) -> float:
    a = spec.alpha
    m = lambda order: _moment(s, k, order, curves, spec.method)  # noqa: E731
    if spec.family is Family.MOMENT:
        return combine_moment(m(1.0), m(2.0))
    if spec.family is Family.TYPE1:
        return combine_type1(m(a), m(a + 1.0), m(a + 2.0), a)
    return combine_type2(m(1.0), m(a), m(a + 1.0), a)


def estimate(s: CensoredSample, k: int, spec: EstimatorSpec,
             curves: KaplanMeierCurves) -> EstimateRecord:
    """Evaluate one estimator on the top-k tail of a censored sample.

    The efg method combines the unweighted moments (which target the
    pooled index of Z) and divides by p_hat; km and l feed their weighted
    moments straight through.  Non-finite outcomes are flagged.
    """
    p_hat = tail_uncensored_proportion(s, k)
    value = _combine(s, k, spec, curves)
    if spec.method is Method.EFG:
        value = value / p_hat if p_hat > 0 else _NAN
    return EstimateRecord(
        k=k, spec=spec, value=value, p_hat=p_hat,
        degenerate=not math.isfinite(value),
    )
