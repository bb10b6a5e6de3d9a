"""Tail log-moments of a censored sample and their limit theory.

For threshold Z_(n-k) and order alpha >= 1 the building block is the
vector of powered log-excesses  L_i = log^alpha(Z_(n-i+1)/Z_(n-k)),
i = 1..k.  Three sample moments are formed from it:

* ``moment_unweighted``: plain mean of the L_i (ignores censoring).
* ``moment_km``: each L_i weighted by delta_(n-i+1)/(1-Ghat(Z_(n-i+1)^-)),
  normalized by n*(1-Fhat(Z_(n-k))).
* ``moment_leurgans``: same normalizer, but weighting the increments
  xi_i = i*(L_i - L_{i+1}) by 1/(1-Ghat(Z_(n-i+1)^-)).

The last two differ only through the top observation: on every sample

    moment_leurgans = moment_km + (1 - delta_(n)) * d_term

holds exactly, with ``d_term`` the explicit top-observation correction.
``limit_l_alpha`` gives the constant these weighted moments approach
after division by a_nk^alpha, and ``scale_a_nk`` computes that
normalizing scale for a known censoring pair by solving for the pooled
upper quantile numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .censoring import CensoredSample, theory_from_indices
from .distributions import DistributionSpec
from .kaplan_meier import KaplanMeierCurves

__all__ = [
    "MomentSet",
    "AsymptoticScale",
    "log_excesses",
    "xi_terms",
    "moment_unweighted",
    "moment_km",
    "moment_leurgans",
    "d_term",
    "moment_set",
    "beta_function",
    "limit_l_alpha",
    "scale_a_nk",
]


def _check_args(s: CensoredSample, k: int, alpha: float) -> None:
    if not 1 <= k < s.n:
        raise ValueError(f"k must satisfy 1 <= k < n, got k={k}, n={s.n}")
    if not alpha >= 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    if not s.z[s.n - k - 1] > 0:
        raise ValueError("threshold order statistic Z_(n-k) must be positive")


def log_excesses(s: CensoredSample, k: int, alpha: float) -> np.ndarray:
    """L_i = log^alpha(Z_(n-i+1)/Z_(n-k)) for i = 1..k (largest first)."""
    _check_args(s, k, alpha)
    n = s.n
    top = s.z[n - k:][::-1]
    return np.log(top / s.z[n - k - 1]) ** alpha


def xi_terms(s: CensoredSample, k: int, alpha: float) -> np.ndarray:
    """Increments xi_i = i*(L_i - L_{i+1}) with L_{k+1} = 0.

    Abel summation gives sum(xi) = sum(L), so these are a redistribution
    of the same total mass onto index-weighted gaps.
    """
    ell = log_excesses(s, k, alpha)
    ell_next = np.append(ell[1:], 0.0)
    return np.arange(1, k + 1, dtype=float) * (ell - ell_next)


def moment_unweighted(s: CensoredSample, k: int, alpha: float) -> float:
    """Mean powered log-excess, censoring ignored."""
    return float(np.mean(log_excesses(s, k, alpha)))


def _top_g_weights(s: CensoredSample, k: int, curves: KaplanMeierCurves) -> np.ndarray:
    # 1/(1-Ghat(Z_(n-i+1)^-)) for i = 1..k, aligned with log_excesses.
    idx = s.n - np.arange(1, k + 1)
    return 1.0 / curves.surv_g_left_at_order[idx]


def _normalizer(s: CensoredSample, k: int, curves: KaplanMeierCurves) -> float:
    # n * (1 - Fhat(Z_(n-k)))
    return s.n * float(curves.surv_f_at_order[s.n - k - 1])


def moment_km(s: CensoredSample, k: int, alpha: float, curves: KaplanMeierCurves) -> float:
    """Product-limit weighted moment: uncensored excesses inflated by the
    inverse censoring survival, normalized by n*(1-Fhat(Z_(n-k)))."""
    ell = log_excesses(s, k, alpha)
    idx = s.n - np.arange(1, k + 1)
    w = s.delta[idx] * _top_g_weights(s, k, curves)
    return float(np.sum(w * ell) / _normalizer(s, k, curves))


def moment_leurgans(s: CensoredSample, k: int, alpha: float, curves: KaplanMeierCurves) -> float:
    """Increment-weighted moment: xi_i / (1-Ghat(Z_(n-i+1)^-)), same
    normalizer as moment_km."""
    xi = xi_terms(s, k, alpha)
    w = _top_g_weights(s, k, curves)
    return float(np.sum(w * xi) / _normalizer(s, k, curves))


def d_term(s: CensoredSample, k: int, alpha: float, curves: KaplanMeierCurves) -> float:
    """Top-observation correction
    log^alpha(Z_(n)/Z_(n-k)) / (n*(1-Fhat(Z_(n-k)))*(1-Ghat(Z_(n)^-)))."""
    _check_args(s, k, alpha)
    n = s.n
    num = math.log(s.z[n - 1] / s.z[n - k - 1]) ** alpha
    return float(num / (_normalizer(s, k, curves) * curves.surv_g_left_at_order[n - 1]))


@dataclass(frozen=True)
class MomentSet:
    """All three moments of one (k, alpha) cell plus the correction term."""

    alpha: float
    k: int
    m_unweighted: float
    m_km: float
    m_leurgans: float
    d_term: float
    delta_max: int


def moment_set(s: CensoredSample, k: int, alpha: float, curves: KaplanMeierCurves) -> MomentSet:
    return MomentSet(
        alpha=alpha,
        k=k,
        m_unweighted=moment_unweighted(s, k, alpha),
        m_km=moment_km(s, k, alpha, curves),
        m_leurgans=moment_leurgans(s, k, alpha, curves),
        d_term=d_term(s, k, alpha, curves),
        delta_max=int(s.delta[s.n - 1]),
    )


def beta_function(a: float, b: float) -> float:
    """Euler Beta via log-gamma: exp(lnG(a) + lnG(b) - lnG(a+b))."""
    if not (a > 0 and b > 0):
        raise ValueError("beta_function requires a, b > 0")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def limit_l_alpha(gamma_x: float, gamma_c: float, alpha: float) -> float:
    """Limit constant of the weighted moments after a_nk^alpha scaling:

        l_alpha = |gamma_x|^-1 * |gamma|^-alpha * Beta(1/|gamma_x|, alpha+1)

    with gamma the pooled index of the censoring pair.
    """
    if not alpha >= 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    theory = theory_from_indices(gamma_x, gamma_c)
    bx = 1.0 / abs(gamma_x)
    return bx * abs(theory.gamma) ** (-alpha) * beta_function(bx, alpha + 1.0)


@dataclass(frozen=True)
class AsymptoticScale:
    """Normalizing scale at threshold fraction k/n.

    u_of_t is the upper 1/t quantile of the pooled variable (the value z
    with (1-F(z))*(1-G(z)) = 1/t), a_of_t = |gamma|*(xstar - u_of_t), and
    a_nk = a_of_t/u_of_t is the scale that normalizes the tail moments.
    """

    t: float
    u_of_t: float
    a_of_t: float
    a_nk: float
    xstar: float


def scale_a_nk(fx: DistributionSpec, gc: DistributionSpec, n: int, k: int) -> AsymptoticScale:
    """Normalizing scale for a known pair, by bisection on the pooled
    survival (1-F(u))*(1-G(u)) = k/n over (lo, xstar)."""
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < n, got k={k}, n={n}")
    xstar = fx.endpoint
    if not math.isclose(xstar, gc.endpoint, rel_tol=1e-12, abs_tol=0.0):
        raise ValueError(
            f"endpoint mismatch: {fx.endpoint!r} vs {gc.endpoint!r} (common endpoint required)"
        )
    t = n / k
    target = 1.0 / t

    def pooled_survival(u: float) -> float:
        return float(fx.survival(u)) * float(gc.survival(u))

    # Bracket downward from the endpoint; the pooled survival rises to 1
    # as u decreases, so a finite expansion always brackets target < 1.
    width = max(1.0, abs(xstar))
    lo = xstar - width
    for _ in range(60):
        if pooled_survival(lo) > target:
            break
        width *= 2.0
        lo = xstar - width
    else:
        raise ValueError("bisection bracket not found for the pooled quantile")
    hi = xstar
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if pooled_survival(mid) > target:
            lo = mid
        else:
            hi = mid
    u = 0.5 * (lo + hi)
    if not u > 0:
        raise ValueError("pooled upper quantile is non-positive; increase n/k")
    theory = theory_from_indices(fx.theoretical_evi(), gc.theoretical_evi())
    a_t = abs(theory.gamma) * (xstar - u)
    return AsymptoticScale(t=t, u_of_t=u, a_of_t=a_t, a_nk=a_t / u, xstar=xstar)
