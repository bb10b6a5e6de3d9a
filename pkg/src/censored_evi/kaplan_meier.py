"""Product-limit survival estimators under right censoring.

For a censored sample, the survival function of the variable of interest
is estimated by

    1 - Fhat(t) = prod over {i : Z_(i) <= t} of ((n-i)/(n-i+1))^delta_(i)

and the censoring survival 1 - Ghat uses the complementary exponents
1 - delta_(i).  Both are step functions, defined for t < Z_(n).

``fit`` evaluates the curves at every order statistic: the F-curve at
Z_(i) itself and the G-curve as the left limit at Z_(i) (the product over
strictly earlier indices), which is exactly what the weighted tail
moments consume.  Products are accumulated as sums of logs in extended
precision so the telescoping identity
(1-Fhat(Z_(i)))*(1-Ghat(Z_(i))) = (n-i)/n survives n in the tens of
thousands at 1e-12 accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .censoring import CensoredSample

__all__ = ["KaplanMeierCurves", "fit", "survival_f_at"]


@dataclass(frozen=True)
class KaplanMeierCurves:
    """Survival curves evaluated on the order statistics.

    surv_f_at_order[i]      = 1 - Fhat(Z_(i+1))   (0-based storage)
    surv_g_left_at_order[i] = 1 - Ghat(Z_(i+1)^-) (product over the first
                              i factors; entry 0 is the empty product 1)
    """

    surv_f_at_order: np.ndarray
    surv_g_left_at_order: np.ndarray


def fit(s: CensoredSample) -> KaplanMeierCurves:
    """Evaluate both product-limit curves on the order statistics of s."""
    n = s.n
    if n < 2:
        raise ValueError("need at least 2 observations")
    j = np.arange(n, dtype=np.int64)
    # log((n-1-j)/(n-j)) for 0-based j; the last factor is log 0 = -inf,
    # reached only by the F-curve at Z_(n) when delta_(n) = 1.
    with np.errstate(divide="ignore"):
        base = np.log1p(-1.0 / (n - j).astype(np.longdouble))
    lf = np.cumsum(np.where(s.delta == 1, base, np.longdouble(0.0)))
    lg_steps = np.where(s.delta == 0, base, np.longdouble(0.0))
    # Left limit at Z_(i) excludes the factor of index i itself.
    lg_left = np.concatenate(([np.longdouble(0.0)], np.cumsum(lg_steps)[:-1]))
    surv_f = np.exp(lf).astype(float)
    surv_g_left = np.exp(lg_left).astype(float)
    surv_f.flags.writeable = False
    surv_g_left.flags.writeable = False
    return KaplanMeierCurves(surv_f_at_order=surv_f, surv_g_left_at_order=surv_g_left)


def survival_f_at(s: CensoredSample, t: float, curves: KaplanMeierCurves | None = None) -> float:
    """Step-function value 1 - Fhat(t) for t < Z_(n).

    The product-limit estimator is undefined from the largest observation
    onward, so t >= Z_(n) raises rather than extrapolating.
    """
    if t >= s.z[-1]:
        raise ValueError(f"1-Fhat is undefined at t >= Z_(n) = {s.z[-1]!r}")
    if curves is None:
        curves = fit(s)
    idx = int(np.searchsorted(s.z, t, side="right")) - 1
    if idx < 0:
        return 1.0
    return float(curves.surv_f_at_order[idx])
