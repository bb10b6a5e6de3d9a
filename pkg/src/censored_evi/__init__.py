"""Tail index estimation for randomly right-censored data in the
short-tailed (negative extreme value index) regime.

The pipeline: build a ``CensoredSample`` from (x, c) pairs or (z, delta)
observations, ``fit`` the product-limit survival curves, form tail
log-moments, and combine them with one of nine estimators (three
combination families crossed with three weighting methods).  A
deterministic Monte Carlo engine reproduces simulation studies, and the
``censored-evi`` CLI wraps estimation, simulation and SVG plotting.
"""

from .censoring import (
    CensoredSample,
    TailTheory,
    from_observations,
    make_censored,
    tail_uncensored_proportion,
    theory_from_indices,
)
from .distributions import (
    BetaDist,
    GPD,
    ReverseBurr,
    distribution_literal,
    parse_distribution,
)
from .estimators import (
    EstimateRecord,
    EstimatorSpec,
    Family,
    Method,
    combine_moment,
    combine_type1,
    combine_type2,
    estimate,
)
from .kaplan_meier import KaplanMeierCurves, fit, survival_f_at
from .moments import (
    AsymptoticScale,
    MomentSet,
    beta_function,
    d_term,
    limit_l_alpha,
    log_excesses,
    moment_km,
    moment_leurgans,
    moment_set,
    moment_unweighted,
    scale_a_nk,
    xi_terms,
)
from .montecarlo import (
    StudyCell,
    StudyDesign,
    StudyResult,
    aggregate,
    build_specs,
    resolve_workers,
    run_replicate,
    run_study,
)

__version__ = "0.1.0"

__all__ = [
    "BetaDist",
    "GPD",
    "ReverseBurr",
    "parse_distribution",
    "distribution_literal",
    "CensoredSample",
    "TailTheory",
    "make_censored",
    "from_observations",
    "tail_uncensored_proportion",
    "theory_from_indices",
    "KaplanMeierCurves",
    "fit",
    "survival_f_at",
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
    "Family",
    "Method",
    "EstimatorSpec",
    "EstimateRecord",
    "combine_moment",
    "combine_type1",
    "combine_type2",
    "estimate",
    "StudyDesign",
    "StudyCell",
    "StudyResult",
    "aggregate",
    "build_specs",
    "resolve_workers",
    "run_replicate",
    "run_study",
    "__version__",
]
