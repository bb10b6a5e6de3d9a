"""Parametric families with a finite right endpoint and known tail index.

Three families are provided, all in the short-tailed (negative extreme
value index) regime:

* ``ReverseBurr(beta, tau, lam, xstar)`` -- survival
  ``(1 + (xstar - x)^(-tau) / beta)^(-lam)`` below ``xstar``, index
  ``-1/(lam*tau)``.
* ``GPD(gamma, sigma)`` -- generalized Pareto with ``gamma < 0``, survival
  ``(1 + gamma*x/sigma)^(-1/gamma)`` on ``[0, sigma/|gamma|]``.
* ``BetaDist(a, b)`` -- Beta law on ``[0, 1]``, index ``-1/b``.

Every family exposes ``survival``, ``quantile``, ``sample`` (inverse-CDF
transform of a uniform stream, so draws are reproducible from the
generator state alone), ``theoretical_evi`` and ``endpoint``.  Specs are
immutable and hashable; ``parse_distribution`` / ``distribution_literal``
convert to and from the textual form used in config files, e.g.
``revburr(1,1,1,10)``, ``gpd(-0.5,1)``, ``beta(2,4)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "ReverseBurr",
    "GPD",
    "BetaDist",
    "DistributionSpec",
    "parse_distribution",
    "distribution_literal",
]


def _scalar_or_array(x: np.ndarray) -> Union[float, np.ndarray]:
    return float(x) if x.ndim == 0 else x


def _check_unit_open(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise ValueError("quantile argument must lie strictly inside (0, 1)")
    return u


def _uniform_open(rng: np.random.Generator, n: int) -> np.ndarray:
    """n variates from the open interval (0, 1).

    ``Generator.random`` covers [0, 1); exact zeros (probability 2^-53
    per draw) are redrawn so the inverse CDF never sees u = 0.
    """
    u = rng.random(n)
    while True:
        zero = u == 0.0
        if not zero.any():
            return u
        u[zero] = rng.random(int(zero.sum()))


@dataclass(frozen=True)
class ReverseBurr:
    """Reverse Burr law: P(X > x) = (1 + (xstar - x)^(-tau)/beta)^(-lam)."""

    beta: float
    tau: float
    lam: float
    xstar: float

    def __post_init__(self):
        if not (self.beta > 0 and self.tau > 0 and self.lam > 0):
            raise ValueError("ReverseBurr requires beta, tau, lam > 0")
        if not np.isfinite(self.xstar):
            raise ValueError("ReverseBurr requires a finite endpoint xstar")

    @property
    def endpoint(self) -> float:
        return self.xstar

    def theoretical_evi(self) -> float:
        return -1.0 / (self.lam * self.tau)

    def survival(self, x) -> Union[float, np.ndarray]:
        x = np.asarray(x, dtype=float)
        gap = self.xstar - x
        safe = np.where(gap > 0.0, gap, 1.0)
        val = (1.0 + safe ** (-self.tau) / self.beta) ** (-self.lam)
        return _scalar_or_array(np.where(gap > 0.0, val, 0.0))

    def quantile(self, u) -> Union[float, np.ndarray]:
        u = _check_unit_open(u)
        s = 1.0 - u
        return _scalar_or_array(
            self.xstar - (self.beta * (s ** (-1.0 / self.lam) - 1.0)) ** (-1.0 / self.tau)
        )

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if n < 1:
            raise ValueError("sample size must be >= 1")
        return np.asarray(self.quantile(_uniform_open(rng, n)))


@dataclass(frozen=True)
class GPD:
    """Generalized Pareto with strictly negative shape (finite endpoint)."""

    gamma: float
    sigma: float

    def __post_init__(self):
        if not self.gamma < 0:
            raise ValueError("GPD requires gamma < 0 (short-tailed regime only)")
        if not self.sigma > 0:
            raise ValueError("GPD requires sigma > 0")

    @property
    def endpoint(self) -> float:
        return self.sigma / abs(self.gamma)

    def theoretical_evi(self) -> float:
        return self.gamma

    def survival(self, x) -> Union[float, np.ndarray]:
        x = np.asarray(x, dtype=float)
        base = np.clip(1.0 + self.gamma * x / self.sigma, 0.0, None)
        val = base ** (-1.0 / self.gamma)
        return _scalar_or_array(np.where(x < 0.0, 1.0, val))

    def quantile(self, u) -> Union[float, np.ndarray]:
        u = _check_unit_open(u)
        return _scalar_or_array(
            self.sigma * ((1.0 - u) ** (-self.gamma) - 1.0) / self.gamma
        )

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if n < 1:
            raise ValueError("sample size must be >= 1")
        return np.asarray(self.quantile(_uniform_open(rng, n)))


@dataclass(frozen=True)
class BetaDist:
    """Beta(a, b) law on [0, 1]; right-tail index -1/b."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("BetaDist requires a, b > 0")

    @property
    def endpoint(self) -> float:
        return 1.0

    def theoretical_evi(self) -> float:
        return -1.0 / self.b

    def survival(self, x) -> Union[float, np.ndarray]:
        from scipy.special import betainc

        x = np.asarray(x, dtype=float)
        # I_x(a,b) complement via the swap identity; avoids cancellation near 1
        val = betainc(self.b, self.a, np.clip(1.0 - x, 0.0, 1.0))
        return _scalar_or_array(np.where(x < 0.0, 1.0, np.where(x >= 1.0, 0.0, val)))

    def quantile(self, u) -> Union[float, np.ndarray]:
        from scipy.special import betaincinv

        u = _check_unit_open(u)
        return _scalar_or_array(betaincinv(self.a, self.b, u))

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if n < 1:
            raise ValueError("sample size must be >= 1")
        return np.asarray(self.quantile(_uniform_open(rng, n)))


DistributionSpec = Union[ReverseBurr, GPD, BetaDist]

_LITERAL_RE = re.compile(r"^\s*([a-z]+)\s*\(([^()]*)\)\s*$")

_ARITY = {"revburr": 4, "gpd": 2, "beta": 2}


def parse_distribution(text: str) -> DistributionSpec:
    """Parse a distribution literal such as ``revburr(1,1,1,10)``.

    Raises ValueError with a descriptive message on unknown names, wrong
    argument counts, non-numeric arguments or invalid parameters.
    """
    m = _LITERAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed distribution literal: {text!r}")
    name, argtext = m.group(1), m.group(2)
    if name not in _ARITY:
        raise ValueError(f"unknown distribution {name!r} (expected revburr, gpd or beta)")
    parts = [p.strip() for p in argtext.split(",")] if argtext.strip() else []
    if len(parts) != _ARITY[name]:
        raise ValueError(
            f"{name} takes {_ARITY[name]} parameters, got {len(parts)} in {text!r}"
        )
    try:
        args = [float(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"non-numeric parameter in {text!r}: {exc}") from None
    if name == "revburr":
        return ReverseBurr(*args)
    if name == "gpd":
        return GPD(*args)
    return BetaDist(*args)


def _fmt(v: float) -> str:
    return repr(float(v))


def distribution_literal(spec: DistributionSpec) -> str:
    """Inverse of parse_distribution (lossless float round-trip)."""
    if isinstance(spec, ReverseBurr):
        return f"revburr({_fmt(spec.beta)},{_fmt(spec.tau)},{_fmt(spec.lam)},{_fmt(spec.xstar)})"
    if isinstance(spec, GPD):
        return f"gpd({_fmt(spec.gamma)},{_fmt(spec.sigma)})"
    if isinstance(spec, BetaDist):
        return f"beta({_fmt(spec.a)},{_fmt(spec.b)})"
    raise ValueError(f"not a distribution spec: {spec!r}")
