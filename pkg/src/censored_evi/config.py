"""Simulation run configuration: a small key-value text format.

Example::

    # index of X is -1, index of C is -3/2
    dist_x = revburr(1,1,1,10)
    dist_c = revburr(10,0.6666666666666666,1,10)
    n      = 500
    reps   = 500
    seed   = 2014
    k_min  = 50
    k_max  = 250
    k_step = 25
    alpha  = 2
    families = type1
    methods  = km,l,efg
    out    = figure1.csv

Lines are ``key = value``; blank lines and lines starting with ``#`` are
ignored.  ``parse_config`` reports problems with the offending line
number and key name.  ``config_text`` is its lossless inverse.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .distributions import DistributionSpec, distribution_literal, parse_distribution
from .estimators import Family, Method
from .montecarlo import StudyDesign, build_specs

__all__ = ["RunConfig", "parse_config", "config_text"]

_REQUIRED = ("dist_x", "dist_c", "n", "reps", "seed", "k_min", "k_max")
_KNOWN = _REQUIRED + ("k_step", "alpha", "families", "methods", "out")


@dataclass(frozen=True)
class RunConfig:
    dist_x: DistributionSpec
    dist_c: DistributionSpec
    n: int
    reps: int
    seed: int
    k_min: int
    k_max: int
    k_step: int = 1
    alphas: tuple[float, ...] = (2.0,)
    families: tuple[Family, ...] = (Family.MOMENT, Family.TYPE1, Family.TYPE2)
    methods: tuple[Method, ...] = (Method.KM, Method.LEURGANS, Method.EFG)
    out: str | None = None

    def __post_init__(self):
        if self.k_step < 1:
            raise ValueError("k_step must be >= 1")
        if self.k_min > self.k_max:
            raise ValueError("k_min must not exceed k_max")
        if not self.alphas:
            raise ValueError("alpha list must not be empty")
        if not self.families or not self.methods:
            raise ValueError("families and methods must not be empty")

    @property
    def k_grid(self) -> tuple[int, ...]:
        return tuple(range(self.k_min, self.k_max + 1, self.k_step))

    def with_overrides(self, *, seed: int | None = None, reps: int | None = None,
                       n: int | None = None) -> "RunConfig":
        cfg = self
        if seed is not None:
            cfg = dataclasses.replace(cfg, seed=seed)
        if reps is not None:
            cfg = dataclasses.replace(cfg, reps=reps)
        if n is not None:
            cfg = dataclasses.replace(cfg, n=n)
        return cfg

    def to_design(self) -> StudyDesign:
        return StudyDesign(
            dist_x=self.dist_x,
            dist_c=self.dist_c,
            n=self.n,
            reps=self.reps,
            k_grid=self.k_grid,
            alphas=self.alphas,
            specs=build_specs(self.families, self.methods, self.alphas),
            seed=self.seed,
        )


def _parse_int(key: str, raw: str, lineno: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"line {lineno}: key {key!r} expects an integer, got {raw!r}") from None


def _parse_alphas(raw: str, lineno: int) -> tuple[float, ...]:
    try:
        values = tuple(float(p.strip()) for p in raw.split(","))
    except ValueError:
        raise ValueError(f"line {lineno}: key 'alpha' expects numbers, got {raw!r}") from None
    if any(a < 1 for a in values):
        raise ValueError(f"line {lineno}: every alpha must be >= 1")
    return values


def _parse_enum_list(enum_cls, key: str, raw: str, lineno: int):
    known = {member.value: member for member in enum_cls}
    out = []
    for part in raw.split(","):
        name = part.strip()
        if name not in known:
            raise ValueError(
                f"line {lineno}: key {key!r} has unknown entry {name!r} "
                f"(expected one of {', '.join(known)})"
            )
        out.append(known[name])
    return tuple(out)


def parse_config(text: str) -> RunConfig:
    """Parse the key-value format; raise ValueError naming the bad line/key."""
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _KNOWN:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = (value, lineno)
    for key in _REQUIRED:
        if key not in raw:
            raise ValueError(f"missing required key {key!r}")

    def take(key: str) -> tuple[str, int] | None:
        return raw.get(key)

    kwargs = {}
    for key in ("dist_x", "dist_c"):
        value, lineno = raw[key]
        try:
            kwargs[key] = parse_distribution(value)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: key {key!r}: {exc}") from None
    for key in ("n", "reps", "seed", "k_min", "k_max"):
        value, lineno = raw[key]
        kwargs[key] = _parse_int(key, value, lineno)
    if take("k_step"):
        value, lineno = raw["k_step"]
        kwargs["k_step"] = _parse_int("k_step", value, lineno)
    if take("alpha"):
        value, lineno = raw["alpha"]
        kwargs["alphas"] = _parse_alphas(value, lineno)
    if take("families"):
        value, lineno = raw["families"]
        kwargs["families"] = _parse_enum_list(Family, "families", value, lineno)
    if take("methods"):
        value, lineno = raw["methods"]
        kwargs["methods"] = _parse_enum_list(Method, "methods", value, lineno)
    if take("out"):
        kwargs["out"] = raw["out"][0]
    return RunConfig(**kwargs)


def config_text(cfg: RunConfig) -> str:
    """Canonical serialization; parse_config(config_text(cfg)) == cfg."""
    lines = [
        f"dist_x = {distribution_literal(cfg.dist_x)}",
        f"dist_c = {distribution_literal(cfg.dist_c)}",
        f"n = {cfg.n}",
        f"reps = {cfg.reps}",
        f"seed = {cfg.seed}",
        f"k_min = {cfg.k_min}",
        f"k_max = {cfg.k_max}",
        f"k_step = {cfg.k_step}",
        f"alpha = {','.join(repr(a) for a in cfg.alphas)}",
        f"families = {','.join(f.value for f in cfg.families)}",
        f"methods = {','.join(m.value for m in cfg.methods)}",
    ]
    if cfg.out is not None:
        lines.append(f"out = {cfg.out}")
    return "\n".join(lines) + "\n"
