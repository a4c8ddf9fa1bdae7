"""Series and parallel system lifetimes built from location-scale components.

A series system fails at the first component failure, so its survival
function is ``psi(sum phi(sf_k))``; a parallel system fails at the last one,
so its distribution function is ``psi(sum phi(F_k))``.  With no dependence
structure (``dependence=None``) these reduce to plain products.

Dependent systems only have numerical hazards and densities (log-derivatives
of the survival or distribution function); independent ones use the
component sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import baselines as _bl
from . import copulas as _cop
from .baselines import LSDistribution, _log1mexp, bisect_quantile
from .calculus import numeric_derivative_with_noise
from .copulas import ArchimedeanGenerator
from .errors import ConvergenceError, DimensionError, DomainError

STRUCTURES = ("series", "parallel")
QUANTILE_REL_WIDTH = 1e-13
MAX_BRACKET_DOUBLINGS = 200


@dataclass(frozen=True)
class SystemSpec:
    """``n`` components, an optional Archimedean generator and a structure."""

    components: tuple
    dependence: ArchimedeanGenerator | None = None
    structure: str = "series"

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise DomainError("a system needs at least one component")
        if self.structure not in STRUCTURES:
            raise DomainError(f"structure must be one of {STRUCTURES}")
        if self.dependence is not None and self.n > self.dependence.max_dim:
            raise DimensionError(f"{self.n} components exceed the generator's max_dim")

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def locations(self) -> np.ndarray:
        return np.array([c.location for c in self.components])

    @property
    def scales(self) -> np.ndarray:
        return np.array([c.scale for c in self.components])

    @property
    def left_edge(self) -> float:
        """Left end of the system's support."""
        loc = self.locations
        return float(loc.min() if self.structure == "series" else loc.max())

    @property
    def independent(self) -> bool:
        return self.dependence is None

    def _stack(self, method: str, t):
        t = np.asarray(t, dtype=float)
        return np.stack([getattr(c, method)(t) for c in self.components])

    # -- distribution --------------------------------------------------------

    def logsf(self, t):
        if self.structure == "parallel":
            return _log1mexp(self.logcdf(t))
        parts = self._stack("logsf", t)
        if self.independent:
            return parts.sum(axis=0)
        return _archimedean_log(self.dependence, parts)

    def logcdf(self, t):
        if self.structure == "series":
            return _log1mexp(self.logsf(t))
        parts = self._stack("logcdf", t)
        if self.independent:
            return parts.sum(axis=0)
        return _archimedean_log(self.dependence, parts)

    def sf(self, t):
        if self.structure == "parallel":
            return -np.expm1(self.logcdf(t))
        return np.exp(self.logsf(t))

    def cdf(self, t):
        if self.structure == "series":
            return -np.expm1(self.logsf(t))
        return np.exp(self.logcdf(t))

    # -- rates and densities -------------------------------------------------

    def hazard(self, t):
        if self.independent and self.structure == "series":
            # a component cannot fail before its location, so it adds no hazard there
            t = np.asarray(t, dtype=float)
            alive = t[None, ...] > self.locations.reshape((-1,) + (1,) * t.ndim)
            return np.where(alive, self._stack("hazard", t), 0.0).sum(axis=0)
        if self.independent:
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.exp(self.logpdf(t) - self.logsf(t))
        return -self._log_derivative(self.logsf, t)

    def reversed_hazard(self, t):
        if self.independent and self.structure == "parallel":
            return self._stack("reversed_hazard", t).sum(axis=0)
        if self.independent:
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.exp(self.logpdf(t) - self.logcdf(t))
        return self._log_derivative(self.logcdf, t)

    def logpdf(self, t):
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.structure == "series":
                return np.log(self.hazard(t)) + self.logsf(t)
            return np.log(self.reversed_hazard(t)) + self.logcdf(t)

    def pdf(self, t):
        return np.exp(self.logpdf(t))

    def _log_derivative(self, fn, t):
        """d/dt fn(t) with a step proportional to the distance from the nearest kink on the left."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        loc = self.locations
        below = np.where(loc[:, None] < t[None, :], loc[:, None], -np.inf).max(axis=0)
        origin = np.where(np.isfinite(below), below, 0.0)
        d, _ = numeric_derivative_with_noise(lambda s: fn(origin + s), t - origin, 1, (0.0, np.inf))
        return d

    def quantile(self, p):
        return system_quantile(self, p)

    def describe(self) -> dict:
        return {
            "structure": self.structure,
            "dependence": None if self.dependence is None else self.dependence.describe(),
            "components": [c.describe() for c in self.components],
        }


def _archimedean_log(g: ArchimedeanGenerator, log_parts):
    """log psi(sum_k phi(exp(log_parts[k]))) with the phi-sum clamped at the generator cap."""
    s = np.sum(g.phi_from_log(log_parts), axis=0)
    out = g.log_psi(np.minimum(s, g.cap))
    return np.where(np.isinf(s), -np.inf, out)


def series_sf(spec: SystemSpec, t):
    if spec.structure != "series":
        raise DomainError("series_sf needs a series system")
    return spec.sf(t)


def parallel_cdf(spec: SystemSpec, t):
    if spec.structure != "parallel":
        raise DomainError("parallel_cdf needs a parallel system")
    return spec.cdf(t)


def series_hazard_independent(spec: SystemSpec, t):
    """Sum of component hazards of an independent series system."""
    if not spec.independent or spec.structure != "series":
        raise DomainError("needs an independent series system")
    t = np.asarray(t, dtype=float)
    if np.any(t <= spec.locations.max()):
        raise DomainError("hazard requires t > max(location)")
    return spec.hazard(t)


def system_quantile(spec: SystemSpec, p):
    """Bisection inverse of the system cdf; ``p`` must lie in (0, 1)."""
    p = np.asarray(p, dtype=float)
    if np.any((p <= 0) | (p >= 1)):
        raise DomainError("quantile level must lie in (0, 1)")
    flat = np.atleast_1d(p).ravel()
    lo = spec.left_edge
    width = max(float(spec.scales.max()), 1e-300)
    hi = np.full_like(flat, lo + width)
    for _ in range(MAX_BRACKET_DOUBLINGS):
        short = spec.cdf(hi) < flat
        if not np.any(short):
            break
        hi = np.where(short, lo + 2.0 * (hi - lo), hi)
    else:
        raise ConvergenceError("could not bracket the system quantile")
    out = bisect_quantile(spec.cdf, flat, lo, hi, QUANTILE_REL_WIDTH)
    return out.reshape(p.shape) if p.ndim else float(out[0])


@dataclass(frozen=True)
class MultipleOutlierSpec:
    """``n1`` copies of ``(location1, scale1)`` followed by ``n2`` copies of ``(location2, scale2)``."""

    n1: int
    n2: int
    params1: tuple
    params2: tuple
    baseline: _bl.BaselineDistribution = field(default_factory=lambda: _bl.BaselineDistribution("exponential"))

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise DomainError("both blocks need at least one component")


def expand_outlier(m: MultipleOutlierSpec, structure: str = "series") -> SystemSpec:
    comps = [LSDistribution(m.baseline, *m.params1)] * m.n1 + [LSDistribution(m.baseline, *m.params2)] * m.n2
    return SystemSpec(tuple(comps), None, structure)


def build(baseline, locations, scales, dependence=None, structure="series") -> SystemSpec:
    """System with one baseline and per-component location and scale vectors."""
    locations = np.broadcast_to(np.asarray(locations, dtype=float), np.shape(scales))
    comps = tuple(LSDistribution(baseline, float(l), float(s)) for l, s in zip(locations, scales))
    return SystemSpec(comps, dependence, structure)


def from_dict(d: dict) -> SystemSpec:
    comps = tuple(
        LSDistribution(_bl.from_dict(c["baseline"]), float(c.get("location", 0.0)), float(c.get("scale", 1.0)))
        for c in d["components"]
    )
    return SystemSpec(comps, _cop.from_dict(d.get("dependence")), d.get("structure", "series"))
