"""Baseline lifetime laws on (0, inf) and their location-scale versions.

A baseline is parameterised by a family name, an optional shape and a rate
(``u -> rate * u`` inside the family's standard form).  Every quantity is
evaluated through the log cumulative hazard so deep tails do not underflow.
Hazard derivatives are available in closed form up to order three; the
shape predicates in :mod:`lscopula.calculus` rely on them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError

FAMILIES = ("exponential", "weibull", "gompertz", "halfnormal", "logistic")
_LOG2 = np.log(2.0)


def _log1mexp(a):
    """log(1 - exp(a)) for a <= 0, accurate on both ends."""
    a = np.asarray(a, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(a > -_LOG2, np.log(-np.expm1(a)), np.log1p(-np.exp(a)))


@dataclass(frozen=True)
class BaselineDistribution:
    family: str
    shape: float = 1.0
    rate: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown baseline family {self.family!r}")
        if not (self.rate > 0 and np.isfinite(self.rate)):
            raise DomainError("rate must be positive")
        if self.family in ("weibull", "gompertz") and not (self.shape > 0 and np.isfinite(self.shape)):
            raise DomainError(f"{self.family} shape must be positive")

    # -- standard-form pieces (argument already multiplied by rate) --------

    def _logsf0(self, x):
        f, a = self.family, self.shape
        if f == "exponential":
            return -x
        if f == "weibull":
            return -(x ** a)
        if f == "gompertz":
            return -np.expm1(a * x) / a
        if f == "halfnormal":
            return _LOG2 + special.log_ndtr(-x)
        return _LOG2 - np.logaddexp(0.0, x)

    def _hazard_derivs0(self, x, order):
        """r0^{(order)}(x) for the standard form."""
        f, a = self.family, self.shape
        if f == "exponential":
            return np.ones_like(x) if order == 0 else np.zeros_like(x)
        if f == "weibull":
            c = a
            for j in range(1, order + 1):
                c = c * (a - j)
            if c == 0:
                return np.zeros_like(x)
            return c * x ** (a - 1 - order)
        if f == "gompertz":
            return a**order * np.exp(a * x)
        if f == "halfnormal":
            logpdf = _LOG2 - 0.5 * x * x - 0.5 * np.log(2 * np.pi)
            r = np.exp(logpdf - self._logsf0(x))
            if order == 0:
                return r
            r1 = r * (r - x)
            if order == 1:
                return r1
            r2 = r1 * (r - x) + r * (r1 - 1.0)
            if order == 2:
                return r2
            return r2 * (r - x) + 2.0 * r1 * (r1 - 1.0) + r * r2
        s = special.expit(x)
        q = s * (1.0 - s)
        return (s, q, q * (1.0 - 2.0 * s), q * (1.0 - 6.0 * s + 6.0 * s * s))[order]

    def _quantile0(self, p):
        f, a = self.family, self.shape
        h = -np.log1p(-p)
        if f == "exponential":
            return h
        if f == "weibull":
            return h ** (1.0 / a)
        if f == "gompertz":
            return np.log1p(a * h) / a
        if f == "halfnormal":
            return np.sqrt(2.0) * special.erfinv(p)
        return np.log1p(p) - np.log1p(-p)

    def _isf0(self, q):
        """Inverse survival function of the standard form, exact for tiny ``q``."""
        f, a = self.family, self.shape
        h = -np.log(q)
        if f == "exponential":
            return h
        if f == "weibull":
            return h ** (1.0 / a)
        if f == "gompertz":
            return np.log1p(a * h) / a
        if f == "halfnormal":
            return np.sqrt(2.0) * special.erfcinv(q)
        return np.log(2.0 - q) - np.log(q)

    # -- public evaluators -------------------------------------------------

    def logsf(self, u):
        u = np.asarray(u, dtype=float)
        x = self.rate * np.maximum(u, 0.0)
        with np.errstate(over="ignore"):
            return np.where(u > 0, self._logsf0(x), 0.0)

    def sf(self, u):
        return np.exp(self.logsf(u))

    def logcdf(self, u):
        return _log1mexp(self.logsf(u))

    def cdf(self, u):
        return -np.expm1(self.logsf(u))

    def hazard(self, u):
        u = np.asarray(u, dtype=float)
        x = self.rate * np.maximum(u, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = self.rate * self._hazard_derivs0(x, 0)
        return np.where(u > 0, r, np.nan)

    def hazard_derivative(self, u, order: int):
        """d^order/du^order of the hazard; ``order=0`` is the hazard itself."""
        if order not in (0, 1, 2, 3):
            raise DomainError("hazard derivatives are available for orders 0..3")
        u = np.asarray(u, dtype=float)
        x = self.rate * np.maximum(u, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = self.rate ** (order + 1) * self._hazard_derivs0(x, order)
        return np.where(u > 0, r, np.nan)

    def logpdf(self, u):
        with np.errstate(divide="ignore"):
            return np.log(self.hazard(u)) + self.logsf(u)

    def pdf(self, u):
        u = np.asarray(u, dtype=float)
        return np.where(u > 0, np.exp(self.logpdf(np.where(u > 0, u, 1.0))), 0.0)

    def reversed_hazard(self, u):
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.exp(self.logpdf(u) - self.logcdf(u))

    def quantile(self, p):
        p = np.asarray(p, dtype=float)
        if np.any((p < 0) | (p >= 1)):
            raise DomainError("quantile level must lie in [0, 1)")
        return self._quantile0(p) / self.rate

    def isf(self, q):
        """Inverse survival function: the ``u`` with ``sf(u) = q``, for ``q`` in (0, 1]."""
        q = np.asarray(q, dtype=float)
        if np.any((q <= 0) | (q > 1)):
            raise DomainError("survival level must lie in (0, 1]")
        return self._isf0(q) / self.rate

    def describe(self) -> dict:
        return {"family": self.family, "shape": float(self.shape), "rate": float(self.rate)}


def baseline_hazard(b: BaselineDistribution, u):
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0):
        raise DomainError("baseline hazard needs u > 0")
    # NaN sentinel where even the log-survival has underflowed
    return np.where(np.isfinite(b.logsf(u)), b.hazard(u), np.nan)


@dataclass(frozen=True)
class LSDistribution:
    """Law of ``location + scale * U`` with ``U`` drawn from ``baseline``."""

    baseline: BaselineDistribution
    location: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if not (self.scale > 0 and np.isfinite(self.scale)):
            raise DomainError("scale must be positive")
        if not np.isfinite(self.location):
            raise DomainError("location must be finite")

    def _u(self, t):
        return (np.asarray(t, dtype=float) - self.location) / self.scale

    @property
    def left_edge(self) -> float:
        return float(self.location)

    def logsf(self, t):
        return self.baseline.logsf(self._u(t))

    def sf(self, t):
        return self.baseline.sf(self._u(t))

    def logcdf(self, t):
        return self.baseline.logcdf(self._u(t))

    def cdf(self, t):
        return self.baseline.cdf(self._u(t))

    def hazard(self, t):
        return self.baseline.hazard(self._u(t)) / self.scale

    def hazard_derivative(self, t, order: int):
        return self.baseline.hazard_derivative(self._u(t), order) / self.scale ** (order + 1)

    def logpdf(self, t):
        return self.baseline.logpdf(self._u(t)) - np.log(self.scale)

    def pdf(self, t):
        return self.baseline.pdf(self._u(t)) / self.scale

    def reversed_hazard(self, t):
        return self.baseline.reversed_hazard(self._u(t)) / self.scale

    def quantile(self, p):
        return self.location + self.scale * self.baseline.quantile(p)

    def isf(self, q):
        return self.location + self.scale * self.baseline.isf(q)

    def describe(self) -> dict:
        return {"baseline": self.baseline.describe(), "location": float(self.location), "scale": float(self.scale)}


def ls_sf(d: LSDistribution, t):
    return d.sf(t)


def ls_cdf(d: LSDistribution, t):
    return d.cdf(t)


def ls_hazard(d: LSDistribution, t):
    t = np.asarray(t, dtype=float)
    if np.any(t <= d.location):
        raise DomainError("hazard requires t > location")
    return baseline_hazard(d.baseline, (t - d.location) / d.scale) / d.scale


def ls_quantile(d: LSDistribution, p):
    return d.quantile(p)


def standard(b: BaselineDistribution) -> LSDistribution:
    """The baseline itself as a location-scale law (location 0, scale 1)."""
    return LSDistribution(b, 0.0, 1.0)


def from_dict(d: dict) -> BaselineDistribution:
    return BaselineDistribution(d["family"], float(d.get("shape", 1.0)), float(d.get("rate", 1.0)))


def bisect_quantile(cdf, p, lo, hi, rel_width=1e-12, max_iter=400):
    """Vectorised bisection of a monotone cdf; used where no closed form exists."""
    p = np.atleast_1d(np.asarray(p, dtype=float))
    lo = np.array(np.broadcast_to(np.asarray(lo, dtype=float), p.shape))
    hi = np.array(np.broadcast_to(np.asarray(hi, dtype=float), p.shape))
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        below = cdf(mid) < p
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= rel_width * np.maximum(np.abs(hi), 1e-300)):
            break
    return 0.5 * (lo + hi)
