"""Derivatives and shape predicates (monotone, r-convex, log-shape, hazard composites).

Functions live on subsets of (0, inf) whose grids span several decades, so
finite differences use a step proportional to ``|u|`` rather than an absolute
one.  Whenever a closed-form derivative is attached to a
:class:`ScalarFunction` it is used instead of the stencil; the stencil stays
available as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .baselines import BaselineDistribution
from .errors import DomainError, PositivityError
from .verdict import CheckVerdict, compare

EPS = np.finfo(float).eps
_STEP = {1: EPS ** (1 / 3), 2: EPS ** (1 / 4), 3: EPS ** (1 / 5), 4: EPS ** (1 / 6)}
# central stencils: offsets (in units of h), weights, denominator factor
_STENCIL = {
    1: ((-1, 1), (-1.0, 1.0), 2.0),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0), 1.0),
    3: ((-2, -1, 1, 2), (-1.0, 2.0, -2.0, 1.0), 2.0),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0), 1.0),
}
NOISE_SAFETY = 64.0
SHAPE_SLACK = 1e-8
DEFAULT_GRID_SIZE = 512
TWO_LOG_INTERPRETATIONS = ("default", "literal")


@dataclass(frozen=True)
class ScalarFunction:
    f: Callable
    domain: tuple = (0.0, np.inf)
    derivs: Mapping[int, Callable] = field(default_factory=dict)
    log_derivs: Mapping[int, Callable] = field(default_factory=dict)
    name: str = ""

    def __call__(self, u):
        return self.f(u)


def numeric_derivative_with_noise(f: Callable, u, order: int, domain=(0.0, np.inf), floor: float = 0.0):
    """Central-difference estimate of f^(order)(u) and a rounding-noise bound.

    The step is ``c_k * max(|u|, floor)``; ``floor=0`` gives a purely relative step.
    """
    if order not in _STENCIL:
        raise DomainError("order must be between 1 and 4")
    u = np.asarray(u, dtype=float)
    h = _STEP[order] * np.maximum(np.abs(u), floor)
    h = np.where(h > 0, h, _STEP[order])
    lo, hi = domain
    if np.any(u - 2 * h <= lo) or np.any(u + 2 * h >= hi):
        raise DomainError("evaluation point too close to the domain boundary")
    offsets, weights, denom = _STENCIL[order]
    vals = [np.asarray(f(u + k * h), dtype=float) for k in offsets]
    est = sum(w * v for w, v in zip(weights, vals)) / (denom * h**order)
    mag = sum(abs(w) * np.abs(v) for w, v in zip(weights, vals))
    noise = NOISE_SAFETY * EPS * mag / (denom * h**order)
    return est, noise


def numeric_derivative(f, u, order: int = 1):
    domain = f.domain if isinstance(f, ScalarFunction) else (-np.inf, np.inf)
    return numeric_derivative_with_noise(f, u, order, domain)[0]


def derivative(sf: ScalarFunction, u, order: int):
    """Closed form when attached, otherwise the stencil; returns (value, noise)."""
    if order in sf.derivs:
        d = np.asarray(sf.derivs[order](u), dtype=float)
        return d, np.zeros_like(d)
    return numeric_derivative_with_noise(sf.f, u, order, sf.domain)


def _as_function(f) -> ScalarFunction:
    return f if isinstance(f, ScalarFunction) else ScalarFunction(f)


def monotone_verdict(f, direction: str, grid, slack: float = SHAPE_SLACK) -> CheckVerdict:
    """Weak monotonicity from consecutive grid values."""
    if direction not in ("inc", "dec"):
        raise DomainError("direction must be 'inc' or 'dec'")
    grid = np.asarray(grid, dtype=float)
    v = np.asarray(_as_function(f)(grid), dtype=float)
    a, b = (v[:-1], v[1:]) if direction == "inc" else (v[1:], v[:-1])
    scale = np.max(np.abs(v[np.isfinite(v)])) if np.any(np.isfinite(v)) else 1.0
    pts = np.stack([grid[:-1], grid[1:]], axis=1)
    return compare(pts, a, b, tol=slack * max(scale, 1e-300))


def r_shape_verdict(f, r: int, sign: str, grid, slack: float = SHAPE_SLACK) -> CheckVerdict:
    """Sign of the order-``r`` derivative on the grid (r-convex: ``nonneg``, r-concave: ``nonpos``)."""
    if sign not in ("nonneg", "nonpos"):
        raise DomainError("sign must be 'nonneg' or 'nonpos'")
    sf = _as_function(f)
    grid = np.asarray(grid, dtype=float)
    d, noise = derivative(sf, grid, r)
    natural = np.abs(np.asarray(sf(grid), dtype=float)) / np.abs(grid) ** r
    lhs = -d if sign == "nonneg" else d
    return compare(grid, lhs, np.zeros_like(lhs), tol=slack * natural, noise=noise)


def log_shape_verdict(f, shape: str, grid, slack: float = SHAPE_SLACK) -> CheckVerdict:
    """Log-concavity / log-convexity via the sign of (log f)''."""
    if shape not in ("log-concave", "log-convex"):
        raise DomainError("shape must be 'log-concave' or 'log-convex'")
    sf = _as_function(f)
    grid = np.asarray(grid, dtype=float)
    vals = np.asarray(sf(grid), dtype=float)
    if np.any(~(vals > 0)):
        raise PositivityError("log-shape needs a strictly positive function")
    if 2 in sf.log_derivs:
        d2 = np.asarray(sf.log_derivs[2](grid), dtype=float)
        noise = np.zeros_like(d2)
    else:
        d2, noise = numeric_derivative_with_noise(lambda s: np.log(sf(s)), grid, 2, sf.domain)
    natural = np.maximum(np.abs(np.log(vals)), 1.0) / grid**2
    lhs = -d2 if shape == "log-convex" else d2
    return compare(grid, lhs, np.zeros_like(lhs), tol=slack * natural, noise=noise)


def generator_function(g) -> ScalarFunction:
    """psi of an Archimedean generator with closed-form log-derivatives when known."""
    logd = {}
    if g.log_psi_derivative(np.array([1.0]), 2) is not None:
        logd = {k: (lambda t, k=k: g.log_psi_derivative(t, k)) for k in (1, 2)}
    return ScalarFunction(g.psi, (0.0, np.inf), {}, logd, f"psi[{g.family}]")


def default_grid(b: BaselineDistribution, count: int = DEFAULT_GRID_SIZE, lo_p: float = 0.001, hi_p: float = 0.999):
    """Log-spaced points between the ``lo_p`` and ``hi_p`` baseline quantiles."""
    return np.geomspace(float(b.quantile(lo_p)), float(b.quantile(hi_p)), count)


# -- hazard composites -------------------------------------------------------

def _composite(b: BaselineDistribution, kind: str) -> ScalarFunction:
    r = lambda u, k=0: b.hazard_derivative(u, k)  # noqa: E731
    table = {
        "r": (lambda u: r(u), {1: lambda u: r(u, 1), 2: lambda u: r(u, 2), 3: lambda u: r(u, 3)}),
        "ur": (lambda u: u * r(u), {1: lambda u: r(u) + u * r(u, 1), 2: lambda u: 2 * r(u, 1) + u * r(u, 2)}),
        "u2r": (lambda u: u * u * r(u), {1: lambda u: 2 * u * r(u) + u * u * r(u, 1)}),
        "u_dur": (
            lambda u: u * r(u) + u * u * r(u, 1),
            {1: lambda u: r(u) + 3 * u * r(u, 1) + u * u * r(u, 2)},
        ),
        "u2r1": (lambda u: u * u * r(u, 1), {1: lambda u: 2 * u * r(u, 1) + u * u * r(u, 2)}),
        "u3r2": (lambda u: u**3 * r(u, 2), {1: lambda u: 3 * u * u * r(u, 2) + u**3 * r(u, 3)}),
        "logr_dd": (lambda u: _log_r_derivs(b, u)[1], {1: lambda u: _log_r_derivs(b, u)[2]}),
        "rr": (lambda u: b.reversed_hazard(u), {}),
        "urr": (lambda u: u * b.reversed_hazard(u), {}),
        "u2rr": (lambda u: u * u * b.reversed_hazard(u), {}),
    }
    f, derivs = table[kind]
    logd = {}
    if kind == "r":
        logd = {1: lambda u: _log_r_derivs(b, u)[0], 2: lambda u: _log_r_derivs(b, u)[1]}
    return ScalarFunction(f, (0.0, np.inf), derivs, logd, kind)


def _log_r_derivs(b: BaselineDistribution, u):
    r0, r1, r2, r3 = (b.hazard_derivative(u, k) for k in range(4))
    l1 = r1 / r0
    l2 = r2 / r0 - l1 * l1
    l3 = r3 / r0 - r2 * r1 / (r0 * r0) - 2.0 * l1 * l2
    return l1, l2, l3


#: condition name -> (composite, check, argument)
CONDITIONS = {
    "r_inc": ("r", "mono", "inc"),
    "r_dec": ("r", "mono", "dec"),
    "r_concave": ("r", "shape", (2, "nonpos")),
    "r_convex": ("r", "shape", (2, "nonneg")),
    "r_1concave": ("r", "shape", (1, "nonpos")),
    "r_2concave": ("r", "shape", (2, "nonpos")),
    "r_3concave": ("r", "shape", (3, "nonpos")),
    "ur_inc": ("ur", "mono", "inc"),
    "ur_dec": ("ur", "mono", "dec"),
    "ur_concave": ("ur", "shape", (2, "nonpos")),
    "ur_convex": ("ur", "shape", (2, "nonneg")),
    "u2r_dec": ("u2r", "mono", "dec"),
    "u_dur_dec": ("u_dur", "mono", "dec"),
    "u_dur_inc": ("u_dur", "mono", "inc"),
    "u2r1_dec": ("u2r1", "mono", "dec"),
    "u2r1_inc": ("u2r1", "mono", "inc"),
    "u3r2_inc": ("u3r2", "mono", "inc"),
    "u3r2_dec": ("u3r2", "mono", "dec"),
    "log_r_concave": ("r", "log", "log-concave"),
    "log_r_convex": ("r", "log", "log-convex"),
    "two_log_convex": ("logr_dd", "twolog", "convex"),
    "two_log_concave": ("logr_dd", "twolog", "concave"),
    "rr_dec": ("rr", "mono", "dec"),
    "urr_dec": ("urr", "mono", "dec"),
    "u2rr_dec": ("u2rr", "mono", "dec"),
}

INTERPRETATION_DEPENDENT = ("two_log_convex", "two_log_concave")


def composite_condition(
    b: BaselineDistribution,
    condition: str,
    grid=None,
    interpretation: str = "default",
) -> CheckVerdict:
    """Evaluate a named hazard-shape condition of baseline ``b`` on ``grid``.

    The "2-log" conditions have two readings: ``default`` asks that
    (log r)'' be nondecreasing (convex) / nonincreasing (concave); ``literal``
    asks for (log r)'' >= 0 / <= 0.
    """
    if condition not in CONDITIONS:
        raise DomainError(f"unknown condition {condition!r}")
    if interpretation not in TWO_LOG_INTERPRETATIONS:
        raise DomainError(f"unknown 2-log interpretation {interpretation!r}")
    grid = default_grid(b) if grid is None else np.asarray(grid, dtype=float)
    kind, check, arg = CONDITIONS[condition]
    fn = _composite(b, kind)
    if check == "mono":
        return monotone_verdict(fn, arg, grid)
    if check == "shape":
        return r_shape_verdict(fn, arg[0], arg[1], grid)
    if check == "log":
        return log_shape_verdict(fn, arg, grid)
    # 2-log conditions act on (log r)''
    if interpretation == "default":
        return monotone_verdict(fn, "inc" if arg == "convex" else "dec", grid)
    vals = fn(grid)
    natural = 1.0 / grid**2
    lhs = -vals if arg == "convex" else vals
    return compare(grid, lhs, np.zeros_like(lhs), tol=SHAPE_SLACK * natural)
