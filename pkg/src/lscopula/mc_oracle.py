"""Monte Carlo corroboration of the analytic system distributions.

Component lifetimes are drawn by pushing copula samples through the
component laws: for a series system the copula couples the survival
probabilities (``T_i = isf_i(U_i)``), for a parallel system it couples the
distribution functions (``T_i = quantile_i(U_i)``).  Results corroborate
analytic verdicts but never decide them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .copulas import BLOCK_ROWS, sample_copula
from .errors import DomainError
from .systems import SystemSpec

KS_ALPHA = 0.01


@dataclass(frozen=True)
class SimulationResult:
    lifetimes: np.ndarray
    spec: SystemSpec
    seed: int | None
    count: int

    @property
    def mean(self) -> float:
        return float(np.mean(self.lifetimes))

    @property
    def stderr(self) -> float:
        return float(np.std(self.lifetimes, ddof=1) / np.sqrt(self.count)) if self.count > 1 else np.nan

    def empirical_sf(self, t):
        srt = np.sort(self.lifetimes)
        t = np.asarray(t, dtype=float)
        return 1.0 - np.searchsorted(srt, t, side="right") / self.count


def _uniforms(spec: SystemSpec, count: int, seed) -> np.ndarray:
    if spec.dependence is not None:
        return sample_copula(spec.dependence, spec.n, count, seed)
    # same block layout as the copula sampler so the seed semantics match
    nblocks = -(-count // BLOCK_ROWS)
    children = np.random.SeedSequence(seed).spawn(nblocks)
    out = np.empty((count, spec.n))
    for k, ss in enumerate(children):
        rows = min(BLOCK_ROWS, count - k * BLOCK_ROWS)
        out[k * BLOCK_ROWS : k * BLOCK_ROWS + rows] = np.random.default_rng(ss).uniform(size=(rows, spec.n))
    return np.clip(out, np.finfo(float).tiny, np.nextafter(1.0, 0.0))


def simulate_system(spec: SystemSpec, count: int, seed=0) -> SimulationResult:
    """``count`` system lifetimes; deterministic for a given seed."""
    if count < 1:
        raise DomainError("count must be positive")
    u = _uniforms(spec, count, seed)
    if spec.structure == "series":
        comps = np.column_stack([c.isf(u[:, i]) for i, c in enumerate(spec.components)])
        life = comps.min(axis=1)
    else:
        comps = np.column_stack([c.quantile(u[:, i]) for i, c in enumerate(spec.components)])
        life = comps.max(axis=1)
    return SimulationResult(life, spec, seed, count)


def ks_critical(alpha: float, count: int) -> float:
    """Asymptotic two-sided critical value ``c(alpha) / sqrt(count)``."""
    return float(np.sqrt(-0.5 * np.log(alpha / 2.0)) / np.sqrt(count))


@dataclass(frozen=True)
class KSResult:
    statistic: float
    critical: float
    pvalue: float
    alpha: float

    @property
    def passed(self) -> bool:
        return self.statistic < self.critical

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "critical": self.critical,
            "pvalue": self.pvalue,
            "alpha": self.alpha,
            "passed": self.passed,
        }


def ks_compare(sim: SimulationResult, analytic=None, alpha: float = KS_ALPHA) -> KSResult:
    """Two-sided KS test of the simulated lifetimes against an analytic cdf (default: the simulated system's own)."""
    if sim.count < 100:
        raise DomainError("KS comparison needs at least 100 draws")
    cdf = sim.spec.cdf if analytic is None else analytic
    res = stats.kstest(sim.lifetimes, cdf)
    return KSResult(float(res.statistic), ks_critical(alpha, sim.count), float(res.pvalue), alpha)
