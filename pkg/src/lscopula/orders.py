"""Stochastic orders between two lifetime laws, checked on a time grid.

A lifetime law is any object with ``sf``/``cdf`` and their logs, and for the
ratio orders ``logpdf`` or ``hazard``: :class:`~lscopula.baselines.LSDistribution`
and :class:`~lscopula.systems.SystemSpec` both qualify.  ``order_verdict(a, b, rel)``
tests ``a <= b`` in the sense of ``rel``.

Ratio orders are checked as nondecreasing sequences of log-differences, not
through derivatives, so kinks in a density never produce spurious failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, MissingEvaluator
from .verdict import PROB_TOL, CheckVerdict, Status, Witness, compare

RATIO_SLACK = 1e-8
TAIL_CUTOFF = 1e-12
GRID_LEVELS = 512
EDGE_GAP = 1e-6
EDGE_POINTS = 32


class OrderRelation(str, Enum):
    ST = "ST"
    HR = "HR"
    RH = "RH"
    LR = "LR"
    RHR = "RHR"


_NEEDS = {
    OrderRelation.ST: ("sf",),
    OrderRelation.HR: ("logsf",),
    OrderRelation.RH: ("logcdf",),
    OrderRelation.LR: ("logpdf", "logsf"),
    OrderRelation.RHR: ("hazard", "logsf"),
}


@dataclass(frozen=True)
class EvaluationGrid:
    points: np.ndarray
    strategy: str = "quantile-union"
    #: lower end of the region the verdict speaks about; None is the whole support
    restrict: float | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2 or np.any(np.diff(pts) <= 0):
            raise DomainError("grid points must be a strictly increasing vector of length >= 2")
        object.__setattr__(self, "points", pts)

    @property
    def count(self) -> int:
        return self.points.size

    def refined(self) -> "EvaluationGrid":
        """Grid with a midpoint inserted between every pair of neighbours."""
        mid = 0.5 * (self.points[:-1] + self.points[1:])
        return EvaluationGrid(np.sort(np.concatenate([self.points, mid])), self.strategy, self.restrict)


def _left_edge(law) -> float:
    return float(getattr(law, "left_edge", 0.0))


def quantile_union_grid(
    a, b, count: int = GRID_LEVELS, lo: float = 0.001, hi: float = 0.999, edge: float | None = None
) -> EvaluationGrid:
    """Both laws' quantiles at ``count`` levels plus points crowding the left edge.

    All points lie strictly beyond ``edge + 1e-6 * scale``; ``edge`` defaults
    to the larger of the two support edges.  An explicit ``edge`` confines
    the verdict to times beyond it.
    """
    restrict = edge
    edge = max(_left_edge(a), _left_edge(b)) if edge is None else edge
    levels = np.linspace(lo, hi, count)
    parts = []
    for law in (a, b):
        # levels conditional on surviving past the edge, so no point is wasted below it
        p0 = float(law.cdf(edge))
        if 1.0 - p0 > TAIL_CUTOFF:
            lv = p0 + (1.0 - p0) * levels
            parts.append(np.atleast_1d(law.quantile(lv[lv < 1.0])))
    if not parts:
        raise DomainError("both laws have negligible mass beyond the grid edge")
    qs = np.concatenate(parts)
    scale = max(float(np.max(qs)) - edge, 1e-12)
    start = edge + EDGE_GAP * scale
    near = start + np.geomspace(EDGE_GAP, 1.0, EDGE_POINTS) * scale * 0.05
    pts = np.unique(np.concatenate([qs, near, [start]]))
    return EvaluationGrid(pts[pts >= start], "quantile-union", restrict)


def log_spaced_grid(lo: float, hi: float, count: int = GRID_LEVELS) -> EvaluationGrid:
    if not 0 < lo < hi:
        raise DomainError("need 0 < lo < hi")
    return EvaluationGrid(np.geomspace(lo, hi, count), "log-spaced")


def _require(law, names):
    for name in names:
        if not callable(getattr(law, name, None)):
            raise MissingEvaluator(f"law lacks a {name!r} evaluator")


def _nondecreasing(t, d, keep, slack, noise=None) -> CheckVerdict:
    """Verdict that ``d`` is nondecreasing on the kept points; the tail only yields Inconclusive."""
    pairs = np.stack([t[:-1], t[1:]], axis=1)
    k = keep[:-1] & keep[1:]
    if noise is not None:
        noise = np.maximum(noise[:-1], noise[1:])[k]
    main = compare(pairs[k], d[:-1][k], d[1:][k], tol=slack, noise=noise) if np.any(k) else None
    tail = ~k & np.isfinite(d[:-1]) & np.isfinite(d[1:])
    if main is None:
        return CheckVerdict(Status.INCONCLUSIVE, np.nan, slack, note="no points above the tail cutoff")
    if np.any(tail):
        tv = compare(pairs[tail], d[:-1][tail], d[1:][tail], tol=slack, noise=np.inf)
        if tv.status is Status.INCONCLUSIVE and main.holds:
            return CheckVerdict(Status.INCONCLUSIVE, main.slack, slack, note="violation beyond the tail cutoff")
    return main


def _late_start(a, b) -> CheckVerdict | None:
    """Failure when ``a`` starts after ``b`` while ``b`` already carries mass.

    On the gap between the two left edges ``sf_a = 1`` and ``sf_b`` falls, so
    every ratio that implies ``a <=st b`` decreases there.
    """
    ea, eb = _left_edge(a), _left_edge(b)
    if ea <= eb:
        return None
    sb = float(b.sf(ea))
    if 1.0 - sb <= PROB_TOL:
        return None
    drop = -np.log(sb) if sb > 0 else np.inf
    wit = (Witness((eb, ea), 0.0, -drop),)
    return CheckVerdict(Status.FAILS, drop, RATIO_SLACK, wit, note="a starts after b")


def order_verdict(a, b, rel: OrderRelation | str, grid: EvaluationGrid | None = None, tol: float | None = None) -> CheckVerdict:
    """Does ``a <= b`` hold in the order ``rel`` on ``grid``?

    ST compares survival functions with absolute tolerance 1e-10.  HR, RH
    and LR ask that ``log b - log a`` of sf, cdf or pdf be nondecreasing;
    RHR asks the same of ``log h_a - log h_b``.  Unless the grid is
    restricted, HR, RH and LR also fail when ``a`` starts after ``b``.
    """
    rel = OrderRelation(rel)
    _require(a, _NEEDS[rel])
    _require(b, _NEEDS[rel])
    grid = quantile_union_grid(a, b) if grid is None else grid
    t = grid.points
    if rel is OrderRelation.ST:
        return compare(t, a.sf(t), b.sf(t), tol=PROB_TOL if tol is None else tol)
    slack = RATIO_SLACK if tol is None else tol
    if rel in IMPLIES and grid.restrict is None:
        late = _late_start(a, b)
        if late is not None:
            return late
    edge = max(_left_edge(a), _left_edge(b))
    if np.any(t <= edge):
        raise DomainError("ratio orders need grid points beyond both support edges")
    with np.errstate(divide="ignore", invalid="ignore"):
        lsa, lsb = a.logsf(t), b.logsf(t)
        keep = (lsa >= np.log(TAIL_CUTOFF)) & (lsb >= np.log(TAIL_CUTOFF))
        if rel is OrderRelation.HR:
            d = lsb - lsa
        elif rel is OrderRelation.RH:
            lca, lcb = a.logcdf(t), b.logcdf(t)
            keep &= (lca >= np.log(TAIL_CUTOFF)) & (lcb >= np.log(TAIL_CUTOFF))
            d = lcb - lca
        elif rel is OrderRelation.LR:
            d = b.logpdf(t) - a.logpdf(t)
        else:
            d = np.log(a.hazard(t)) - np.log(b.hazard(t))
    return _nondecreasing(t, d, keep & np.isfinite(d), slack)


@dataclass(frozen=True)
class OrderChainReport:
    verdicts: dict
    violations: tuple

    @property
    def consistent(self) -> bool:
        return not self.violations


#: if the key holds, every listed relation must hold too
IMPLIES = {
    OrderRelation.LR: (OrderRelation.HR, OrderRelation.RH, OrderRelation.ST),
    OrderRelation.HR: (OrderRelation.ST,),
    OrderRelation.RH: (OrderRelation.ST,),
}


def order_chain_check(a, b, grid: EvaluationGrid | None = None) -> OrderChainReport:
    """All five verdicts plus any breach of LR => HR, RH => ST.

    A breach is a numerical bug, never a property of the laws.
    """
    grid = quantile_union_grid(a, b) if grid is None else grid
    verdicts = {rel: order_verdict(a, b, rel, grid) for rel in OrderRelation}
    violations = []
    for strong, weaker in IMPLIES.items():
        if verdicts[strong].holds:
            violations += [(strong.value, w.value) for w in weaker if verdicts[w].status is Status.FAILS]
    return OrderChainReport({r.value: v for r, v in verdicts.items()}, tuple(violations))
