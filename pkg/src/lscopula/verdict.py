"""Four-valued numerical verdicts shared by every checker in the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

#: absolute tolerance on probabilities
PROB_TOL = 1e-10
#: max |lhs - rhs| below which a verdict is promoted to equality
EQ_TOL = 1e-12
MAX_WITNESSES = 5


class Status(str, Enum):
    HOLDS = "holds"
    HOLDS_WITH_EQUALITY = "holds_with_equality"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"

    @property
    def holds(self) -> bool:
        return self in (Status.HOLDS, Status.HOLDS_WITH_EQUALITY)


@dataclass(frozen=True)
class Witness:
    point: tuple
    lhs: float
    rhs: float

    def to_dict(self) -> dict:
        return {"point": [float(p) for p in self.point], "lhs": float(self.lhs), "rhs": float(self.rhs)}


@dataclass(frozen=True)
class CheckVerdict:
    """Outcome of a sampled inequality check ``lhs <= rhs``.

    ``slack`` is the largest observed violation ``lhs - rhs`` (negative when
    the inequality holds with room to spare).
    """

    status: Status
    slack: float = 0.0
    tolerance: float = PROB_TOL
    witness: tuple = field(default_factory=tuple)
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status.holds

    def to_dict(self) -> dict:
        out = {
            "status": self.status.value,
            "slack": _finite(self.slack),
            "tolerance": float(self.tolerance),
            "witness": [w.to_dict() for w in self.witness],
        }
        if self.note:
            out["note"] = self.note
        return out


def _finite(x: float):
    x = float(x)
    return x if np.isfinite(x) else None


def compare(
    points,
    lhs,
    rhs,
    tol: float = PROB_TOL,
    eq_tol: float = EQ_TOL,
    noise=None,
) -> CheckVerdict:
    """Verdict for ``lhs <= rhs`` evaluated pointwise.

    ``points`` is an array whose leading axis matches ``lhs``; ``tol`` and
    ``noise`` may be scalars or per-point arrays. Violations up to ``tol``
    count as holding; violations above ``tol`` but within ``noise`` are
    Inconclusive; anything beyond is a failure.
    """
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    ok = np.isfinite(lhs) & np.isfinite(rhs)
    if not np.any(ok):
        return CheckVerdict(Status.INCONCLUSIVE, np.nan, float(np.max(tol)), note="no evaluable points")
    tol_arr = np.broadcast_to(np.asarray(tol, dtype=float), lhs.shape)
    noise_arr = tol_arr if noise is None else np.maximum(np.broadcast_to(np.asarray(noise, float), lhs.shape), tol_arr)
    viol = np.where(ok, lhs - rhs, -np.inf)
    slack = float(np.max(viol))
    if np.max(np.abs(np.where(ok, lhs - rhs, 0.0))) < eq_tol:
        return CheckVerdict(Status.HOLDS_WITH_EQUALITY, slack, float(np.max(tol_arr)))
    bad = viol > noise_arr
    if np.any(bad):
        order = np.argsort(-(viol - noise_arr))[:MAX_WITNESSES]
        wit = tuple(Witness(tuple(pts[i]), lhs[i], rhs[i]) for i in order if bad[i])
        return CheckVerdict(Status.FAILS, slack, float(np.max(tol_arr)), wit)
    if np.any(viol > tol_arr):
        return CheckVerdict(Status.INCONCLUSIVE, slack, float(np.max(tol_arr)), note="violation within noise band")
    return CheckVerdict(Status.HOLDS, slack, float(np.max(tol_arr)))


def all_of(verdicts: Iterable[CheckVerdict]) -> CheckVerdict:
    """Conjunction: any failure fails, then any inconclusive; equality only if all are equalities."""
    vs = list(verdicts)
    if not vs:
        return CheckVerdict(Status.INCONCLUSIVE, note="empty conjunction")
    for status in (Status.FAILS, Status.INCONCLUSIVE):
        hit = [v for v in vs if v.status is status]
        if hit:
            return hit[0]
    if all(v.status is Status.HOLDS_WITH_EQUALITY for v in vs):
        return vs[0]
    worst = max(vs, key=lambda v: v.slack if np.isfinite(v.slack) else -np.inf)
    return CheckVerdict(Status.HOLDS, worst.slack, worst.tolerance)


def any_of(verdicts: Sequence[CheckVerdict]) -> CheckVerdict:
    """Disjunction: the first holding verdict wins."""
    vs = list(verdicts)
    for v in vs:
        if v.holds:
            return v
    for v in vs:
        if v.status is Status.INCONCLUSIVE:
            return v
    return vs[0] if vs else CheckVerdict(Status.INCONCLUSIVE, note="empty disjunction")
