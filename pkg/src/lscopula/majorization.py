"""Vector preorders (majorization and its weak, product and reciprocal variants).

Every comparison is made on increasing rearrangements ``x_(1) <= ... <= x_(n)``:

* ``M``:         sum_{i<=j} x_(i) <= sum_{i<=j} y_(i) for j < n, equal totals
* ``WeakSuper``: sum_{i<=j} x_(i) <= sum_{i<=j} y_(i) for all j
* ``WeakSub``:   sum_{i>=j} x_(i) >= sum_{i>=j} y_(i) for all j
* ``PLarger``:   prod_{i<=j} x_(i) <= prod_{i<=j} y_(i) for all j
* ``RM``:        sum_{i<=j} 1/x_(i) >= sum_{i<=j} 1/y_(i) for all j

``majorize(x, y, rel)`` reads "x is larger than y" in the sense of ``rel``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .errors import DomainError, LengthMismatch, PositivityError
from .verdict import CheckVerdict, compare

REL_TOL = 1e-12


class MajorizationRelation(str, Enum):
    M = "M"
    WEAK_SUPER = "WeakSuper"
    WEAK_SUB = "WeakSub"
    P_LARGER = "PLarger"
    RM = "RM"


class OrderedCone(str, Enum):
    DPLUS = "Dplus"
    EPLUS = "Eplus"


#: each relation implies every later one
CHAIN = (
    MajorizationRelation.M,
    MajorizationRelation.WEAK_SUPER,
    MajorizationRelation.P_LARGER,
    MajorizationRelation.RM,
)


def _pair(x, y, positive: bool):
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise LengthMismatch(f"lengths differ: {x.size} vs {y.size}")
    if positive and (np.any(x <= 0) or np.any(y <= 0)):
        raise PositivityError("relation needs strictly positive vectors")
    return np.sort(x), np.sort(y)


def _le(a, b, scale) -> bool:
    return bool(np.all(a <= b + REL_TOL * scale))


def majorize(x, y, rel: MajorizationRelation | str) -> bool:
    """True when ``x`` dominates ``y`` under ``rel`` (up to a 1e-12 relative tolerance)."""
    rel = MajorizationRelation(rel)
    positive = rel in (MajorizationRelation.P_LARGER, MajorizationRelation.RM)
    xs, ys = _pair(x, y, positive)
    if rel in (MajorizationRelation.M, MajorizationRelation.WEAK_SUPER):
        cx, cy = np.cumsum(xs), np.cumsum(ys)
        scale = np.cumsum(np.abs(xs)) + np.cumsum(np.abs(ys))
        ok = _le(cx, cy, scale)
        if rel is MajorizationRelation.M:
            ok = ok and bool(abs(cx[-1] - cy[-1]) <= REL_TOL * scale[-1])
        return ok
    if rel is MajorizationRelation.WEAK_SUB:
        cx, cy = np.cumsum(xs[::-1]), np.cumsum(ys[::-1])
        scale = np.cumsum(np.abs(xs[::-1])) + np.cumsum(np.abs(ys[::-1]))
        return _le(cy, cx, scale)
    if rel is MajorizationRelation.P_LARGER:
        both = np.concatenate([xs, ys])
        if np.min(both) < 1e-100 or np.max(both) > 1e100:
            lx, ly = np.cumsum(np.log(xs)), np.cumsum(np.log(ys))
            scale = np.cumsum(np.abs(np.log(xs))) + np.cumsum(np.abs(np.log(ys)))
            return _le(lx, ly, np.maximum(scale, 1.0))
        px, py = np.cumprod(xs), np.cumprod(ys)
        return _le(px, py, px + py)
    rx, ry = np.cumsum(1.0 / xs), np.cumsum(1.0 / ys)
    return _le(ry, rx, rx + ry)


def relations(x, y) -> dict:
    """Boolean for every relation of ``x`` over ``y``."""
    positive = bool(np.all(np.asarray(x) > 0) and np.all(np.asarray(y) > 0))
    out = {}
    for rel in MajorizationRelation:
        if rel in (MajorizationRelation.P_LARGER, MajorizationRelation.RM) and not positive:
            out[rel.value] = None
        else:
            out[rel.value] = majorize(x, y, rel)
    return out


@dataclass(frozen=True)
class ChainReport:
    relations: dict
    violations: tuple

    @property
    def consistent(self) -> bool:
        return not self.violations


def implication_chain_check(x, y) -> ChainReport:
    """Check that M => WeakSuper => PLarger => RM (and M => WeakSub) hold for this pair."""
    _pair(x, y, positive=True)
    rels = relations(x, y)
    violations = []
    for i, strong in enumerate(CHAIN):
        if rels[strong.value]:
            violations += [(strong.value, weak.value) for weak in CHAIN[i + 1 :] if not rels[weak.value]]
    if rels["M"] and not rels["WeakSub"]:
        violations.append(("M", "WeakSub"))
    return ChainReport(rels, tuple(violations))


def in_cone(x, cone: OrderedCone | str) -> bool:
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        return False
    d = np.diff(x)
    return bool(np.all(d <= 0)) if OrderedCone(cone) is OrderedCone.DPLUS else bool(np.all(d >= 0))


def sort_into(x, cone: OrderedCone | str):
    x = np.sort(np.asarray(x, dtype=float))
    return x[::-1].copy() if OrderedCone(cone) is OrderedCone.DPLUS else x


def _t_transforms(x, rng, count: int):
    """Apply ``count`` random T-transforms; the result is majorized by ``x``."""
    y = x.copy()
    n = y.size
    for _ in range(count):
        i, j = rng.choice(n, size=2, replace=False)
        w = rng.uniform(0.0, 1.0)
        yi, yj = y[i], y[j]
        y[i], y[j] = w * yi + (1 - w) * yj, w * yj + (1 - w) * yi
    return y


def _base(n, rng, lo=0.3, hi=3.0):
    return rng.uniform(lo, hi, n)


def _m_pair(n, rng, lo=0.3, hi=3.0):
    x = _base(n, rng, lo, hi)
    return x, _t_transforms(x, rng, int(rng.integers(1, 2 * n + 1)))


def _slack(n, rng, size):
    """Nonnegative perturbation, zero in a random subset of coordinates."""
    d = rng.uniform(0.0, size, n)
    return d * (rng.uniform(size=n) < 0.7)


def generate_pair(n: int, rel: MajorizationRelation | str, seed=None, cone: OrderedCone | str | None = None):
    """Random strictly positive ``(x, y)`` with ``majorize(x, y, rel)``.

    M pairs come from T-transforms; WeakSuper adds slack to the dominated
    vector; WeakSub shrinks it; PLarger works on logarithms; RM works on
    reciprocals.  ``cone`` sorts both vectors into the requested arrangement.
    """
    if n < 2:
        raise DomainError("need n >= 2")
    rel = MajorizationRelation(rel)
    rng = np.random.default_rng(seed)
    if rel is MajorizationRelation.M:
        x, y = _m_pair(n, rng)
    elif rel is MajorizationRelation.WEAK_SUPER:
        x, y = _m_pair(n, rng)
        y = y + _slack(n, rng, 0.5)
    elif rel is MajorizationRelation.WEAK_SUB:
        x, y = _m_pair(n, rng)
        y = y * (1.0 - _slack(n, rng, 0.5))
    elif rel is MajorizationRelation.P_LARGER:
        a, b = _m_pair(n, rng, -1.2, 1.1)
        x, y = np.exp(a), np.exp(b + _slack(n, rng, 0.4))
    else:
        a, b = _m_pair(n, rng, 0.3, 3.0)
        x, y = 1.0 / a, 1.0 / (b * (1.0 - _slack(n, rng, 0.5)))
    if cone is not None:
        x, y = sort_into(x, cone), sort_into(y, cone)
    return x, y


def schur_verdict(
    f: Callable,
    n: int,
    cone: OrderedCone | str | None = None,
    trials: int = 1000,
    seed=0,
    mode: str = "convex",
    slack: float = 1e-10,
) -> CheckVerdict:
    """Sampled Schur-convexity (``f(x) >= f(y)`` whenever x majorizes y) or Schur-concavity."""
    if mode not in ("convex", "concave"):
        raise DomainError("mode must be 'convex' or 'concave'")
    children = np.random.SeedSequence(seed).spawn(trials)
    pts, lhs, rhs = [], [], []
    for ss in children:
        x, y = generate_pair(n, MajorizationRelation.M, ss, cone)
        fx, fy = float(f(x)), float(f(y))
        pts.append(np.concatenate([x, y]))
        lhs.append(fy if mode == "convex" else fx)
        rhs.append(fx if mode == "convex" else fy)
    lhs, rhs = np.array(lhs), np.array(rhs)
    tol = slack * np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    return compare(np.array(pts), lhs, rhs, tol=tol)
