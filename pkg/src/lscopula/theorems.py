"""Catalog of majorization-to-stochastic-order results for LS systems, with a harness.

Each entry compares two systems built from the same kind of components:
``X`` (locations ``lam``, scales ``sigma``, baseline ``F``, generator ``psi1``)
and ``Y`` (``mu``, ``xi``, ``G``, ``psi2``).  An entry lists hypotheses
(shape conditions on the baselines, generator conditions, a baseline order,
cone membership and a majorization premise) and a conclusion order between
the system lifetimes.  :func:`check_case` evaluates everything numerically.

When a shape condition may hold for "X or Y", the whole conjunction of
shape conditions must hold for one and the same law.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from ._version import __version__
from .baselines import BaselineDistribution, LSDistribution, standard
from .calculus import INTERPRETATION_DEPENDENT, composite_condition, generator_function, log_shape_verdict
from .copulas import ArchimedeanGenerator, check_superadditive
from .errors import DomainError, ExhaustedRetries, LengthMismatch
from .majorization import MajorizationRelation as MR
from .majorization import OrderedCone, generate_pair, in_cone, majorize, sort_into
from .orders import OrderRelation, order_verdict, quantile_union_grid
from .systems import SystemSpec
from .verdict import PROB_TOL, CheckVerdict, Status, all_of, any_of

GENERATOR_GRID = np.geomspace(1e-4, 50.0, 256)


class TheoremId(str, Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"
    T6 = "T6"
    T7 = "T7"
    T8 = "T8"
    T9 = "T9"
    T10 = "T10"
    T11 = "T11"
    T12 = "T12"
    T13 = "T13"
    T14 = "T14"
    T15 = "T15"
    T16 = "T16"
    T17 = "T17"
    T18 = "T18"


class Overall(str, Enum):
    VERIFIED = "Verified"
    VACUOUSLY_SKIPPED = "VacuouslySkipped"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SubCase:
    """One part of a multi-part entry: shape conditions, premise and baseline whitelist.

    ``premise`` is ``(relation, larger_role, smaller_role)`` with roles among
    ``inv_sigma``, ``inv_xi``, ``lam`` and ``mu``.
    """

    label: str
    shape: tuple
    premise: tuple
    whitelist: str | None


@dataclass(frozen=True)
class TheoremDescriptor:
    id: TheoremId
    summary: str
    structure: str
    dependent: bool
    varies: str  # "scale" or "location"
    sub_cases: tuple
    conclusion: tuple  # (OrderRelation, "X<=Y" | "Y<=X")
    same_baseline: bool = False
    multiple_outlier: bool = False
    scalar_location: bool = False
    superadditive: bool = False
    generator_shape: str | None = None
    baseline_order: tuple | None = None  # (OrderRelation, "X<=Y" | "Y<=X")

    @property
    def interpretation_dependent(self) -> bool:
        return any(c in INTERPRETATION_DEPENDENT for s in self.sub_cases for c in s.shape)

    def sub_case(self, label: str | None) -> SubCase:
        if label is None:
            return self.sub_cases[0]
        for s in self.sub_cases:
            if s.label == label:
                return s
        raise DomainError(f"{self.id.value} has no sub-case {label!r}")

    def hypothesis_names(self) -> tuple:
        names = ["cone", "premise"]
        if self.superadditive:
            names.append("superadditive")
        if self.generator_shape:
            names.append("generator_" + self.generator_shape.replace("-", "_"))
        if self.baseline_order:
            names.append("baseline_" + self.baseline_order[0].value.lower())
        names.append("shape")
        return tuple(names)

    def describe(self) -> dict:
        rel, direction = self.conclusion
        out = {
            "id": self.id.value,
            "summary": self.summary,
            "structure": self.structure,
            "dependent": self.dependent,
            "varies": self.varies,
            "same_baseline": self.same_baseline,
            "multiple_outlier": self.multiple_outlier,
            "scalar_location": self.scalar_location,
            "hypotheses": list(self.hypothesis_names()),
            "superadditive": self.superadditive,
            "generator_shape": self.generator_shape,
            "baseline_order": None if self.baseline_order is None else [self.baseline_order[0].value, self.baseline_order[1]],
            "conclusion": {"order": rel.value, "direction": direction, "statistic": "max" if self.structure == "parallel" else "min"},
            "sub_cases": [
                {"label": s.label, "shape": list(s.shape), "premise": [s.premise[0].value, s.premise[1], s.premise[2]]}
                for s in self.sub_cases
            ],
            "interpretation_dependent": self.interpretation_dependent,
        }
        return out


def _sc(label, shape, rel, big, small, whitelist=None):
    return SubCase(label, tuple(shape), (rel, big, small), whitelist)


ST, HR, LR, RHR = OrderRelation.ST, OrderRelation.HR, OrderRelation.LR, OrderRelation.RHR
XY, YX = "X<=Y", "Y<=X"


def _build_catalog() -> tuple:
    dep_series = dict(structure="series", dependent=True)
    ind_series = dict(structure="series", dependent=False)
    dep_par = dict(structure="parallel", dependent=True)
    return (
        TheoremDescriptor(
            TheoremId.T1, "dependent series minima, scales, weak supermajorization, decreasing hazard",
            varies="scale", superadditive=True, generator_shape="log-concave", baseline_order=(ST, XY),
            sub_cases=(_sc("main", ["r_dec"], MR.WEAK_SUPER, "inv_xi", "inv_sigma", "decreasing_hazard_st"),),
            conclusion=(ST, XY), **dep_series),
        TheoremDescriptor(
            TheoremId.T2, "dependent series minima, scales, weak submajorization, increasing hazard",
            varies="scale", superadditive=True, generator_shape="log-convex", baseline_order=(ST, XY),
            sub_cases=(_sc("main", ["r_inc"], MR.WEAK_SUB, "inv_sigma", "inv_xi", "increasing_hazard_st"),),
            conclusion=(ST, XY), **dep_series),
        TheoremDescriptor(
            TheoremId.T3, "dependent series minima, scales, p-larger and reciprocal majorization",
            varies="scale", superadditive=True, generator_shape="log-concave", baseline_order=(ST, XY),
            sub_cases=(
                _sc("i", ["ur_dec"], MR.P_LARGER, "inv_xi", "inv_sigma"),
                _sc("ii", ["u2r_dec"], MR.RM, "inv_xi", "inv_sigma"),
            ),
            conclusion=(ST, XY), **dep_series),
        TheoremDescriptor(
            TheoremId.T4, "dependent series minima, locations, weak submajorization, log-concave generator",
            varies="location", superadditive=True, generator_shape="log-concave", baseline_order=(ST, XY),
            sub_cases=(_sc("main", ["ur_dec"], MR.WEAK_SUB, "mu", "lam"),),
            conclusion=(ST, XY), **dep_series),
        TheoremDescriptor(
            TheoremId.T5, "dependent series minima, locations, weak supermajorization, log-convex generator",
            varies="location", superadditive=True, generator_shape="log-convex", baseline_order=(ST, XY),
            sub_cases=(_sc("main", ["r_inc"], MR.WEAK_SUPER, "lam", "mu", "increasing_hazard_st"),),
            conclusion=(ST, XY), **dep_series),
        TheoremDescriptor(
            TheoremId.T6, "independent series minima, scales, hazard rate order, concave-type u r(u)",
            varies="scale", baseline_order=(HR, XY),
            sub_cases=(
                _sc("i", ["ur_concave"], MR.M, "inv_xi", "inv_sigma", "concave_ur_hr"),
                _sc("ii-inc", ["ur_inc", "ur_concave"], MR.WEAK_SUPER, "inv_xi", "inv_sigma", "concave_ur_hr"),
                _sc("ii-dec", ["ur_dec", "ur_concave"], MR.WEAK_SUB, "inv_xi", "inv_sigma"),
                _sc("iii", ["ur_inc", "u_dur_dec"], MR.P_LARGER, "inv_xi", "inv_sigma"),
                _sc("iv", ["ur_inc", "u2r1_dec"], MR.RM, "inv_xi", "inv_sigma", "concave_ur_hr"),
            ),
            conclusion=(HR, XY), **ind_series),
        TheoremDescriptor(
            TheoremId.T7, "independent series minima, scales, hazard rate order, convex-type u r(u)",
            varies="scale", baseline_order=(HR, XY),
            sub_cases=(
                _sc("i", ["ur_convex"], MR.M, "inv_sigma", "inv_xi", "convex_ur_hr"),
                _sc("ii-inc", ["ur_inc", "ur_convex"], MR.WEAK_SUB, "inv_sigma", "inv_xi", "convex_ur_hr"),
                _sc("ii-dec", ["ur_dec", "ur_convex"], MR.WEAK_SUPER, "inv_sigma", "inv_xi"),
                _sc("iii", ["ur_dec", "u_dur_inc"], MR.P_LARGER, "inv_sigma", "inv_xi"),
                _sc("iv", ["ur_dec", "u2r1_inc"], MR.RM, "inv_sigma", "inv_xi"),
            ),
            conclusion=(HR, XY), **ind_series),
        TheoremDescriptor(
            TheoremId.T8, "independent series minima, common baseline, hazard r-concave for r = 1, 2, 3",
            varies="scale", same_baseline=True,
            sub_cases=(_sc("main", ["r_1concave", "r_2concave", "r_3concave"], MR.M, "inv_xi", "inv_sigma", "exponential_common"),),
            conclusion=(RHR, XY), **ind_series),
        TheoremDescriptor(
            TheoremId.T9, "multiple-outlier minima, ageing order, decreasing u r(u), log-concave and 2-log-convex hazard",
            varies="scale", same_baseline=True, multiple_outlier=True,
            sub_cases=(_sc("main", ["ur_dec", "log_r_concave", "two_log_convex"], MR.M, "inv_xi", "inv_sigma"),),
            conclusion=(RHR, YX), **ind_series),
        TheoremDescriptor(
            TheoremId.T10, "multiple-outlier minima, ageing order, increasing u r(u), 2-log-concave hazard",
            varies="scale", same_baseline=True, multiple_outlier=True,
            sub_cases=(_sc("main", ["ur_inc", "r_dec", "log_r_concave", "two_log_concave"], MR.M, "inv_sigma", "inv_xi", "exponential_common"),),
            conclusion=(RHR, YX), **ind_series),
        TheoremDescriptor(
            TheoremId.T11, "multiple-outlier minima, likelihood ratio, decreasing concave u r(u)",
            varies="scale", same_baseline=True, multiple_outlier=True,
            sub_cases=(_sc("main", ["ur_dec", "ur_concave", "log_r_concave", "two_log_convex"], MR.M, "inv_xi", "inv_sigma"),),
            conclusion=(LR, XY), **ind_series),
        TheoremDescriptor(
            TheoremId.T12, "multiple-outlier minima, likelihood ratio, increasing convex u r(u)",
            varies="scale", same_baseline=True, multiple_outlier=True,
            sub_cases=(_sc("main", ["ur_inc", "ur_convex", "r_dec", "log_r_concave", "two_log_convex"], MR.M, "inv_sigma", "inv_xi", "exponential_common"),),
            conclusion=(LR, XY), **ind_series),
        TheoremDescriptor(
            TheoremId.T13, "independent series minima, locations, hazard rate order",
            varies="location", baseline_order=(HR, XY),
            sub_cases=(
                _sc("inc", ["r_inc", "u2r1_dec"], MR.WEAK_SUB, "mu", "lam", "exp_dominated_hr"),
                _sc("dec", ["r_dec", "u2r1_inc"], MR.WEAK_SUB, "lam", "mu", "exp_dominated_hr"),
            ),
            conclusion=(HR, XY), **ind_series),
        TheoremDescriptor(
            TheoremId.T14, "independent series minima, locations, common baseline, ageing order",
            varies="location", same_baseline=True,
            sub_cases=(
                _sc("inc", ["r_inc", "r_concave", "u2r1_dec", "u3r2_inc"], MR.WEAK_SUB, "mu", "lam", "exponential_common"),
                _sc("dec", ["r_dec", "r_convex", "u2r1_inc", "u3r2_dec"], MR.WEAK_SUB, "lam", "mu", "exponential_common"),
            ),
            conclusion=(RHR, YX), **ind_series),
        TheoremDescriptor(
            TheoremId.T15, "independent series minima, locations, common baseline, likelihood ratio",
            varies="location", same_baseline=True,
            sub_cases=(
                _sc("inc", ["r_inc", "r_concave", "u2r1_dec", "u3r2_inc"], MR.WEAK_SUB, "mu", "lam", "exponential_common"),
                _sc("dec", ["r_dec", "r_convex", "u2r1_inc", "u3r2_dec"], MR.WEAK_SUB, "lam", "mu", "exponential_common"),
            ),
            conclusion=(LR, XY), **ind_series),
        TheoremDescriptor(
            TheoremId.T16, "dependent parallel maxima, common scalar location, scales, decreasing reversed hazard",
            varies="scale", scalar_location=True, superadditive=True, generator_shape="log-convex", baseline_order=(ST, YX),
            sub_cases=(_sc("main", ["rr_dec"], MR.WEAK_SUPER, "inv_sigma", "inv_xi", "reversed_hazard_st"),),
            conclusion=(ST, YX), **dep_par),
        TheoremDescriptor(
            TheoremId.T17, "dependent parallel maxima, scales, p-larger and reciprocal majorization",
            varies="scale", superadditive=True, generator_shape="log-convex", baseline_order=(ST, YX),
            sub_cases=(
                _sc("i", ["urr_dec"], MR.P_LARGER, "inv_sigma", "inv_xi", "reversed_hazard_st"),
                _sc("ii", ["u2rr_dec"], MR.RM, "inv_sigma", "inv_xi"),
            ),
            conclusion=(ST, YX), **dep_par),
        TheoremDescriptor(
            TheoremId.T18, "dependent parallel maxima, locations, weak submajorization",
            varies="location", superadditive=True, generator_shape="log-convex", baseline_order=(ST, YX),
            sub_cases=(_sc("main", ["urr_dec"], MR.WEAK_SUB, "lam", "mu", "reversed_hazard_st"),),
            conclusion=(ST, YX), **dep_par),
    )


_CATALOG = _build_catalog()
_BY_ID = {d.id: d for d in _CATALOG}


def catalog() -> list:
    """All eighteen descriptors, in order."""
    return list(_CATALOG)


def descriptor(tid: TheoremId | str) -> TheoremDescriptor:
    try:
        return _BY_ID[TheoremId(tid)]
    except ValueError:
        raise DomainError(f"unknown theorem id {tid!r}") from None


# -- cases -------------------------------------------------------------------


@dataclass(frozen=True)
class TheoremCase:
    """Two systems to compare under one catalog entry."""

    id: TheoremId
    x_spec: SystemSpec
    y_spec: SystemSpec
    cone: OrderedCone | None = None
    sub_case: str | None = None
    n1: int | None = None
    n2: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "id", TheoremId(self.id))
        if self.cone is not None:
            object.__setattr__(self, "cone", OrderedCone(self.cone))
        d = descriptor(self.id)
        label = d.sub_case(self.sub_case).label
        object.__setattr__(self, "sub_case", label)
        _validate_structure(d, self)

    @property
    def lam(self):
        return self.x_spec.locations

    @property
    def sigma(self):
        return self.x_spec.scales

    @property
    def mu(self):
        return self.y_spec.locations

    @property
    def xi(self):
        return self.y_spec.scales

    @property
    def F(self) -> BaselineDistribution:
        return self.x_spec.components[0].baseline

    @property
    def G(self) -> BaselineDistribution:
        return self.y_spec.components[0].baseline

    def role(self, name: str):
        return {"inv_sigma": 1.0 / self.sigma, "inv_xi": 1.0 / self.xi, "lam": self.lam, "mu": self.mu}[name]

    def describe(self) -> dict:
        out = {
            "id": self.id.value,
            "sub_case": self.sub_case,
            "cone": None if self.cone is None else self.cone.value,
            "x": self.x_spec.describe(),
            "y": self.y_spec.describe(),
        }
        if self.n1 is not None:
            out["n1"], out["n2"] = self.n1, self.n2
        return out


def _validate_structure(d: TheoremDescriptor, case: TheoremCase):
    x, y = case.x_spec, case.y_spec
    if x.n != y.n:
        raise LengthMismatch("both systems need the same number of components")
    for s in (x, y):
        if s.structure != d.structure:
            raise DomainError(f"{d.id.value} compares {d.structure} systems")
        if d.dependent == s.independent:
            raise DomainError(f"{d.id.value} needs {'a generator' if d.dependent else 'independent components'} on both sides")
        if len({c.baseline for c in s.components}) != 1:
            raise DomainError("each system must use a single baseline")
    if d.varies == "scale" and not np.array_equal(case.lam, case.mu):
        raise DomainError(f"{d.id.value} needs the same locations in both systems")
    if d.varies == "location" and not np.array_equal(case.sigma, case.xi):
        raise DomainError(f"{d.id.value} needs the same scales in both systems")
    if d.same_baseline and case.F != case.G:
        raise DomainError(f"{d.id.value} needs one common baseline")
    if d.scalar_location and np.ptp(case.lam) != 0:
        raise DomainError(f"{d.id.value} needs one common scalar location")
    if d.multiple_outlier:
        n1, n2 = case.n1, case.n2
        if n1 is None or n2 is None or n1 < 1 or n2 < 1 or n1 + n2 != x.n:
            raise DomainError("multiple-outlier cases need n1, n2 >= 1 with n1 + n2 = n")
        for v in (case.lam, case.sigma, case.xi):
            if np.ptp(v[:n1]) != 0 or np.ptp(v[n1:]) != 0:
                raise DomainError("multiple-outlier parameters must be constant within each block")


def make_case(
    tid,
    F: BaselineDistribution,
    G: BaselineDistribution,
    lam,
    sigma,
    mu=None,
    xi=None,
    psi1: ArchimedeanGenerator | None = None,
    psi2: ArchimedeanGenerator | None = None,
    cone=None,
    sub_case: str | None = None,
    n1: int | None = None,
    n2: int | None = None,
) -> TheoremCase:
    """Assemble a case from raw parameter vectors (``mu``/``xi`` default to ``lam``/``sigma``)."""
    d = descriptor(tid)
    lam = np.asarray(lam, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    mu = lam if mu is None else np.asarray(mu, dtype=float)
    xi = sigma if xi is None else np.asarray(xi, dtype=float)
    for loc, sc in ((lam, sigma), (mu, xi)):
        if loc.ndim > 1 or sc.ndim != 1 or loc.size not in (1, sc.size):
            raise LengthMismatch("locations must be a scalar or match the scale vector")
    lam = np.broadcast_to(lam, sigma.shape)
    mu = np.broadcast_to(mu, xi.shape)
    xs = SystemSpec(tuple(LSDistribution(F, float(a), float(b)) for a, b in zip(lam, sigma)), psi1, d.structure)
    ys = SystemSpec(tuple(LSDistribution(G, float(a), float(b)) for a, b in zip(mu, xi)), psi2, d.structure)
    return TheoremCase(TheoremId(tid), xs, ys, cone, sub_case, n1, n2)


# -- checking ----------------------------------------------------------------


#: "active": beyond every location, where all components can fail; "support": the whole common support
CONCLUSION_DOMAINS = ("active", "support")


@dataclass(frozen=True)
class Tolerances:
    """Conclusion tolerances and grid settings."""

    st: float = PROB_TOL
    ratio: float = 1e-8
    grid_levels: int = 512
    domain: str = "active"

    def __post_init__(self):
        if self.domain not in CONCLUSION_DOMAINS:
            raise DomainError(f"domain must be one of {CONCLUSION_DOMAINS}")


TOLERANCE_PROFILES = {
    "default": Tolerances(),
    "strict": Tolerances(st=1e-12, ratio=1e-10, grid_levels=1024),
}


def _bool_verdict(ok: bool, note: str) -> CheckVerdict:
    return CheckVerdict(Status.HOLDS if ok else Status.FAILS, 0.0 if ok else 1.0, 0.0, note=note)


def _ordered(v, cone: OrderedCone, positive: bool) -> bool:
    if positive:
        return in_cone(v, cone)
    d = np.diff(v)
    return bool(np.all(d <= 0)) if cone is OrderedCone.DPLUS else bool(np.all(d >= 0))


def _cone_verdict(d: TheoremDescriptor, case: TheoremCase) -> CheckVerdict:
    """Locations are checked for ordering only; scales must also be positive."""
    if d.varies == "scale":
        vecs = ((case.lam, False), (case.sigma, True), (case.xi, True))
    else:
        vecs = ((case.lam, False), (case.mu, False), (case.sigma, True))
    cones = (case.cone,) if case.cone is not None else tuple(OrderedCone)
    for c in cones:
        if all(_ordered(v, c, pos) for v, pos in vecs):
            return _bool_verdict(True, c.value)
    return _bool_verdict(False, "parameter vectors not in a common ordered cone")


def _premise_verdict(sc: SubCase, case: TheoremCase) -> CheckVerdict:
    rel, big, small = sc.premise
    ok = majorize(case.role(big), case.role(small), rel)
    return _bool_verdict(ok, f"{rel.value}({big}, {small})")


def _generator_verdict(shape: str, case: TheoremCase) -> CheckVerdict:
    gens = (case.x_spec.dependence, case.y_spec.dependence)
    return any_of([log_shape_verdict(generator_function(g), shape, GENERATOR_GRID) for g in gens])


def _baseline_order_verdict(d: TheoremDescriptor, case: TheoremCase) -> CheckVerdict:
    rel, direction = d.baseline_order
    a, b = standard(case.F), standard(case.G)
    if direction == YX:
        a, b = b, a
    return order_verdict(a, b, rel)


def _shape_verdict(d: TheoremDescriptor, sc: SubCase, case: TheoremCase, interpretation: str) -> CheckVerdict:
    laws = (case.F,) if d.same_baseline else (case.F, case.G)
    per_law = [all_of([composite_condition(b, c, interpretation=interpretation) for c in sc.shape]) for b in laws]
    return any_of(per_law)


def evaluate_hypotheses(case: TheoremCase, interpretation: str = "default") -> dict:
    """Named hypothesis verdicts, in catalog order."""
    d = descriptor(case.id)
    sc = d.sub_case(case.sub_case)
    out = {"cone": _cone_verdict(d, case), "premise": _premise_verdict(sc, case)}
    if d.superadditive:
        out["superadditive"] = check_superadditive(case.x_spec.dependence, case.y_spec.dependence)
    if d.generator_shape:
        out["generator_" + d.generator_shape.replace("-", "_")] = _generator_verdict(d.generator_shape, case)
    if d.baseline_order:
        out["baseline_" + d.baseline_order[0].value.lower()] = _baseline_order_verdict(d, case)
    out["shape"] = _shape_verdict(d, sc, case, interpretation)
    return out


def conclusion_grid(case: TheoremCase, levels: int = 512, domain: str = "active"):
    """Quantile-union grid above every location (``"active"``) or over the common support."""
    edge = float(max(case.lam.max(), case.mu.max())) if domain == "active" else None
    return quantile_union_grid(case.x_spec, case.y_spec, levels, edge=edge)


def evaluate_conclusion(case: TheoremCase, tolerances: Tolerances = Tolerances(), grid=None, reverse: bool = False) -> CheckVerdict:
    d = descriptor(case.id)
    rel, direction = d.conclusion
    a, b = case.x_spec, case.y_spec
    if (direction == YX) != reverse:
        a, b = b, a
    if grid is None:
        try:
            grid = conclusion_grid(case, tolerances.grid_levels, tolerances.domain)
        except DomainError as exc:
            return CheckVerdict(Status.INCONCLUSIVE, np.nan, 0.0, note=str(exc))
    tol = tolerances.st if rel is ST else tolerances.ratio
    return order_verdict(a, b, rel, grid, tol=tol)


@dataclass(frozen=True)
class TheoremReport:
    id: TheoremId
    sub_case: str
    hypotheses: dict
    conclusion: CheckVerdict
    overall: Overall
    case: dict
    interpretation: str | None = None
    seed: int | None = None

    def to_dict(self) -> dict:
        out = {
            "id": self.id.value,
            "sub_case": self.sub_case,
            "overall": self.overall.value,
            "hypotheses": {k: v.to_dict() for k, v in self.hypotheses.items()},
            "conclusion": self.conclusion.to_dict(),
            "case": self.case,
            "version": __version__,
        }
        if self.interpretation is not None:
            out["interpretation"] = self.interpretation
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def overall_status(hypotheses: dict, conclusion: CheckVerdict) -> Overall:
    hs = list(hypotheses.values())
    if any(v.status is Status.FAILS for v in hs):
        return Overall.VACUOUSLY_SKIPPED
    if any(v.status is Status.INCONCLUSIVE for v in hs):
        return Overall.INCONCLUSIVE
    if conclusion.holds:
        return Overall.VERIFIED
    if conclusion.status is Status.FAILS:
        return Overall.REFUTED
    return Overall.INCONCLUSIVE


def check_case(
    case: TheoremCase,
    grid=None,
    tolerances: Tolerances = Tolerances(),
    interpretation: str = "default",
    seed: int | None = None,
) -> TheoremReport:
    """Evaluate every hypothesis and the conclusion; the conclusion is recorded even when skipped."""
    d = descriptor(case.id)
    hyps = evaluate_hypotheses(case, interpretation)
    concl = evaluate_conclusion(case, tolerances, grid)
    return TheoremReport(
        case.id,
        case.sub_case,
        hyps,
        concl,
        overall_status(hyps, concl),
        case.describe(),
        interpretation if d.interpretation_dependent else None,
        seed,
    )


# -- random instances --------------------------------------------------------

B = BaselineDistribution


def _rates(rng, faster_first: bool):
    """Rates ``(rate_F, rate_G)`` with ``rate_F >= rate_G`` when ``faster_first``."""
    g = rng.uniform(0.5, 2.0)
    f = g * rng.uniform(1.0, 2.0)
    return (f, g) if faster_first else (g / rng.uniform(1.0, 2.0), g)


def _same_family(rng, family, shape, faster_first=True):
    f, g = _rates(rng, faster_first)
    return B(family, shape, f), B(family, shape, g)


def _wl_decreasing_hazard_st(rng):
    if rng.uniform() < 0.25:
        return _same_family(rng, "exponential", 1.0)
    return _same_family(rng, "weibull", rng.uniform(0.4, 1.0))


def _wl_increasing_hazard_st(rng):
    fam = rng.choice(["exponential", "weibull", "gompertz", "halfnormal", "logistic"])
    shape = {"weibull": rng.uniform(1.0, 3.0), "gompertz": rng.uniform(0.2, 2.0)}.get(fam, 1.0)
    return _same_family(rng, str(fam), shape)


def _wl_concave_ur_hr(rng):
    if rng.uniform() < 0.25:
        return _same_family(rng, "exponential", 1.0)
    return _same_family(rng, "weibull", rng.uniform(0.3, 1.0))


def _wl_convex_ur_hr(rng):
    fam = rng.choice(["exponential", "weibull", "gompertz"])
    shape = {"weibull": rng.uniform(1.0, 3.0), "gompertz": rng.uniform(0.2, 2.0)}.get(fam, 1.0)
    return _same_family(rng, str(fam), shape)


def _wl_exponential_common(rng):
    b = B("exponential", 1.0, rng.uniform(0.5, 2.0))
    return b, b


def _wl_exp_dominated_hr(rng):
    g = rng.uniform(0.5, 2.0)
    f = g * rng.uniform(1.0, 2.0)
    if rng.uniform() < 0.5:
        return B("exponential", 1.0, f), B("exponential", 1.0, g)
    return B("gompertz", rng.uniform(0.2, 2.0), f), B("exponential", 1.0, g)


def _wl_reversed_hazard_st(rng):
    fam = rng.choice(["exponential", "weibull", "gompertz", "halfnormal", "logistic"])
    shape = {"weibull": rng.uniform(0.5, 3.0), "gompertz": rng.uniform(0.2, 2.0)}.get(fam, 1.0)
    return _same_family(rng, str(fam), shape, faster_first=False)


def _any_baseline(rng):
    fam = str(rng.choice(["exponential", "weibull", "gompertz", "halfnormal", "logistic"]))
    shape = {"weibull": rng.uniform(0.3, 3.0), "gompertz": rng.uniform(0.2, 2.0)}.get(fam, 1.0)
    return B(fam, shape, rng.uniform(0.5, 2.0))


def _wl_unrestricted(rng):
    return _any_baseline(rng), _any_baseline(rng)


BASELINE_WHITELISTS = {
    "decreasing_hazard_st": _wl_decreasing_hazard_st,
    "increasing_hazard_st": _wl_increasing_hazard_st,
    "concave_ur_hr": _wl_concave_ur_hr,
    "convex_ur_hr": _wl_convex_ur_hr,
    "exponential_common": _wl_exponential_common,
    "exp_dominated_hr": _wl_exp_dominated_hr,
    "reversed_hazard_st": _wl_reversed_hazard_st,
}


def _any_generator(rng) -> ArchimedeanGenerator:
    fam = str(rng.choice(["independence", "clayton", "gumbel", "frank"]))
    theta = {"clayton": rng.uniform(0.2, 4.0), "gumbel": rng.uniform(1.0, 4.0), "frank": rng.uniform(0.5, 8.0)}.get(fam, 1.0)
    return ArchimedeanGenerator(fam, theta)


_THETA_LO = {"clayton": 0.2, "gumbel": 1.0, "frank": 0.5}


def _generators(rng, shape: str | None, relax: bool):
    """``(psi1, psi2)`` with phi2 o psi1 super-additive and the required log-shape.

    Independence is the only log-concave family in the catalog, so log-concave
    entries use it for ``psi1``; every family is log-convex.
    """
    if relax:
        return _any_generator(rng), _any_generator(rng)
    indep = ArchimedeanGenerator("independence")
    fam = str(rng.choice(["independence", "clayton", "gumbel", "frank"]))
    if fam == "independence":
        return indep, indep
    lo = _THETA_LO[fam]
    t1 = rng.uniform(lo, lo + 2.0)
    t2 = t1 * rng.uniform(1.0, 2.0)
    if shape == "log-concave" or rng.uniform() < 0.3:
        return indep, ArchimedeanGenerator(fam, t2)
    return ArchimedeanGenerator(fam, t1), ArchimedeanGenerator(fam, t2)


@dataclass(frozen=True)
class RandomCaseConfig:
    max_attempts: int = 25
    interpretation: str = "default"
    cone: OrderedCone | None = None
    relax: str | None = None  # hypothesis whose whitelist is ignored, for mutation searches


def _block_pair(n1, n2, rng, cone: OrderedCone):
    """Two-valued block vectors ``a`` (more spread) and ``b`` with equal weighted sums."""
    a = np.sort(rng.uniform(0.3, 3.0, 2))
    if cone is OrderedCone.EPLUS:
        a = a[::-1]
    c = (n1 * a[0] + n2 * a[1]) / (n1 + n2)
    b = c + rng.uniform(0.0, 1.0) * (a - c)
    return np.repeat(a, (n1, n2)), np.repeat(b, (n1, n2))


def _draw_vectors(d: TheoremDescriptor, sc: SubCase, n, rng, cone: OrderedCone, relax, n1=None, n2=None, rate=1.0):
    """Parameter vectors; scale-theorem locations are sized to the smallest component lifetime."""
    rel, big, small = sc.premise
    if relax == "premise":
        big, small = small, big
    roles = {}
    if d.multiple_outlier:
        a, b = _block_pair(n1, n2, rng, cone)
        if relax == "premise":
            a, b = b, a
        roles[big], roles[small] = a, b
        unit = 1.0 / (rate * max(a.max(), b.max()))
        lam = np.repeat(sort_into(unit * rng.uniform(0.1, 1.0, 2), cone), (n1, n2))
        return lam, 1.0 / roles["inv_sigma"], lam, 1.0 / roles["inv_xi"]
    a, b = generate_pair(n, rel, rng.integers(2**63))
    roles[big], roles[small] = a, b
    if relax == "cone":
        cone_sort = lambda v: rng.permutation(v)  # noqa: E731
    else:
        cone_sort = lambda v: sort_into(v, cone)  # noqa: E731
    if d.varies == "scale":
        unit = 1.0 / (rate * max(a.max(), b.max()))
        lam = np.full(n, rng.uniform(0.1, 1.0)) if d.scalar_location else cone_sort(unit * rng.uniform(0.1, 1.0, n))
        return lam, cone_sort(1.0 / roles["inv_sigma"]), lam, cone_sort(1.0 / roles["inv_xi"])
    sigma = cone_sort(rng.uniform(0.5, 2.0, n))
    # a common positive factor preserves every relation and keeps locations within the scales
    shrink = rng.uniform(0.1, 0.5) * sigma.min() / (rate * max(roles["lam"].max(), roles["mu"].max()))
    return cone_sort(shrink * roles["lam"]), sigma, cone_sort(shrink * roles["mu"]), sigma


def _draw_case(d, sc, n, rng, config: RandomCaseConfig, n1=None, n2=None) -> TheoremCase:
    relax = config.relax
    sampler = BASELINE_WHITELISTS.get(sc.whitelist)
    if relax in ("shape", "baseline_st", "baseline_hr") or sampler is None:
        F, G = _wl_unrestricted(rng)
        if sampler is not None and relax in ("baseline_st", "baseline_hr"):
            G, F = sampler(rng)
    else:
        F, G = sampler(rng)
    if d.same_baseline:
        G = F
    psi1 = psi2 = None
    if d.dependent:
        relax_gen = relax in ("superadditive", "generator_log_concave", "generator_log_convex")
        psi1, psi2 = _generators(rng, d.generator_shape, relax_gen)
    cone = config.cone or OrderedCone(str(rng.choice(["Dplus", "Eplus"])))
    lam, sigma, mu, xi = _draw_vectors(d, sc, n, rng, cone, relax, n1, n2, max(F.rate, G.rate))
    return make_case(d.id, F, G, lam, sigma, mu, xi, psi1, psi2, None if relax == "cone" else cone, sc.label, n1, n2)


def feasible_sub_cases(tid) -> tuple:
    """Sub-case labels that have a baseline whitelist."""
    return tuple(s.label for s in descriptor(tid).sub_cases if s.whitelist)


def random_case(
    tid,
    n: int = 3,
    seed=0,
    config: RandomCaseConfig | None = None,
    sub_case: str | None = None,
    n1: int | None = None,
    n2: int | None = None,
) -> TheoremCase:
    """A case whose hypotheses have all been re-verified numerically.

    Baselines and generators come from whitelists believed to satisfy the
    hypotheses; nothing is trusted, each draw is checked and redrawn on failure.
    """
    config = config or RandomCaseConfig()
    d = descriptor(tid)
    if n < 2:
        raise DomainError("need n >= 2")
    rng = np.random.default_rng(seed)
    labels = [sub_case] if sub_case is not None else list(feasible_sub_cases(tid)) or [d.sub_cases[0].label]
    if d.multiple_outlier:
        n1 = int(rng.integers(1, n)) if n1 is None else n1
        n2 = n - n1 if n2 is None else n2
        n = n1 + n2
    for _ in range(config.max_attempts):
        sc = d.sub_case(labels[int(rng.integers(len(labels)))])
        if sc.whitelist is None:
            break
        case = _draw_case(d, sc, n, rng, config, n1, n2)
        hyps = evaluate_hypotheses(case, config.interpretation)
        if all(v.holds for v in hyps.values()):
            return case
    raise ExhaustedRetries(f"no hypothesis-valid case for {d.id.value} {labels} in {config.max_attempts} attempts")


# -- counterexample search ---------------------------------------------------

NEGATE = "negate-conclusion"


@dataclass(frozen=True)
class SearchResult:
    report: TheoremReport | None
    status: Status
    trials: int
    mode: str = "plain"
    note: str = ""

    @property
    def found(self) -> bool:
        return self.report is not None

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "status": self.status.value,
            "trials": self.trials,
            "mode": self.mode,
            "note": self.note,
            "report": None if self.report is None else self.report.to_dict(),
        }


def counterexample_search(
    tid,
    trials: int,
    seed=0,
    mutate: str | None = None,
    n: int = 3,
    tolerances: Tolerances = Tolerances(),
    config: RandomCaseConfig | None = None,
) -> SearchResult:
    """Look for a case where the conclusion fails.

    ``mutate=None`` searches hypothesis-valid cases (a find is a harness bug);
    ``"negate-conclusion"`` tests the reversed conclusion on valid cases;
    a hypothesis name draws cases in which exactly that hypothesis fails.
    """
    config = config or RandomCaseConfig()
    d = descriptor(tid)
    mode = mutate or "plain"
    if trials <= 0:
        return SearchResult(None, Status.INCONCLUSIVE, 0, mode, "empty budget")
    if mutate not in (None, NEGATE) and mutate not in d.hypothesis_names():
        raise DomainError(f"{d.id.value} has no hypothesis {mutate!r}")
    children = np.random.SeedSequence(seed).spawn(trials)
    valid = 0
    for k, ss in enumerate(children):
        child_seed = int(ss.generate_state(1, np.uint64)[0])
        if mutate in (None, NEGATE):
            try:
                case = random_case(tid, n, child_seed, config)
            except ExhaustedRetries as exc:
                return SearchResult(None, Status.INCONCLUSIVE, k, mode, str(exc))
            report = check_case(case, tolerances=tolerances, interpretation=config.interpretation, seed=child_seed)
            valid += 1
            if mutate is None and report.overall is Overall.REFUTED:
                return SearchResult(report, Status.FAILS, k + 1, mode)
            if mutate == NEGATE:
                rev = evaluate_conclusion(case, tolerances, reverse=True)
                if rev.status is Status.FAILS:
                    return SearchResult(replace(report, conclusion=rev), Status.FAILS, k + 1, mode, "reversed conclusion fails")
            continue
        rng = np.random.default_rng(ss)
        sc = d.sub_case(str(rng.choice(feasible_sub_cases(tid) or [d.sub_cases[0].label])))
        mo = {}
        if d.multiple_outlier:
            mo = {"n1": int(rng.integers(1, n)), "n2": None}
            mo["n2"] = n - mo["n1"]
        case = _draw_case(d, sc, n, rng, replace(config, relax=mutate), **mo)
        hyps = evaluate_hypotheses(case, config.interpretation)
        others_hold = all(v.holds for name, v in hyps.items() if name != mutate)
        if hyps[mutate].status is not Status.FAILS or not others_hold:
            continue
        valid += 1
        concl = evaluate_conclusion(case, tolerances)
        if concl.status is Status.FAILS:
            report = TheoremReport(
                case.id, case.sub_case, hyps, concl, overall_status(hyps, concl), case.describe(),
                config.interpretation if d.interpretation_dependent else None, child_seed,
            )
            return SearchResult(report, Status.FAILS, k + 1, mode)
    if valid == 0:
        return SearchResult(None, Status.INCONCLUSIVE, trials, mode, "no admissible cases drawn")
    return SearchResult(None, Status.HOLDS, trials, mode, f"{valid} admissible cases, no failure")
