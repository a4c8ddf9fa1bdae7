import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lscopula.baselines import FAMILIES, BaselineDistribution, LSDistribution
from lscopula.errors import DomainError, MissingEvaluator
from lscopula.orders import (
    EvaluationGrid,
    OrderRelation,
    log_spaced_grid,
    order_chain_check,
    order_verdict,
    quantile_union_grid,
)
from lscopula.verdict import Status

EXP1 = BaselineDistribution("exponential")
EXP2 = BaselineDistribution("exponential", rate=2.0)
W2 = BaselineDistribution("weibull", 2.0)


@st.composite
def ls_laws(draw):
    b = BaselineDistribution(draw(st.sampled_from(FAMILIES)), draw(st.floats(0.5, 3.0)), draw(st.floats(0.5, 2.0)))
    return LSDistribution(b, draw(st.floats(0.0, 1.0)), draw(st.floats(0.5, 2.0)))


def test_examples():
    assert order_verdict(EXP2, EXP1, "ST").status is Status.HOLDS
    for rel in OrderRelation:
        assert order_verdict(W2, W2, rel).status is Status.HOLDS_WITH_EQUALITY
    assert order_verdict(W2, EXP1, "RHR").status is Status.HOLDS


def test_fails_carries_witness():
    v = order_verdict(EXP1, EXP2, "ST")
    assert v.status is Status.FAILS and v.witness
    v = order_verdict(EXP1, W2, "RHR")
    assert v.status is Status.FAILS and v.witness


def test_chain_examples():
    r = order_chain_check(EXP2, EXP1)
    assert r.consistent
    for rel in ("LR", "HR", "RH", "ST"):
        assert r.verdicts[rel].holds
    r = order_chain_check(W2, W2)
    assert all(v.status is Status.HOLDS_WITH_EQUALITY for v in r.verdicts.values())


def test_late_start_fails_every_order_implying_st():
    a, b = LSDistribution(EXP1, 1.0, 1.0), LSDistribution(EXP1, 0.0, 1.0)
    for rel in ("ST", "HR", "RH", "LR"):
        v = order_verdict(a, b, rel)
        assert v.status is Status.FAILS and v.witness, rel
    assert order_verdict(b, a, "HR").status is Status.HOLDS_WITH_EQUALITY


def test_grid_errors():
    with pytest.raises(DomainError):
        EvaluationGrid([1.0, 1.0, 2.0])
    with pytest.raises(DomainError):
        log_spaced_grid(0.0, 1.0)
    a = LSDistribution(EXP1, 1.0, 1.0)
    with pytest.raises(DomainError):
        order_verdict(a, a, "HR", EvaluationGrid(np.linspace(0.5, 3.0, 10)))


def test_missing_evaluator():
    class SfOnly:
        def sf(self, t):
            return np.exp(-np.asarray(t))

    grid = log_spaced_grid(0.01, 5.0)
    assert order_verdict(SfOnly(), EXP1, "ST", grid).status is Status.HOLDS_WITH_EQUALITY
    with pytest.raises(MissingEvaluator):
        order_verdict(SfOnly(), EXP1, "LR", grid)


@given(ls_laws(), ls_laws())
@settings(max_examples=150, deadline=None)
def test_chain_never_breaks(a, b):
    assert order_chain_check(a, b).consistent


@given(ls_laws(), ls_laws())
@settings(max_examples=150, deadline=None)
def test_st_antisymmetry(a, b):
    v = order_verdict(a, b, "ST")
    if v.holds and v.slack > 1e-9:
        assert order_verdict(b, a, "ST").status is Status.FAILS


@given(ls_laws(), ls_laws())
@settings(max_examples=100, deadline=None)
def test_log_space_hr_matches_direct_ratio(a, b):
    grid = quantile_union_grid(a, b)
    t = grid.points
    sa, sb = a.sf(t), b.sf(t)
    keep = (sa > 1e-12) & (sb > 1e-12)
    if keep.sum() < 2:
        return
    ratio = sb[keep] / sa[keep]
    direct = bool(np.all(np.diff(np.log(ratio)) >= -1e-8))
    v = order_verdict(a, b, "HR", grid)
    if v.status in (Status.HOLDS, Status.HOLDS_WITH_EQUALITY):
        assert direct
    elif v.status is Status.FAILS and np.min(np.diff(np.log(ratio))) < -1e-6:
        assert not direct


REGRESSION_PAIRS = [
    (EXP2, EXP1),
    (W2, EXP1),
    (LSDistribution(W2, 0.2, 1.0), LSDistribution(W2, 0.0, 1.5)),
    (LSDistribution(BaselineDistribution("gompertz", 1.0), 0.0, 1.0), LSDistribution(EXP1, 0.0, 1.0)),
    (LSDistribution(BaselineDistribution("logistic"), 0.5, 1.0), LSDistribution(BaselineDistribution("halfnormal"), 0.5, 2.0)),
]


@pytest.mark.parametrize("a, b", REGRESSION_PAIRS)
def test_refinement_never_flips_holds_to_fails(a, b):
    grid = quantile_union_grid(a, b)
    fine = grid.refined()
    assert fine.count == 2 * grid.count - 1
    for rel in OrderRelation:
        if order_verdict(a, b, rel, grid).holds:
            assert order_verdict(a, b, rel, fine).status is not Status.FAILS, rel
