import json

import numpy as np
import pytest

from lscopula.baselines import BaselineDistribution
from lscopula.copulas import ArchimedeanGenerator
from lscopula.errors import DomainError, ExhaustedRetries, LengthMismatch
from lscopula.theorems import (
    NEGATE,
    Overall,
    TheoremId,
    Tolerances,
    catalog,
    check_case,
    counterexample_search,
    descriptor,
    evaluate_hypotheses,
    make_case,
    random_case,
)
from lscopula.verdict import Status

W05 = BaselineDistribution("weibull", 0.5)
W2 = BaselineDistribution("weibull", 2.0)
EXP1 = BaselineDistribution("exponential")
CLAYTON1 = ArchimedeanGenerator("clayton", 1.0)
INDEP = ArchimedeanGenerator("independence")


def test_catalog_shape():
    cat = catalog()
    assert len(cat) == 18
    assert [d.id for d in cat] == list(TheoremId)
    for d in cat:
        desc = d.describe()
        assert desc["conclusion"]["order"] in ("ST", "HR", "RH", "LR", "RHR")
        assert desc["sub_cases"]
    with pytest.raises(DomainError):
        descriptor("T19")


def test_t6_example_verified():
    case = make_case("T6", W05, W05, [1, 1], [1, 0.5], xi=[2, 0.4], cone="Dplus", sub_case="i")
    report = check_case(case)
    assert all(v.holds for v in report.hypotheses.values())
    assert report.overall is Overall.VERIFIED


def test_identical_systems_hold_with_equality():
    case = make_case("T6", W05, W05, [1, 1], [1, 0.5], cone="Dplus", sub_case="i")
    report = check_case(case)
    assert report.overall is Overall.VERIFIED
    assert report.conclusion.status is Status.HOLDS_WITH_EQUALITY


def test_t2_example_as_given():
    # 1/xi = (0.4, 1.4) has a larger top element than 1/sigma = (1, 1), so the
    # weak-submajorization premise fails and the conclusion is not owed
    case = make_case("T2", W2, W2, [0, 0], [1, 1], xi=[2.5, 1 / 1.4], psi1=CLAYTON1, psi2=CLAYTON1, cone="Dplus")
    report = check_case(case)
    assert report.hypotheses["premise"].status is Status.FAILS
    assert report.overall is Overall.VACUOUSLY_SKIPPED


def test_t2_premise_satisfying_instance_verified():
    case = make_case("T2", W2, W2, [0, 0], [1, 1], xi=[2.5, 1 / 0.9], psi1=CLAYTON1, psi2=CLAYTON1, cone="Dplus")
    report = check_case(case)
    assert all(v.holds for v in report.hypotheses.values())
    assert report.overall is Overall.VERIFIED


def test_structure_errors():
    with pytest.raises(DomainError):
        make_case("T2", W2, W2, [0, 0], [1, 1])  # dependent entry without generators
    with pytest.raises(DomainError):
        make_case("T6", W2, W2, [0, 0], [1, 1], xi=[1, 2], psi1=CLAYTON1, psi2=CLAYTON1)
    with pytest.raises(LengthMismatch):
        make_case("T6", W2, W2, [0, 0], [1, 1], xi=[1, 2, 3])


def test_random_case_examples():
    case = random_case("T6", 3, seed=1)
    assert all(v.holds for v in evaluate_hypotheses(case).values())
    with pytest.raises(ExhaustedRetries):
        random_case("T9", 4, seed=0, n1=2, n2=2)
    with pytest.raises(DomainError):
        random_case("T6", 1)


@pytest.mark.parametrize("tid", ["T1", "T2", "T5", "T7", "T13", "T16", "T17", "T18"])
def test_random_cases_are_hypothesis_valid(tid):
    for seed in range(5):
        case = random_case(tid, 3, seed)
        assert all(v.holds for v in evaluate_hypotheses(case).values())


def test_search_examples():
    empty = counterexample_search("T6", 0)
    assert empty.status is Status.INCONCLUSIVE and not empty.found
    neg = counterexample_search("T6", 50, seed=0, mutate=NEGATE)
    assert neg.found and neg.report.conclusion.witness


def test_t6_search_finds_nothing():
    result = counterexample_search("T6", 200, seed=0)
    assert not result.found, result.report.to_json()


def test_search_unknown_mutation():
    with pytest.raises(DomainError):
        counterexample_search("T6", 5, mutate="no-such-hypothesis")


def test_mutation_mode_reports_failed_hypothesis():
    r = counterexample_search("T6", 50, seed=0, mutate="premise")
    assert r.found
    assert r.report.hypotheses["premise"].status is Status.FAILS
    assert r.report.overall is Overall.VACUOUSLY_SKIPPED


def test_report_json_is_deterministic():
    a = check_case(random_case("T5", 3, seed=4), seed=4).to_json()
    b = check_case(random_case("T5", 3, seed=4), seed=4).to_json()
    assert a == b
    assert json.loads(a)["seed"] == 4


def test_t1_regression_instance_refuted():
    F = BaselineDistribution("weibull", 0.5618720282583222, 0.5707398968734619)
    G = BaselineDistribution("weibull", 0.5618720282583222, 0.5614602859042921)
    case = make_case(
        "T1",
        F,
        G,
        [1.1328874837843035, 1.2526079739576417, 1.486043465869597],
        [0.3748915229308763, 0.5643489940399488, 0.5851009243065914],
        xi=[0.37872446271315807, 0.4328687657310946, 2.431430233914266],
        psi1=INDEP,
        psi2=INDEP,
        cone="Eplus",
    )
    report = check_case(case)
    assert all(v.holds for v in report.hypotheses.values())
    assert report.overall is Overall.REFUTED
    assert report.conclusion.slack > 0.01


def test_t1_exponential_instance_refuted():
    # only the second component has started just above the largest location,
    # and its hazard is larger in Y (4.355 vs 4.148)
    F = BaselineDistribution("exponential", rate=1.5434541418195435)
    G = BaselineDistribution("exponential", rate=1.4962536108638198)
    case = make_case(
        "T1",
        F,
        G,
        [0.18671930955584498, 0.06985407715457341],
        [0.5195385373514504, 0.37210424282018323],
        xi=[0.6655818181495148, 0.343587642815858],
        psi1=INDEP,
        psi2=ArchimedeanGenerator("gumbel", 2.784604832595137),
        cone="Dplus",
    )
    report = check_case(case)
    assert all(v.holds for v in report.hypotheses.values())
    assert report.overall is Overall.REFUTED
    assert report.conclusion.slack == pytest.approx(0.0147088, abs=1e-6)


def test_t6_iv_regression_instance_refuted():
    case = make_case("T6", EXP1, EXP1, [0, 0], [1.32, 1.78], xi=[0.91, 2.64], cone="Eplus", sub_case="iv")
    report = check_case(case)
    assert all(v.holds for v in report.hypotheses.values())
    assert report.overall is Overall.REFUTED
    # constant system hazards: sum 1/sigma < sum 1/xi
    assert np.sum(1 / case.sigma) < np.sum(1 / case.xi)


def test_conclusion_domain_option():
    with pytest.raises(DomainError):
        Tolerances(domain="everywhere")
    case = make_case("T6", W05, W05, [1, 1], [1, 0.5], xi=[2, 0.4], cone="Dplus", sub_case="i")
    assert check_case(case, tolerances=Tolerances(domain="support")).overall is Overall.VERIFIED
