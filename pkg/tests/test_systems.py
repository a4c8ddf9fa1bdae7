import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from lscopula.baselines import FAMILIES, BaselineDistribution, LSDistribution
from lscopula.calculus import numeric_derivative
from lscopula.copulas import INDEPENDENCE, ArchimedeanGenerator
from lscopula.errors import DimensionError, DomainError
from lscopula.systems import (
    MultipleOutlierSpec,
    SystemSpec,
    build,
    expand_outlier,
    from_dict,
    parallel_cdf,
    series_hazard_independent,
    series_sf,
    system_quantile,
)

E = BaselineDistribution("exponential")
CLAYTON1 = ArchimedeanGenerator("clayton", 1.0)
LN2 = np.log(2.0)


@st.composite
def specs(draw, structure=None):
    n = draw(st.integers(1, 5))
    b = BaselineDistribution(draw(st.sampled_from(FAMILIES)), draw(st.floats(0.5, 2.5)), draw(st.floats(0.5, 2.0)))
    loc = draw(st.lists(st.floats(0.0, 1.0), min_size=n, max_size=n))
    sc = draw(st.lists(st.floats(0.3, 3.0), min_size=n, max_size=n))
    g = draw(
        st.one_of(
            st.none(),
            st.just(INDEPENDENCE),
            st.builds(ArchimedeanGenerator, st.just("clayton"), st.floats(0.2, 5.0)),
            st.builds(ArchimedeanGenerator, st.just("gumbel"), st.floats(1.0, 4.0)),
            st.builds(ArchimedeanGenerator, st.just("frank"), st.floats(0.2, 8.0)),
        )
    )
    s = structure or draw(st.sampled_from(["series", "parallel"]))
    return build(b, loc, sc, g, s)


def test_series_examples():
    assert series_sf(build(E, 0, [1, 1], INDEPENDENCE), LN2) == pytest.approx(0.25, abs=1e-12)
    assert series_sf(build(E, 0, [1, 1], CLAYTON1), LN2) == pytest.approx(1 / 3, abs=1e-12)


def test_parallel_examples():
    assert parallel_cdf(build(E, 0, [1, 1], INDEPENDENCE, "parallel"), LN2) == pytest.approx(0.25, abs=1e-12)
    spec = build(E, 0, [1, 1], CLAYTON1, "parallel")
    assert parallel_cdf(spec, LN2) == pytest.approx(1 / 3, abs=1e-12)
    assert parallel_cdf(build(E, [0.5, 1.0], [1, 1], CLAYTON1, "parallel"), 0.4) == 0.0


def test_hazard_examples():
    spec = build(E, 0, [0.5, 1 / 3])
    assert_allclose(series_hazard_independent(spec, [0.1, 1.0, 7.0]), 5.0, atol=1e-12)
    w = BaselineDistribution("weibull", 2.0)
    assert series_hazard_independent(build(w, 0, [1.0]), 1.5) == pytest.approx(3.0)
    one = LSDistribution(w, 0.2, 1.3)
    two = SystemSpec((one, one))
    assert series_hazard_independent(two, 1.1) == pytest.approx(2 * one.hazard(1.1))
    with pytest.raises(DomainError):
        series_hazard_independent(build(E, [0, 1], [1, 1]), 0.5)


def test_quantile_examples():
    assert system_quantile(build(E, 0, [1, 1], INDEPENDENCE), 0.75) == pytest.approx(LN2, rel=1e-12)
    assert system_quantile(build(E, 0, [1, 1], CLAYTON1), 2 / 3) == pytest.approx(LN2, rel=1e-12)
    d = LSDistribution(BaselineDistribution("gompertz", 1.4), 0.3, 2.0)
    assert system_quantile(SystemSpec((d,), CLAYTON1), 0.3) == pytest.approx(d.quantile(0.3), rel=1e-12)


def test_outlier_examples():
    m = MultipleOutlierSpec(2, 1, (0.0, 1.0), (0.5, 2.0))
    s = expand_outlier(m)
    assert s.n == 3 and s.components[0] == s.components[1] != s.components[2]
    assert expand_outlier(MultipleOutlierSpec(1, 1, (0.0, 1.0), (0.5, 2.0))).n == 2
    with pytest.raises(DomainError):
        MultipleOutlierSpec(0, 1, (0.0, 1.0), (0.5, 2.0))


@given(specs())
@settings(max_examples=60, deadline=None)
def test_single_component_and_independence_consistency(spec):
    t = spec.left_edge + np.geomspace(1e-3, 5.0, 64) * spec.scales.max()
    if spec.n == 1:
        assert_allclose(spec.sf(t), spec.components[0].sf(t), rtol=1e-12, atol=1e-14)
    if spec.dependence is not None and spec.dependence.family == "independence":
        plain = SystemSpec(spec.components, None, spec.structure)
        assert_allclose(spec.sf(t), plain.sf(t), rtol=1e-12, atol=1e-300)
        assert_allclose(spec.cdf(t), plain.cdf(t), rtol=1e-12, atol=1e-300)


@given(specs())
@settings(max_examples=60, deadline=None)
def test_sf_cdf_complement_and_monotone(spec):
    t = spec.left_edge + np.geomspace(1e-3, 5.0, 128) * spec.scales.max()
    assert_allclose(spec.sf(t) + spec.cdf(t), 1.0, atol=1e-12)
    assert np.all(np.diff(spec.cdf(t)) >= -1e-15)


@given(specs(), st.floats(0.01, 0.99))
@settings(max_examples=60, deadline=None)
def test_quantile_roundtrip(spec, p):
    assert spec.cdf(spec.quantile(p)) == pytest.approx(p, abs=1e-9)


@given(specs())
@settings(max_examples=40, deadline=None)
def test_hazard_matches_log_derivative(spec):
    """Dual route: the system hazard against a finite difference of -log sf."""
    lo, hi = spec.quantile(0.05), spec.quantile(0.9)
    t = np.linspace(lo, hi, 40)
    t = t[np.min(np.abs(t[:, None] - spec.locations[None, :]), axis=1) > 1e-3 * spec.scales.max()]
    if t.size == 0:
        return
    fd = -numeric_derivative(spec.logsf, t, 1)
    h = spec.hazard(t)
    assert np.max(np.abs(h - fd) / h) <= 1e-5


def test_dimension_limit():
    g = ArchimedeanGenerator("clayton", 1.0, max_dim=2)
    with pytest.raises(DimensionError):
        build(E, 0, [1, 1, 1], g)


def test_from_dict():
    s = from_dict(
        {
            "structure": "parallel",
            "dependence": {"family": "gumbel", "theta": 2.0},
            "components": [{"baseline": {"family": "weibull", "shape": 2.0}, "location": 0.1, "scale": 1.5}],
        }
    )
    assert s.structure == "parallel" and s.dependence.theta == 2.0 and s.components[0].scale == 1.5
