import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lscopula.errors import LengthMismatch, PositivityError
from lscopula.majorization import (
    MajorizationRelation as MR,
)
from lscopula.majorization import (
    OrderedCone,
    generate_pair,
    implication_chain_check,
    in_cone,
    majorize,
    schur_verdict,
)
from lscopula.verdict import Status


def _definition(x, y, rel):
    """Literal transcription of the five definitions, no tolerances beyond 1e-12."""
    xs, ys = np.sort(x), np.sort(y)
    eps = 1e-12 * (np.abs(xs).sum() + np.abs(ys).sum())
    if rel is MR.M:
        return all(xs[:j].sum() <= ys[:j].sum() + eps for j in range(1, len(xs))) and abs(xs.sum() - ys.sum()) <= eps
    if rel is MR.WEAK_SUPER:
        return all(xs[:j].sum() <= ys[:j].sum() + eps for j in range(1, len(xs) + 1))
    if rel is MR.WEAK_SUB:
        return all(xs[j:].sum() >= ys[j:].sum() - eps for j in range(len(xs)))
    if rel is MR.P_LARGER:
        return all(np.prod(xs[:j]) <= np.prod(ys[:j]) * (1 + 1e-12) for j in range(1, len(xs) + 1))
    return all((1 / xs[:j]).sum() >= (1 / ys[:j]).sum() * (1 - 1e-12) for j in range(1, len(xs) + 1))


def test_examples():
    assert majorize([3, 1], [2, 2], MR.M)
    assert majorize([0.5, 4], [1, 2], MR.P_LARGER)
    assert majorize([1, 4], [2, 2], MR.RM)
    assert not majorize([2, 2], [3, 1], MR.M)


def test_chain_examples():
    r = implication_chain_check([3, 1], [2, 2])
    assert r.consistent
    assert all(r.relations[k] for k in ("M", "WeakSuper", "PLarger", "RM"))
    r = implication_chain_check([1.5, 2.5, 4.0], [1.5, 2.5, 4.0])
    assert all(r.relations.values())


@pytest.mark.parametrize("n, rel, seed", [(2, MR.M, 0), (5, MR.WEAK_SUPER, 7), (3, MR.RM, 1)])
def test_generated_examples(n, rel, seed):
    x, y = generate_pair(n, rel, seed)
    assert _definition(x, y, rel)


@pytest.mark.parametrize("rel", list(MR))
@pytest.mark.parametrize("cone", [None, OrderedCone.DPLUS, OrderedCone.EPLUS])
def test_generated_pairs_satisfy_definition(rel, cone):
    for seed in range(200):
        x, y = generate_pair(4, rel, seed, cone)
        assert majorize(x, y, rel)
        assert _definition(x, y, rel)
        assert np.all(x > 0) and np.all(y > 0)
        if cone is not None:
            assert in_cone(x, cone) and in_cone(y, cone)


@given(
    st.lists(st.floats(0.05, 20.0), min_size=2, max_size=6).flatmap(
        lambda xs: st.tuples(st.just(xs), st.lists(st.floats(0.05, 20.0), min_size=len(xs), max_size=len(xs)))
    )
)
@settings(max_examples=500, deadline=None)
def test_majorize_matches_definition_and_chain(pair):
    x, y = map(np.array, pair)
    for rel in MR:
        assert majorize(x, y, rel) == _definition(x, y, rel), rel
    assert implication_chain_check(x, y).consistent


@given(st.lists(st.floats(0.05, 20.0), min_size=2, max_size=6))
@settings(max_examples=100, deadline=None)
def test_relations_are_reflexive_and_permutation_invariant(xs):
    x = np.array(xs)
    for rel in MR:
        assert majorize(x, x, rel)
        assert majorize(x[::-1], x, rel)


def test_schur_examples():
    assert schur_verdict(lambda v: np.sum(v**2), 3).status is Status.HOLDS
    assert schur_verdict(np.sum, 3).status is Status.HOLDS_WITH_EQUALITY
    v = schur_verdict(lambda v: -np.max(v), 3)
    assert v.status is Status.FAILS and v.witness


def test_input_errors():
    with pytest.raises(LengthMismatch):
        majorize([1, 2], [1, 2, 3], MR.M)
    with pytest.raises(PositivityError):
        majorize([1, -2], [1, 2], MR.P_LARGER)
