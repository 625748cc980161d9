import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricfano.corpus import ORDER
from toricfano.fan import (
    Fan,
    FanError,
    VarietySpec,
    check_relations,
    fano_violations,
    folded_walls,
    is_complete,
    is_fano,
    is_smooth,
    random_unimodular,
    unmatched_facet,
    violated_relations,
)
from toricfano.exact import rat_rank


def b_series(a):
    rays = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (-1, -1, -1, a), (0, 0, 0, -1), (0, 0, 0, 1)]
    cones = [tuple(sorted({0, 1, 2, 3} - {i} | {j})) for i in range(4) for j in (4, 5)]
    return Fan(tuple(rays), tuple(cones))


def test_corpus_has_nine_varieties(corpus):
    assert [b.spec.name for b in corpus] == list(ORDER)


@pytest.mark.parametrize("name", ORDER)
def test_corpus_fans_are_smooth_complete_fano(by_name, name):
    spec = by_name[name].spec
    fan = spec.fan
    assert fan.n_rays == 6
    assert rat_rank([list(r) for r in fan.rays]) == 4
    assert is_smooth(fan)
    assert unmatched_facet(fan) is None
    assert is_complete(fan, samples=300)
    assert is_fano(fan)
    assert check_relations(spec)


def test_b_series_with_a_4_is_not_fano():
    fan = b_series(4)
    assert is_smooth(fan) and is_complete(fan, samples=200)
    assert not is_fano(fan)
    assert fano_violations(fan)


def test_missing_cone_is_detected():
    fan = b_series(3)
    broken = Fan(fan.rays, fan.maximal_cones[1:])
    assert unmatched_facet(broken) is not None
    assert not is_complete(broken, samples=100)


def test_non_smooth_cone():
    fan = Fan(((1, 0, 0, 0), (1, 2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), ((0, 1, 2, 3),))
    assert not is_smooth(fan)


@pytest.mark.parametrize("rays,cones", [
    (((2, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), ((0, 1, 2, 3),)),
    (((0, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), ((0, 1, 2, 3),)),
    (((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), ((0, 1, 2, 2),)),
    (((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), ((0, 1, 2, 7),)),
])
def test_malformed_fans_rejected(rays, cones):
    with pytest.raises(FanError):
        Fan(rays, cones)


def test_negated_ray_breaks_a_relation(by_name):
    spec = by_name["B1"].spec
    rays = list(spec.fan.rays)
    rays[3] = tuple(-x for x in rays[3])
    bad = VarietySpec("B1", Fan(tuple(rays), spec.fan.maximal_cones), spec.relations, spec.weights)
    assert violated_relations(bad) == [0]
    assert not check_relations(bad)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(ORDER), st.integers(0, 10**6))
def test_unimodular_invariance(by_name, name, seed):
    fan = by_name[name].spec.fan
    moved = fan.transform(random_unimodular(random.Random(seed), steps=4))
    assert is_smooth(moved) and is_fano(moved)
    assert unmatched_facet(moved) is None


def test_overlapping_cones_are_not_complete(by_name):
    fan = by_name["B1"].spec.fan
    rays = list(fan.rays)
    rays[3] = tuple(-x for x in rays[3])
    folded = Fan(tuple(rays), fan.maximal_cones)
    assert unmatched_facet(folded) is None
    assert folded_walls(folded)
    assert not is_complete(folded, samples=0)
    assert not folded_walls(fan)
