import random
from collections import Counter
from itertools import product
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricfano.corpus import ORDER
from toricfano.cox import (
    CoxPolynomial,
    MixedDegreeError,
    anticanonical_monomials,
    anticanonical_points,
    class_group,
    euler_identity_holds,
    irrelevant_products,
    is_anticanonical,
    lattice_point_of,
    multidegree,
    weights_match,
)
from toricfano.fan import random_unimodular


def stars_and_bars(weights, target):
    """Monomials of a given degree, counted group by group (rays with equal
    weights contribute a binomial coefficient)."""
    groups = Counter(tuple(w) for w in weights)
    items = list(groups.items())
    bound = 4 * max(abs(x) for x in target) + 8
    total = 0
    for ks in product(range(bound + 1), repeat=len(items)):
        deg = tuple(sum(k * w[j] for k, (w, _) in zip(ks, items)) for j in range(len(target)))
        if deg == tuple(target):
            total += prod_comb(ks, [n for _, n in items])
    return total


def prod_comb(ks, ns):
    out = 1
    for k, n in zip(ks, ns):
        out *= comb(k + n - 1, n - 1)
    return out


SECTION_COUNTS = {"B1": 159, "B2": 129, "B3": 111, "B4": 105, "B5": 105,
                  "C1": 120, "C2": 105, "C3": 105, "C4": 100}


@pytest.mark.parametrize("name", ORDER)
def test_section_count_matches_stars_and_bars(by_name, groups, name):
    spec = by_name[name].spec
    cg = groups[name]
    count = len(anticanonical_points(spec.fan))
    assert count == SECTION_COUNTS[name] == spec.expected["sections"]
    assert count == stars_and_bars(spec.weights, tuple(sum(w[j] for w in spec.weights) for j in range(2)))
    assert all(is_anticanonical(cg, CoxPolynomial({e: 1})) for e in anticanonical_monomials(spec.fan))


@pytest.mark.parametrize("name", ORDER)
def test_class_group_matches_declared_action(by_name, groups, name):
    spec = by_name[name].spec
    cg = groups[name]
    assert cg.rank == 2
    for j, b in enumerate(spec.basis_rays):
        assert cg.weights[b] == tuple(int(i == j) for i in range(2))
    assert weights_match(cg, spec.weights)
    assert not weights_match(cg, [(w[0], -w[1]) if k == 0 else w for k, w in enumerate(spec.weights)]) or \
        spec.weights[0][1] == 0


def test_b1_weights_in_the_other_basis(by_name):
    cg = class_group(by_name["B1"].spec.fan, (3, 5))
    assert cg.weights[4] == (3, 1)
    assert cg.weights[0] == (1, 0)


def test_irrelevant_products_have_two_factors(corpus):
    for b in corpus:
        assert all(len(p) == 2 for p in irrelevant_products(b.spec.fan))


def test_lattice_point_inverse(by_name):
    fan = by_name["C4"].spec.fan
    for m in anticanonical_points(fan)[:20]:
        exps = tuple(sum(a * r for a, r in zip(m, ray)) + 1 for ray in fan.rays)
        assert lattice_point_of(fan, exps) == m


def test_mixed_degree_rejected(groups):
    cg = groups["C4"]
    p = CoxPolynomial({(1, 0, 0, 0, 0, 0): 1, (0, 0, 0, 1, 0, 0): 1})
    with pytest.raises(MixedDegreeError):
        multidegree(cg, p)
    assert not is_anticanonical(cg, p)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ORDER), st.integers(0, 10**6))
def test_euler_identity_for_random_sections(by_name, groups, name, seed):
    rng = random.Random(seed)
    monos = anticanonical_monomials(by_name[name].spec.fan)
    F = CoxPolynomial({e: rng.randint(-5, 5) for e in rng.sample(monos, 6)})
    if F:
        assert euler_identity_holds(groups[name], F)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(ORDER), st.integers(0, 10**6))
def test_unimodular_invariance_of_sections(by_name, name, seed):
    spec = by_name[name].spec
    moved = spec.fan.transform(random_unimodular(random.Random(seed), steps=4))
    assert anticanonical_monomials(moved) != [] and \
        sorted(anticanonical_monomials(moved)) == sorted(anticanonical_monomials(spec.fan))
    assert weights_match(class_group(moved, spec.basis_rays), spec.weights)
