import random
from dataclasses import replace
from math import lcm

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from toricfano.corpus import ORDER
from toricfano.cox import class_group
from toricfano.curves import validate_type
from toricfano.exact import BinaryForm, bf_gcd_set, forms_rank
from toricfano.moduli import (
    SideConditionError,
    construct_coprime_form,
    construct_independent,
    form_count,
    incidence_lower_bound,
    instantiate,
    moduli_dims,
    pair_moduli_dim,
    pgl2_upper,
    restricted_span_dim,
    rigidity_chain_equal,
    separation_check,
)

S = BinaryForm.monomial(1, 0)
T = BinaryForm.monomial(0, 1)


def type_lattice(fan):
    """Integer basis of the valid curve types, from sympy's nullspace."""
    out = []
    for v in sp.Matrix([list(r) for r in fan.rays]).T.nullspace():
        scale = lcm(*[int(sp.fraction(x)[1]) for x in v])
        out.append([int(x * scale) for x in v])
    return out


def case(by_name, variety, pair, branch=""):
    return next(c for c in by_name[variety].paircases if c.pair == pair and c.branch == branch)


# -- dimensions ----------------------------------------------------------------

def test_moduli_dims_examples():
    d = moduli_dims((0, 0, 0, 0, 1, 1))
    assert (d.dim_m_prime, d.dim_m) == (6, 6)
    d = moduli_dims((1, 1, 1, 1, 0, -1))
    assert (d.dim_m_prime, d.dim_m) == (8, 7)
    assert moduli_dims((1, 1, 1, 1, 4, 1)).dim_m == 13


def test_incidence_chain_examples():
    assert incidence_lower_bound(159, (0, 0, 0, 0, 1, 1)) == 161 == pgl2_upper(159)
    assert incidence_lower_bound(1, (1, 1, 1, 1, 0, -1)) == 3 == pgl2_upper(1)
    assert rigidity_chain_equal((0,) * 6)
    # a -2 entry breaks the equality (the lower end overshoots)
    assert incidence_lower_bound(1, (1, 1, 2, -2, 0, 0)) > pgl2_upper(1)
    assert not rigidity_chain_equal((1, 1, 2, -2, 0, 0))


def test_pair_dims_examples():
    assert pair_moduli_dim((0, 0, 0, 0, 1, 1), (1, 1, 1, 1, 3, 0)) == 15


@pytest.mark.parametrize("name", ORDER)
def test_random_types_rigidity(by_name, name):
    fan = by_name[name].spec.fan
    basis = type_lattice(fan)
    assert len(basis) == 2
    rng = random.Random(name)
    for _ in range(300):
        a, b = rng.randint(-6, 6), rng.randint(-6, 6)
        t = tuple(a * x + b * y for x, y in zip(*basis))
        assert validate_type(fan, t)
        negatives = [d for d in t if d < 0]
        assert rigidity_chain_equal(t) == all(d == -1 for d in negatives)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-4, 6), min_size=6, max_size=6), st.integers(1, 200))
def test_chain_equality_iff_negatives_are_minus_one(t, sections):
    assert rigidity_chain_equal(t, sections) == all(d >= -1 for d in t)
    assert moduli_dims(t).dim_m <= moduli_dims(t).dim_m_prime


def test_corpus_types_are_rigid(corpus):
    for b in corpus:
        for cert in b.certificates:
            assert rigidity_chain_equal(cert.curve.degrees, b.spec.expected["sections"])


STATED = {
    "B1 C1C2": 15, "B1 C1C3": 17, "B2 C1C2": 14, "B2 C1C3": 16, "B2 C2C3": 20,
    "B3 C1C3": 11, "B3 C2C3": 13, "B4 C1C2": 12, "B4 C1C3": 14, "B5 C1C2": 15, "B5 C2C3": 11,
    "C1 C1C2": 16, "C1 C1C3": 13, "C2 C1C2": 14, "C2 C1C3": 11, "C3 C1C2": 10, "C3 C1C3": 13,
}
ANOMALIES = {"B4 C2C3": (11, 16), "C4 C1C3": (13, 15)}


def test_stated_dimensions(corpus):
    from toricfano.verify import pair_rows
    seen = {}
    for b in corpus:
        types = [c.curve.degrees for c in b.certificates]
        for c in b.paircases:
            if c.stated_dim is None or c.stated_dim_bound:
                continue
            i, j = pair_rows(c.pair)
            seen[f"{b.spec.name} {c.pair}"] = (c.stated_dim, pair_moduli_dim(types[i], types[j]))
    for label, dim in STATED.items():
        assert seen[label] == (dim, dim), label
    for label, dims in ANOMALIES.items():
        assert seen[label] == dims, label
    assert {k for k, (p, f) in seen.items() if p != f} == set(ANOMALIES)


# -- separation ----------------------------------------------------------------

def test_listed_forms_are_anticanonical(corpus):
    for b in corpus:
        cg = class_group(b.spec.fan, b.spec.basis_rays)
        for c in b.paircases:
            for f in c.forms:
                assert f.multidegree(cg, c.slot_degrees()) == cg.anticanonical, c.label


def test_b1_c1c2_passes_and_drop_loses_rank(by_name):
    c = case(by_name, "B1", "C1C2")
    r = separation_check(c, 0)
    assert r.passed and r.rank == 10 == r.required
    dropped = separation_check(c, 0, drop=3)
    assert dropped.rank == 9 and not dropped.passed


def test_b2_c1c3_coprime_construction(by_name):
    c = case(by_name, "B2", "C1C3")
    assert any(k["kind"] == "coprime" for k in c.constructed)
    for seed in range(5):
        assert separation_check(c, seed).passed


def test_separation_is_deterministic(by_name):
    c = case(by_name, "C1", "C1C3")
    assert separation_check(c, 7) == separation_check(c, 7)
    assert instantiate(c, 7)[0] == instantiate(c, 7)[0]


def test_status_cases_are_rejected(by_name):
    with pytest.raises(ValueError):
        separation_check(case(by_name, "B1", "C2C3"), 0)
    with pytest.raises(ValueError):
        separation_check(case(by_name, "B3", "C1C2"), 0)


def test_completion_needs_the_fan(by_name):
    c = case(by_name, "B2", "C2C3", "same line")
    with pytest.raises(ValueError):
        separation_check(c, 0)
    r = separation_check(c, 0, by_name["B2"].spec.fan)
    assert r.passed and r.forms == form_count(c) == 13


@pytest.mark.parametrize("k,expected", [(0, 7), (1, 6), (2, 5)])
def test_gcd_branch_span(by_name, k, expected):
    c = case(by_name, "B2", "C2C3", "same line")
    conds = tuple({"gcd_degree": ["alpha2", "alpha3", k]} if "gcd_degree" in x else x
                  for x in c.side_conditions)
    c = replace(c, side_conditions=conds)
    for seed in range(5):
        values, curves = instantiate(c, seed)
        assert bf_gcd_set([values["alpha2"], values["alpha3"]]).degree == k
        assert restricted_span_dim(c.forms, curves[0], values) == expected


def test_unsatisfiable_side_conditions(by_name):
    c = case(by_name, "B2", "C2C3", "same line")
    conds = ({"coprime": ["alpha3", "alpha3"]},)
    with pytest.raises(SideConditionError):
        instantiate(replace(c, side_conditions=conds), 0)


# -- constructions -------------------------------------------------------------

def test_coprime_form_examples():
    f = construct_coprime_form(3, [S], 0)
    assert f.degree == 3 and bf_gcd_set([f, S]).degree == 0
    g = construct_coprime_form(1, [S, T], 1)
    assert g.coeffs[0] and g.coeffs[1]
    assert construct_coprime_form(3, [S], 5) == construct_coprime_form(3, [S], 5)
    with pytest.raises(ValueError):
        construct_coprime_form(2, [BinaryForm(None)], 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_coprime_form_property(degree, seed):
    rng = random.Random(seed)
    avoid = [BinaryForm(2, [rng.randint(1, 9), rng.randint(-9, 9), rng.randint(1, 9)])]
    f = construct_coprime_form(degree, avoid, seed)
    assert f.degree == degree and bf_gcd_set([f, avoid[0]]).degree == 0


def test_independent_completion():
    a1a2 = BinaryForm(3, [1, 2, 0, 1])
    a3 = BinaryForm(3, [0, 1, 1, 5])
    extra = construct_independent(3, [a1a2, a3], 2, 0)
    assert forms_rank([a1a2, a3] + extra, 3) == 4
    with pytest.raises(SideConditionError):
        construct_independent(3, [a3, a3], 1, 0)
