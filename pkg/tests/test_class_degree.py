import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import IRREDUCIBLE, load
from factorcodes.bridges import depth
from factorcodes.class_degree import (class_count_bounds, class_degree, exact_class_degree,
                                      scan_min_depth)
from factorcodes.errors import BudgetExceeded
from factorcodes.points import Lasso
from factorcodes.presentation import degree_finite_to_one, is_finite_to_one
from factorcodes.randomgen import RandomSpec, random_presentation

random_specs = st.builds(RandomSpec, vertices=st.integers(1, 5), edges=st.integers(5, 10),
                         labels=st.integers(1, 3), seed=st.integers(0, 10_000))

EXPECTED = {"fig1": 1, "fig2": 1, "fig3": 1, "fig4": 1, "fig5": 1,
            "identity": 1, "loop": 1, "parallel": 2, "full2": 1}


def _min_depth_by_enumeration(p, max_len):
    return min(oracles.depth(p, w) for n in range(3, max_len + 1) for w in oracles.language(p, n))


@pytest.mark.parametrize("name", IRREDUCIBLE)
def test_fixture_class_degree(name):
    p = load(name)
    res = class_degree(p)
    assert res.value == EXPECTED[name]
    assert res.certified and res.method == "exact"
    assert oracles.depth(p, res.word) == res.value
    assert _min_depth_by_enumeration(p, 5) == res.value


@pytest.mark.parametrize("name", IRREDUCIBLE)
def test_reversal_invariance(name):
    p = load(name)
    assert class_degree(p).value == class_degree(p.reverse()).value


def test_fig1_witness_word():
    p = load("fig1")
    res = class_degree(p)
    assert p.word_text(res.word) == "dab"
    assert res.t_depth == 1


@pytest.mark.parametrize("name", ["identity", "fig2", "full2", "loop"])
def test_finite_to_one_class_degree_is_degree(name):
    p = load(name)
    assert class_degree(p).value == degree_finite_to_one(p)


def test_scan_fallback_agrees():
    p = load("parallel")
    scan = scan_min_depth(p, 5)
    assert scan.value == 2 and scan.minima == [2, 2, 2]
    with pytest.raises(ValueError):
        class_degree(p, max_len=2)


def test_budget_exhaustion_falls_back_to_scan():
    p = load("fig5")
    with pytest.raises(BudgetExceeded):
        exact_class_degree(p, budget=1)
    res = class_degree(p, budget=1)
    assert res.method == "scan" and res.value == 1 and res.certified


def test_fig2_class_counts_over_double_sided_point():
    p = load("fig2")
    one, zero = p.label_id("1"), p.label_id("0")
    y = Lasso((one,), (zero,), (one,))
    right = class_count_bounds(p, y, "right")
    left = class_count_bounds(p, y, "left")
    assert (right.lower, right.upper) == (1, 1)
    assert (left.lower, left.upper) == (2, 2)


def test_parallel_fixed_point_has_two_classes():
    p = load("parallel")
    a = p.label_id("a")
    b = class_count_bounds(p, Lasso((a,), (), (a,)))
    assert b.lower == 2 == b.upper


@settings(max_examples=80, deadline=None)
@given(random_specs)
def test_random_exact_matches_word_enumeration(spec):
    p = random_presentation(spec)
    if p.n_edges > 8:
        return
    value, word = exact_class_degree(p)
    # witness words can be long; brute force is only affordable on short ones
    if len(word) <= 6:
        assert oracles.depth(p, word) == value
    else:
        assert depth(p, word).value == value
    # the minimum over short words can only be larger than or equal to the exact value
    assert _min_depth_by_enumeration(p, 4) >= value
    if is_finite_to_one(p):
        assert value == degree_finite_to_one(p)


@settings(max_examples=40, deadline=None)
@given(random_specs)
def test_random_reversal_invariance(spec):
    p = random_presentation(spec)
    assert exact_class_degree(p)[0] == exact_class_degree(p.reverse())[0]
