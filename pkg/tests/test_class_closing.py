import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import IRREDUCIBLE, load
from factorcodes.class_closing import (accessible_sets, check_class_closing,
                                       closing_delay_by_enumeration, separation_check,
                                       verify_condition4, verify_condition5)
from factorcodes.class_degree import right_transition, transition
from factorcodes.errors import BudgetExceeded
from factorcodes.points import Lasso, image_of, is_path_lasso
from factorcodes.presentation import is_left_resolving, is_right_resolving
from factorcodes.randomgen import RandomSpec, random_presentation

random_specs = st.builds(RandomSpec, vertices=st.integers(1, 5), edges=st.integers(5, 10),
                         labels=st.integers(1, 3), seed=st.integers(0, 10_000))

EXPECTED = {
    # name: (right delay or None, left delay or None)
    "fig1": (3, 3),
    "fig2": (0, None),
    "fig4": (None, None),
    "fig5": (3, 3),
    "identity": (0, 0),
    "loop": (0, 0),
    "full2": (0, 0),
    "parallel": (1, 1),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_verdicts(name):
    p = load(name)
    for side, delay in zip(("right", "left"), EXPECTED[name]):
        v = check_class_closing(p, side)
        assert v.closing is (delay is not None)
        assert v.delay == delay


@pytest.mark.parametrize("name", IRREDUCIBLE)
def test_automaton_matches_enumeration(name):
    p = load(name)
    for side, q in (("right", p), ("left", p.reverse())):
        v = check_class_closing(p, side)
        expected = oracles.closing_delay(q, 5)
        if v.closing and v.delay <= 5:
            assert v.delay == expected
        else:
            assert expected is None


def _check_counterexample(p, v):
    x, z = v.counterexample
    assert is_path_lasso(p, x) and is_path_lasso(p, z)
    assert image_of(p, x).agrees(image_of(p, z))
    assert image_of(p, x).agrees(v.image)
    assert not x.agrees(z)
    lo = min(x.transient[0], z.transient[0])
    far = range(lo - 3 * len(x.left) * len(z.left), lo)
    far_right = range(max(x.transient[1], z.transient[1]),
                      max(x.transient[1], z.transient[1]) + 3 * len(x.right) * len(z.right))
    if v.side == "right":
        assert all(x[i] == z[i] for i in far)
    else:
        assert all(x[i] == z[i] for i in far_right)
    assert not (transition(p, x, z, v.side) and transition(p, z, x, v.side))


@pytest.mark.parametrize("name,side", [("fig2", "left"), ("fig4", "right"), ("fig4", "left"),
                                       ("fig3", "right"), ("fig3", "left")])
def test_counterexamples_are_valid(name, side):
    p = load(name)
    v = check_class_closing(p, side)
    assert not v.closing
    _check_counterexample(p, v)


def test_fig2_left_counterexample_image():
    p = load("fig2")
    y = check_class_closing(p, "left").image
    one, zero = p.label_id("1"), p.label_id("0")
    assert y.agrees(Lasso((one,), (zero,), (one,)).shifted(1)) or \
        (y.left, y.spoke, y.right) == ((one,), (zero,), (one,))


def test_fig2_right_resolving_delay_zero():
    p = load("fig2")
    assert is_right_resolving(p)
    v = check_class_closing(p, "right")
    assert v.closing and v.delay == 0 and v.state_count == 0


def test_fig4_images():
    p = load("fig4")
    zero, one = p.label_id("0"), p.label_id("1")
    r = check_class_closing(p, "right").image
    l = check_class_closing(p, "left").image
    assert (r.left, r.right) == ((zero,), (one,))
    assert (l.left, l.right) == ((one,), (zero,))


@pytest.mark.parametrize("name", ["fig1", "fig5", "parallel", "identity"])
def test_condition5_agrees_with_condition4(name):
    p = load(name)
    D = check_class_closing(p, "right").delay
    assert verify_condition4(p, D)[0] and verify_condition5(p, D)[0]
    if D > 0:
        ok, pair = verify_condition4(p, D - 1)
        assert not ok and pair is not None
    assert closing_delay_by_enumeration(p) == D


def test_accessible_sets_contain_singletons():
    p = load("fig1")
    sets = accessible_sets(p)
    assert all(1 << v in sets for v in range(p.n_vertices))


def test_separation_on_closing_fixtures():
    p = load("fig5")
    v = check_class_closing(p, "right")
    a, b, c = (p.label_id(s) for s in "abc")
    samples = [Lasso((a,), (), (a,)), Lasso((a, b), (c,), (b, c)), Lasso((c,), (), (b, c))]
    ok, witness = separation_check(p, v, samples)
    assert ok, witness


def test_separation_requires_closing():
    p = load("fig4")
    with pytest.raises(ValueError):
        separation_check(p, check_class_closing(p, "right"), [])


def test_budget_and_side_errors():
    with pytest.raises(BudgetExceeded):
        check_class_closing(load("fig1"), "right", budget=2)
    with pytest.raises(ValueError):
        check_class_closing(load("fig1"), "up")
    with pytest.raises(ValueError):
        verify_condition4(load("fig1"), -1)


@settings(max_examples=150, deadline=None)
@given(random_specs)
def test_random_automaton_matches_enumeration(spec):
    p = random_presentation(spec)
    v = check_class_closing(p, "right")
    expected = oracles.closing_delay(p, 4)
    if v.closing and v.delay <= 4:
        assert v.delay == expected
    else:
        assert expected is None
    if is_right_resolving(p):
        assert v.delay == 0
    if not v.closing:
        _check_counterexample(p, v)


@settings(max_examples=60, deadline=None)
@given(random_specs)
def test_random_left_is_right_of_reversal(spec):
    p = random_presentation(spec)
    l = check_class_closing(p, "left")
    r = check_class_closing(p.reverse(), "right")
    assert (l.closing, l.delay) == (r.closing, r.delay)
    if is_left_resolving(p):
        assert l.delay == 0
    if not l.closing:
        _check_counterexample(p, l)


def test_right_transition_on_counterexample_direction():
    p = load("fig2")
    v = check_class_closing(p, "left")
    x, z = v.counterexample
    # the left-asymptotic pair of the reversed code is right-asymptotic here
    q = p.reverse()
    assert not (right_transition(q, x.reversed(), z.reversed())
                and right_transition(q, z.reversed(), x.reversed()))
