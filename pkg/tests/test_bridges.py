import math

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import IRREDUCIBLE, load
from factorcodes.bridges import (WordFibre, bridge_exists, check_depth_certificate,
                                 check_tangled_partition, depth, is_tangled, min_clique_cover,
                                 min_hitting_set, routed_path, routing_set, t_depth,
                                 two_way_bridge_exists)
from factorcodes.errors import InstanceTooLarge, WordError
from factorcodes.randomgen import RandomSpec, random_presentation

random_specs = st.builds(RandomSpec, vertices=st.integers(1, 5), edges=st.integers(5, 10),
                         labels=st.integers(1, 3), seed=st.integers(0, 10_000))


def path(p, text):
    return tuple(p.edge_id(t) for t in text.split())


def test_fig1_abcd_depth_two_t_depth_one():
    p = load("fig1")
    w = p.parse_word("abcd")
    res = depth(p, w)
    assert res.value == 2
    assert res.certificate.position == 2
    assert [p.edge_names[e] for e in res.certificate.routing_set] == ["b1", "b2"]
    assert t_depth(p, w)[0] == 1
    assert oracles.depth(p, w) == 2 and oracles.t_depth(p, w) == 1


def test_fig1_shifted_word_has_depth_one():
    p = load("fig1")
    assert depth(p, p.parse_word("dabc")).value == 1


def test_fig4_word_00_t_depth_from_enumeration():
    p = load("fig4")
    w = p.parse_word("00")
    tau, part = t_depth(p, w)
    assert tau == oracles.t_depth(p, w) == 2
    assert check_tangled_partition(p, part)
    assert sorted(len(c) for c in part.cells) == [1, 4]


def test_fig5_routing_set():
    p = load("fig5")
    u = path(p, "t3 t4 t3")
    assert routing_set(p, u, 2) == {p.edge_id("t4")}
    assert routing_set(p, u, 2) == oracles.routing_set(p, u, 2)


def test_routing_position_must_be_interior():
    p = load("fig5")
    with pytest.raises(WordError):
        routing_set(p, path(p, "t3 t4 t3"), 1)


def test_short_words_have_infinite_depth():
    p = load("fig1")
    res = depth(p, p.parse_word("ab"))
    assert res.value == math.inf and res.infinite and res.certificate is None


def test_word_outside_language():
    p = load("fig1")
    with pytest.raises(WordError):
        WordFibre(p, p.parse_word("aa"))


def test_bridge_endpoints_checked():
    p = load("fig1")
    with pytest.raises(WordError):
        bridge_exists(p, path(p, "a0 b1"), path(p, "b1 c1"))
    with pytest.raises(WordError):
        bridge_exists(p, path(p, "a0 b1"), path(p, "a0"))


def test_bridges_on_fig1():
    p = load("fig1")
    u, w = path(p, "b1 c1 d1"), path(p, "b2 c2 d2")
    assert bridge_exists(p, u, w) is None
    # sharing the first edge makes the partner itself a bridge
    assert bridge_exists(p, path(p, "a0 b1 c1"), path(p, "a0 b2 c2")) == path(p, "a0 b2 c2")
    assert two_way_bridge_exists(p, u, w) is None
    assert two_way_bridge_exists(p, u, u) == (u, u)
    assert not is_tangled(p, [u, w])


def test_min_hitting_set_tiebreak():
    assert min_hitting_set([0b011, 0b110]) == (1,)
    assert min_hitting_set([0b001, 0b100]) == (0, 2)
    assert min_hitting_set([]) == ()
    with pytest.raises(ValueError):
        min_hitting_set([0])


def test_clique_cover_cutoff():
    keys = list(range(21))
    with pytest.raises(InstanceTooLarge):
        min_clique_cover(keys, lambda a, b: True)
    assert min_clique_cover(keys[:5], lambda a, b: True) == [keys[:5]]
    assert len(min_clique_cover(keys[:5], lambda a, b: a == b)) == 5


@pytest.mark.parametrize("name", IRREDUCIBLE)
def test_fixture_words_against_oracles(name):
    p = load(name)
    for n in (3, 4, 5):
        for w in oracles.language(p, n)[:60]:
            fib = WordFibre(p, w)
            d = depth(p, w, fib)
            assert d.value == oracles.depth(p, w)
            assert check_depth_certificate(p, d.certificate)
            expected = oracles.t_depth(p, w)
            if expected is not None:
                tau, part = t_depth(p, w, fib)
                assert tau == expected
                assert check_tangled_partition(p, part)
                assert tau <= d.value


@pytest.mark.parametrize("name", IRREDUCIBLE)
def test_depth_monotone_under_extension(name):
    p = load(name)
    for w in oracles.language(p, 4)[:40]:
        d, tau = depth(p, w).value, t_depth(p, w)[0]
        for a in range(p.n_labels):
            for longer in (w + (a,), (a,) + w):
                if p.in_language(longer):
                    assert depth(p, longer).value <= d
                    assert t_depth(p, longer)[0] <= tau


def test_routed_path_passes_through_edge():
    p = load("fig1")
    u = path(p, "a0 b1 c1 d1")
    v = routed_path(p, u, 2, p.edge_id("b1"))
    assert v == u
    assert routed_path(p, u, 2, p.edge_id("b2")) is None


@settings(max_examples=60, deadline=None)
@given(random_specs, st.integers(2, 4), st.integers(0, 10_000))
def test_random_bridges_match_enumeration(spec, length, pick):
    p = random_presentation(spec)
    paths = oracles.all_paths(p, length)
    u = paths[pick % len(paths)]
    same = [w for w in paths if oracles.label(p, w) == oracles.label(p, u)]
    for w in same:
        got = bridge_exists(p, u, w)
        assert (got is None) == (oracles.bridge(p, u, w) is None)
        if got is not None:
            assert got[0] == u[0] and got[-1] == w[-1] and p.label_of(got) == p.label_of(u)
    if length >= 3:
        for n in range(2, length):
            assert routing_set(p, u, n) == oracles.routing_set(p, u, n)


@settings(max_examples=120, deadline=None)
@given(random_specs, st.integers(3, 5), st.integers(0, 10_000))
def test_random_depth_and_t_depth_match_enumeration(spec, length, pick):
    p = random_presentation(spec)
    words = oracles.language(p, length)
    w = words[pick % len(words)]
    if len(oracles.preimages(p, w)) > 9:
        return
    d = depth(p, w)
    assert d.value == oracles.depth(p, w)
    assert check_depth_certificate(p, d.certificate)
    tau, part = t_depth(p, w)
    assert tau == oracles.t_depth(p, w)
    assert tau <= d.value
