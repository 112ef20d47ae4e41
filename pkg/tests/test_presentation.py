import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import FIGURES, IRREDUCIBLE, fixture_path, load
from factorcodes.errors import PresentationError, WordError
from factorcodes.presentation import (Presentation, count_preimages, degree_finite_to_one,
                                      degree_witness, export_dot, format_presentation, image_words,
                                      is_finite_to_one, is_left_resolving, is_right_resolving,
                                      left_tail, load_presentation, parse_presentation,
                                      preimage_words, shortest_cycle, subset_states)
from factorcodes.randomgen import RandomSpec, random_presentation

random_specs = st.builds(
    RandomSpec,
    vertices=st.integers(1, 5),
    edges=st.integers(5, 10),
    labels=st.integers(1, 3),
    seed=st.integers(0, 10_000),
)


def test_parse_counts():
    p = load("fig1")
    assert (p.n_vertices, p.n_edges, p.n_labels) == (6, 7, 4)
    assert p.vertex_names[0] == "I0"
    assert p.label_names == ("a", "b", "c", "d")


def test_parse_comments_and_blank_lines():
    p = parse_presentation("# c\n\nvertices: A  # trailing\nedge e A A x\n")
    assert p.edge_names == ("e",)


def test_broken_fixture_reports_line():
    with pytest.raises(PresentationError) as err:
        load_presentation(fixture_path("broken"))
    assert err.value.line == 3
    assert "line 3" in str(err.value)


@pytest.mark.parametrize("text", [
    "edge e A A x\n",
    "vertices: A\n",
    "vertices: A\nvertices: B\nedge e A A x\n",
    "vertices: A A\nedge e A A x\n",
    "vertices: A\nedge e A A x\nedge e A A y\n",
    "vertices: A\nedge e A A\n",
    "vertices: A\nknot e A A x\n",
])
def test_malformed_inputs_rejected(text):
    with pytest.raises(PresentationError):
        parse_presentation(text)


def test_reducible_rejected():
    with pytest.raises(PresentationError, match="irreducible|strongly"):
        load_presentation(fixture_path("reducible"))


def test_source_without_out_edge_rejected():
    with pytest.raises(PresentationError):
        parse_presentation("vertices: A B\nedge e A B x\n")


@pytest.mark.parametrize("name", IRREDUCIBLE)
def test_format_round_trip(name):
    p = load(name)
    assert parse_presentation(format_presentation(p)) == p


@pytest.mark.parametrize("name", IRREDUCIBLE)
def test_preimages_match_enumeration(name):
    p = load(name)
    for n in (1, 2, 3, 4):
        for w in oracles.language(p, n):
            assert preimage_words(p, w) == oracles.preimages(p, w)
            assert count_preimages(p, w) == len(oracles.preimages(p, w))
        assert image_words(p, n) == oracles.language(p, n)


def test_word_errors():
    p = load("fig1")
    assert preimage_words(p, p.parse_word("ac")) == []
    with pytest.raises(WordError):
        p.parse_word("az")
    assert p.parse_word("a,b") == p.parse_word("ab")


def test_resolving_fixtures():
    assert is_right_resolving(load("fig2"))
    assert not is_left_resolving(load("fig2"))
    assert is_right_resolving(load("identity")) and is_left_resolving(load("identity"))
    assert not is_right_resolving(load("fig1"))


@pytest.mark.parametrize("name", IRREDUCIBLE)
def test_reversal_duality(name):
    p = load(name)
    assert is_right_resolving(p) == is_left_resolving(p.reverse())
    assert p.reverse().reverse() == p


@pytest.mark.parametrize("name,expected", [
    ("fig1", False), ("fig2", True), ("identity", True), ("parallel", False), ("full2", True),
    ("fig5", False),
])
def test_finite_to_one_fixtures(name, expected):
    assert is_finite_to_one(load(name)) is expected


def test_fig4_not_finite_to_one():
    # 0-loop at I and the I->J->I detour read 000 between the same vertices
    assert not is_finite_to_one(load("fig4"))


@pytest.mark.parametrize("name,d", [("identity", 1), ("full2", 1), ("fig2", 1), ("loop", 1)])
def test_degree(name, d):
    p = load(name)
    assert degree_finite_to_one(p) == d
    word, i = degree_witness(p)
    assert len({u[i] for u in preimage_words(p, word)}) == d


def test_degree_requires_finite_to_one():
    with pytest.raises(ValueError):
        degree_finite_to_one(load("fig4"))


def _min_symbols_at_position(p, max_len):
    best = None
    for n in range(1, max_len + 1):
        for w in oracles.language(p, n):
            paths = oracles.preimages(p, w)
            for i in range(n):
                c = len({u[i] for u in paths})
                best = c if best is None else min(best, c)
    return best


@settings(max_examples=60, deadline=None)
@given(random_specs)
def test_random_degree_matches_symbol_count(spec):
    p = random_presentation(spec)
    if p.n_edges > 8 or not is_finite_to_one(p):
        return
    # words of length 6 suffice on these tiny graphs for the minimum to appear
    assert degree_finite_to_one(p) == _min_symbols_at_position(p, 6)


@settings(max_examples=80, deadline=None)
@given(random_specs)
def test_random_resolving_and_finite_to_one(spec):
    p = random_presentation(spec)
    assert is_right_resolving(p) == oracles.is_right_resolving(p)
    if is_right_resolving(p):
        assert is_finite_to_one(p)
    assert is_right_resolving(p) == is_left_resolving(p.reverse())


@settings(max_examples=40, deadline=None)
@given(random_specs)
def test_random_finite_to_one_against_diamonds(spec):
    p = random_presentation(spec)
    # a diamond of length <= 2|V|^2 + 2 exists iff the code is not finite-to-one
    diamond = False
    for n in range(1, 2 * p.n_vertices ** 2 + 3):
        if n > 6:
            break
        for w in oracles.language(p, n):
            ends = {}
            for u in oracles.preimages(p, w):
                ends.setdefault((p.src[u[0]], p.dst[u[-1]]), []).append(u)
            if any(len(g) > 1 for g in ends.values()):
                diamond = True
                break
        if diamond:
            break
    if diamond:
        assert not is_finite_to_one(p)
    elif p.n_vertices <= 2:
        assert is_finite_to_one(p)


def test_subset_states_start_first():
    p = load("fig2")
    states = subset_states(p)
    assert states[p.all_vertices] == 0
    assert all(s for s in states)


def test_shortest_cycle_and_left_tail():
    p = load("fig1")
    cyc = shortest_cycle(p, 0)
    assert len(cyc) == 4 and p.src[cyc[0]] == 0 and p.dst[cyc[-1]] == 0
    loop, stem = left_tail(p, 0)
    assert stem == () and len(loop) == 4
    q = load("fig2")
    loop, stem = left_tail(q, q.vertex_id("J"))
    assert len(loop) == 1 and len(stem) == 1  # the I loop, then I -> J


def test_export_dot_counts():
    text = export_dot(load("fig5"))
    assert text.count("->") == 6
    assert sum(1 for line in text.splitlines() if line.strip().endswith(";")
               and "->" not in line) == 3


def test_presentation_constructor_validation():
    with pytest.raises(PresentationError):
        Presentation(["A"], [("e", "A", "B", "x")])
    q = Presentation(["A", "B"], [("e", "A", "B", "x")], validate=False)
    assert q.n_edges == 1


@pytest.mark.parametrize("name", FIGURES)
def test_equality_and_hash(name):
    assert load(name) == load(name)
    assert hash(load(name)) == hash(load(name))
