import pytest
from hypothesis import given, strategies as st

from conftest import load
from factorcodes.errors import WordError
from factorcodes.points import (Lasso, image_of, is_path_lasso, mutually_separated,
                                parse_lasso)

symbols = st.integers(0, 2)
words = st.lists(symbols, max_size=4).map(tuple)
cycles = st.lists(symbols, min_size=1, max_size=3).map(tuple)
lassos = st.builds(Lasso, cycles, words, cycles, st.integers(-3, 3))


def _window(x, lo=-30, hi=30):
    return [x[i] for i in range(lo, hi)]


@given(lassos)
def test_normalized_is_same_point(x):
    assert _window(x.normalized()) == _window(x)


@given(lassos, lassos)
def test_agrees_is_pointwise_equality(x, y):
    # both tails are periodic beyond +-10 with periods <= 3, so +-30 decides equality
    assert x.agrees(y) == (_window(x) == _window(y))


@given(lassos, st.integers(-5, 5))
def test_shift_and_reverse(x, k):
    assert all(x.shifted(k)[i] == x[i + k] for i in range(-15, 15))
    assert all(x.reversed()[i] == x[-1 - i] for i in range(-15, 15))
    assert x.reversed().reversed().agrees(x)


@given(lassos)
def test_normalized_is_idempotent(x):
    assert x.normalized().normalized() == x.normalized()


def test_empty_spoke_representations_agree():
    x = Lasso((0, 1), (0,), (0,), -1)
    y = Lasso((0, 1), (), (0,), -1)
    assert x.agrees(y) and x.normalized() == y.normalized()


def test_purely_periodic_phase_pinned():
    assert Lasso((0, 1), (), (0, 1), 1).normalized() == Lasso((1, 0), (), (1, 0), 0)


def test_empty_cycle_rejected():
    with pytest.raises(WordError):
        Lasso((), (), (0,))


def test_mutual_separation():
    assert mutually_separated(Lasso((0,), (), (0,)), Lasso((1,), (), (1,)))
    assert not mutually_separated(Lasso((0,), (1,), (0,)), Lasso((1,), (1,), (1,)))


def test_parse_and_path_check():
    p = load("fig2")
    x = parse_lasso("i1|ij0 ji1|i1@2", lambda s: tuple(p.edge_id(t) for t in s.split()))
    assert x.anchor == 2 and is_path_lasso(p, x)
    assert image_of(p, x).render(p.label_names) == "inf(1) . [0 1] . (1)inf @ 2"
    bad = Lasso((p.edge_id("i1"),), (p.edge_id("jk2"),), (p.edge_id("k1"),))
    assert not is_path_lasso(p, bad)
    with pytest.raises(WordError):
        parse_lasso("a|b", lambda s: ())
