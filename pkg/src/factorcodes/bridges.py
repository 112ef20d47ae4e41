"""Bridges between equally labelled paths, routability, depth and t-depth.

A bridge from ``u`` to ``w`` (same length, same label) is a path with
``u``'s first edge, ``w``'s last edge and the same label.  Whether one
exists depends only on ``u[0]``, ``w[-1]`` and the label, so everything
here is computed from per-position reach sets: ``forward_layers(f, word)``
is the list of edge masks that paths starting with ``f`` can occupy at
each position.

Preimages of a word that share their first and last edge are
interchangeable for every question asked here (routing sets, bridges), so
the exact hitting-set and clique-cover searches run on these
*end-classes* rather than on the raw preimages.
"""

import math
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InstanceTooLarge, WordError
from .graphs import iter_bits
from .presentation import preimage_words

DEFAULT_CUTOFF = 20


def forward_layers(p, first, word):
    """Edge masks reachable at each position by paths labelled ``word`` starting with ``first``."""
    if p.label[first] != word[0]:
        return [0] * len(word)
    layers = [1 << first]
    for a in word[1:]:
        layers.append(p.step_edges(layers[-1], a))
    return layers


def backward_layers(p, last, word):
    """Edge masks at each position of paths labelled ``word`` ending with ``last``."""
    if p.label[last] != word[-1]:
        return [0] * len(word)
    layers = [1 << last]
    for a in reversed(word[:-1]):
        layers.append(p.step_edges_back(layers[-1], a))
    return layers[::-1]


def _trace_back(p, layers, last):
    """Smallest-id path through ``layers`` ending at edge ``last``."""
    path = [last]
    for i in range(len(layers) - 2, -1, -1):
        want = p.src[path[-1]]
        for e in iter_bits(layers[i]):
            if p.dst[e] == want:
                path.append(e)
                break
        else:  # pragma: no cover - layers are consistent by construction
            raise AssertionError("broken reach layers")
    return tuple(path[::-1])


def _check_pair(p, u, w):
    u, w = p.check_path(u), p.check_path(w)
    if len(u) != len(w):
        raise WordError("bridge endpoints must have equal length")
    if p.label_of(u) != p.label_of(w):
        raise WordError("bridge endpoints must have equal labels")
    return u, w


def bridge_exists(p, u, w):
    """A bridge from ``u`` to ``w``, or None."""
    u, w = _check_pair(p, u, w)
    return _bridge(p, u[0], w[-1], p.label_of(u))


def _bridge(p, first, last, word):
    layers = forward_layers(p, first, word)
    if not layers[-1] >> last & 1:
        return None
    return _trace_back(p, layers, last)


def two_way_bridge_exists(p, u, w):
    """The pair (bridge u->w, bridge w->u), or None if either is missing."""
    u, w = _check_pair(p, u, w)
    word = p.label_of(u)
    there = _bridge(p, u[0], w[-1], word)
    if there is None:
        return None
    back = _bridge(p, w[0], u[-1], word)
    if back is None:
        return None
    return there, back


def routing_set(p, u, n):
    """Edges ``e`` such that ``u`` is routable through ``{e}`` at position ``n`` (1-based)."""
    u = p.check_path(u)
    if not 1 < n < len(u):
        raise WordError(f"position {n} is not interior to a path of length {len(u)}")
    word = p.label_of(u)
    fwd = forward_layers(p, u[0], word)
    bwd = backward_layers(p, u[-1], word)
    return frozenset(iter_bits(fwd[n - 1] & bwd[n - 1]))


def routed_path(p, u, n, e):
    """A path with ``u``'s end edges and label passing through ``e`` at ``n``, or None."""
    word = p.label_of(u)
    fwd = forward_layers(p, u[0], word)
    bwd = backward_layers(p, u[-1], word)
    if not (fwd[n - 1] & bwd[n - 1]) >> e & 1:
        return None
    head = _trace_back(p, fwd[:n], e)
    tail = [e]
    for i in range(n, len(word)):
        want = p.dst[tail[-1]]
        for f in iter_bits(bwd[i]):
            if p.src[f] == want:
                tail.append(f)
                break
    return head + tuple(tail[1:])


# -- end classes -------------------------------------------------------------------


class WordFibre:
    """Preimages of one word grouped by (first edge, last edge)."""

    def __init__(self, p, word):
        word = p.check_word(word)
        self.p = p
        self.word = word
        self.paths = preimage_words(p, word)
        if not self.paths:
            raise WordError(f"word {p.word_text(word)!r} is not in the image language")
        classes = {}
        for u in self.paths:
            classes.setdefault((u[0], u[-1]), []).append(u)
        self.classes = classes
        self.keys = sorted(classes)
        firsts = sorted({f for f, _ in self.keys})
        lasts = sorted({l for _, l in self.keys})
        self.fwd = {f: forward_layers(p, f, word) for f in firsts}
        self.bwd = {l: backward_layers(p, l, word) for l in lasts}

    def reach(self, first):
        """Last edges of paths with this label starting with ``first``."""
        return self.fwd[first][-1]

    def compatible(self, a, b):
        """2-way bridge between end classes ``a`` and ``b``."""
        return bool(self.reach(a[0]) >> b[1] & 1 and self.reach(b[0]) >> a[1] & 1)

    def routing_mask(self, key, n):
        f, l = key
        return self.fwd[f][n - 1] & self.bwd[l][n - 1]


# -- depth -------------------------------------------------------------------------


@dataclass
class DepthCertificate:
    word: tuple
    position: int
    routing_set: tuple
    witnesses: dict = field(repr=False)

    def to_json(self, p):
        return {
            "word": p.word_text(self.word),
            "position": self.position,
            "routing_set": [p.edge_names[e] for e in self.routing_set],
            "witnesses": [
                {"preimage": [p.edge_names[e] for e in u], "routed": [p.edge_names[e] for e in v]}
                for u, v in sorted(self.witnesses.items())
            ],
        }


@dataclass
class DepthResult:
    value: float  # int, or math.inf for words without interior positions
    certificate: DepthCertificate = None

    @property
    def infinite(self):
        return self.value == math.inf


def min_hitting_set(sets, universe=None):
    """Lexicographically smallest minimum-size hitting set of bit-mask ``sets``.

    Exact search by increasing size over combinations of the sorted
    universe, after dropping duplicate and superset constraints.
    """
    sets = sorted(set(sets), key=lambda m: (bin(m).count("1"), m))
    if not sets:
        return ()
    if any(m == 0 for m in sets):
        raise ValueError("empty set cannot be hit")
    minimal = []
    for m in sets:
        if not any(k & m == k for k in minimal):
            minimal.append(m)
    if universe is None:
        universe = 0
        for m in minimal:
            universe |= m
    elems = list(iter_bits(universe))
    for k in range(1, len(minimal) + 1):
        for combo in combinations(elems, k):
            cm = 0
            for e in combo:
                cm |= 1 << e
            if all(cm & m for m in minimal):
                return combo
    raise AssertionError("unreachable: one element per set always hits")


def depth(p, word, fibre=None):
    """Depth of ``word`` with a certificate; infinite for words of length <= 2."""
    if fibre is None:
        fibre = WordFibre(p, word)
    word = fibre.word
    length = len(word)
    if length <= 2:
        return DepthResult(math.inf, None)
    best = None
    for n in range(2, length):
        masks = [fibre.routing_mask(k, n) for k in fibre.keys]
        hs = min_hitting_set(masks)
        if best is None or len(hs) < len(best[1]):
            best = (n, hs)
            if len(hs) == 1 and n == 2:
                break
    n, hs = best
    witnesses = {}
    for key in fibre.keys:
        mask = fibre.routing_mask(key, n)
        e = next(e for e in hs if mask >> e & 1)
        v = routed_path(p, fibre.classes[key][0], n, e)
        for u in fibre.classes[key]:
            witnesses[u] = v
    return DepthResult(len(hs), DepthCertificate(word, n, tuple(hs), witnesses))


def check_depth_certificate(p, cert):
    """Independent re-validation of every witness in a depth certificate."""
    members = set(cert.routing_set)
    paths = preimage_words(p, cert.word)
    if set(cert.witnesses) != set(paths):
        return False
    for u, v in cert.witnesses.items():
        if not p.is_path(v) or p.label_of(v) != cert.word:
            return False
        if v[0] != u[0] or v[-1] != u[-1] or v[cert.position - 1] not in members:
            return False
    return True


# -- t-depth ------------------------------------------------------------------------


@dataclass
class TangledPartition:
    word: tuple
    cells: list
    bridges: dict = field(repr=False)

    def __len__(self):
        return len(self.cells)

    def bridge_for(self, u, w):
        return self.bridges[(u[0], u[-1]), (w[0], w[-1])]

    def to_json(self, p):
        return {
            "word": p.word_text(self.word),
            "cells": [[[p.edge_names[e] for e in u] for u in cell] for cell in self.cells],
        }


def min_clique_cover(keys, compatible, cutoff=DEFAULT_CUTOFF):
    """Exact minimum partition of ``keys`` into pairwise-compatible cells.

    Branch and bound: vertices are taken in order and placed into an
    existing cell they are compatible with, or a new one.  The first
    optimum found in this order is returned, which makes ties
    deterministic.
    """
    n = len(keys)
    if n > cutoff:
        raise InstanceTooLarge(f"{n} end classes exceed the clique-cover cutoff {cutoff}")
    adj = [[compatible(keys[i], keys[j]) for j in range(n)] for i in range(n)]
    # a greedy independent set bounds the answer from below
    indep = []
    for i in range(n):
        if all(not adj[i][j] for j in indep):
            indep.append(i)
    lower = len(indep)
    best = [None]
    cells = []

    def place(i):
        if best[0] is not None and len(cells) >= len(best[0]):
            return
        if i == n:
            best[0] = [list(c) for c in cells]
            return
        for c in cells:
            if all(adj[i][j] for j in c):
                c.append(i)
                place(i + 1)
                c.pop()
                if best[0] is not None and len(best[0]) <= lower:
                    return
        cells.append([i])
        place(i + 1)
        cells.pop()

    place(0)
    return [[keys[i] for i in c] for c in best[0]]


def t_depth(p, word, fibre=None, cutoff=DEFAULT_CUTOFF):
    """Smallest tangled partition of the preimages of ``word``."""
    if fibre is None:
        fibre = WordFibre(p, word)
    cover = min_clique_cover(fibre.keys, fibre.compatible, cutoff)
    cells, bridges = [], {}
    for cell in cover:
        cells.append(sorted(u for key in cell for u in fibre.classes[key]))
        for a in cell:
            for b in cell:
                bridges[a, b] = _bridge(p, a[0], b[1], fibre.word)
    return len(cover), TangledPartition(fibre.word, cells, bridges)


def check_tangled_partition(p, part):
    paths = preimage_words(p, part.word)
    flat = [u for cell in part.cells for u in cell]
    if sorted(flat) != paths or len(set(flat)) != len(flat):
        return False
    for cell in part.cells:
        for u in cell:
            for w in cell:
                v = part.bridge_for(u, w)
                if v is None or not p.is_path(v) or p.label_of(v) != part.word:
                    return False
                if v[0] != u[0] or v[-1] != w[-1]:
                    return False
    return True


def is_tangled(p, paths):
    """True iff every two of ``paths`` (same label) are joined by a 2-way bridge."""
    paths = list(paths)
    if not paths:
        return True
    word = p.label_of(paths[0])
    reach = {}
    for u in paths:
        if u[0] not in reach:
            reach[u[0]] = forward_layers(p, u[0], word)[-1]
    return all(reach[u[0]] >> w[-1] & 1 for u in paths for w in paths)
