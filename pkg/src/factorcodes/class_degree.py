"""Class degree and per-point class-count bounds.

The class degree is the minimum depth over all image words.  Write a word
as ``p c s`` with the interior position holding ``c``.  Everything the
routing sets at that position depend on is captured by two finite
objects:

* the *prefix state* of ``p``: for every edge ``f`` starting a path
  labelled ``p``, the set of vertices where such paths end;
* the *suffix state* of ``s``: for every edge ``l`` ending a path
  labelled ``s``, the set of vertices where such paths start.

The routing set of a preimage with end edges ``(f, l)`` is the set of
``c``-edges from the first set of ``f`` into the second set of ``l``, so
the depth at that position is a hitting-set number determined by
(prefix state, ``c``, suffix state).  Both state spaces are finite.
Prepending letters to the prefix (appending to the suffix) never
increases depth, so the minimum is attained on the terminal strongly
connected components of the two state graphs.  This gives an exact
value with no word-length horizon; the word scan is kept as a fallback
and as an oracle.
"""

import math
from collections import deque
from dataclasses import dataclass, field

from .bridges import (DEFAULT_CUTOFF, WordFibre, depth, forward_layers, min_clique_cover,
                      min_hitting_set, t_depth)
from .errors import BudgetExceeded, InstanceTooLarge, WordError
from .graphs import cyclic_nodes, iter_bits, strongly_connected_components
from .points import Lasso, image_of, lcm
from .presentation import degree_finite_to_one, image_words, is_finite_to_one

DEFAULT_STATE_BUDGET = 200_000


@dataclass
class ClassDegreeResult:
    value: int
    word: tuple
    certificate: object = None
    certified: bool = False
    horizon: int = None
    method: str = "exact"
    t_depth: int = None

    def to_json(self, p):
        return {
            "value": self.value,
            "certified": self.certified,
            "method": self.method,
            "horizon": self.horizon,
            "word": p.word_text(self.word),
            "t_depth_of_word": self.t_depth,
            "certificate": self.certificate.to_json(p) if self.certificate else None,
        }


# -- exact route ------------------------------------------------------------------


def _prefix_states(p, budget):
    """Prefix states reachable by prepending letters, with a shortest word each."""
    start = {}
    for a in range(p.n_labels):
        st = tuple((f, 1 << p.dst[f]) for f in iter_bits(p.label_mask[a]))
        if st and st not in start:
            start[st] = (a,)
    return _closure(p, start, budget, _prepend, lambda a, w: (a,) + w)


def _suffix_states(p, budget):
    start = {}
    for a in range(p.n_labels):
        st = tuple((l, 1 << p.src[l]) for l in iter_bits(p.label_mask[a]))
        if st and st not in start:
            start[st] = (a,)
    return _closure(p, start, budget, _append, lambda a, w: w + (a,))


def _prepend(p, state, a):
    by_src = [0] * p.n_vertices
    for g, m in state:
        by_src[p.src[g]] |= m
    out = []
    for f in iter_bits(p.label_mask[a]):
        m = by_src[p.dst[f]]
        if m:
            out.append((f, m))
    return tuple(out)


def _append(p, state, a):
    by_dst = [0] * p.n_vertices
    for g, m in state:
        by_dst[p.dst[g]] |= m
    out = []
    for l in iter_bits(p.label_mask[a]):
        m = by_dst[p.src[l]]
        if m:
            out.append((l, m))
    return tuple(out)


def _closure(p, start, budget, step, extend):
    words = dict(start)
    order = list(start)
    index = {s: i for i, s in enumerate(order)}
    succ = [[] for _ in order]
    queue = deque(order)
    while queue:
        s = queue.popleft()
        i = index[s]
        for a in range(p.n_labels):
            t = step(p, s, a)
            if not t:
                continue
            if t not in index:
                if len(order) >= budget:
                    raise BudgetExceeded(f"more than {budget} prefix/suffix states")
                index[t] = len(order)
                order.append(t)
                succ.append([])
                words[t] = extend(a, words[s])
                queue.append(t)
            succ[i].append(index[t])
    comp, comps = strongly_connected_components(succ)
    has_exit = [False] * len(comps)
    for i, nbrs in enumerate(succ):
        for j in nbrs:
            if comp[j] != comp[i]:
                has_exit[comp[i]] = True
    terminal = [s for s in order if not has_exit[comp[index[s]]]]
    return terminal, words, len(order)


def exact_class_degree(p, budget=DEFAULT_STATE_BUDGET):
    """``(value, word)`` with the minimum depth over all image words."""
    prefixes, pwords, _ = _prefix_states(p, budget)
    suffixes, swords, _ = _suffix_states(p, budget)
    best = None
    seen = set()
    for c in range(p.n_labels):
        outs = [[(f, p.out_mask(m, c)) for f, m in st] for st in prefixes]
        ins = [[(l, p.in_mask(m, c)) for l, m in st] for st in suffixes]
        for i, fo in enumerate(outs):
            for j, li in enumerate(ins):
                family = frozenset(a & b for _, a in fo for _, b in li if a & b)
                if not family or family in seen:
                    continue
                seen.add(family)
                k = len(min_hitting_set(family))
                if best is None or k < best[0]:
                    best = (k, pwords[prefixes[i]] + (c,) + swords[suffixes[j]])
                    if k == 1:
                        return best
    return best


def class_degree(p, max_len=8, budget=DEFAULT_STATE_BUDGET, cutoff=DEFAULT_CUTOFF):
    """Class degree with a depth certificate on a minimising word.

    The exact state-space route is tried first and, when it finishes, the
    result is certified.  If it exceeds ``budget`` the value falls back to
    a scan of words of length ``3..max_len`` (see :func:`scan_min_depth`),
    certified only when it reaches 1.
    """
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    try:
        value, word = exact_class_degree(p, budget)
        method, certified = "exact", True
    except BudgetExceeded:
        scan = scan_min_depth(p, max_len, cutoff=cutoff, stop_at_one=True)
        value, word = scan.value, scan.word
        method, certified = "scan", value == 1 or scan.plateau
    res = depth(p, word)
    if method == "exact" and res.value != value:  # pragma: no cover - internal consistency
        raise AssertionError(f"witness word has depth {res.value}, expected {value}")
    try:
        tau = t_depth(p, word, cutoff=cutoff)[0]
    except InstanceTooLarge:
        tau = None
    return ClassDegreeResult(value, word, res.certificate, certified, max_len, method, tau)


@dataclass
class ScanResult:
    value: float
    word: tuple
    minima: list = field(default_factory=list)  # running minimum after each length
    plateau: bool = False
    skipped: int = 0


def scan_min_depth(p, max_len, cutoff=DEFAULT_CUTOFF, stop_at_one=False, use_t_depth=True):
    """Running minimum of ``min(depth, t-depth)`` over image words of length 3..max_len.

    The plateau flag is set when the minimum stayed unchanged for
    ``|V| * 2**|V|`` consecutive lengths.
    """
    best, word = math.inf, None
    minima, skipped = [], 0
    unchanged = 0
    plateau_len = p.n_vertices * 2 ** p.n_vertices
    for length in range(3, max_len + 1):
        before = best
        for w in image_words(p, length):
            fibre = WordFibre(p, w)
            k = depth(p, w, fibre).value
            if use_t_depth:
                try:
                    k = min(k, t_depth(p, w, fibre, cutoff)[0])
                except InstanceTooLarge:
                    skipped += 1
            if k < best:
                best, word = k, w
            if stop_at_one and best == 1:
                minima.append(best)
                return ScanResult(best, word, minima, False, skipped)
        minima.append(best)
        unchanged = unchanged + 1 if best == before else 0
    return ScanResult(best, word, minima, unchanged >= plateau_len, skipped)


def class_degree_equals_degree_check(p, **options):
    """Cross-check against the classical degree; only for finite-to-one codes."""
    if not is_finite_to_one(p):
        raise ValueError("degree comparison needs a finite-to-one code")
    return class_degree(p, **options).value == degree_finite_to_one(p)


# -- transitions between lasso preimages --------------------------------------------


def right_transition(p, x, z):
    """Exact test for a right transition from lasso preimage ``x`` to ``z``.

    A right transition needs, for every ``m``, some ``n > m`` with
    ``z[n]`` among the last edges of paths that start with ``x[m]`` and
    read the common image.  That condition is inherited by smaller ``m``
    (``x`` itself carries the reach set forward), so it is enough to test
    one period of ``m`` deep in the right tails, each by running the reach
    set until its state repeats.
    """
    m0 = max(x.right_period_start(), z.right_period_start())
    period = lcm(len(x.right), len(z.right))
    for m in range(m0, m0 + period):
        reach = 1 << x[m]
        n = m
        seen = set()
        while True:
            n += 1
            reach = p.step_edges(reach, p.label[z[n]])
            if reach >> z[n] & 1:
                break
            key = (reach, (n - m0) % period)
            if key in seen:
                return False
            seen.add(key)
    return True


def right_equivalent(p, x, z):
    return right_transition(p, x, z) and right_transition(p, z, x)


def transition(p, x, z, side="right"):
    if side == "right":
        return right_transition(p, x, z)
    return right_transition(p.reverse(), x.reversed(), z.reversed())


def equivalent(p, x, z, side="right"):
    return transition(p, x, z, side) and transition(p, z, x, side)


# -- fibre graph of an image lasso ---------------------------------------------------


class LassoFibre:
    """Paths over an image lasso ``y`` as walks in a finite graph.

    Nodes are ``(kind, phase, vertex)`` meaning the vertex before a
    coordinate: kind ``L`` in the left cycle (phase 0 is the spoke start),
    ``S`` strictly inside the spoke, ``R`` in the right cycle (phase 0 is
    the end of the spoke).  The spoke is made nonempty first.
    """

    def __init__(self, p, y):
        if not y.spoke:
            y = Lasso(y.left, y.right[:1], y.right[1:] + y.right[:1], y.anchor)
        self.p, self.y = p, y
        L, S, R = y.left, y.spoke, y.right
        nv = p.n_vertices
        self.nodes = ([("L", k, v) for k in range(len(L)) for v in range(nv)]
                      + [("S", j, v) for j in range(1, len(S)) for v in range(nv)]
                      + [("R", k, v) for k in range(len(R)) for v in range(nv)])
        self.index = {n: i for i, n in enumerate(self.nodes)}
        self.out = [[] for _ in self.nodes]  # (edge id, target node)
        for i, (kind, k, v) in enumerate(self.nodes):
            if kind == "L":
                self._link(i, v, L[k], ("L", (k + 1) % len(L)))
                if k == 0:
                    self._link(i, v, S[0], ("S", 1) if len(S) > 1 else ("R", 0))
            elif kind == "S":
                self._link(i, v, S[k], ("S", k + 1) if k + 1 < len(S) else ("R", 0))
            else:
                self._link(i, v, R[k], ("R", (k + 1) % len(R)))
        self.r0 = y.anchor + len(S)
        self.succ = [[j for _, j in o] for o in self.out]
        self.pred = [[] for _ in self.nodes]
        for i, o in enumerate(self.out):
            for e, j in o:
                self.pred[j].append((e, i))

    def _link(self, i, v, a, where):
        for e in iter_bits(self.p.out_label_mask[v][a]):
            self.out[i].append((e, self.index[where + (self.p.dst[e],)]))

    def part(self, kind):
        return [i for i, n in enumerate(self.nodes) if n[0] == kind]

    def _restricted_succ(self, kind):
        return [[j for j in s if self.nodes[j][0] == kind] if self.nodes[i][0] == kind else []
                for i, s in enumerate(self.succ)]

    def shortest_cycle(self, node, kind):
        """Edges of a shortest closed walk at ``node`` staying inside ``kind`` nodes."""
        parent = {}
        queue = deque()
        for e, j in self.out[node]:
            if self.nodes[j][0] != kind:
                continue
            if j == node:
                return (e,)
            if j not in parent:
                parent[j] = (e, node)
                queue.append(j)
        while queue:
            i = queue.popleft()
            for e, j in self.out[i]:
                if self.nodes[j][0] != kind:
                    continue
                if j == node:
                    path = [e]
                    w = i
                    while w != node:
                        f, w = parent[w]
                        path.append(f)
                    return tuple(path[::-1])
                if j not in parent:
                    parent[j] = (e, i)
                    queue.append(j)
        return None

    def left_part(self, entry):
        """``(cycle, stem, length)``: a periodic left tail ending at node ``entry``.

        ``stem`` leads from the cycle's node to ``entry``.  None when no
        left-infinite path ends there.
        """
        cyc = cyclic_nodes(self._restricted_succ("L"))
        # backward BFS through S and L nodes
        nxt = {entry: None}
        queue = deque([entry])
        while queue:
            i = queue.popleft()
            if self.nodes[i][0] == "L" and cyc[i]:
                stem = []
                w = i
                while w != entry:
                    e, w = nxt[w]
                    stem.append(e)
                return self.shortest_cycle(i, "L"), tuple(stem)
            for e, j in self.pred[i]:
                if self.nodes[j][0] == "R" or j in nxt:
                    continue
                nxt[j] = (e, i)
                queue.append(j)
        return None

    def right_tails(self, entries, limit):
        """Candidate right tails ``(entry, stem, cycle)`` from the given ``R`` phase-0 nodes."""
        rsucc = self._restricted_succ("R")
        cyc = cyclic_nodes(rsucc)
        parent = {}
        order = []
        queue = deque()
        for s in entries:
            if s not in parent:
                parent[s] = None
                queue.append(s)
        while queue:
            i = queue.popleft()
            order.append(i)
            for e, j in self.out[i]:
                if self.nodes[j][0] == "R" and j not in parent:
                    parent[j] = (e, i)
                    queue.append(j)
        out = []
        for c in order:
            if not cyc[c]:
                continue
            stem = []
            w = c
            while parent[w] is not None:
                e, w = parent[w]
                stem.append(e)
            out.append((w, tuple(stem[::-1]), self.shortest_cycle(c, "R")))
            if len(out) >= limit:
                break
        return out


@dataclass
class ClassCountBounds:
    point: Lasso
    side: str
    lower: int
    upper: int
    classes: list = field(repr=False)  # lasso preimages grouped by certified class
    window: tuple = None  # (start, length) of the block giving ``upper``
    partition: list = field(default=None, repr=False)
    exact_partition: bool = True

    def to_json(self, p):
        return {
            "side": self.side,
            "point": self.point.to_json(p.label_names),
            "lower": self.lower,
            "upper": self.upper,
            "lower_is_horizon_limited": self.lower < self.upper,
            "window": list(self.window) if self.window else None,
            "class_representatives": [c[0].to_json(p.edge_names) for c in self.classes],
        }


def _forward_sets(p, y):
    """Vertices where left-infinite paths reading the left cycle can end.

    The iteration from the full vertex set decreases, so the first repeat
    is its greatest fixed point.
    """
    s = p.all_vertices
    seen = set()
    while s not in seen:
        seen.add(s)
        s = p.run(s, y.left)
    # the decreasing iteration has reached its fixed point
    return s


def _backward_fixed(p, word):
    s = p.all_vertices
    seen = set()
    while s not in seen:
        seen.add(s)
        s = p.run_back(s, word)
    return s


def class_count_bounds(p, y, side="right", k_max=3, cutoff=DEFAULT_CUTOFF, max_candidates=64):
    """Lower and upper bounds on the number of classes over image lasso ``y``.

    ``lower`` counts lasso preimages that are pairwise not equivalent
    (decided exactly by :func:`right_transition`); ``upper`` is the
    smallest tangled partition of the extendable preimages of a block in
    the periodic part of the right tail, over block lengths up to
    ``k_max`` right periods.
    """
    if side == "left":
        res = class_count_bounds(p.reverse(), y.reversed(), "right", k_max, cutoff,
                                 max_candidates)
        res.point = y
        res.side = "left"
        res.classes = [[x.reversed() for x in cls] for cls in res.classes]
        return res
    if side != "right":
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")
    fib = LassoFibre(p, y)
    yy = fib.y
    a_anchor = _forward_sets(p, yy)
    a_r0 = p.run(a_anchor, yy.spoke)
    b_r0 = _backward_fixed(p, yy.right)
    if not a_r0 & b_r0:
        raise WordError("lasso is not in the image")

    # lower bound: candidate preimages grouped by exact equivalence
    entries = [fib.index[("R", 0, v)] for v in iter_bits(a_r0 & b_r0)]
    cands = []
    for entry, rstem, rcycle in fib.right_tails(entries, max_candidates):
        left = fib.left_part(entry)
        if left is None:  # pragma: no cover - entry lies in the forward set
            continue
        lcyc, lstem = left
        x = Lasso(lcyc, lstem + rstem, rcycle, fib.r0 - len(lstem))
        cands.append(x)
    classes = []
    for x in cands:
        for cls in classes:
            if right_equivalent(p, cls[0], x):
                cls.append(x)
                break
        else:
            classes.append([x])

    # upper bound: tangled partitions of blocks in the periodic regime
    R = yy.right
    seq, k = {}, 0
    a = a_r0
    while a not in seq:
        seq[a] = k
        a = p.run(a, R)
        k += 1
    k0 = seq[a]
    m0 = fib.r0 + k0 * len(R)
    period = (k - k0) * len(R)
    a_m0 = a
    best = None
    for phase in range(period):
        m = m0 + phase
        a_m = p.run(a_m0, tuple(yy[i] for i in range(m0, m)))
        for k in range(1, k_max + 1):
            length = k * len(R)
            word = tuple(yy[i] for i in range(m, m + length))
            b_end = p.run_back(b_r0, R[(m + length - fib.r0) % len(R):])
            keys, reach = [], {}
            for f in iter_bits(p.out_mask(a_m, word[0])):
                layers = forward_layers(p, f, word)
                reach[f] = layers[-1]
                for l in iter_bits(layers[-1] & p.in_mask(b_end, word[-1])):
                    keys.append((f, l))
            if not keys:  # pragma: no cover - the lasso is in the image
                continue

            def compat(u, w, reach=reach):
                return bool(reach[u[0]] >> w[1] & 1 and reach[w[0]] >> u[1] & 1)

            try:
                cover, exact = min_clique_cover(keys, compat, cutoff), True
            except InstanceTooLarge:
                cover, exact = _greedy_cover(keys, compat), False
            if best is None or len(cover) < len(best[0]):
                best = (cover, (m, length), exact)
    cover, window, exact = best
    upper = len(cover)
    return ClassCountBounds(y, "right", len(classes), upper, classes, window, cover, exact)


def _greedy_cover(keys, compat):
    cells = []
    for k in keys:
        for c in cells:
            if all(compat(k, j) for j in c):
                c.append(k)
                break
        else:
            cells.append([k])
    return cells


def lasso_preimages(p, y, limit=64):
    """A deterministic sample of lasso preimages of ``y`` (distinct right tails)."""
    return [x for cls in class_count_bounds(p, y, "right", k_max=1, max_candidates=limit).classes
            for x in cls]


def is_preimage(p, x, y):
    from .points import is_path_lasso
    return is_path_lasso(p, x) and image_of(p, x).agrees(y)
