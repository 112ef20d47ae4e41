"""Constant-class-to-one, continuing, SFT image and multiplicity shells.

All three semi-decisions named in the interface are decided exactly here
by finite automata over vertex subsets; the horizons only bound the
optional word scans and are recorded in the reports.

Right continuing.  Fix ``x`` and an image point ``y`` that agrees with
``pi(x)`` up to some coordinate.  A lift of ``y`` left asymptotic to ``x``
may branch off ``x`` at any edge of the common past.  Along the common
past keep a triple ``(F, U, v)``: ``F`` the vertices where left-infinite
paths reading the image past can end (the follower state), ``U`` the
vertices reachable by paths that branched off ``x`` somewhere, ``v`` the
current vertex of ``x``.  After ``y`` leaves ``pi(x)`` only ``(F, U)``
moves on.  The code fails to be right continuing exactly when ``U`` can
become empty while ``F`` is not, starting from a triple that an infinite
past can produce, i.e. one reachable from a cycle of triples.

Retract.  Branching is allowed only at the edge ``n`` places before the
last common coordinate.  With ``S`` the vertices reachable from that one
edge, a failure is a run of the pair ``(F, S)`` emptying ``S`` after more
than ``n`` letters.  The minimal retract is therefore the longest emptying
time; it is unbounded iff a cycle of pairs can still lead to emptying.
"""

from collections import deque
from dataclasses import dataclass, field

from .bridges import depth
from .class_closing import DEFAULT_STATE_BUDGET, check_class_closing
from .class_degree import class_count_bounds, class_degree
from .errors import BudgetExceeded, InstanceTooLarge
from .graphs import (cyclic_nodes, iter_bits, longest_path_lengths, predecessors, reachable,
                     strongly_connected_components)
from .points import Lasso
from .presentation import Presentation, image_words, shortest_cycle, subset_states


def _subset_graph(p):
    states = subset_states(p)
    order = sorted(states, key=states.get)
    words = {order[0]: ()}
    for s in order:  # BFS order, so parents come first
        for a in range(p.n_labels):
            t = p.step(s, a)
            if t and t not in words:
                words[t] = words[s] + (a,)
    return order, words


# -- image SFT ------------------------------------------------------------------------


def _equivalence_classes(p, states):
    """Language-equivalence classes of subset states (0 is the dead state)."""
    states = [0] + [s for s in states if s]
    cls = {s: int(s != 0) for s in states}
    while True:
        sig = {s: (cls[s],) + tuple(cls[p.step(s, a)] for a in range(p.n_labels)) for s in states}
        ids = {}
        new = {s: ids.setdefault(sig[s], len(ids)) for s in states}
        if len(ids) == len(set(cls.values())):
            return new
        cls = new


@dataclass
class SftVerdict:
    status: str  # "sft", "not_sft" or "inconclusive"
    step: int = None
    witnesses: list = field(default_factory=list)  # (u, w, v) triples
    horizon: int = None
    note: str = ""

    def to_json(self, p):
        return {
            "status": self.status,
            "step": self.step,
            "horizon": self.horizon,
            "witnesses": [{"u": p.word_text(u) if u else "", "w": p.word_text(w) if w else "",
                           "v": p.word_text(v)} for u, w, v in self.witnesses],
            "note": self.note,
        }


def _distinguish(p, a, b):
    """Shortest word readable from ``b`` but not from ``a`` (``a`` below ``b``)."""
    seen = {(a, b): ()}
    queue = deque([(a, b)])
    while queue:
        s, t = queue.popleft()
        for c in range(p.n_labels):
            t2 = p.step(t, c)
            if not t2:
                continue
            s2 = p.step(s, c)
            word = seen[s, t] + (c,)
            if not s2:
                return word
            if (s2, t2) not in seen:
                seen[s2, t2] = word
                queue.append((s2, t2))
    return None


def image_is_sft(p, horizon=12, family_size=3, budget=DEFAULT_STATE_BUDGET):
    """Decide whether the image is a shift of finite type, and its step.

    A word ``w`` is synchronising iff ``t(Q, w)`` is empty or
    language-equivalent to ``t(V, w)`` for every reachable subset ``Q``.
    Non-synchronising words are closed under prefixes, so the pairs
    ``(t(Q, w), t(V, w))`` that are still bad form a subautomaton; the image
    is SFT iff it has no cycle, and the step is one more than its longest
    run.  Otherwise every pumped word ``s c^k`` along a cycle is a
    non-synchronising word, returned with its context ``(u, s c^k, v)``.
    """
    order, words = _subset_graph(p)
    cls = _equivalence_classes(p, order)
    full = p.all_vertices

    def bad(a, b):
        return a != 0 and cls[a] != cls[b]

    index, nodes, succ, parent = {}, [], [], []
    queue = deque()
    seeds = []
    for q in order:
        if bad(q, full):
            index[q, full] = len(nodes)
            nodes.append((q, full))
            succ.append([])
            parent.append(None)
            seeds.append(index[q, full])
            queue.append(index[q, full])
    while queue:
        i = queue.popleft()
        a, b = nodes[i]
        for c in range(p.n_labels):
            a2, b2 = p.step(a, c), p.step(b, c)
            if not bad(a2, b2):
                continue
            if (a2, b2) not in index:
                if len(nodes) >= budget:
                    raise BudgetExceeded(f"synchronisation automaton exceeded {budget} states")
                index[a2, b2] = len(nodes)
                nodes.append((a2, b2))
                succ.append([])
                parent.append((i, c))
                queue.append(index[a2, b2])
            succ[i].append((index[a2, b2], c))
    plain = [[j for j, _ in s] for s in succ]
    cyc = cyclic_nodes(plain)
    if not any(cyc):
        if not seeds:
            return SftVerdict("sft", 0, horizon=horizon)
        longest = longest_path_lengths(plain, [True] * len(nodes))
        return SftVerdict("sft", max(longest[s] for s in seeds) + 1, horizon=horizon)
    # witness family along the first cyclic node in BFS order
    node = next(i for i in range(len(nodes)) if cyc[i])
    stem = []
    i = node
    while parent[i] is not None:
        i, c = parent[i]
        stem.append(c)
    stem = tuple(stem[::-1])
    u = words[nodes[i][0]]
    comp, _ = strongly_connected_components(plain)
    cycle = _label_cycle(succ, node, comp)
    fam = []
    for k in range(family_size):
        w = stem + cycle * k
        a, b = p.run(nodes[i][0], w), p.run(full, w)
        fam.append((u, w, _distinguish(p, a, b)))
    return SftVerdict("not_sft", None, fam, horizon)


def _label_cycle(succ, node, comp):
    back = {node: None}
    queue = deque([node])
    while queue:
        i = queue.popleft()
        for j, c in succ[i]:
            if comp[j] != comp[node]:
                continue
            if j == node:
                out = [c]
                while back[i] is not None:
                    i, c2 = back[i]
                    out.append(c2)
                return tuple(out[::-1])
            if j not in back:
                back[j] = (i, c)
                queue.append(j)
    raise AssertionError("node is not on a cycle")


def is_synchronizing(p, word):
    """Direct check: the future after ``word`` does not depend on the past."""
    order, _ = _subset_graph(p)
    cls = _equivalence_classes(p, order)
    b = p.run(p.all_vertices, word)
    return all(not (a := p.run(q, word)) or cls[a] == cls[b] for q in order)


# -- continuing -------------------------------------------------------------------------


@dataclass
class ContinuingVerdict:
    side: str
    status: str  # "continuing", "not_continuing" or "inconclusive"
    retract: int = None  # minimal uniform retract; None when unbounded or undecided
    witness: tuple = None  # (x, y) edge/label lassos
    max_retract: int = None
    states: int = 0
    note: str = ""

    def to_json(self, p):
        out = {"side": self.side, "status": self.status, "retract": self.retract,
               "max_retract": self.max_retract, "states": self.states, "note": self.note}
        if self.witness is not None:
            x, y = self.witness
            out["witness"] = {"x": x.to_json(p.edge_names), "y": y.to_json(p.label_names)}
        return out


def _psi(p, order):
    """Subset states reachable from a cycle of the subset automaton."""
    idx = {s: i for i, s in enumerate(order)}
    succ = [[idx[t] for a in range(p.n_labels) if (t := p.step(s, a))] for s in order]
    cyc = cyclic_nodes(succ)
    keep = reachable(succ, [i for i in range(len(order)) if cyc[i]])
    return [order[i] for i in sorted(keep)]


def minimal_retract(p, budget=DEFAULT_STATE_BUDGET):
    """Longest emptying time of a single branch (None when unbounded)."""
    order, _ = _subset_graph(p)
    index, nodes, succ = {}, [], []
    empties = set()
    queue = deque()

    def add(s):
        if s not in index:
            if len(nodes) >= budget:
                raise BudgetExceeded(f"retract automaton exceeded {budget} states")
            index[s] = len(nodes)
            nodes.append(s)
            succ.append([])
            queue.append(s)
        return index[s]

    seeds = []
    for g in _psi(p, order):
        for v in iter_bits(g):
            for e in p.out_edges[v]:
                seeds.append(add((p.step(g, p.label[e]), 1 << p.dst[e])))
    while queue:
        f, s = queue.popleft()
        i = index[f, s]
        for c in range(p.n_labels):
            f2 = p.step(f, c)
            if not f2:
                continue
            s2 = p.step(s, c)
            if not s2:
                empties.add(i)
                continue
            succ[i].append(add((f2, s2)))
    if not empties:
        return 0, len(nodes)
    pred = predecessors(succ)
    coreach = reachable(pred, empties)
    ok = [i in coreach for i in range(len(nodes))]
    sub = [[j for j in succ[i] if ok[j]] if ok[i] else [] for i in range(len(nodes))]
    cyc = cyclic_nodes(sub)
    if any(cyc[i] for i in coreach):
        return None, len(nodes)
    # longest path from a seed to an emptying node, then the emptying letter;
    # every non-seed node has a co-reaching predecessor, so backward paths end at seeds
    lengths = longest_path_lengths(predecessors(sub), ok)
    return max(lengths[i] for i in empties) + 1, len(nodes)


def check_continuing(p, side="right", max_retract=16, budget=DEFAULT_STATE_BUDGET):
    """Decide right (left) continuing exactly, with the minimal retract or a witness."""
    if side == "left":
        v = check_continuing(p.reverse(), "right", max_retract, budget)
        v.side = "left"
        if v.witness is not None:
            v.witness = tuple(z.reversed() for z in v.witness)
        return v
    if side != "right":
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")
    try:
        retract, n1 = minimal_retract(p, budget)
        failure, n2 = _continuing_failure(p, budget)
    except BudgetExceeded as exc:
        return ContinuingVerdict("right", "inconclusive", max_retract=max_retract, note=str(exc))
    states = n1 + n2
    if failure is not None:
        return ContinuingVerdict("right", "not_continuing", None, failure, max_retract, states)
    note = "" if retract is not None else "continuing without a uniform retract"
    if retract is not None and retract > max_retract:
        note = f"minimal retract {retract} exceeds the cap {max_retract}"
    return ContinuingVerdict("right", "continuing", retract, None, max_retract, states, note)


def _continuing_failure(p, budget):
    """Search the triple automaton; returns ``(witness or None, state count)``."""
    order, _ = _subset_graph(p)
    index, nodes, succ = {}, [], []
    queue = deque()

    def add(s):
        if s not in index:
            if len(nodes) >= budget:
                raise BudgetExceeded(f"continuing automaton exceeded {budget} states")
            index[s] = len(nodes)
            nodes.append(s)
            succ.append([])
            queue.append(s)
        return index[s]

    for f in order:
        for v in iter_bits(f):
            add((f, 1 << v, v))
    while queue:
        f, u, v = queue.popleft()
        i = index[f, u, v]
        for e in p.out_edges[v]:
            a = p.label[e]
            succ[i].append((add((p.step(f, a), p.step(u, a), p.dst[e])), e))
    plain = [[j for j, _ in s] for s in succ]
    cyc = cyclic_nodes(plain)
    # triples an infinite past can produce, BFS from cyclic ones
    parent = {}
    bfs = []
    dq = deque()
    for i in range(len(nodes)):
        if cyc[i]:
            parent[i] = None
            dq.append(i)
    while dq:
        i = dq.popleft()
        bfs.append(i)
        for j, e in succ[i]:
            if j not in parent:
                parent[j] = (i, e)
                dq.append(j)
    # pairs after divergence, and which of them can empty U
    pair_index, pairs, pair_succ = {}, [], []
    fails = {}

    def add_pair(s):
        if s not in pair_index:
            pair_index[s] = len(pairs)
            pairs.append(s)
            pair_succ.append([])
            pq.append(s)
        return pair_index[s]

    pq = deque()
    switch = {}
    for i in bfs:
        f, u, v = nodes[i]
        for a in range(p.n_labels):
            if not any(p.label[e] != a for e in p.out_edges[v]):
                continue
            f2 = p.step(f, a)
            if f2:
                switch[i, a] = (f2, p.step(u, a))
    for s in switch.values():
        if s[1]:
            add_pair(s)
    while pq:
        f, u = pq.popleft()
        k = pair_index[f, u]
        for c in range(p.n_labels):
            f2 = p.step(f, c)
            if not f2:
                continue
            u2 = p.step(u, c)
            if not u2:
                fails.setdefault(k, c)
                continue
            pair_succ[k].append((add_pair((f2, u2)), c))
    # shortest word to failure from every doomed pair
    to_fail = {k: (c,) for k, c in fails.items()}
    rev = [[] for _ in pairs]
    for k, nbrs in enumerate(pair_succ):
        for j, c in nbrs:
            rev[j].append((k, c))
    dq = deque(sorted(to_fail))
    while dq:
        j = dq.popleft()
        for k, c in rev[j]:
            if k not in to_fail:
                to_fail[k] = (c,) + to_fail[j]
                dq.append(k)
    for i in bfs:
        for a in range(p.n_labels):
            s = switch.get((i, a))
            if s is None:
                continue
            if not s[1]:
                tail = ()
            elif pair_index.get(s) in to_fail:
                tail = to_fail[pair_index[s]]
            else:
                continue
            return _continuing_witness(p, nodes, succ, parent, cyc, i, a, tail), \
                len(nodes) + len(pairs)
    return None, len(nodes) + len(pairs)


def _continuing_witness(p, nodes, succ, parent, cyc, i, a, tail):
    stem = []
    j = i
    while parent[j] is not None:
        j, e = parent[j]
        stem.append(e)
    stem = tuple(stem[::-1])
    comp, _ = strongly_connected_components([[k for k, _ in s] for s in succ])
    left = _label_cycle(succ, j, comp)  # edges of the cycle of triples at j
    f, u, v = nodes[i]
    alt = next(e for e in p.out_edges[v] if p.label[e] != a)
    x = Lasso(left, stem + (alt,), shortest_cycle(p, p.dst[alt]))
    word = (a,) + tail
    f_end = p.run(f, word)
    w = min(iter_bits(f_end))
    right = tuple(p.label[e] for e in shortest_cycle(p, w))
    y = Lasso(tuple(p.label[e] for e in left), tuple(p.label[e] for e in stem) + word, right)
    return x, y


# -- constant-class-to-one ---------------------------------------------------------------


@dataclass
class CtcVerdict:
    constant: object  # True, False or None (inconclusive)
    d: int
    N: int = None
    horizon: int = None
    route_agreement: dict = field(default_factory=dict)
    reasons: list = field(default_factory=list)
    consistent: bool = True

    def to_json(self):
        return {"constant": self.constant, "d": self.d, "N": self.N, "horizon": self.horizon,
                "route_agreement": self.route_agreement, "reasons": self.reasons, "consistent": self.consistent}


def uniform_depth_length(p, d, horizon):
    """First ``N <= horizon`` with every image word of length ``N`` of depth ``d``."""
    for n in range(3, horizon + 1):
        if all(depth(p, w).value == d for w in image_words(p, n)):
            return n
    return None


def check_constant_class_to_one(p, horizon=8, facts=None, budget=DEFAULT_STATE_BUDGET):
    """Combine the uniform-depth scan with the closing/continuing/SFT facts.

    The scan alone certifies ``True``.  Otherwise the verdict follows from
    the exact facts: constant-class-to-one codes are bi-class-closing and
    bi-continuing; a class-closing side together with the opposite
    continuing side is constant-class-to-one; bi-class-closing onto an SFT
    image is constant-class-to-one.
    """
    if horizon < 3:
        raise ValueError("horizon must be at least 3")
    if facts is None:
        facts = gather_facts(p, budget=budget)
    d = facts["class_degree"].value
    N = uniform_depth_length(p, d, horizon)
    closing = {s: facts["closing"][s].closing for s in ("right", "left")}
    cont = {s: facts["continuing"][s].status for s in ("right", "left")}
    sft = facts["sft"].status
    route_agreement = {
        "depth_scan": {"N": N, "horizon": horizon},
        "closing": closing,
        "continuing": cont,
        "image_sft": sft,
    }
    reasons, verdicts = [], []
    if N is not None:
        verdicts.append(True)
        reasons.append(f"every word of length {N} has depth {d}")
    if not all(closing.values()):
        verdicts.append(False)
        reasons.append("not bi-class-closing")
    if "not_continuing" in cont.values():
        verdicts.append(False)
        reasons.append("not bi-continuing")
    if all(closing.values()) and sft == "sft":
        verdicts.append(True)
        reasons.append("bi-class-closing onto an SFT image")
    if closing["right"] and cont["left"] == "continuing":
        verdicts.append(True)
        reasons.append("right class-closing and left continuing")
    if closing["left"] and cont["right"] == "continuing":
        verdicts.append(True)
        reasons.append("left class-closing and right continuing")
    consistent = len(set(verdicts)) <= 1
    constant = verdicts[0] if verdicts and consistent else None
    return CtcVerdict(constant, d, N, horizon, route_agreement, reasons, consistent)


def gather_facts(p, max_retract=16, sft_horizon=12, budget=DEFAULT_STATE_BUDGET):
    return {
        "class_degree": class_degree(p, budget=budget),
        "closing": {s: check_class_closing(p, s, budget) for s in ("right", "left")},
        "continuing": {s: check_continuing(p, s, max_retract, budget) for s in ("right", "left")},
        "sft": image_is_sft(p, sft_horizon, budget=budget),
    }


# -- multiplicity shells -------------------------------------------------------------------


@dataclass
class MultiplicityShell:
    side: str
    d: int
    forbidden_words: list
    horizon: int
    shell_presentation: Presentation = None
    closed_at_horizon: bool = False
    inconsistency: dict = None

    def to_json(self, p):
        out = {
            "side": self.side,
            "d": self.d,
            "horizon": self.horizon,
            "forbidden_words": [p.word_text(w) for w in self.forbidden_words],
            "horizon_limited": not self.closed_at_horizon,
            "shell_presentation": None,
        }
        if self.shell_presentation is not None:
            q = self.shell_presentation
            out["shell_presentation"] = {"vertices": q.n_vertices, "edges": q.n_edges,
                                   "words": [q.word_text(w) for w in image_words(q, 3)]
                                   if q.n_edges else []}
        if self.inconsistency is not None:
            out["inconsistency"] = self.inconsistency
        return out


def _contains(word, sub):
    n = len(sub)
    return any(word[i:i + n] == sub for i in range(len(word) - n + 1))


def minimal_depth_words(p, d, horizon):
    """Depth-``d`` words up to ``horizon`` with no depth-``d`` proper factor."""
    found = []
    for n in range(3, horizon + 1):
        for w in image_words(p, n):
            if any(_contains(w, f) for f in found):
                continue
            if depth(p, w).value == d:
                found.append(w)
    return found


def _avoiding_presentation(p, forbidden):
    """Essential part of the product of ``p`` with a pattern automaton for ``forbidden``."""
    prefixes = {()}
    for w in forbidden:
        for i in range(len(w)):
            prefixes.add(w[:i])
    forb = set(forbidden)

    def advance(state, a):
        s = state + (a,)
        for i in range(len(s) + 1):
            tail = s[i:]
            if any(tail[j:] in forb for j in range(len(tail))):
                return None
            if tail in prefixes:
                return tail
        return ()

    nodes = [(v, ()) for v in range(p.n_vertices)]
    index = {n: i for i, n in enumerate(nodes)}
    edges = []
    queue = deque(nodes)
    while queue:
        v, st = queue.popleft()
        for e in p.out_edges[v]:
            nst = advance(st, p.label[e])
            if nst is None:
                continue
            node = (p.dst[e], nst)
            if node not in index:
                index[node] = len(nodes)
                nodes.append(node)
                queue.append(node)
            edges.append((index[v, st], index[node], e))
    # keep nodes on bi-infinite paths
    alive = set(range(len(nodes)))
    while True:
        outs = {i: 0 for i in alive}
        ins = {i: 0 for i in alive}
        for s, t, _ in edges:
            if s in alive and t in alive:
                outs[s] += 1
                ins[t] += 1
        dead = {i for i in alive if not outs[i] or not ins[i]}
        if not dead:
            break
        alive -= dead
    keep = sorted(alive)

    def name(i):
        v, st = nodes[i]
        return f"{p.vertex_names[v]}/{p.word_text(st) if st else '-'}"

    kept = [(f"{p.edge_names[e]}@{name(s)}", name(s), name(t), p.label_names[p.label[e]])
            for s, t, e in edges if s in alive and t in alive]
    return Presentation([name(i) for i in keep], kept, validate=False, labels=p.label_names)


def multiplicity_shell(p, side="right", horizon=6, d=None, closing=None):
    """Minimal depth-``d`` words and, on a class-closing side, the subshift avoiding them."""
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")
    if d is None:
        d = class_degree(p).value
    if closing is None:
        closing = check_class_closing(p, side)
    words = minimal_depth_words(p, d, horizon)
    extra = [w for w in image_words(p, horizon + 1)
             if not any(_contains(w, f) for f in words) and depth(p, w).value == d]
    shell = MultiplicityShell(side, d, words, horizon, closed_at_horizon=not extra)
    if closing.closing:
        shell.shell_presentation = _avoiding_presentation(p, words)
    else:
        y = closing.image
        bounds = class_count_bounds(p, y, side)
        hits = [w for w in words if _occurs_in(y, w)]
        shell.inconsistency = {
            "point": y.to_json(p.label_names),
            "classes_at_least": bounds.lower,
            "d": d,
            "contains_depth_d_word": p.word_text(hits[0]) if hits else None,
        }
    return shell


def _occurs_in(y, w):
    lo, hi = y.transient
    lo -= len(y.left) + len(w)
    hi += len(y.right) + len(w)
    return any(y.window(i, i + len(w)) == w for i in range(lo, hi))


# -- implication suite ----------------------------------------------------------------------


def _word_checks(p, lengths, max_words):
    """``(t-depth <= depth, extension monotonicity)`` over short image words.

    Either entry is None when a t-depth exceeds the clique-cover cutoff.
    """
    from .bridges import WordFibre, t_depth

    memo = {}

    def both(w):
        if w not in memo:
            fib = WordFibre(p, w)
            try:
                tau = t_depth(p, w, fib)[0]
            except InstanceTooLarge:
                tau = None
            memo[w] = (depth(p, w, fib).value, tau)
        return memo[w]

    tau_ok = mono_ok = True
    for n in lengths:
        for w in image_words(p, n)[:max_words]:
            d, tau = both(w)
            if tau is None:
                tau_ok = mono_ok = None
                continue
            if tau > d:
                return False, mono_ok
            for a in range(p.n_labels):
                for longer in (w + (a,), (a,) + w):
                    if not p.in_language(longer):
                        continue
                    d2, tau2 = both(longer)
                    if tau2 is not None and (d2 > d or tau2 > tau):
                        mono_ok = False
    return tau_ok, mono_ok


def implication_suite(p, horizon=8, max_retract=16, budget=DEFAULT_STATE_BUDGET,
                      word_lengths=(3, 4), max_words=200):
    """Run every analysis and check the implications between them.

    Returns ``(report, violations)``; each report row is ``(name, status)``
    with status ``holds``, ``violated`` or ``skipped``.
    """
    from .presentation import (degree_finite_to_one, is_finite_to_one, is_left_resolving,
                               is_right_resolving)
    from .subset_sink import aft_witness, subset_construction

    rows = []

    def check(name, premise, conclusion):
        if premise is None or (premise and conclusion is None):
            rows.append((name, "skipped"))
        elif not premise:
            rows.append((name, "vacuous"))
        else:
            rows.append((name, "holds" if conclusion else "violated"))

    facts = gather_facts(p, max_retract, budget=budget)
    ctc = check_constant_class_to_one(p, horizon, facts)
    closing = facts["closing"]
    cont = facts["continuing"]
    sft = facts["sft"].status

    def cert(status, yes):
        return None if status == "inconclusive" else status == yes

    rc, lc = closing["right"].closing, closing["left"].closing
    rcont, lcont = cert(cont["right"].status, "continuing"), cert(cont["left"].status, "continuing")
    is_sft = cert(sft, "sft")
    tau_ok, mono_ok = _word_checks(p, word_lengths, max_words)
    check("t-depth <= depth on sampled words", tau_ok is not None or None, tau_ok)
    check("depth and t-depth monotone under extension", mono_ok is not None or None, mono_ok)
    check("ctc verdict routes agree", True, ctc.consistent)
    check("ctc => bi-class-closing and bi-continuing", ctc.constant,
          None if None in (rcont, lcont) else rc and lc and rcont and lcont)
    check("right class-closing and left continuing => ctc",
          None if lcont is None else rc and lcont, ctc.constant)
    check("left class-closing and right continuing => ctc",
          None if rcont is None else lc and rcont, ctc.constant)
    check("right class-closing and SFT image => right continuing",
          None if is_sft is None else rc and is_sft, rcont)
    check("left class-closing and SFT image => left continuing",
          None if is_sft is None else lc and is_sft, lcont)
    check("right resolving => right delay 0", is_right_resolving(p), closing["right"].delay == 0)
    check("left resolving => left delay 0", is_left_resolving(p), closing["left"].delay == 0)
    fto = is_finite_to_one(p)
    check("finite-to-one => class degree = degree", fto,
          facts["class_degree"].value == degree_finite_to_one(p) if fto else None)
    cover = subset_construction(p, 0, budget)
    check("subset cover right resolving", True, is_right_resolving(cover.cover))
    bi = rc and lc
    aft = aft_witness(p, verdicts=[closing["right"], closing["left"]], budget=budget) if bi else None
    check("bi-class-closing => sink left closing within 2D+1", bi,
          aft is not None and aft.left_delay <= aft.left_delay_bound)
    check("continuing with finite retract <=> continuing (right)",
          None if rcont is None else True,
          (cont["right"].retract is not None) == bool(rcont))
    mirror = check_constant_class_to_one(p.reverse(), horizon, budget=budget).constant
    check("ctc verdict invariant under reversal", None if None in (mirror, ctc.constant) else True,
          mirror == ctc.constant)
    violations = [name for name, status in rows if status == "violated"]
    report = {
        "class_degree": facts["class_degree"].to_json(p),
        "closing": {s: closing[s].to_json(p) for s in ("right", "left")},
        "continuing": {s: cont[s].to_json(p) for s in ("right", "left")},
        "image_sft": facts["sft"].to_json(p),
        "ctc": ctc.to_json(),
        "aft_witness": aft.to_json() if aft else None,
        "implications": [{"name": n, "status": s} for n, s in rows],
    }
    return report, violations
