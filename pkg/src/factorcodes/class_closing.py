"""Right/left class-closing: exact delay, counterexamples and finite checks.

The decision procedure explores pairs of equally labelled paths leaving a
common vertex.  A state ``(a, b, reach)`` records the current last edges
``a`` and ``b`` of the two paths and the set ``reach`` of last edges of
all paths with the same label that start with the first edge of the
``a``-path.  The pair has a bridge from the ``a``-path to the ``b``-path
exactly when ``b`` is in ``reach``.

Missing bridges are inherited by prefixes: a bridge at length ``m``
extended by the partner's edges is a bridge at every later length.  So
the states without a bridge form a subautomaton closed under taking
predecessors, and the code is class-closing iff that subautomaton has no
cycle.  Seeds are ordered pairs, so one bridge direction covers both.

A run of ``n`` transitions describes paths of length ``n + 1``.  If the
longest bridgeless run has ``n`` transitions, every pair of length
``n + 2`` is tangled and the delay is ``n + 1``; with no seeds at all
(right resolving) the delay is 0.
"""

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import BudgetExceeded, InstanceTooLarge
from .graphs import iter_bits, longest_path_lengths, strongly_connected_components
from .points import Lasso, image_of, mutually_separated
from .presentation import left_tail, subset_states

DEFAULT_STATE_BUDGET = 1 << 20
DEFAULT_PATH_CAP = 50_000
SIDES = ("right", "left")


@dataclass
class ClosingVerdict:
    """Outcome of :func:`check_class_closing` for one side.

    ``counterexample`` holds two edge lassos with equal image that agree
    on a tail (left tail for the right side) and have no bridge in one
    direction at any length of the witnessed run.
    """

    side: str
    closing: bool
    delay: int = None
    counterexample: tuple = None
    image: Lasso = None
    state_count: int = 0
    run: dict = field(default=None, repr=False)

    def to_json(self, p):
        out = {"side": self.side, "closing": self.closing, "delay": self.delay,
               "states": self.state_count}
        if self.counterexample is not None:
            x, z = self.counterexample
            out["counterexample"] = {
                "points": [x.to_json(p.edge_names), z.to_json(p.edge_names)],
                "image": self.image.to_json(p.label_names),
            }
        return out


def _check_side(side):
    if side not in SIDES:
        raise ValueError(f"side must be 'right' or 'left', not {side!r}")


def check_class_closing(p, side="right", budget=DEFAULT_STATE_BUDGET):
    """Decide class-closing on one side with the exact delay or a counterexample."""
    _check_side(side)
    if side == "left":
        v = _right_closing(p.reverse(), budget)
        v.side = "left"
        if v.counterexample is not None:
            x, z = v.counterexample
            v.counterexample = (x.reversed(), z.reversed())
            v.image = v.image.reversed()
        return v
    return _right_closing(p, budget)


def _explore(p, budget):
    states, succ, parent = [], [], []
    index = {}

    def add(s, par):
        if s in index:
            return index[s]
        if len(states) >= budget:
            raise BudgetExceeded(f"pair automaton exceeded {budget} states")
        index[s] = len(states)
        states.append(s)
        succ.append([])
        parent.append(par)
        queue.append(index[s])
        return index[s]

    queue = deque()
    seeds = []
    for v in range(p.n_vertices):
        for c in range(p.n_labels):
            group = list(iter_bits(p.out_label_mask[v][c]))
            for a in group:
                for b in group:
                    if a != b:
                        seeds.append(add((a, b, 1 << a), None))
    while queue:
        i = queue.popleft()
        a, b, reach = states[i]
        for c in range(p.n_labels):
            na = p.out_label_mask[p.dst[a]][c]
            nb = p.out_label_mask[p.dst[b]][c]
            if not na or not nb:
                continue
            nreach = p.step_edges(reach, c)
            for a2 in iter_bits(na):
                for b2 in iter_bits(nb):
                    if not nreach >> b2 & 1:
                        j = add((a2, b2, nreach), i)
                        succ[i].append(j)
    return states, succ, parent, seeds


def _right_closing(p, budget):
    states, succ, parent, seeds = _explore(p, budget)
    comp, comps = strongly_connected_components(succ)
    cyclic = [False] * len(states)
    for members in comps:
        if len(members) > 1:
            for v in members:
                cyclic[v] = True
    for v, nbrs in enumerate(succ):
        if v in nbrs:
            cyclic[v] = True
    if not any(cyclic):
        if not seeds:
            return ClosingVerdict("right", True, 0, state_count=0)
        longest = longest_path_lengths(succ, [True] * len(states))
        return ClosingVerdict("right", True, max(longest[s] for s in seeds) + 1,
                              state_count=len(states))
    return _counterexample(p, states, succ, parent, comp, cyclic)


def _stem(parent, node):
    path = [node]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def _shortest_cycle_states(succ, node, comp):
    """Shortest state cycle through ``node`` inside its component."""
    back = {}
    queue = deque()
    for j in succ[node]:
        if j == node:
            return [node]
        if comp[j] == comp[node] and j not in back:
            back[j] = node
            queue.append(j)
    while queue:
        i = queue.popleft()
        for j in succ[i]:
            if j == node:
                cyc = [i]
                while back[cyc[-1]] != node:
                    cyc.append(back[cyc[-1]])
                return [node] + cyc[::-1]
            if comp[j] == comp[node] and j not in back:
                back[j] = i
                queue.append(j)
    return None


def _counterexample(p, states, succ, parent, comp, cyclic, max_candidates=256):
    # BFS discovery order equals stem length order
    candidates = [i for i in range(len(states)) if cyclic[i]][:max_candidates]
    best = None
    for i in candidates:
        cyc = _shortest_cycle_states(succ, i, comp)
        stem = _stem(parent, i)
        key = (len(cyc), len(stem), i)
        if best is None or key < best[0]:
            best = (key, stem, cyc)
    _, stem, cyc = best
    head = stem[:-1]
    a_spoke = tuple(states[i][0] for i in head)
    b_spoke = tuple(states[i][1] for i in head)
    a_cycle = tuple(states[i][0] for i in cyc)
    b_cycle = tuple(states[i][1] for i in cyc)
    start = p.src[states[stem[0]][0]]
    left, tail = left_tail(p, start)
    x = Lasso(left, tail + a_spoke, a_cycle, -len(tail))
    z = Lasso(left, tail + b_spoke, b_cycle, -len(tail))
    run = {"stem_states": len(stem), "cycle_states": len(cyc)}
    return ClosingVerdict("right", False, None, (x, z), image_of(p, x).normalized(),
                          len(states), run)


# -- finite conditions ---------------------------------------------------------------


def _paths_from(p, v, length, cap):
    out = []
    stack = [((e,),) for e in reversed(p.out_edges[v])]
    while stack:
        (path,) = stack.pop()
        if len(path) == length:
            out.append(path)
            if len(out) > cap:
                raise InstanceTooLarge(f"more than {cap} paths of length {length} "
                                       f"from {p.vertex_names[v]!r}")
            continue
        for e in reversed(p.out_edges[p.dst[path[-1]]]):
            stack.append((path + (e,),))
    return out


def _reach_last(p, first, word):
    reach = 1 << first
    for c in word[1:]:
        reach = p.step_edges(reach, c)
    return reach


def _untangled(p, groups, allowed=None):
    """First untangled pair in label groups, or None.

    ``allowed`` optionally restricts pairs by their start vertices.
    """
    for word in sorted(groups):
        paths = groups[word]
        ends = {}
        for u in paths:
            ends.setdefault((u[0], u[-1]), u)
        keys = sorted(ends)
        reach = {f: _reach_last(p, f, word) for f in {k[0] for k in keys}}
        for ka, kb in combinations(keys, 2):
            if allowed is not None and (p.src[ka[0]], p.src[kb[0]]) not in allowed:
                continue
            if not (reach[ka[0]] >> kb[1] & 1 and reach[kb[0]] >> ka[1] & 1):
                return ends[ka], ends[kb]
    return None


def verify_condition4(p, D, cap=DEFAULT_PATH_CAP):
    """Same-label paths of length ``D + 1`` from any single vertex are tangled.

    Returns ``(holds, witness)`` with an untangled pair as witness.
    """
    if D < 0:
        raise ValueError("D must be non-negative")
    for v in range(p.n_vertices):
        groups = {}
        for u in _paths_from(p, v, D + 1, cap):
            groups.setdefault(p.label_of(u), []).append(u)
        bad = _untangled(p, groups)
        if bad is not None:
            return False, bad
    return True, None


def accessible_sets(p):
    """Vertex sets ``t(I, v)`` over single vertices ``I`` and words ``v`` (empty word included)."""
    out = set()
    for v in range(p.n_vertices):
        out.update(subset_states(p, start=1 << v))
    return out


def verify_condition5(p, D, cap=DEFAULT_PATH_CAP):
    """Same-label paths of length ``D + 1`` right accessible from a single vertex are tangled."""
    if D < 0:
        raise ValueError("D must be non-negative")
    allowed = set()
    for s in accessible_sets(p):
        vs = list(iter_bits(s))
        allowed.update((i, j) for i in vs for j in vs)
    groups = {}
    total = 0
    for v in range(p.n_vertices):
        for u in _paths_from(p, v, D + 1, cap):
            groups.setdefault(p.label_of(u), []).append(u)
            total += 1
    if total > cap * p.n_vertices:  # pragma: no cover - guarded per vertex above
        raise InstanceTooLarge("path enumeration cap exceeded")
    bad = _untangled(p, groups, allowed)
    if bad is not None:
        return False, bad
    return True, None


def closing_delay_by_enumeration(p, max_delay=6, cap=DEFAULT_PATH_CAP):
    """Smallest ``D <= max_delay`` passing condition (4), or None."""
    for D in range(max_delay + 1):
        if verify_condition4(p, D, cap)[0]:
            return D
    return None


def separation_check(p, verdict, samples, **bounds_options):
    """Representatives of distinct classes over each sample differ at every coordinate.

    Returns ``(holds, witness)``; the witness is ``(y, x, z)`` for a pair
    from distinct classes that meet somewhere.
    """
    from .class_degree import class_count_bounds

    if not verdict.closing:
        raise ValueError("separation is only asserted for class-closing codes")
    for y in samples:
        bounds = class_count_bounds(p, y, verdict.side, **bounds_options)
        reps = [cls[0] for cls in bounds.classes]
        for x, z in combinations(reps, 2):
            if not mutually_separated(x, z):
                return False, (y, x, z)
    return True, None
