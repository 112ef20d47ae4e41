"""Small graph utilities on integer-indexed adjacency lists.

All functions here take ``succ`` as a sequence where ``succ[i]`` is an
iterable of successor indices of node ``i``.  They are used both on the
presentation graphs and on the (much larger) product automata, so they
avoid recursion and per-node object overhead.
"""

from collections import deque


def iter_bits(mask):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask):
    return list(iter_bits(mask))


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def strongly_connected_components(succ):
    """Tarjan's algorithm, iterative.

    Returns ``(comp, components)`` where ``comp[i]`` is the component index
    of node ``i`` and ``components`` lists the members of each component.
    Components come out in reverse topological order (sinks first).
    """
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack = []
    components = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = len(components)
                    members.append(w)
                    if w == v:
                        break
                components.append(sorted(members))
    return comp, components


def cyclic_nodes(succ):
    """Boolean list: node lies on a directed cycle (nontrivial SCC or self-loop)."""
    comp, components = strongly_connected_components(succ)
    cyclic = [False] * len(succ)
    for members in components:
        if len(members) > 1:
            for v in members:
                cyclic[v] = True
    for v, nbrs in enumerate(succ):
        if any(w == v for w in nbrs):
            cyclic[v] = True
    return cyclic


def reachable(succ, sources):
    """Set of nodes reachable from ``sources`` (sources included)."""
    seen = set(sources)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in succ[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def predecessors(succ):
    pred = [[] for _ in succ]
    for v, nbrs in enumerate(succ):
        for w in nbrs:
            pred[w].append(v)
    return pred


def bfs_path(succ, sources, targets, allowed=None):
    """Shortest node path from any source to any target, or None.

    Sources are tried in the given order and neighbours in adjacency order,
    so the result is deterministic.  ``allowed`` optionally restricts the
    nodes that may be visited.
    """
    targets = set(targets)
    parent = {}
    queue = deque()
    for s in sources:
        if allowed is not None and s not in allowed:
            continue
        if s not in parent:
            parent[s] = None
            queue.append(s)
    while queue:
        v = queue.popleft()
        if v in targets:
            path = [v]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in succ[v]:
            if w in parent or (allowed is not None and w not in allowed):
                continue
            parent[w] = v
            queue.append(w)
    return None


def longest_path_lengths(succ, nodes_ok):
    """Longest path (in edges) starting at each node of an acyclic subgraph.

    Only nodes with ``nodes_ok[v]`` true are considered; the induced subgraph
    must be acyclic.  Returns a dict node -> length.
    """
    order = []
    state = {}
    for root in range(len(succ)):
        if not nodes_ok[root] or root in state:
            continue
        stack = [(root, iter(succ[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if nodes_ok[w] and w not in state:
                    state[w] = 1
                    stack.append((w, iter(succ[w])))
                    break
            else:
                stack.pop()
                order.append(v)
    best = {}
    for v in order:
        b = 0
        for w in succ[v]:
            if nodes_ok[w]:
                b = max(b, best[w] + 1)
        best[v] = b
    return best
