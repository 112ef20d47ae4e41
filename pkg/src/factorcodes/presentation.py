"""Edge-labelled graph presentations of 1-block factor codes.

A :class:`Presentation` is a finite directed multigraph whose edges carry
labels.  Bi-infinite paths form the edge shift, and reading labels along
them gives the 1-block code onto the sofic image.  Vertices, edges and
labels are interned to dense integer ids at construction time; every
algorithm in the package works on those ids and only the CLI resolves
names.

Vertex sets and edge sets are encoded as Python ``int`` bit masks indexed
by the id order fixed at parse time.
"""

from collections import deque

from .errors import PresentationError, WordError
from .graphs import iter_bits, strongly_connected_components


class Presentation:
    """An irreducible edge-labelled graph.

    Parameters
    ----------
    vertices : sequence of str
        Vertex names; their order fixes the vertex ids.
    edges : sequence of (name, source, target, label)
        Edge names must be unique and endpoints must be declared vertices.
        Edge ids follow this order, label ids follow first appearance.
    validate : bool
        Check strong connectivity.  Only internal helpers that build
        intermediate graphs pass ``False``.
    labels : sequence of str, optional
        Pre-interned label alphabet, so that label ids agree with another
        presentation over the same alphabet.

    Instances are immutable after construction.
    """

    def __init__(self, vertices, edges, validate=True, labels=()):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise PresentationError("duplicate vertex name")
        vindex = {v: i for i, v in enumerate(vertices)}
        names, src, dst, lab = [], [], [], []
        label_names = list(labels)
        lindex = {a: i for i, a in enumerate(label_names)}
        seen = set()
        for name, s, t, a in edges:
            if name in seen:
                raise PresentationError(f"duplicate edge id {name!r}")
            seen.add(name)
            for end in (s, t):
                if end not in vindex:
                    raise PresentationError(f"edge {name!r} refers to undeclared vertex {end!r}")
            if a not in lindex:
                lindex[a] = len(label_names)
                label_names.append(a)
            names.append(name)
            src.append(vindex[s])
            dst.append(vindex[t])
            lab.append(lindex[a])
        self.vertex_names = vertices
        self.edge_names = tuple(names)
        self.label_names = tuple(label_names)
        self.src = tuple(src)
        self.dst = tuple(dst)
        self.label = tuple(lab)
        self._vindex = vindex
        self._eindex = {n: i for i, n in enumerate(names)}
        self._lindex = lindex
        self._build_tables()
        if validate:
            self._validate()

    # -- construction helpers -------------------------------------------------

    def _build_tables(self):
        nv, nl = len(self.vertex_names), len(self.label_names)
        self.out_edges = tuple(tuple(e for e in range(self.n_edges) if self.src[e] == v) for v in range(nv))
        self.in_edges = tuple(tuple(e for e in range(self.n_edges) if self.dst[e] == v) for v in range(nv))
        out_lab = [[0] * nl for _ in range(nv)]
        in_lab = [[0] * nl for _ in range(nv)]
        succ_v = [[0] * nl for _ in range(nv)]
        pred_v = [[0] * nl for _ in range(nv)]
        lab_mask = [0] * nl
        for e in range(self.n_edges):
            s, t, a = self.src[e], self.dst[e], self.label[e]
            out_lab[s][a] |= 1 << e
            in_lab[t][a] |= 1 << e
            succ_v[s][a] |= 1 << t
            pred_v[t][a] |= 1 << s
            lab_mask[a] |= 1 << e
        self.out_label_mask = tuple(tuple(r) for r in out_lab)
        self.in_label_mask = tuple(tuple(r) for r in in_lab)
        self._succ_v = tuple(tuple(r) for r in succ_v)
        self._pred_v = tuple(tuple(r) for r in pred_v)
        self.label_mask = tuple(lab_mask)
        self.all_vertices = (1 << nv) - 1
        self.all_edges = (1 << self.n_edges) - 1

    def _validate(self):
        if not self.vertex_names:
            raise PresentationError("presentation has no vertices")
        for v in range(self.n_vertices):
            if not self.out_edges[v] or not self.in_edges[v]:
                raise PresentationError(
                    f"reducible graph: vertex {self.vertex_names[v]!r} is stranded"
                )
        _, comps = strongly_connected_components(self.vertex_successors())
        if len(comps) > 1:
            rendered = "; ".join(
                "{" + ", ".join(self.vertex_names[v] for v in c) + "}" for c in sorted(comps)
            )
            raise PresentationError(f"reducible graph: strongly connected components {rendered}")

    # -- sizes and lookups ----------------------------------------------------

    @property
    def n_vertices(self):
        return len(self.vertex_names)

    @property
    def n_edges(self):
        return len(self.edge_names)

    @property
    def n_labels(self):
        return len(self.label_names)

    def vertex_id(self, name):
        try:
            return self._vindex[name]
        except KeyError:
            raise PresentationError(f"unknown vertex {name!r}") from None

    def edge_id(self, name):
        try:
            return self._eindex[name]
        except KeyError:
            raise PresentationError(f"unknown edge {name!r}") from None

    def label_id(self, name):
        try:
            return self._lindex[name]
        except KeyError:
            raise WordError(f"symbol {name!r} is not in the label alphabet") from None

    def vertex_successors(self):
        return [sorted({self.dst[e] for e in self.out_edges[v]}) for v in range(self.n_vertices)]

    def edge_successors(self):
        """``succ[e]`` = edges that may follow edge ``e`` in a path."""
        return [self.out_edges[self.dst[e]] for e in range(self.n_edges)]

    def __repr__(self):
        return f"Presentation(|V|={self.n_vertices}, |E|={self.n_edges}, labels={list(self.label_names)})"

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.vertex_names, self.edge_names, self.src, self.dst, self.label_names, self.label)

    def edges(self):
        """Edges as ``(name, source, target, label)`` name tuples."""
        return [
            (self.edge_names[e], self.vertex_names[self.src[e]], self.vertex_names[self.dst[e]],
             self.label_names[self.label[e]])
            for e in range(self.n_edges)
        ]

    # -- subset transitions on bit masks ------------------------------------

    def step(self, vmask, a):
        """Vertices reached from ``vmask`` by one ``a``-labelled edge."""
        out = 0
        succ = self._succ_v
        while vmask:
            low = vmask & -vmask
            out |= succ[low.bit_length() - 1][a]
            vmask ^= low
        return out

    def step_back(self, vmask, a):
        """Vertices that reach ``vmask`` by one ``a``-labelled edge."""
        out = 0
        pred = self._pred_v
        while vmask:
            low = vmask & -vmask
            out |= pred[low.bit_length() - 1][a]
            vmask ^= low
        return out

    def run(self, vmask, word):
        for a in word:
            vmask = self.step(vmask, a)
            if not vmask:
                break
        return vmask

    def run_back(self, vmask, word):
        for a in reversed(word):
            vmask = self.step_back(vmask, a)
            if not vmask:
                break
        return vmask

    def targets(self, emask):
        out = 0
        for e in iter_bits(emask):
            out |= 1 << self.dst[e]
        return out

    def sources(self, emask):
        out = 0
        for e in iter_bits(emask):
            out |= 1 << self.src[e]
        return out

    def out_mask(self, vmask, a):
        """``a``-labelled edges with source in ``vmask``."""
        out = 0
        for v in iter_bits(vmask):
            out |= self.out_label_mask[v][a]
        return out

    def in_mask(self, vmask, a):
        """``a``-labelled edges with target in ``vmask``."""
        out = 0
        for v in iter_bits(vmask):
            out |= self.in_label_mask[v][a]
        return out

    def step_edges(self, emask, a):
        """``a``-labelled edges that can follow some edge of ``emask``."""
        return self.out_mask(self.targets(emask), a)

    def step_edges_back(self, emask, a):
        """``a``-labelled edges that can precede some edge of ``emask``."""
        return self.in_mask(self.sources(emask), a)

    # -- words ----------------------------------------------------------------

    def parse_word(self, text):
        """Parse a CLI word: comma-separated tokens, or one character per symbol."""
        text = text.strip()
        if not text:
            raise WordError("empty word")
        if "," in text:
            tokens = [t.strip() for t in text.split(",")]
        elif text in self._lindex:
            tokens = [text]
        else:
            tokens = list(text)
        return tuple(self.label_id(t) for t in tokens)

    def word_text(self, word):
        names = [self.label_names[a] for a in word]
        if all(len(n) == 1 for n in self.label_names):
            return "".join(names)
        return ",".join(names)

    def label_of(self, path):
        return tuple(self.label[e] for e in path)

    def is_path(self, path):
        return len(path) > 0 and all(self.dst[e] == self.src[f] for e, f in zip(path, path[1:]))

    def check_path(self, path):
        path = tuple(path)
        if not path:
            raise WordError("paths must be nonempty")
        for e in path:
            if not 0 <= e < self.n_edges:
                raise WordError(f"unknown edge id {e}")
        if not self.is_path(path):
            raise WordError("consecutive edges are not incident")
        return path

    def check_word(self, word):
        word = tuple(word)
        if not word:
            raise WordError("words must be nonempty")
        for a in word:
            if not 0 <= a < self.n_labels:
                raise WordError(f"unknown label id {a}")
        return word

    def in_language(self, word):
        """True iff ``word`` labels some path of the graph."""
        return bool(self.run(self.all_vertices, word))

    def path_text(self, path):
        return " ".join(self.edge_names[e] for e in path)

    def reverse(self):
        """The presentation with every edge flipped; names and label ids are kept."""
        return Presentation(
            self.vertex_names,
            [(self.edge_names[e], self.vertex_names[self.dst[e]], self.vertex_names[self.src[e]],
              self.label_names[self.label[e]]) for e in range(self.n_edges)],
            validate=False,
            labels=self.label_names,
        )


# -- parsing ------------------------------------------------------------------


def parse_presentation(text):
    """Parse the line-oriented presentation format and validate the result.

    ``#`` starts a comment.  One header line ``vertices: v1 v2 ...`` must
    precede the edge lines ``edge <id> <src> <dst> <label>``.
    """
    vertices = None
    edges = []
    seen_edges = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            if vertices is not None:
                raise PresentationError("second 'vertices:' header", lineno)
            vertices = line[len("vertices:"):].split()
            if not vertices:
                raise PresentationError("'vertices:' header lists no vertices", lineno)
            if len(set(vertices)) != len(vertices):
                raise PresentationError("duplicate vertex name in header", lineno)
            continue
        tokens = line.split()
        if tokens[0] != "edge":
            raise PresentationError(f"syntax error: unexpected token {tokens[0]!r}", lineno)
        if len(tokens) != 5:
            raise PresentationError("syntax error: expected 'edge <id> <src> <dst> <label>'", lineno)
        if vertices is None:
            raise PresentationError("edge line before 'vertices:' header", lineno)
        _, name, s, t, a = tokens
        if name in seen_edges:
            raise PresentationError(
                f"duplicate edge id {name!r} (first defined on line {seen_edges[name]})", lineno)
        for end in (s, t):
            if end not in vertices:
                raise PresentationError(f"dangling vertex reference {end!r}", lineno)
        seen_edges[name] = lineno
        edges.append((name, s, t, a))
    if vertices is None:
        raise PresentationError("missing 'vertices:' header")
    if not edges:
        raise PresentationError("presentation has no edges")
    return Presentation(vertices, edges)


def load_presentation(path):
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def format_presentation(p):
    """Inverse of :func:`parse_presentation`."""
    lines = ["vertices: " + " ".join(p.vertex_names)]
    lines += [f"edge {n} {s} {t} {a}" for n, s, t, a in p.edges()]
    return "\n".join(lines) + "\n"


# -- language queries ------------------------------------------------------------


def preimage_words(p, word):
    """All paths whose label is ``word``, as sorted tuples of edge ids.

    Empty exactly when ``word`` is not in the image language.
    """
    word = p.check_word(word)
    n = len(word)
    # alive[i]: vertices from which word[i:] can be read
    alive = [0] * (n + 1)
    alive[n] = p.all_vertices
    for i in range(n - 1, -1, -1):
        alive[i] = p.step_back(alive[i + 1], word[i])
    out = []

    def extend(prefix, v, i):
        if i == n:
            out.append(tuple(prefix))
            return
        for e in iter_bits(p.out_label_mask[v][word[i]]):
            t = p.dst[e]
            if alive[i + 1] >> t & 1:
                prefix.append(e)
                extend(prefix, t, i + 1)
                prefix.pop()

    for v in iter_bits(alive[0]):
        extend([], v, 0)
    out.sort()
    return out


def count_preimages(p, word):
    """Number of paths labelled ``word`` (without enumerating them)."""
    counts = [1] * p.n_vertices
    for a in reversed(word):
        new = [0] * p.n_vertices
        for e in iter_bits(p.label_mask[a]):
            new[p.src[e]] += counts[p.dst[e]]
        counts = new
    return sum(counts)


def image_words(p, length):
    """All words of the given length in the image language, in lexicographic id order."""
    out = []

    def grow(prefix, vmask):
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        for a in range(p.n_labels):
            nxt = p.step(vmask, a)
            if nxt:
                prefix.append(a)
                grow(prefix, nxt)
                prefix.pop()

    grow([], p.all_vertices)
    return out


def shortest_cycle(p, v):
    """Edge ids of a shortest closed walk at vertex ``v`` (ties broken by edge id)."""
    parent = {}
    queue = deque()
    for e in p.out_edges[v]:
        if p.dst[e] == v:
            return (e,)
        if p.dst[e] not in parent:
            parent[p.dst[e]] = e
            queue.append(p.dst[e])
    while queue:
        u = queue.popleft()
        for e in p.out_edges[u]:
            t = p.dst[e]
            if t == v:
                path = [e]
                w = u
                while w != v:
                    f = parent[w]
                    path.append(f)
                    w = p.src[f]
                return tuple(path[::-1])
            if t not in parent:
                parent[t] = e
                queue.append(t)
    raise ValueError(f"vertex {p.vertex_names[v]!r} lies on no cycle")


def left_tail(p, v):
    """A periodic left-infinite path ending at ``v``, as ``(cycle, stem)``.

    The cycle sits at some vertex ``u`` and the stem leads from ``u`` to
    ``v``.  Minimises the cycle length first, then the stem length, then
    the vertex id of ``u``.
    """
    # backward BFS from v: dist[u] and the first edge of a shortest u->v path
    dist = {v: 0}
    nxt = {}
    queue = deque([v])
    while queue:
        w = queue.popleft()
        for e in p.in_edges[w]:
            u = p.src[e]
            if u not in dist:
                dist[u] = dist[w] + 1
                nxt[u] = e
                queue.append(u)
    best = None
    for u in sorted(dist):
        key = (len(shortest_cycle(p, u)), dist[u], u)
        if best is None or key < best:
            best = key
    u = best[2]
    stem = []
    while u != v:
        stem.append(nxt[u])
        u = p.dst[nxt[u]]
    return shortest_cycle(p, best[2]), tuple(stem)


def is_right_resolving(p):
    return all(
        p.out_label_mask[v][a] & (p.out_label_mask[v][a] - 1) == 0
        for v in range(p.n_vertices) for a in range(p.n_labels)
    )


def is_left_resolving(p):
    return all(
        p.in_label_mask[v][a] & (p.in_label_mask[v][a] - 1) == 0
        for v in range(p.n_vertices) for a in range(p.n_labels)
    )


def is_finite_to_one(p):
    """No-diamond test on the graph of same-label edge pairs.

    A diamond is a pair of distinct equally-labelled paths with a common
    initial vertex and a common terminal vertex.  They split at an
    off-diagonal pair of edges leaving one vertex and must later reach a
    pair of edges entering one vertex.
    """
    by_label = [[e for e in range(p.n_edges) if p.label[e] == a] for a in range(p.n_labels)]
    pairs = [(e, f) for group in by_label for e in group for f in group]
    index = {pr: i for i, pr in enumerate(pairs)}
    succ = [[] for _ in pairs]
    for i, (e, f) in enumerate(pairs):
        for e2 in p.out_edges[p.dst[e]]:
            for f2 in p.out_edges[p.dst[f]]:
                if p.label[e2] == p.label[f2]:
                    succ[i].append(index[(e2, f2)])
    starts = [index[(e, f)] for (e, f) in pairs if e != f and p.src[e] == p.src[f]]
    seen = set(starts)
    queue = deque(starts)
    while queue:
        i = queue.popleft()
        e, f = pairs[i]
        if p.dst[e] == p.dst[f]:
            return False
        for j in succ[i]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return True


def subset_states(p, start=None, backward=False):
    """Nonempty vertex subsets reachable from ``start`` under label transitions.

    Returns a dict mapping each reachable mask to its BFS order index, with
    ``start`` (default: all vertices) first.  ``backward`` runs the reversed
    transitions.
    """
    if start is None:
        start = p.all_vertices
    step = p.step_back if backward else p.step
    order = {start: 0}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for a in range(p.n_labels):
            t = step(s, a)
            if t and t not in order:
                order[t] = len(order)
                queue.append(t)
    return order


def degree_finite_to_one(p):
    """Degree of a finite-to-one code.

    The degree is the minimum over words ``w`` and positions ``i`` of the
    number of distinct edges that preimages of ``w`` use at ``i``.  With
    ``w = u a v`` those edges are the ``a``-edges from the terminal set of
    ``u`` into the initial set of ``v``; both sets range over subset
    automaton states reachable from the full vertex set, so the minimum is
    an exact finite search with no word-length horizon.
    """
    if not is_finite_to_one(p):
        raise ValueError("degree is only defined for finite-to-one codes")
    value, _ = _degree_search(p)
    return value


def degree_witness(p):
    """A word and a position realising :func:`degree_finite_to_one`."""
    _, witness = _degree_search(p)
    return witness


def _degree_search(p):
    fwd = _subset_words(p, backward=False)
    bwd = _subset_words(p, backward=True)
    best, witness = None, None
    for s, u in fwd.items():
        for a in range(p.n_labels):
            out = p.out_mask(s, a)
            if not out:
                continue
            for r, v in bwd.items():
                edges = out & p.in_mask(r, a)
                if not edges:
                    continue
                c = bin(edges).count("1")
                key = (c, len(u) + len(v) + 1, u + (a,) + v)
                if best is None or key < best:
                    best = key
                    witness = (u + (a,) + v, len(u))
    return best[0], witness


def _subset_words(p, backward):
    """Map each reachable subset state to a shortest word reaching it."""
    start = p.all_vertices
    step = p.step_back if backward else p.step
    words = {start: ()}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for a in range(p.n_labels):
            t = step(s, a)
            if t and t not in words:
                words[t] = (a,) + words[s] if backward else words[s] + (a,)
                queue.append(t)
    return words


def export_dot(p, name="G", node_labels=None):
    """DOT digraph with labelled edges.  Node ids are the vertex names, quoted."""
    def q(s):
        return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"digraph {q(name)} {{"]
    for v, vname in enumerate(p.vertex_names):
        extra = f" [label={q(node_labels[v])}]" if node_labels else ""
        lines.append(f"  {q(vname)}{extra};")
    for n, s, t, a in p.edges():
        lines.append(f"  {q(s)} -> {q(t)} [label={q(a)}, id={q(n)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
