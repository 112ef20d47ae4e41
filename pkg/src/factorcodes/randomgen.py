"""Seeded random irreducible presentations for property testing."""

import random
import string
from dataclasses import dataclass

from .errors import InfeasibleSpec
from .graphs import strongly_connected_components
from .presentation import Presentation

REJECTION_ATTEMPTS = 200


@dataclass(frozen=True)
class RandomSpec:
    vertices: int
    edges: int
    labels: int
    seed: int = 0


def _irreducible(n, arcs):
    succ = [[] for _ in range(n)]
    for s, t in arcs:
        succ[s].append(t)
    _, comps = strongly_connected_components(succ)
    return len(comps) == 1


def random_presentation(spec):
    """A random irreducible presentation, identical for identical specs.

    Edges are sampled uniformly and the graph is rejected unless strongly
    connected.  When ``REJECTION_ATTEMPTS`` samples all fail (sparse specs,
    where almost no sample is irreducible) the arcs are completed around a
    random spanning cycle instead.  Labels are drawn uniformly from the
    first ``labels`` letters; only letters that occur are declared.
    """
    n, m, k = spec.vertices, spec.edges, spec.labels
    if n < 1 or k < 1:
        raise InfeasibleSpec("need at least one vertex and one label")
    if m < n:
        raise InfeasibleSpec(f"{m} edges cannot make {n} vertices strongly connected")
    if k > len(string.ascii_lowercase):
        raise InfeasibleSpec("at most 26 labels")
    rng = random.Random(spec.seed)
    for _ in range(REJECTION_ATTEMPTS):
        arcs = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
        if _irreducible(n, arcs):
            break
    else:
        order = list(range(n))
        rng.shuffle(order)
        arcs = [(order[i], order[(i + 1) % n]) for i in range(n)]
        arcs += [(rng.randrange(n), rng.randrange(n)) for _ in range(m - n)]
    arcs.sort()
    letters = [rng.choice(string.ascii_lowercase[:k]) for _ in arcs]
    used = sorted(set(letters))
    edges = [(f"e{i}", f"v{s}", f"v{t}", a) for i, ((s, t), a) in enumerate(zip(arcs, letters))]
    return Presentation([f"v{i}" for i in range(n)], edges, labels=used)


def random_corpus(count, max_vertices=5, max_edges=10, max_labels=3, seed=0):
    """Deterministic list of ``(spec, presentation)`` pairs within the given limits."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_vertices)
        m = rng.randint(n, max(n, max_edges))
        k = rng.randint(1, max_labels)
        spec = RandomSpec(n, m, k, rng.randrange(1 << 30))
        out.append((spec, random_presentation(spec)))
    return out
