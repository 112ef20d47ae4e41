"""Eventually periodic bi-infinite sequences ("lassos").

A :class:`Lasso` stands for the point ``(left)^inf . spoke . (right)^inf``
whose spoke starts at coordinate ``anchor``.  The same type is used for
points of the edge shift (symbols are edge ids) and for image points
(symbols are label ids).
"""

from dataclasses import dataclass
from math import gcd

from .errors import WordError


def _primitive_root(word):
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


@dataclass(frozen=True)
class Lasso:
    left: tuple
    spoke: tuple
    right: tuple
    anchor: int = 0

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "spoke", tuple(self.spoke))
        object.__setattr__(self, "right", tuple(self.right))
        if not self.left or not self.right:
            raise WordError("lasso cycles must be nonempty")

    def __getitem__(self, i):
        j = i - self.anchor
        if j < 0:
            return self.left[j % len(self.left)]
        if j < len(self.spoke):
            return self.spoke[j]
        return self.right[(j - len(self.spoke)) % len(self.right)]

    def window(self, start, stop):
        return tuple(self[i] for i in range(start, stop))

    @property
    def transient(self):
        """Coordinates outside ``[lo, hi)`` are in the periodic tails."""
        return self.anchor, self.anchor + len(self.spoke)

    def right_period_start(self):
        return self.anchor + len(self.spoke)

    def map(self, f):
        return Lasso(tuple(map(f, self.left)), tuple(map(f, self.spoke)),
                     tuple(map(f, self.right)), self.anchor)

    def reversed(self):
        """The point ``i -> self[-1 - i]``."""
        return Lasso(self.right[::-1], self.spoke[::-1], self.left[::-1],
                     -self.anchor - len(self.spoke))

    def shifted(self, k):
        """The point ``i -> self[i + k]``."""
        return Lasso(self.left, self.spoke, self.right, self.anchor - k)

    def normalized(self):
        """Canonical form: primitive cycles, shortest spoke, same point."""
        left = _primitive_root(self.left)
        right = _primitive_root(self.right)
        spoke = list(self.spoke)
        anchor = self.anchor
        # extend the left-periodic part as far as it goes; with an empty spoke
        # this eats into the right cycle (finitely often unless left == right)
        while True:
            if spoke:
                if spoke[0] != left[0]:
                    break
                spoke.pop(0)
            else:
                if left == right or right[0] != left[0]:
                    break
                right = right[1:] + right[:1]
            left = left[1:] + left[:1]
            anchor += 1
        # absorb the spoke into the right cycle
        while spoke and spoke[-1] == right[-1]:
            spoke.pop()
            right = right[-1:] + right[:-1]
        if not spoke and left == right:
            # purely periodic: pin the phase at coordinate 0
            p = len(left)
            phase = (-anchor) % p
            left = right = left[phase:] + left[:phase]
            anchor = 0
        return Lasso(left, tuple(spoke), right, anchor)

    def agrees(self, other):
        """Equality as bi-infinite sequences."""
        return self.normalized() == other.normalized()

    def span(self, other=None):
        """A coordinate range outside of which both points are periodic."""
        lo, hi = self.transient
        if other is not None:
            olo, ohi = other.transient
            lo, hi = min(lo, olo), max(hi, ohi)
        return lo, hi

    def render(self, names):
        def w(seq):
            return " ".join(names[s] for s in seq)

        return f"inf({w(self.left)}) . [{w(self.spoke)}] . ({w(self.right)})inf @ {self.anchor}"

    def to_json(self, names=None):
        conv = (lambda s: names[s]) if names is not None else (lambda s: s)
        return {
            "left_cycle": [conv(s) for s in self.left],
            "spoke": [conv(s) for s in self.spoke],
            "right_cycle": [conv(s) for s in self.right],
            "anchor": self.anchor,
        }


def lcm(a, b):
    return a * b // gcd(a, b)


def mutually_separated(x, y):
    """True iff the two points differ at every coordinate."""
    lo, hi = x.span(y)
    lp = lcm(len(x.left), len(y.left))
    rp = lcm(len(x.right), len(y.right))
    return all(x[i] != y[i] for i in range(lo - lp, hi + rp))


def is_path_lasso(p, x):
    """Edge lasso whose consecutive symbols are incident edges everywhere."""
    lo, hi = x.transient
    lo -= 2 * len(x.left)
    hi += 2 * len(x.right)
    return all(p.dst[x[i]] == p.src[x[i + 1]] for i in range(lo, hi))


def image_of(p, x):
    return x.map(lambda e: p.label[e])


def parse_lasso(text, parse_word):
    """Parse ``left|spoke|right`` (optionally ``@anchor``); spoke may be empty."""
    anchor = 0
    if "@" in text:
        text, a = text.rsplit("@", 1)
        anchor = int(a)
    parts = text.split("|")
    if len(parts) != 3:
        raise WordError("lasso must look like 'left|spoke|right'")
    left, spoke, right = parts
    return Lasso(parse_word(left), parse_word(spoke) if spoke.strip() else (), parse_word(right), anchor)
