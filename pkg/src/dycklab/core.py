"""Dyck words, planted plane trees, edge labelings and insertion histories.

A Dyck word is a plain string over "UD".  A planted plane tree is stored as a
parent array over edges in depth-first (preorder) order; every labeling is a
tuple indexed by that preorder edge index.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, cached_property


class WordError(ValueError):
    """Raised when a string is not a valid Dyck word."""

    def __init__(self, message, index=None):
        super().__init__(message if index is None else f"{message} (at index {index})")
        self.index = index


def parse_word(text: str) -> str:
    """Validate ``text`` as a Dyck word and return it.

    Reports the offending index for an illegal character, a negative prefix,
    or an unbalanced word.
    """
    height = 0
    for i, ch in enumerate(text):
        if ch == "U":
            height += 1
        elif ch == "D":
            height -= 1
        else:
            raise WordError(f"illegal character {ch!r}", i)
        if height < 0:
            raise WordError("prefix goes below zero", i)
    if height != 0:
        raise WordError("unbalanced word", len(text) - 1 if text else None)
    return text


def is_dyck_word(text: str) -> bool:
    try:
        parse_word(text)
    except WordError:
        return False
    return True


def heights(word: str) -> tuple[int, ...]:
    """Vertex heights y_0..y_{2n} of a U/D word starting at 0."""
    ys = [0]
    for ch in word:
        ys.append(ys[-1] + (1 if ch == "U" else -1))
    return tuple(ys)


def semilength(word: str) -> int:
    return len(word) // 2


def reflect_word(word: str) -> str:
    """Mirror a U/D word along a vertical line (reverse and swap U<->D)."""
    return "".join("U" if ch == "D" else "D" for ch in reversed(word))


def zigzag(n: int) -> str:
    return "UD" * n


def wedge(m: int) -> str:
    return "U" * m + "D" * m


def wedge_seq(ms) -> str:
    """Concatenation of wedges U^{m_1}D^{m_1} ... U^{m_k}D^{m_k}."""
    return "".join(wedge(m) for m in ms)


def vee(n: int) -> str:
    """The step word D^n U^n (not a Dyck word)."""
    return "D" * n + "U" * n


def factor_word(word: str):
    """Split a Dyck word into its irreducible factors (no inner return to 0)."""
    factors = []
    h = 0
    start = 0
    for i, ch in enumerate(word):
        h += 1 if ch == "U" else -1
        if h == 0:
            factors.append(word[start : i + 1])
            start = i + 1
    return factors


def underline_word(word: str) -> str:
    """The lower boundary of the frozen region: one D^k U^k block per factor."""
    return "".join(vee(len(f) // 2) for f in factor_word(word))


def all_words(n: int):
    """All Dyck words of semilength n in lexicographic order (U < D)."""

    def rec(prefix, h, rest):
        if rest == 0:
            yield prefix
            return
        if h < rest:
            yield from rec(prefix + "U", h + 1, rest - 1)
        if h > 0:
            yield from rec(prefix + "D", h - 1, rest - 1)

    yield from rec("", 0, 2 * n)


@dataclass(frozen=True)
class PlantedPlaneTree:
    """Planted plane tree of a Dyck word.

    Edges are numbered 0..n-1 in preorder; ``parent[i]`` is the parent edge
    index or -1 for edges attached to the root.  ``opens[i]``/``closes[i]``
    are the 0-based step indices of the matched U/D pair of edge i.
    """

    parent: tuple[int, ...]
    opens: tuple[int, ...]
    closes: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.parent)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        # index 0 holds the root-attached edges, index e+1 the children of e
        kids = [[] for _ in range(self.n + 1)]
        for i, p in enumerate(self.parent):
            kids[p + 1].append(i)
        return tuple(tuple(k) for k in kids)

    def children_of(self, e: int) -> tuple[int, ...]:
        # children[0] lists root-attached edges; edge e's children sit at e+1
        return self.children[e + 1]

    @property
    def root_edges(self) -> tuple[int, ...]:
        return self.children[0]

    @cached_property
    def depth(self) -> tuple[int, ...]:
        d = []
        for i in range(self.n):
            p = self.parent[i]
            d.append(0 if p < 0 else d[p] + 1)
        return tuple(d)

    def ancestors(self, e: int):
        p = self.parent[e]
        while p >= 0:
            yield p
            p = self.parent[p]

    def is_ancestor(self, a: int, e: int) -> bool:
        """True if edge ``a`` lies between edge ``e`` and the root."""
        return self.opens[a] < self.opens[e] and self.closes[e] < self.closes[a]

    def strictly_right(self, e: int, f: int) -> bool:
        """True if edge ``f`` is strictly right of edge ``e`` (e -> f)."""
        return self.opens[f] > self.closes[e]

    def strictly_left(self, e: int, f: int) -> bool:
        """True if edge ``f`` is strictly left of edge ``e`` (f <- e)."""
        return self.closes[f] < self.opens[e]

    def weakly_right(self, e: int, f: int) -> bool:
        """e => f: f is strictly right of e or an ancestor of e."""
        return self.strictly_right(e, f) or self.is_ancestor(f, e)

    def is_leaf(self, e: int) -> bool:
        return self.closes[e] == self.opens[e] + 1

    @cached_property
    def word(self) -> str:
        out = ["?"] * (2 * self.n)
        for i in range(self.n):
            out[self.opens[i]] = "U"
            out[self.closes[i]] = "D"
        return "".join(out)


def tree_of_word(word: str) -> PlantedPlaneTree:
    """Planted plane tree of a Dyck word; edges are matched U/D pairs."""
    parse_word(word)
    parent, opens, closes = [], [], []
    stack = []  # edge indices of currently open U steps
    for i, ch in enumerate(word):
        if ch == "U":
            e = len(parent)
            parent.append(stack[-1] if stack else -1)
            opens.append(i)
            closes.append(-1)
            stack.append(e)
        else:
            closes[stack.pop()] = i
    return PlantedPlaneTree(tuple(parent), tuple(opens), tuple(closes))


def word_of_tree(tree: PlantedPlaneTree) -> str:
    return tree.word


def is_natural_label(tree: PlantedPlaneTree, label) -> bool:
    """Bijective onto [1, n], strictly increasing from the root to leaves."""
    n = tree.n
    if sorted(label) != list(range(1, n + 1)):
        return False
    return all(tree.parent[e] < 0 or label[tree.parent[e]] < label[e] for e in range(n))


def is_decreasing_label(tree: PlantedPlaneTree, label) -> bool:
    n = tree.n
    if sorted(label) != list(range(1, n + 1)):
        return False
    return all(tree.parent[e] < 0 or label[tree.parent[e]] > label[e] for e in range(n))


def bar(label) -> tuple[int, ...]:
    """label(e) -> n+1-label(e); swaps natural and decreasing labels."""
    n = len(label)
    return tuple(n + 1 - v for v in label)


def reflect_label(tree: PlantedPlaneTree, label):
    """Mirror a labeled tree; returns (mirrored tree, labeling following edges).

    Edge at word position (o, c) moves to (2n-1-c, 2n-1-o) of the mirrored
    word; the labeling is re-indexed by the mirrored preorder.
    """
    rword = reflect_word(tree.word)
    rtree = tree_of_word(rword)
    m = 2 * tree.n - 1
    by_open = {m - tree.closes[e]: label[e] for e in range(tree.n)}
    rlabel = tuple(by_open[rtree.opens[e]] for e in range(rtree.n))
    return rtree, rlabel


def history_of_label(tree: PlantedPlaneTree, label) -> tuple[int, ...]:
    """Insertion history h with h_i = 2*#{earlier edges strictly left} + #ancestors."""
    if not is_natural_label(tree, label):
        raise ValueError("history_of_label requires a natural label")
    edge_of = {label[e]: e for e in range(tree.n)}
    h = []
    for i in range(1, tree.n + 1):
        e = edge_of[i]
        left = sum(
            1 for f in range(tree.n) if label[f] < i and tree.strictly_left(e, f)
        )
        anc = sum(1 for _ in tree.ancestors(e))
        h.append(2 * left + anc)
    return tuple(h)


def is_history(h) -> bool:
    return all(0 <= h[i] <= 2 * i for i in range(len(h)))


def label_of_history(h) -> tuple[PlantedPlaneTree, tuple[int, ...]]:
    """Inverse of :func:`history_of_label`.

    Builds the word by inserting a UD pair at position h_i for i = 1..n; the
    i-th inserted edge carries the label i.
    """
    if not is_history(h):
        raise ValueError(f"not an insertion history: {h}")
    word = []  # list of (step, edge_id)
    for i, pos in enumerate(h):
        word[pos:pos] = [("U", i), ("D", i)]
    tree = tree_of_word("".join(s for s, _ in word))
    # the edge opened at step k was created at insertion word[k][1]
    label = tuple(word[tree.opens[e]][1] + 1 for e in range(tree.n))
    return tree, label


def all_histories(n: int):
    """All insertion histories of length n (there are (2n-1)!!)."""
    return itertools.product(*[range(2 * i + 1) for i in range(n)])


def all_natural_labels(tree: PlantedPlaneTree):
    """All natural labels of a fixed tree."""
    n = tree.n
    for perm in itertools.permutations(range(1, n + 1)):
        if is_natural_label(tree, perm):
            yield tuple(perm)


def capacities(word: str, word0: str) -> tuple[int, ...]:
    """Capacities of the UD factors of ``word`` with respect to ``word0``.

    ``word0`` must be a U/D word weakly above ``word``; when it starts with U
    both paths are anchored at the origin, when it ends with D both are
    anchored at the right endpoint (the reflected convention).  Returns one
    value per leaf edge, in left-to-right order.
    """
    if len(word0) != len(word):
        raise ValueError("paths must have equal length")
    if not word:
        return ()
    if word0[0] != "U":
        if word0[-1] != "D":
            raise ValueError("word0 must start with U or end with D")
        return tuple(reversed(capacities(reflect_word(word), reflect_word(word0))))
    y = heights(word)
    y0 = heights(word0)
    if any(a < b for a, b in zip(y0, y)):
        raise ValueError("word0 is not above word")
    caps = []
    for k in range(len(word) - 1):
        if word[k] == "U" and word[k + 1] == "D":
            u0 = sum(1 for ch in word0[: k + 1] if ch == "U")
            u = sum(1 for ch in word[: k + 1] if ch == "U")
            caps.append(u0 - u)
    return tuple(caps)


def leaf_capacities(tree: PlantedPlaneTree) -> dict[int, int]:
    """Capacities of leaf edges for the top word D^{2n}: #edges strictly right."""
    return {
        e: sum(1 for f in range(tree.n) if tree.strictly_right(e, f))
        for e in range(tree.n)
        if tree.is_leaf(e)
    }


def weakly_increasing_of_natural(tree: PlantedPlaneTree, label) -> tuple[int, ...]:
    """T2(e) = #{e' strictly right of e with a smaller label}."""
    if not is_natural_label(tree, label):
        raise ValueError("requires a natural label")
    return tuple(
        sum(1 for f in range(tree.n) if tree.strictly_right(e, f) and label[f] < label[e])
        for e in range(tree.n)
    )


def is_weakly_increasing_label(tree: PlantedPlaneTree, values) -> bool:
    """Weakly increasing from the root, leaves within their D^{2n} capacities."""
    if any(v < 0 for v in values):
        return False
    for e in range(tree.n):
        p = tree.parent[e]
        if p >= 0 and values[p] > values[e]:
            return False
    caps = leaf_capacities(tree)
    return all(values[e] <= caps[e] for e in caps)


def position_tree(tree: PlantedPlaneTree) -> tuple[int, ...]:
    """label(e) = 2*#{strictly left} + #ancestors + #descendants + 1.

    The value equals the column of the anchor box of e (its step index).
    """
    out = []
    for e in range(tree.n):
        left = sum(1 for f in range(tree.n) if tree.strictly_left(e, f))
        anc = sum(1 for _ in tree.ancestors(e))
        desc = (tree.closes[e] - tree.opens[e] - 1) // 2
        out.append(2 * left + anc + desc + 1)
    return tuple(out)


def anchor_box(tree: PlantedPlaneTree, e: int) -> tuple[int, int]:
    """Center of the anchor box of edge e (the unique box SE of its U step
    and SW of its D step, below the path)."""
    a = tree.opens[e]
    c = tree.closes[e]
    y = heights(tree.word)
    return ((a + c + 1) // 2, y[a + 1] - 1 - (c - a - 1) // 2)


@lru_cache(maxsize=None)
def _tree_cached(word: str) -> PlantedPlaneTree:
    return tree_of_word(word)


def tree_cached(word: str) -> PlantedPlaneTree:
    """Memoized tree_of_word for enumeration-heavy callers."""
    return _tree_cached(word)
