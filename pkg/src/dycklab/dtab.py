"""Generalized Dyck tableaux: insertion, weighted Dyck words, the bijection
to cover-inclusive tilings, patterns, shadow/clear boxes and extrema.

Canonical state: the base path, the label and floor of every edge's dot, the
connecting ribbons (one per descent pair of labels), and the top path.  Box
classes (parallel, turn, empty) are derived views.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .core import (
    PlantedPlaneTree,
    anchor_box,
    heights,
    history_of_label,
    is_natural_label,
    position_tree,
    tree_cached,
    underline_word,
)
from .tiling import DyckTiling, canonical_tile, upper_path, validate as validate_tiling

Box = tuple[int, int]


@dataclass(frozen=True)
class DyckTableau:
    lower: str
    labels: tuple[int, ...]  # natural label per preorder edge
    floors: tuple[int, ...]  # dot floor per preorder edge
    ribbons: tuple[tuple[int, tuple[Box, ...]], ...]  # (label i, boxes of line i -> i-1)
    upper: str

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def tree(self) -> PlantedPlaneTree:
        return tree_cached(self.lower)

    @cached_property
    def dots(self) -> dict[int, Box]:
        """Dot box per label."""
        out = {}
        for e in range(self.n):
            ax, ay = anchor_box(self.tree, e)
            out[self.labels[e]] = (ax, ay + 2 * self.floors[e])
        return out

    @cached_property
    def ribbon_boxes(self) -> frozenset[Box]:
        return frozenset(b for _, boxes in self.ribbons for b in boxes)


EMPTY_TABLEAU = DyckTableau("", (), (), (), "")


def _evolve_ribbon(boxes, m):
    """Cut a dot-to-dot ribbon at the line x = m.

    Interior boxes at the cut column become a valley; a cut endpoint follows
    its dot (which slides to the valley)."""
    out = []
    k = len(boxes)
    for idx, (x, y) in enumerate(boxes):
        if x < m:
            out.append((x, y))
        elif x == m:
            if idx == 0:
                out.append((m + 1, y - 1))
                out.append((m + 2, y))
            elif idx == k - 1:
                out.append((x, y))
                out.append((m + 1, y - 1))
            else:
                out.extend([(m, y), (m + 1, y - 1), (m + 2, y)])
        else:
            out.append((x + 2, y))
    return tuple(out)


def insert_dtab(d: DyckTableau, m: int) -> DyckTableau:
    """Addition of a labeled box at x = m followed by the ribbon addition."""
    n = d.n
    if not 0 <= m <= 2 * n:
        raise ValueError(f"insertion point {m} out of range")
    lower = d.lower[:m] + "UD" + d.lower[m:]
    tree_old, tree_new = d.tree, tree_cached(lower)
    # map old edges to new ones by shifted step positions
    pos_new = {(tree_new.opens[e], tree_new.closes[e]): e for e in range(tree_new.n)}

    def shift(i):
        return i + 2 if i >= m else i

    labels = [0] * tree_new.n
    floors = [0] * tree_new.n
    for e in range(tree_old.n):
        ne = pos_new[(shift(tree_old.opens[e]), shift(tree_old.closes[e]))]
        labels[ne] = d.labels[e]
        floors[ne] = d.floors[e]
    new_edge = pos_new[(m, m + 1)]
    labels[new_edge] = n + 1

    mu_t = d.upper[:m] + "UD" + d.upper[m:]
    ymu = heights(mu_t)
    ax, ay = anchor_box(tree_new, new_edge)
    assert ax == m + 1
    floors[new_edge] = (ymu[m + 1] - 1 - ay) // 2

    # evolve existing ribbons including their endpoint dots
    old_ribbons = dict(d.ribbons)
    moved = {}
    for i, boxes in old_ribbons.items():
        full = (d.dots[i],) + boxes + (d.dots[i - 1],)
        moved[i] = _evolve_ribbon(full, m)

    tab = DyckTableau(lower, tuple(labels), tuple(floors), (), mu_t)
    ribbons = []
    for i, full in moved.items():
        if full[0] != tab.dots[i] or full[-1] != tab.dots[i - 1]:
            raise AssertionError("ribbon evolution lost its endpoints")
        ribbons.append((i, full[1:-1]))

    # ribbon addition: when the previous maximum sits right of the new dot
    if n >= 1:
        right = tab.dots[n]
        if right[0] > m + 1:
            new_boxes = tuple((x, ymu[x] + 1) for x in range(m + 2, right[0]))
            ribbons.append((n + 1, new_boxes))
            cons = list(ymu)
            for x, y in new_boxes:
                cons[x] = max(cons[x], y + 1)
            lifted = [max(c - abs(x - j) for j, c in enumerate(cons)) for x in range(len(cons))]
            mu = "".join("U" if b > a else "D" for a, b in zip(lifted, lifted[1:]))
            tab = DyckTableau(lower, tuple(labels), tuple(floors), (), mu)
    ribbons.sort()
    return DyckTableau(tab.lower, tab.labels, tab.floors, tuple(ribbons), tab.upper)


def uninsert_dtab(d: DyckTableau) -> tuple[DyckTableau, int]:
    """Inverse of :func:`insert_dtab`; returns the smaller tableau and m."""
    n = d.n
    if n == 0:
        raise ValueError("cannot uninsert the empty tableau")
    e_n = d.labels.index(n)
    m = d.tree.opens[e_n]
    if d.tree.closes[e_n] != m + 1:
        raise ValueError("maximal label is not on an adjacent UD pair")
    prev = EMPTY_TABLEAU
    # rebuild by replay: cheap and avoids reversing the ribbon evolution
    hist = history_of_label(d.tree, d.labels)
    for p in hist[:-1]:
        prev = insert_dtab(prev, p)
    if insert_dtab(prev, hist[-1]) != d:
        raise ValueError("tableau is not in the image of the insertion procedure")
    return prev, hist[-1]


def dtab(tree: PlantedPlaneTree, label) -> DyckTableau:
    """Dyck tableau of a natural label, built by the insertion procedure."""
    if not is_natural_label(tree, label):
        raise ValueError("dtab requires a natural label")
    d = EMPTY_TABLEAU
    for m in history_of_label(tree, label):
        d = insert_dtab(d, m)
    return d


def tableau_label(d: DyckTableau) -> tuple[PlantedPlaneTree, tuple[int, ...]]:
    return d.tree, d.labels


# -- the bijection to cover-inclusive Dyck tilings ---------------------------

def phi0(d: DyckTableau) -> DyckTiling:
    """Tiling whose nontrivial tiles are the span bridges prescribed by the
    dot floors, filled with single boxes up to the tableau's top path."""
    tree = d.tree
    yl = heights(d.lower)
    tiles = []
    used = set()
    for e in range(tree.n):
        parent = tree.parent[e]
        base = d.floors[parent] if parent >= 0 else 0
        own = d.floors[e] - base
        if own < 0:
            raise ValueError("floors do not telescope along the tree")
        for lvl in range(base, d.floors[e]):
            boxes = tuple(
                (x, yl[x] + 1 + 2 * lvl)
                for x in range(tree.opens[e], tree.closes[e] + 2)
            )
            tiles.append(canonical_tile(boxes))
            used.update(boxes)
    ymu = heights(d.upper)
    singles = [
        ((x, y),)
        for x in range(1, len(d.lower))
        for y in range(yl[x] + 1, ymu[x], 2)
        if (x, y) not in used
    ]
    out = DyckTiling(d.lower, frozenset(tiles) | frozenset(singles))
    bad = validate_tiling(out)
    if bad:
        raise AssertionError(f"phi0 produced an invalid tiling: {bad}")
    if out.upper != d.upper:
        raise AssertionError("phi0 top path mismatch")
    return out


def floors_of_tiling(t: DyckTiling) -> tuple[int, ...]:
    """floor(e) = number of nontrivial tiles covering both endpoint columns
    of the pair of e."""
    tree = tree_cached(t.lower)
    spans = [
        (tile[0][0], tile[-1][0]) for tile in t.tiles if len(tile) > 1
    ]
    return tuple(
        sum(1 for lo, hi in spans if lo <= tree.opens[e] and tree.closes[e] + 1 <= hi)
        for e in range(tree.n)
    )


@lru_cache(maxsize=None)
def _floor_index(word: str) -> dict[tuple[int, ...], tuple[int, ...]]:
    """floors -> natural label, for every natural label of Tree(word)."""
    from .core import all_natural_labels

    tree = tree_cached(word)
    out = {}
    for lab in all_natural_labels(tree):
        out[dtab(tree, lab).floors] = lab
    return out


def label_of_floors(word: str, floors) -> tuple[int, ...]:
    try:
        return _floor_index(word)[tuple(floors)]
    except KeyError:
        raise ValueError("no natural label realizes these floors") from None


def dtab_of_tiling(t: DyckTiling) -> DyckTableau:
    """Inverse of :func:`phi0` (used as the ribbon-bijection inverse)."""
    floors = floors_of_tiling(t)
    label = label_of_floors(t.lower, floors)
    tab = dtab(tree_cached(t.lower), label)
    if phi0(tab) != t:
        raise ValueError("tiling is not in the image of phi0")
    return tab


# -- box classes, shadow/clear, borders, extrema -----------------------------

def diagram_boxes(d: DyckTableau) -> set[Box]:
    """All boxes of the tableau diagram, between underline(lower) and upper."""
    yl = heights(underline_word(d.lower)) if d.lower else ()
    ymu = heights(d.upper)
    out = set()
    for x in range(1, len(d.lower)):
        for y in range(yl[x] + 1, ymu[x], 2):
            out.add((x, y))
    return out


def box_classes(d: DyckTableau):
    """Partition the diagram into dot, line (with turn kind) and empty boxes.

    Returns (dots, line_kinds, empties) where line_kinds maps a line box to
    "parallel", "vee" or "wedge".
    """
    dots = set(d.dots.values())
    kinds = {}
    for i, boxes in d.ribbons:
        full = (d.dots[i],) + boxes + (d.dots[i - 1],)
        for j in range(1, len(full) - 1):
            (x0, y0), (x, y), (x2, y2) = full[j - 1], full[j], full[j + 1]
            if y0 < y > y2:
                kinds[(x, y)] = "wedge"
            elif y0 > y < y2:
                kinds[(x, y)] = "vee"
            else:
                kinds[(x, y)] = "parallel"
    empties = diagram_boxes(d) - dots - set(kinds)
    return dots, kinds, empties


def _lower_paths(d: DyckTableau):
    """Apply the local move (a wedge turn with an empty box right below drops
    by two) until no move applies; returns the moved line kinds."""
    dots, kinds, empties = box_classes(d)
    kinds = dict(kinds)
    empties = set(empties)
    moved = True
    while moved:
        moved = False
        for (x, y), kind in sorted(kinds.items()):
            if kind == "wedge" and (x, y - 2) in empties:
                del kinds[(x, y)]
                empties.remove((x, y - 2))
                empties.add((x, y))
                kinds[(x, y - 2)] = "vee"
                moved = True
                break
    return dots, kinds, empties


def shadow_clear(d: DyckTableau):
    """Shadow, clear, proper-shadow and proper-clear box sets."""
    dots, kinds, _ = box_classes(d)
    by_col: dict[int, list[Box]] = {}
    for x, y in dots:
        by_col.setdefault(x, []).append((x, y))

    def classify(kinds_map):
        shadow, clear = set(), set()
        for (x, y) in kinds_map:
            below = [b for b in by_col.get(x, ()) if b[1] < y]
            above = [b for b in by_col.get(x, ()) if b[1] > y]
            if below:
                shadow.add((x, y))
            if above:
                clear.add((x, y))
        return shadow, clear

    shadow, clear = classify(kinds)
    pdots, pkinds, pempt = _lower_paths(d)
    pshadow, pclear = classify(pkinds)
    proper_shadow = set()
    for (x, y) in pshadow:
        b = max(b for b in by_col[x] if b[1] < y)
        between = [(x, yy) for yy in range(b[1] + 2, y, 2)]
        if all(bb in pkinds for bb in between):
            proper_shadow.add((x, y))
    proper_clear = set()
    for (x, y) in pclear:
        b = min(b for b in by_col[x] if b[1] > y)
        between = [(x, yy) for yy in range(y + 2, b[1], 2)]
        if all(bb in pkinds for bb in between):
            proper_clear.add((x, y))
    return shadow, clear, proper_shadow, proper_clear


def borders(d: DyckTableau) -> tuple[tuple[str, str], ...]:
    """(left border, right border) of every edge: the top-path steps above
    the pair's up and down steps."""
    tree = d.tree
    return tuple(
        (d.upper[tree.opens[e]], d.upper[tree.closes[e]]) for e in range(tree.n)
    )


def borders_formula(tree: PlantedPlaneTree, label) -> tuple[tuple[str, str], ...]:
    """The three-case characterization of the borders."""
    n = tree.n
    edge_of = {label[e]: e for e in range(n)}
    out = []
    for e in range(n):
        v = label[e]
        if v == n:
            lb = "U"
        else:
            f = edge_of[v + 1]
            lb = "D" if tree.strictly_right(f, e) else "U"
        if v == 1:
            rb = "D"
        else:
            f = edge_of[v - 1]
            rb = "U" if tree.strictly_right(e, f) else "D"
        out.append((lb, rb))
    return tuple(out)


def patterns(tree: PlantedPlaneTree, label):
    """Witness lists for the patterns 2+2, 2+12 and 1+21."""
    n = tree.n
    edge_of = {label[e]: e for e in range(n)}
    pos = position_tree(tree)
    p22 = [
        (a, a - 1)
        for a in range(2, n + 1)
        if tree.strictly_right(edge_of[a], edge_of[a - 1])
    ]
    p212, p121 = [], []
    for c in range(1, n + 1):
        a = c + 1
        if a > n:
            continue
        pa, pc = pos[edge_of[a]], pos[edge_of[c]]
        for b in range(1, n + 1):
            pb = pos[edge_of[b]]
            if not pa < pb < pc:
                continue
            if b < c and not any(
                pos[edge_of[b2]] == pb for b2 in range(b + 1, c)
            ):
                p212.append((a, b, c))
            if b > a and not any(
                pos[edge_of[b2]] == pb for b2 in range(a + 1, b)
            ):
                p121.append((a, b, c))
    return p22, p212, p121


def extrema(tree: PlantedPlaneTree, label):
    """RL/LR minima and maxima label sets, defined on the tree."""
    n = tree.n
    rl_min, rl_max, lr_min, lr_max = set(), set(), set(), set()
    for e in range(n):
        v = label[e]
        rights = [label[f] for f in range(n) if tree.strictly_right(e, f)]
        lefts = [label[f] for f in range(n) if tree.strictly_left(e, f)]
        if tree.parent[e] < 0 and all(v < w for w in rights):
            rl_min.add(v)
        if tree.is_leaf(e) and all(v > w for w in rights):
            rl_max.add(v)
        if tree.parent[e] < 0 and all(v < w for w in lefts):
            lr_min.add(v)
        if tree.is_leaf(e) and all(v > w for w in lefts):
            lr_max.add(v)
    return rl_min, rl_max, lr_min, lr_max


def extrema_tableau(d: DyckTableau):
    """Tableau-side characterization of the four extremum families."""
    tree = d.tree
    ymu = heights(d.upper)
    dots, kinds, empties = box_classes(d)
    lb = {d.labels[e]: d.upper[tree.opens[e]] for e in range(tree.n)}
    rb = {d.labels[e]: d.upper[tree.closes[e]] for e in range(tree.n)}
    n = d.n
    col = {v: d.dots[v][0] for v in d.dots}
    rl_min, rl_max, lr_min, lr_max = set(), set(), set(), set()
    occupied = dots | set(kinds) | empties
    for v, (x, y) in d.dots.items():
        at_floor0 = d.floors[d.labels.index(v)] == 0
        top = y + 1 == ymu[x]
        below_free = not any(b[0] == x and b[1] < y for b in occupied)
        if at_floor0 and rb[v] == "D" and below_free:
            rl_min.add(v)
        if top and lb[v] == "U":
            lr_max.add(v)
        if top and lb[v] == "D" and x > col[n]:
            rl_max.add(v)
        if at_floor0 and rb[v] == "U" and x < col[1]:
            lr_min.add(v)
    rl_max.add(n)
    lr_min.add(1)
    return rl_min, rl_max, lr_min, lr_max
