"""Cover-inclusive tilings in the region R (and its mirror R').

R is bounded by the base path, the antidiagonal staircase at the top right,
and the column of anchor boxes at x = 0.  Its boxes are (x, y(x) + 1 + 2m)
for 0 <= x <= 2n - 2 - 2m; the anchors are the boxes at x = 0, labeled
0..n-1 from top to bottom.  Every region tiling covers all of R.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import (
    PlantedPlaneTree,
    heights,
    is_weakly_increasing_label,
    reflect_label,
    weakly_increasing_of_natural,
)
from .tiling import Tile, canonical_tile, tile_is_ribbon


@dataclass(frozen=True)
class RegionTiling:
    """Tiling of the region R (side "R") or R' (side "Rprime")."""

    side: str
    base: str
    tiles: frozenset[Tile]

    @property
    def n(self) -> int:
        return len(self.base) // 2

    @cached_property
    def boxes(self) -> frozenset[tuple[int, int]]:
        return frozenset(b for t in self.tiles for b in t)

    def stats(self) -> tuple[int, int, int]:
        area = sum(len(t) for t in self.tiles)
        return area, len(self.tiles), (area + len(self.tiles)) // 2

    def anchor_label(self, box) -> int:
        """Label of an anchor box (they increase top to bottom from 0)."""
        x, y = box
        edge = 0 if self.side == "R" else len(self.base)
        if x != edge:
            raise ValueError(f"{box} is not an anchor box")
        return (2 * self.n - 1 - y) // 2


def region_box_set(word: str) -> set[tuple[int, int]]:
    """Boxes of R: stacked over the base path, under the antidiagonal from
    (0, 2n) to (2n, 0); the anchor column sits at x = 0."""
    y = heights(word)
    n = len(word) // 2
    return {
        (x, y[x] + 1 + 2 * m)
        for x in range(0, 2 * n)
        for m in range((2 * n - x - y[x]) // 2)
    }


def art_minus(dr: RegionTiling) -> int:
    area, k, _ = dr.stats()
    return (area - k) // 2


def validate_region(dr: RegionTiling) -> list[str]:
    """Partition of R, ribbon shapes, cover-inclusivity, anchor order."""
    out = []
    if dr.side == "Rprime":
        return validate_region(_mirror_region(dr))
    want = region_box_set(dr.base)
    seen = {}
    for t in dr.tiles:
        if not tile_is_ribbon(t):
            out.append(f"not a ribbon: {t}")
        for b in t:
            if b in seen:
                out.append(f"box {b} covered twice")
            seen[b] = t
    for b in seen:
        if b not in want:
            out.append(f"box {b} outside R")
    for b in want:
        if b not in seen:
            out.append(f"box {b} uncovered")
    yl = heights(dr.base)
    for t in dr.tiles:
        shifted = [(x, y - 2) for x, y in t]
        if all(y < yl[x] for x, y in shifted):
            continue
        if not any(set(shifted) <= set(t2) for t2 in dr.tiles if t2 != t):
            out.append(f"tile {t} violates cover-inclusivity")
    return out


def invert_weakly_increasing(tree: PlantedPlaneTree, t2) -> tuple[int, ...]:
    """The natural label whose right-smaller counts are ``t2``.

    Labels are assigned from n downward; at each step the leftmost unassigned
    edge whose children are all assigned and whose unassigned-right count
    matches t2 receives the label.
    """
    if not is_weakly_increasing_label(tree, t2):
        raise ValueError("not a weakly increasing label within capacities")
    n = tree.n
    label = [0] * n
    unassigned = set(range(n))
    for k in range(n, 0, -1):
        pick = None
        for e in sorted(unassigned, key=lambda e: tree.opens[e]):
            if any(c in unassigned for c in tree.children_of(e)):
                continue
            right = sum(1 for f in unassigned if tree.strictly_right(e, f))
            if right == t2[e]:
                pick = e
                break
        if pick is None:
            raise ValueError("labeling is not realizable as right-smaller counts")
        label[pick] = k
        unassigned.remove(pick)
    return tuple(label)


def region_of_natural(tree: PlantedPlaneTree, label) -> RegionTiling:
    """Region tiling realized by a natural label (closed form).

    The trajectory of edge e covers columns 0..opens[e]; its box in column x
    sits above the trajectories of all smaller-labeled edges whose up step
    lies at x or beyond, and two neighbouring boxes belong to the same tile
    exactly when a larger-labeled edge spans both columns.
    """
    yl = heights(tree.word)
    tiles = []
    for e in range(tree.n):
        cols = range(0, tree.opens[e] + 1)
        boxes = []
        for x in cols:
            lvl = sum(
                1 for f in range(tree.n) if label[f] < label[e] and tree.opens[f] >= x
            )
            boxes.append((x, yl[x] + 1 + 2 * lvl))
        run = [boxes[0]]
        for x in range(1, len(boxes)):
            merged = any(
                label[f] > label[e] and tree.opens[f] <= x - 1 <= tree.closes[f]
                for f in range(tree.n)
            )
            if merged:
                run.append(boxes[x])
            else:
                tiles.append(canonical_tile(run))
                run = [boxes[x]]
        tiles.append(canonical_tile(run))
    dr = RegionTiling("R", tree.word, frozenset(tiles))
    bad = validate_region(dr)
    if bad:
        raise AssertionError(f"region construction produced an invalid tiling: {bad}")
    return dr


def region_of_weakly_increasing(tree: PlantedPlaneTree, t2) -> RegionTiling:
    """The unique cover-inclusive region tiling realizing the weakly
    increasing labeling ``t2``."""
    return region_of_natural(tree, invert_weakly_increasing(tree, t2))


def _chains(dr: RegionTiling):
    """Maximal tile chains, traversed up-left (entry = SE edge of rightmost
    box, exit = NW edge of leftmost box)."""
    entry, exit_ = {}, {}
    for t in dr.tiles:
        x, y = t[-1]
        entry[(x, y - 1)] = t
        x, y = t[0]
        exit_[t] = (x - 1, y)
    starts = set(entry) - set(exit_.values())
    for key in sorted(starts):
        chain = []
        cur = entry[key]
        while True:
            chain.append(cur)
            nxt = entry.get(exit_[cur])
            if nxt is None:
                break
            cur = nxt
        yield key, chain


def read_a(dr: RegionTiling) -> tuple[int, ...]:
    """Anchor sequence: a_i is the label of the anchor box reached by the
    trajectory of the i-th up step from the right."""
    if dr.side == "Rprime":
        return read_a(_mirror_region(dr))
    word = dr.base
    yl = heights(word)
    ups = [x for x, ch in enumerate(word) if ch == "U"]
    index = {x: i for i, x in enumerate(ups)}
    a = [None] * len(ups)
    for (x, y), chain in _chains(dr):
        if x not in index or (y - yl[x]) % 2 or y < yl[x]:
            raise ValueError(f"trajectory at {(x, y)} not associated with an up step")
        last = chain[-1]
        anchor = last[0]
        if anchor[0] != 0:
            raise ValueError(f"trajectory from x={x} does not reach the anchor column")
        i = index[x]
        if a[i] is not None:
            raise ValueError(f"two trajectories for the up step at x={x}")
        a[i] = dr.anchor_label(anchor)
    if any(v is None for v in a):
        raise ValueError("some up step has no trajectory")
    return tuple(reversed(a))


def b_of_a(a) -> tuple[int, ...]:
    """b_i = a_i - #{j < i : a_j < a_i}; requires distinct anchors."""
    if len(set(a)) != len(a) or any(not 0 <= v < len(a) for v in a):
        raise ValueError("anchor sequence must be distinct values in [0, n-1]")
    return tuple(v - sum(1 for u in a[:i] if u < v) for i, v in enumerate(a))


def insert_region(dr: RegionTiling, m: int) -> RegionTiling:
    """Column addition at x = m followed by the trajectory addition of m + 1
    single boxes running northwest from the new up step."""
    n = dr.n
    if not 0 <= m <= 2 * n:
        raise ValueError(f"insertion point {m} out of range")
    base = dr.base[:m] + "UD" + dr.base[m:]
    tiles = []
    for t in dr.tiles:
        new = []
        for x, y in t:
            if x < m:
                new.append((x, y))
            elif x == m:
                new.extend([(m, y), (m + 1, y + 1), (m + 2, y)])
            else:
                new.append((x + 2, y))
        tiles.append(canonical_tile(new))
    tiles.extend(((x, 2 * n - x + 1),) for x in range(m + 1))
    return RegionTiling(dr.side, base, frozenset(tiles))


def truncate(dr: RegionTiling) -> tuple[RegionTiling, int]:
    """Remove the anchor-0 trajectory and the column right of its southeast
    box; returns the smaller region tiling and the insertion point it undoes."""
    n = dr.n
    if n == 0:
        raise ValueError("cannot truncate an empty region")
    top_anchor = (0, 2 * n - 1)
    chain = None
    for _, ch in _chains(dr):
        if ch[-1][0] == (0, 2 * n - 1) or top_anchor in ch[-1]:
            chain = ch
            break
    if chain is None:
        raise ValueError("no trajectory reaches the top anchor")
    if any(len(t) != 1 for t in chain):
        raise ValueError("anchor-0 trajectory is not a chain of single boxes")
    removed = {t[0] for t in chain}
    p = max(x for x, _ in removed)
    if dr.base[p : p + 2] != "UD":
        raise ValueError(f"no UD pair at x={p}")
    base = dr.base[:p] + dr.base[p + 2 :]
    tiles = []
    for t in dr.tiles:
        boxes = [b for b in t if b not in removed]
        if not boxes:
            continue
        if any(x == p + 1 for x, _ in boxes):
            # un-cut: drop the peak triple's right wing and peak
            keep = []
            for x, y in boxes:
                if x == p + 1:
                    if (x - 1, y - 1) not in t or (x + 1, y - 1) not in t:
                        raise ValueError(f"column {p + 1} box {x, y} is not a cut peak")
                    continue
                if x == p + 2 and (x - 1, y + 1) in t and (x - 2, y) in t:
                    continue
                keep.append((x, y))
            boxes = keep
        boxes = [(x - 2, y) if x >= p + 2 else (x, y) for x, y in boxes]
        tiles.append(canonical_tile(boxes))
    out = RegionTiling(dr.side, base, frozenset(tiles))
    bad = validate_region(out)
    if bad:
        raise ValueError(f"truncation produced an invalid region tiling: {bad}")
    return out, p


def _mirror_region(dr: RegionTiling) -> RegionTiling:
    L = len(dr.base)
    word = "".join("U" if c == "D" else "D" for c in reversed(dr.base))
    tiles = [canonical_tile((L - x, y) for x, y in t) for t in dr.tiles]
    return RegionTiling("R" if dr.side == "Rprime" else "Rprime", word, frozenset(tiles))


def left_smaller_label(tree: PlantedPlaneTree, label) -> tuple[int, ...]:
    """S2(e) = #{e' strictly left of e with a smaller label}."""
    return tuple(
        sum(1 for f in range(tree.n) if tree.strictly_left(e, f) and label[f] < label[e])
        for e in range(tree.n)
    )


def region_right_of_label(tree: PlantedPlaneTree, label) -> RegionTiling:
    """The R' tiling (bounded by the base path, U^{2n} and x = 2n) of the
    weakly increasing tree of left-smaller counts of a natural label."""
    rtree, rlabel = reflect_label(tree, label)
    return _mirror_region(region_of_natural(rtree, rlabel))


def read_a_prime(dr: RegionTiling) -> tuple[int, ...]:
    """Anchor sequence of an R' tiling, indexed by the down steps of the base
    path from the left (the mirror image of :func:`read_a`)."""
    if dr.side != "Rprime":
        raise ValueError("expected an R' tiling")
    return read_a(_mirror_region(dr))
