"""Dyck tiles and cover-inclusive Dyck tilings.

Boxes are diamonds identified by their center (x, y) with x + y odd; the
corners (x±1, y), (x, y±1) lie on the path-vertex lattice.  A tile is a tuple
of box centers ordered by x; consecutive centers differ by (1, ±1) and the
center heights form a Dyck path (both ends at the minimum).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import heights, parse_word, reflect_word, semilength, wedge

Box = tuple[int, int]
Tile = tuple[Box, ...]


def tile_is_ribbon(tile: Tile) -> bool:
    if len(tile) % 2 == 0 or not tile:
        return False
    xs = [b[0] for b in tile]
    ys = [b[1] for b in tile]
    if any(x2 - x1 != 1 for x1, x2 in zip(xs, xs[1:])):
        return False
    if any(abs(y2 - y1) != 1 for y1, y2 in zip(ys, ys[1:])):
        return False
    return ys[0] == ys[-1] == min(ys)


def tile_length(tile: Tile) -> int:
    return (len(tile) - 1) // 2


def tile_art(tile: Tile) -> int:
    return tile_length(tile) + 1


def canonical_tile(boxes) -> Tile:
    return tuple(sorted(boxes))


@dataclass(frozen=True)
class DyckTiling:
    """Cover-inclusive Dyck tiling given by its lower path and tile set.

    The upper path is derived: the lowest lattice path covering the lower
    path and every box.
    """

    lower: str
    tiles: frozenset[Tile]

    @staticmethod
    def make(lower: str, tiles) -> "DyckTiling":
        return DyckTiling(parse_word(lower), frozenset(canonical_tile(t) for t in tiles))

    @cached_property
    def boxes(self) -> frozenset[Box]:
        return frozenset(b for t in self.tiles for b in t)

    @cached_property
    def upper(self) -> str:
        return upper_path(self.lower, self.boxes)

    def stats(self) -> tuple[int, int, int]:
        area = sum(len(t) for t in self.tiles)
        k = len(self.tiles)
        return area, k, (area + k) // 2

    @property
    def art(self) -> int:
        return self.stats()[2]


def upper_path(lower: str, boxes) -> str:
    """Lowest lattice path above ``lower`` and above every box in ``boxes``."""
    cons = list(heights(lower))
    for x, y in boxes:
        if not (1 <= x <= len(lower) - 1) or y + 1 - x > 0 or y + 1 > len(lower) - x:
            raise ValueError(f"box {(x, y)} cannot lie under any Dyck path of this length")
        cons[x] = max(cons[x], y + 1)
    mu = [max(c - abs(x - j) for j, c in enumerate(cons)) for x in range(len(cons))]
    return "".join("U" if b > a else "D" for a, b in zip(mu, mu[1:]))


def region_boxes(lower: str, upper: str) -> set[Box]:
    """Box centers of the skew region between the two paths."""
    yl, yu = heights(lower), heights(upper)
    return {
        (x, y)
        for x in range(1, len(lower))
        for y in range(yl[x] + 1, yu[x], 2)
        if (x + y) % 2 == 1
    }


def validate(d: DyckTiling) -> list[str]:
    """Diagnostics for partition defects, non-ribbon tiles, and failures of
    cover-inclusivity.  An empty list means a valid cover-inclusive tiling."""
    out = []
    for t in d.tiles:
        if not tile_is_ribbon(t):
            out.append(f"not a ribbon tile: {t}")
    seen = {}
    for t in d.tiles:
        for b in t:
            if b in seen:
                out.append(f"box {b} covered twice")
            seen[b] = t
    try:
        reg = region_boxes(d.lower, d.upper)
    except ValueError as exc:
        return out + [str(exc)]
    for b in seen:
        if b not in reg:
            out.append(f"box {b} outside the skew region")
    for b in reg:
        if b not in seen:
            out.append(f"box {b} uncovered")
    out.extend(cover_inclusive_violations(d))
    return out


def cover_inclusive_violations(d: DyckTiling) -> list[str]:
    yl = heights(d.lower)
    out = []
    for t in d.tiles:
        shifted = [(x, y - 2) for x, y in t]
        if all(y < yl[x] for x, y in shifted):
            continue
        if not any(set(shifted) <= set(t2) for t2 in d.tiles if t2 != t):
            out.append(f"tile {t} violates cover-inclusivity")
    return out


def cover_exclusive_violations(d: DyckTiling) -> list[str]:
    yu = heights(d.upper)
    out = []
    for t in d.tiles:
        shifted = [(x, y + 2) for x, y in t]
        if all(y > yu[x] for x, y in shifted):
            continue
        if not any(set(shifted) <= set(t2) for t2 in d.tiles if t2 != t):
            out.append(f"tile {t} violates cover-exclusivity")
    return out


def stats(d: DyckTiling) -> tuple[int, int, int]:
    return d.stats()


def spread(d: DyckTiling, m: int) -> DyckTiling:
    """Cut at the line x = m, shift the right piece by (2, 0) and reconnect
    both paths with a UD pair.  Tiles crossing the line grow by one."""
    if not 0 <= m <= len(d.lower):
        raise ValueError(f"spread position {m} out of range")
    lower = d.lower[:m] + "UD" + d.lower[m:]
    tiles = []
    for t in d.tiles:
        new = []
        for x, y in t:
            if x < m:
                new.append((x, y))
            elif x == m:
                new.extend([(m, y), (m + 1, y + 1), (m + 2, y)])
            else:
                new.append((x + 2, y))
        tiles.append(tuple(new))
    return DyckTiling(lower, frozenset(tiles))


def reflect_tiling(d: DyckTiling) -> DyckTiling:
    L = len(d.lower)
    tiles = [canonical_tile((L - x, y) for x, y in t) for t in d.tiles]
    return DyckTiling(reflect_word(d.lower), frozenset(tiles))


def n_max(word: str) -> int:
    """Number of boxes between ``word`` and the highest path U^n D^n."""
    parse_word(word)
    return len(region_boxes(word, wedge(semilength(word))))


# -- Hermite histories -------------------------------------------------------
#
# Trajectories are maximal chains of tiles.  In the up-step orientation a
# trajectory runs up-left: within a tile the line goes from the SE edge of the
# rightmost box (entry) to the NW edge of the leftmost box (exit), and tiles
# are chained when one tile's entry coincides with another's exit.  The
# down-step orientation is the mirror image (lines run up-right from the SW
# edge of the leftmost box to the NE edge of the rightmost box).

def _up_step_positions(word: str) -> list[int]:
    return [x for x, ch in enumerate(word) if ch == "U"]


def _down_step_positions(word: str) -> list[int]:
    return [x for x, ch in enumerate(word) if ch == "D"]


def _trajectories(d: DyckTiling, orientation: str):
    """Chains of tiles; yields (start segment key, [tiles]) per trajectory.

    Segment keys are the left vertex of the unit segment: rising segments for
    the up orientation, falling segments for the down orientation.
    """
    entry, exit_ = {}, {}
    for t in d.tiles:
        if orientation == "up":
            x, y = t[-1]
            entry[(x, y - 1)] = t  # SE edge of rightmost box
            x, y = t[0]
            exit_[t] = (x - 1, y)  # NW edge of leftmost box
        else:
            x, y = t[0]
            entry[(x - 1, y)] = t  # SW edge of leftmost box
            x, y = t[-1]
            exit_[t] = (x, y + 1)  # NE edge of rightmost box
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


def _weights(d: DyckTiling, orientation: str) -> tuple[int, ...]:
    yl = heights(d.lower)
    word = d.lower
    if orientation == "up":
        steps = _up_step_positions(word)
    else:
        steps = _down_step_positions(word)
    index = {x: i for i, x in enumerate(steps)}
    w = [0] * len(steps)
    for (x, y), chain in _trajectories(d, orientation):
        if x not in index or (y - yl[x]) % 2 != 0 or y < yl[x]:
            raise ValueError(f"trajectory at segment {(x, y)} has no associated step")
        i = index[x]
        if w[i]:
            raise ValueError(f"two trajectories associated with step at x={x}")
        w[i] = sum(tile_art(t) for t in chain)
    return tuple(w)


def hermite_read(d: DyckTiling) -> tuple[int, ...]:
    """Down-step Hermite history: H_i is the art sum along the trajectory of
    the i-th down step from the left (0 when there is no trajectory)."""
    return _weights(d, "down")


def read_up(d: DyckTiling) -> tuple[int, ...]:
    """Up-step weights b: b_i is the art sum along the trajectory of the
    i-th up step from the RIGHT."""
    return tuple(reversed(_weights(d, "up")))


class _Line:
    """One trajectory during the right-to-left sweep of hermite_build."""

    __slots__ = ("target", "art_done", "count", "tile_min", "y", "tiles", "cur")

    def __init__(self, target, y):
        self.target = target
        self.art_done = 0
        self.count = 1
        self.tile_min = y
        self.y = y
        self.tiles = []
        self.cur = [(0, y)]  # placeholder; real boxes set by caller

    def clone(self):
        other = _Line.__new__(_Line)
        other.target = self.target
        other.art_done = self.art_done
        other.count = self.count
        other.tile_min = self.tile_min
        other.y = self.y
        other.tiles = [list(t) for t in self.tiles]
        other.cur = list(self.cur)
        return other

    @property
    def complete(self):
        return self.count % 2 == 1 and self.y == self.tile_min

    @property
    def finished(self):
        return self.complete and self.art_done + (self.count + 1) // 2 == self.target

    def lower_bound(self):
        return self.art_done + (self.count + (self.y - self.tile_min) + 1) // 2


def hermite_build(word: str, b) -> DyckTiling:
    """The unique cover-inclusive tiling over ``word`` whose up-step
    trajectory art sums are ``b`` (b_i for the i-th up step from the right).

    All trajectory lines are swept right to left simultaneously: at every
    column the surviving lines occupy a prefix of box levels in a fixed
    vertical order, a new line may start at its up step at any depth, and
    tile decompositions are resolved by backtracking.  The result is verified
    by reading the history back.
    """
    parse_word(word)
    ups = _up_step_positions(word)
    n = semilength(word)
    if len(b) != n:
        raise ValueError("weight vector length must equal the semilength")
    if any(v < 0 for v in b):
        raise ValueError("weights must be nonnegative")
    start_at = {ups[n - 1 - i]: b[i] for i in range(n) if b[i] > 0}
    yl = heights(word)
    L = len(word)

    def box_ok(x, y):
        return y <= x - 1 and y <= L - x - 1

    def transitions(line, y):
        """Clones of ``line`` after taking a box at height y (or None)."""
        dy = y - line.y
        out = []
        if dy == 1:
            asc = line.clone()
            asc.count += 1
            asc.y = y
            out.append(asc)
            if line.complete:
                new = line.clone()
                new.art_done += (new.count + 1) // 2
                new.tiles.append(new.cur)
                new.cur = []
                new.count = 1
                new.tile_min = y
                new.y = y
                out.append(new)
        elif dy == -1 and y >= line.tile_min:
            desc = line.clone()
            desc.count += 1
            desc.y = y
            out.append(desc)
        return [o for o in out if o.lower_bound() <= o.target]

    def harvest(line):
        tiles = [canonical_tile(t) for t in line.tiles]
        tiles.append(canonical_tile(line.cur))
        return tiles

    def rec(x, lines, prev_count):
        # lines: bottom-to-top _Line states holding boxes for columns > x.
        # A finished line stops here (its last box was at column x+1); an
        # unfinished line must take a box at column x.
        done, kept = [], []
        for l in lines:
            (done if l.finished else kept).append(l)
        closed = tuple(t for l in done for t in harvest(l))
        if x == 0:
            if not kept and abs(yl[1] + 2 * prev_count - yl[0]) == 1:
                yield closed
            return
        positions = range(len(kept) + 1) if x in start_at else (None,)
        for p in positions:
            cnt = len(kept) + (1 if p is not None else 0)
            if abs(yl[x] + 2 * cnt - (yl[x + 1] + 2 * prev_count)) != 1:
                continue
            if cnt and not box_ok(x, yl[x] + 1 + 2 * (cnt - 1)):
                continue

            def assign(j, acc):
                if j == cnt:
                    yield tuple(acc)
                    return
                y = yl[x] + 1 + 2 * j
                if p is not None and j == p:
                    nl = _Line(start_at[x], y)
                    nl.cur = [(x, y)]
                    acc.append(nl)
                    yield from assign(j + 1, acc)
                    acc.pop()
                else:
                    slot = j if (p is None or j < p) else j - 1
                    for nl in transitions(kept[slot], y):
                        nl.cur.append((x, y))
                        acc.append(nl)
                        yield from assign(j + 1, acc)
                        acc.pop()

            for new_lines in assign(0, []):
                for rest in rec(x - 1, new_lines, cnt):
                    yield closed + rest

    for tiles in rec(L - 1, (), 0):
        cand = DyckTiling(word, frozenset(tiles))
        if not validate(cand) and read_up(cand) == tuple(b):
            return cand
    raise ValueError(f"weights {tuple(b)} are not realizable over {word}")


def hermite_build_down(word: str, H) -> DyckTiling:
    """Tiling whose down-step Hermite history (i-th down step from the left)
    is ``H``; the mirror image of :func:`hermite_build`."""
    return reflect_tiling(hermite_build(reflect_word(word), tuple(H)))


# -- enumeration -------------------------------------------------------------

def enumerate_tilings(word: str):
    """All cover-inclusive tilings with lower path ``word`` (via the strip
    bijection over natural labels; each tiling exactly once)."""
    from .core import all_natural_labels, tree_of_word
    from .growth import grow

    tree = tree_of_word(word)
    for label in all_natural_labels(tree):
        yield grow(tree, label, "DTS")


def enumerate_tilings_backtrack(word: str):
    """Independent oracle: fill every skew region above ``word`` with ribbon
    tiles by backtracking and keep the cover-inclusive ones."""
    from .core import all_words

    n = semilength(word)
    yl = heights(word)
    for upper in all_words(n):
        yu = heights(upper)
        if any(a > b for a, b in zip(yl, yu)):
            continue
        reg = region_boxes(word, upper)
        for tiles in _fill_region(frozenset(reg)):
            d = DyckTiling(word, frozenset(tiles))
            if not cover_inclusive_violations(d):
                yield d


def _fill_region(free: frozenset[Box]):
    if not free:
        yield []
        return
    b0 = min(free)
    for tile in _tiles_from(b0, free):
        rest = free - set(tile)
        for more in _fill_region(rest):
            yield [tile] + more


def _tiles_from(b0: Box, free: frozenset[Box]):
    """All Dyck tiles within ``free`` whose leftmost box is ``b0``."""

    def rec(boxes):
        x, y = boxes[-1]
        if y == boxes[0][1] and len(boxes) % 2 == 1:
            yield tuple(boxes)
        for dy in (1, -1):
            nxt = (x + 1, y + dy)
            if nxt in free and y + dy >= boxes[0][1] - (0 if dy == 1 else 0):
                if y + dy >= boxes[0][1]:
                    boxes.append(nxt)
                    yield from rec(boxes)
                    boxes.pop()

    yield from rec([b0])
