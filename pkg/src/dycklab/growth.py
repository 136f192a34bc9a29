"""Strip/ribbon growth bijections from labeled trees to Dyck tilings.

Every variant inserts one UD pair per label (ascending label order for
natural labels, descending for decreasing labels), spreads the current tiling
at the insertion point, and then grows single boxes to the right (strip), to
the right up to the special column (ribbon), or mirrored to the left.
"""
from __future__ import annotations

from .core import (
    PlantedPlaneTree,
    bar,
    heights,
    is_decreasing_label,
    is_natural_label,
    reflect_label,
)
from .tiling import DyckTiling, reflect_tiling, read_up, spread

# variant -> (label order, growth side, growth kind)
VARIANTS = {
    "DTS": ("asc", "right", "strip"),
    "lDTS": ("asc", "left", "strip"),
    "rDTS": ("desc", "right", "strip"),
    "rlDTS": ("desc", "left", "strip"),
    "DTR": ("asc", "right", "ribbon"),
    "rlDTR": ("desc", "left", "ribbon"),
}


def special_column(d: DyckTiling) -> int:
    """Rightmost column where an up step of the top path ends and the
    intersection with the top path is not the top corner of a single-box tile."""
    upper = d.upper
    yu = heights(upper)
    single_tops = {(t[0][0], t[0][1] + 1) for t in d.tiles if len(t) == 1}
    for s in range(len(upper), 0, -1):
        if upper[s - 1] == "U" and (s, yu[s]) not in single_tops:
            return s
    raise ValueError("no eligible column (empty top path?)")


def _box_fits(x: int, y: int, length: int) -> bool:
    return 1 <= x <= length - 1 and y <= x - 1 and y <= length - x - 1


def strip_growth(d: DyckTiling, m: int) -> DyckTiling:
    """Attach a single box above every up step of the top path strictly right
    of the line x = m (steps starting at x >= m)."""
    upper = d.upper
    yu = heights(upper)
    new = [
        ((a, yu[a] + 1),)
        for a in range(max(m, 0), len(upper))
        if upper[a] == "U" and _box_fits(a, yu[a] + 1, len(upper))
    ]
    return DyckTiling(d.lower, d.tiles | frozenset(new))


def ribbon_growth(d: DyckTiling, m: int) -> DyckTiling:
    """Attach single boxes above the up steps of the top path from x = m up
    to the special column; a no-op when the special column is left of m."""
    s = special_column(d)
    upper = d.upper
    yu = heights(upper)
    new = [
        ((a, yu[a] + 1),)
        for a in range(max(m, 0), len(upper))
        if a + 1 <= s and upper[a] == "U" and _box_fits(a, yu[a] + 1, len(upper))
    ]
    return DyckTiling(d.lower, d.tiles | frozenset(new))


def _grow_right(d: DyckTiling, line: int, kind: str) -> DyckTiling:
    return strip_growth(d, line) if kind == "strip" else ribbon_growth(d, line)


def _grow_left(d: DyckTiling, line: int, kind: str) -> DyckTiling:
    mirrored = _grow_right(reflect_tiling(d), len(d.lower) - line, kind)
    return reflect_tiling(mirrored)


def grow(tree: PlantedPlaneTree, label, variant: str) -> DyckTiling:
    """Run the growth bijection ``variant`` on a labeled tree."""
    order, side, kind = VARIANTS[variant]
    if order == "asc" and not is_natural_label(tree, label):
        raise ValueError(f"{variant} requires a natural label")
    if order == "desc" and not is_decreasing_label(tree, label):
        raise ValueError(f"{variant} requires a decreasing label")
    edge_of = {label[e]: e for e in range(tree.n)}
    seq = sorted(edge_of, reverse=(order == "desc"))
    d = DyckTiling("", frozenset())
    inserted = []
    for lab in seq:
        e = edge_of[lab]
        pos = 0
        for f in inserted:
            if tree.strictly_left(e, f):
                pos += 2
            elif tree.is_ancestor(f, e):
                pos += 1
        d = spread(d, pos)
        d = _grow_right(d, pos + 1, kind) if side == "right" else _grow_left(d, pos + 1, kind)
        inserted.append(e)
    return d


def _invert_b(b) -> tuple[int, ...]:
    """Anchor sequence a from b: a_i is the (b_i + 1)-th smallest unused value."""
    free = sorted(range(len(b)))
    a = []
    for v in b:
        if v >= len(free):
            raise ValueError("weight vector is not an anchor encoding")
        a.append(free.pop(v))
    return tuple(a)


def _ungrow_dts(d: DyckTiling):
    from .core import tree_of_word

    tree = tree_of_word(d.lower)
    n = tree.n
    b = read_up(d)
    a = _invert_b(b)
    label = [0] * n
    for i in range(n):
        label[n - 1 - i] = n - a[i]  # i-th up step from the right is edge n-1-i
    label = tuple(label)
    if not is_natural_label(tree, label):
        raise ValueError("tiling is not in the image of the strip bijection")
    return tree, label


def ungrow(d: DyckTiling, variant: str):
    """Inverse of :func:`grow`; returns (tree, label)."""
    if variant == "DTS":
        return _ungrow_dts(d)
    if variant == "lDTS":
        rt, rl = _ungrow_dts(reflect_tiling(d))
        return reflect_label(rt, rl)
    if variant == "rDTS":
        t, lab = _ungrow_dts(d)
        return t, bar(lab)
    if variant == "rlDTS":
        t, lab = ungrow(d, "lDTS")
        return t, bar(lab)
    if variant == "DTR":
        from .dtab import dtab_of_tiling, tableau_label

        tab = dtab_of_tiling(d)
        return tableau_label(tab)
    if variant == "rlDTR":
        rt, rl = ungrow(reflect_tiling(d), "DTR")
        t, lab = reflect_label(rt, bar(rl))
        return t, lab
    raise ValueError(f"unknown variant {variant!r}")
