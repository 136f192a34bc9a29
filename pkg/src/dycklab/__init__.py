"""Dyck tilings, generalized Dyck tableaux and tree-like tableaux."""

from .core import (
    parse_word,
    tree_of_word,
    word_of_tree,
    history_of_label,
    label_of_history,
    zigzag,
    wedge,
    wedge_seq,
)
from .tiling import DyckTiling, spread, reflect_tiling, hermite_read, hermite_build
from .growth import grow, ungrow, VARIANTS

__all__ = [
    "parse_word",
    "tree_of_word",
    "word_of_tree",
    "history_of_label",
    "label_of_history",
    "zigzag",
    "wedge",
    "wedge_seq",
    "DyckTiling",
    "spread",
    "reflect_tiling",
    "hermite_read",
    "hermite_build",
    "grow",
    "ungrow",
    "VARIANTS",
]
