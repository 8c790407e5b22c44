"""Middle-levels graph toolkit: k-germs, tree codes, lexical colourings and Hamilton cycles."""

from .germs import catalan, enumerate_germs, format_germ, parse_germ
from .treecodec import castle, uncastle
from .hamilton import hamilton_cycle, verify_hamilton

__all__ = [
    "catalan",
    "castle",
    "enumerate_germs",
    "format_germ",
    "hamilton_cycle",
    "parse_germ",
    "uncastle",
    "verify_hamilton",
]
