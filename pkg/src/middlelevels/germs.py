"""k-germs: fixed-length restricted-growth strings and their natural order.

A k-germ is a tuple ``(a_{k-1}, ..., a_1)`` of k-1 small integers with
``a_{k-1} in {0, 1}`` and every entry at most one more than the entry on its
left.  Digits are stored most-significant first, so the natural enumeration
is plain lexicographic order on tuples.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

Germ = tuple[int, ...]

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class GermError(ValueError):
    pass


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def germ_k(alpha: Germ) -> int:
    """The k of a germ (entries are k-1 long)."""
    return len(alpha) + 1


def is_germ(alpha: Sequence[int]) -> bool:
    if not alpha:
        return True
    if alpha[0] not in (0, 1):
        return False
    for left, right in zip(alpha, alpha[1:]):
        if right < 0 or right > left + 1:
            return False
    return True


def check_germ(alpha: Sequence[int], k: int | None = None) -> Germ:
    alpha = tuple(alpha)
    if k is not None and len(alpha) != k - 1:
        raise GermError(f"germ {format_germ(alpha)!r} has {len(alpha)} entries, expected {k - 1}")
    if not is_germ(alpha):
        raise GermError(f"{format_germ(alpha)!r} violates the restricted-growth condition")
    return alpha


def parse_germ(text: str, k: int | None = None) -> Germ:
    """Parse ``"0012"`` into ``(0, 0, 1, 2)``.

    Entries above 9 use lowercase letters (``a`` = 10).  When ``k`` is given
    the string is left-padded with zeros, so RGS text like ``"12"`` works too.
    """
    text = text.strip()
    try:
        digits = tuple(_DIGITS.index(ch) for ch in text.lower())
    except ValueError:
        raise GermError(f"bad germ digit in {text!r}") from None
    if k is not None:
        if len(digits) > k - 1:
            raise GermError(f"{text!r} is too long for a {k}-germ")
        digits = (0,) * (k - 1 - len(digits)) + digits
    return check_germ(digits)


def format_germ(alpha: Sequence[int]) -> str:
    return "".join(_DIGITS[a] for a in alpha)


def enumerate_germs(k: int) -> list[Germ]:
    """All k-germs in natural order; there are ``catalan(k)`` of them."""
    if k < 1:
        raise GermError("k must be positive")
    return list(_enumerate(k))


@lru_cache(maxsize=32)
def _enumerate(k: int) -> tuple[Germ, ...]:
    if k == 1:
        return ((),)
    out: list[Germ] = []
    length = k - 1
    prefix = [0] * length

    def rec(pos: int, prev: int) -> None:
        if pos == length:
            out.append(tuple(prefix))
            return
        for d in range(prev + 2):
            prefix[pos] = d
            rec(pos + 1, d)

    # the first entry is bounded by 1, same as following a 0
    rec(0, 0)
    return tuple(out)


@lru_cache(maxsize=32)
def rank_table(k: int) -> dict[Germ, int]:
    return {g: m for m, g in enumerate(_enumerate(k))}


def rank(alpha: Germ) -> int:
    return rank_table(germ_k(alpha))[alpha]


def unrank(m: int, k: int) -> Germ:
    return _enumerate(k)[m]


def compare(alpha: Germ, beta: Germ) -> int:
    """-1, 0 or 1 as alpha precedes, equals or follows beta."""
    if len(alpha) != len(beta):
        raise GermError("germs of different k are not comparable")
    return (alpha > beta) - (alpha < beta)


def to_rgs(alpha: Germ) -> str:
    """Strip the leading zeros; the null germ becomes ``"0"``."""
    s = format_germ(alpha).lstrip("0")
    return s or "0"


def pad(rgs: str, k: int) -> Germ:
    rgs = rgs.strip()
    if rgs == "0":
        rgs = ""
    if len(rgs) > k - 1:
        raise GermError(f"RGS {rgs!r} needs k >= {len(rgs) + 1}, got {k}")
    return parse_germ(rgs, k)


def rgs_sequence(count: int) -> list[str]:
    """The first ``count`` terms of the RGS sequence 0, 1, 10, 11, 12, 100, ..."""
    out: list[str] = []
    k = 1
    start = 0
    while len(out) < count:
        k += 1
        germs = _enumerate(k)
        for g in germs[start:]:
            out.append(to_rgs(g))
            if len(out) == count:
                break
        start = len(germs)
    return out


def iter_rgs(count: int) -> Iterator[str]:
    yield from rgs_sequence(count)


def parent(alpha: Germ) -> Germ:
    """Decrement the rightmost nonzero entry."""
    for pos in range(len(alpha) - 1, -1, -1):
        if alpha[pos]:
            return alpha[:pos] + (alpha[pos] - 1,) + alpha[pos + 1:]
    raise GermError("the null germ is the root and has no parent")


def castling_level(alpha: Germ) -> int:
    """Index i of the rightmost nonzero entry a_i (entries numbered k-1..1)."""
    for pos in range(len(alpha) - 1, -1, -1):
        if alpha[pos]:
            return len(alpha) - pos
    raise GermError("the null germ has no castling level")


def children(alpha: Germ) -> list[Germ]:
    """Germs whose parent is alpha, in natural order."""
    out = []
    # a child increments an entry at or right of the rightmost nonzero entry
    last = max((p for p, a in enumerate(alpha) if a), default=-1)
    for pos in range(max(last, 0), len(alpha)):
        cand = alpha[:pos] + (alpha[pos] + 1,) + alpha[pos + 1:]
        if is_germ(cand):
            out.append(cand)
    return sorted(out)


def germ_tree(k: int) -> str:
    """Serialize the germ tree as ``root(child,child(...))``."""
    if k < 1:
        raise GermError("k must be positive")

    def ser(alpha: Germ) -> str:
        kids = children(alpha)
        label = format_germ(alpha) if alpha else "0"
        if not kids:
            return label
        return label + "(" + ",".join(ser(c) for c in kids) + ")"

    return ser((0,) * (k - 1))
