"""Brute-force reference implementations, kept independent of the package code."""

from __future__ import annotations

from itertools import combinations, product
from math import comb


def brute_germs(k: int) -> list[tuple[int, ...]]:
    """All (k-1)-tuples obeying the growth rule, by filtering a box of candidates."""
    out = []
    for cand in product(range(k), repeat=k - 1):
        prev = 0
        ok = True
        for d in cand:
            if d > prev + 1:
                ok = False
                break
            prev = d
        if ok:
            out.append(cand)
    return sorted(out)


def catalan_rec(k: int) -> int:
    c = [1]
    for m in range(1, k + 1):
        c.append(sum(c[i] * c[m - 1 - i] for i in range(m)))
    return c[k]


def words(n: int, wt: int) -> list[int]:
    out = []
    for sup in combinations(range(n), wt):
        out.append(sum(1 << i for i in sup))
    return out


def middle_edges(k: int) -> set[frozenset[int]]:
    n = 2 * k + 1
    return {
        frozenset((a, a | 1 << x))
        for a in words(n, k)
        for x in range(n)
        if not a >> x & 1
    }


def cardinality_color(ones: set[int], x: int, n: int) -> int:
    """Zeros y != x whose cyclic interval [y, x) has fewer ones than zeros."""
    total = 0
    for y in range(n):
        if y == x or y in ones:
            continue
        seg = [(y + t) % n for t in range((x - y) % n)]
        o = sum(1 for z in seg if z in ones)
        if o < len(seg) - o:
            total += 1
    return total


def dyck_words(k: int) -> list[str]:
    out = []
    for ups in combinations(range(2 * k), k):
        s = ["1"] * (2 * k)
        for i in ups:
            s[i] = "0"
        depth = 0
        ok = True
        for ch in s:
            depth += 1 if ch == "0" else -1
            if depth < 0:
                ok = False
                break
        if ok:
            out.append("".join(s))
    return out


def _tree_from_dyck(d: str) -> dict[int, list[int]]:
    """Cyclic neighbour order at each node: parent first, then children left to right."""
    nbrs: dict[int, list[int]] = {0: []}
    stack = [0]
    for ch in d:
        if ch == "0":
            v = len(nbrs)
            nbrs[v] = [stack[-1]]
            nbrs[stack[-1]].append(v)
            stack.append(v)
        else:
            stack.pop()
    return nbrs


def _encode(nbrs: dict[int, list[int]], root: int, first: int) -> str:
    def rec(v: int, came: int) -> str:
        ring = nbrs[v]
        j = ring.index(came)
        order = ring[j + 1:] + ring[:j]
        return "".join("0" + rec(c, v) + "1" for c in order)

    ring = nbrs[root]
    j = ring.index(first)
    order = ring[j:] + ring[:j]
    return "".join("0" + rec(c, root) + "1" for c in order)


def plane_tree_count(k: int) -> int:
    """Rooted trees grouped by re-rooting at every corner; count the groups."""
    if k == 0:
        return 1
    canon = set()
    for d in dyck_words(k):
        nbrs = _tree_from_dyck(d)
        canon.add(min(_encode(nbrs, v, w) for v in nbrs for w in nbrs[v]))
    return len(canon)


def is_hamilton_cycle(seq: list[int], k: int) -> bool:
    n = 2 * k + 1
    if len(seq) != 2 * comb(n, k) or len(set(seq)) != len(seq):
        return False
    for a, b in zip(seq, seq[1:] + seq[:1]):
        if bin(a ^ b).count("1") != 1:
            return False
        if {bin(a).count("1"), bin(b).count("1")} != {k, k + 1}:
            return False
    return True
