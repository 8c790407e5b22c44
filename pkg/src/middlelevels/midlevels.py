"""The middle-levels graph M_k, its rotation quotient M_k/pi and the folding R_k.

Vertices are ``n = 2k+1``-bit words stored as Python ints with bit ``i``
holding ``b_i``; the text form writes ``b_0 b_1 ... b_{n-1}`` left to right.
Translating by ``i`` moves ``b_j`` to position ``j+i mod n``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable

MAX_K = 31


class ResourceBoundError(RuntimeError):
    pass


# ---------------------------------------------------------------- words


def word_from_str(text: str) -> int:
    w = 0
    for i, ch in enumerate(text.strip()):
        if ch == "1":
            w |= 1 << i
        elif ch != "0":
            raise ValueError(f"not a binary word: {text!r}")
    return w


def word_to_str(w: int, n: int) -> str:
    return "".join("1" if w >> i & 1 else "0" for i in range(n))


def weight(w: int) -> int:
    return bin(w).count("1")


def support(w: int, n: int) -> list[int]:
    return [i for i in range(n) if w >> i & 1]


def translate(w: int, i: int, n: int) -> int:
    """Cyclic translation: bit j moves to position j+i (mod n)."""
    i %= n
    mask = (1 << n) - 1
    return ((w << i) | (w >> (n - i))) & mask


def complement_reverse(w: int, n: int) -> int:
    """Complemented reversal: b_0..b_{n-1} -> ~b_{n-1}..~b_0."""
    out = 0
    for i in range(n):
        if not w >> i & 1:
            out |= 1 << (n - 1 - i)
    return out


def dihedral_act(i: int, j: int, w: int, n: int) -> int:
    """Action of the group element (i, j): translate by i after aleph^j."""
    if j % 2:
        w = complement_reverse(w, n)
    return translate(w, i, n)


def dihedral_mul(a: tuple[int, int], b: tuple[int, int], n: int) -> tuple[int, int]:
    """Product in Z_n x| Z_2 where (0,1) acts on Z_n by negation."""
    (i1, j1), (i2, j2) = a, b
    if j1 % 2 == 0:
        return ((i1 + i2) % n, j2 % 2)
    return ((i1 - i2) % n, (1 - j2) % 2)


def least_rotation(s: str) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    ss = s + s
    f = [-1] * len(ss)
    k = 0
    for j in range(1, len(ss)):
        sj = ss[j]
        i = f[j - k - 1]
        while i != -1 and sj != ss[k + i + 1]:
            if sj < ss[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != ss[k + i + 1]:
            if sj < ss[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


@dataclass(frozen=True)
class NecklaceClass:
    """Rotation class of a word, keyed by its least rotation (as text)."""

    canonical: str
    orbit_size: int

    @property
    def n(self) -> int:
        return len(self.canonical)

    @property
    def word(self) -> int:
        return word_from_str(self.canonical)

    def __str__(self) -> str:
        return f"({self.canonical})"


def canonical_word(w: int, n: int) -> int:
    s = word_to_str(w, n)
    start = least_rotation(s)
    return word_from_str(s[start:] + s[:start])


def pi_class(w: int, n: int) -> NecklaceClass:
    s = word_to_str(w, n)
    start = least_rotation(s)
    canon = s[start:] + s[:start]
    period = (canon + canon).find(canon, 1)
    return NecklaceClass(canon, period)


def aleph_pi(c: NecklaceClass) -> NecklaceClass:
    return pi_class(complement_reverse(c.word, c.n), c.n)


@dataclass(frozen=True)
class DihedralClass:
    """A pair {c, aleph_pi(c)} represented by its weight-k member."""

    lower: NecklaceClass

    @property
    def upper(self) -> NecklaceClass:
        return aleph_pi(self.lower)

    def __str__(self) -> str:
        return f"<{self.lower.canonical}>"


def dihedral_class(w: int, n: int) -> DihedralClass:
    k = n // 2
    if weight(w) == k + 1:
        w = complement_reverse(w, n)
    return DihedralClass(pi_class(w, n))


# ---------------------------------------------------------------- graphs


@dataclass
class ColoredGraph:
    """Vertex list plus edge list ``(a, b, color)``; loops have ``a == b``.

    ``color`` is None for uncolored builds.  Parallel edges are separate
    entries.
    """

    name: str
    k: int
    vertices: list
    edges: list[tuple] = field(default_factory=list)

    def degree(self, v) -> int:
        return sum((a == v) + (b == v) - (a == b == v) for a, b, _ in self.edges)

    def loops(self, v) -> list[tuple]:
        return [e for e in self.edges if e[0] == e[1] == v]

    def adjacency_csv(self, fmt=str) -> str:
        rows = ["vertex,color,neighbor"]
        for a, b, c in self.edges:
            col = "" if c is None else str(c)
            rows.append(f"{fmt(a)},{col},{fmt(b)}")
            if a != b:
                rows.append(f"{fmt(b)},{col},{fmt(a)}")
        return "\n".join(rows) + "\n"

    def to_dot(self, fmt=str) -> str:
        lines = [f"graph {self.name} {{"]
        for v in self.vertices:
            lines.append(f'  "{fmt(v)}";')
        for a, b, c in self.edges:
            attr = "" if c is None else f' [color="{_PALETTE[c % len(_PALETTE)]}", label="{c}"]'
            lines.append(f'  "{fmt(a)}" -- "{fmt(b)}"{attr};')
        lines.append("}")
        return "\n".join(lines) + "\n"


_PALETTE = ["red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta", "gray", "black"]


def vertex_count(k: int) -> int:
    return 2 * comb(2 * k + 1, k)


def memory_budget() -> int:
    """Byte budget from MIDLEVELS_MAX_MEM (default 8 GiB)."""
    raw = os.environ.get("MIDLEVELS_MAX_MEM", "")
    if raw:
        mult = {"k": 1 << 10, "m": 1 << 20, "g": 1 << 30}
        if raw[-1].lower() in mult:
            return int(float(raw[:-1]) * mult[raw[-1].lower()])
        return int(raw)
    return 8 << 30


def check_bound(k: int, limit: int, unsafe: bool = False) -> None:
    if k < 1:
        raise ValueError("k must be positive")
    if k > MAX_K:
        raise ResourceBoundError(f"k={k} exceeds the word-size bound {MAX_K}")
    # rough per-vertex cost of a Python-level edge list
    need = vertex_count(k) * (k + 1) * 120
    if need > memory_budget():
        raise ResourceBoundError(f"k={k} needs about {need >> 20} MiB, over the memory budget")
    if k > limit and not unsafe:
        raise ResourceBoundError(f"k={k} exceeds the default bound {limit}; pass unsafe to override")


@lru_cache(maxsize=16)
def level(k: int, wt: int) -> tuple[int, ...]:
    n = 2 * k + 1
    out = []
    for sup in combinations(range(n), wt):
        w = 0
        for i in sup:
            w |= 1 << i
        out.append(w)
    return tuple(sorted(out))


def build_mk(k: int, limit: int = 9, unsafe: bool = False) -> ColoredGraph:
    """M_k: weight-k and weight-(k+1) words, joined by single-bit insertions."""
    check_bound(k, limit, unsafe)
    n = 2 * k + 1
    lower = level(k, k)
    upper = level(k, k + 1)
    edges = []
    for w in lower:
        for x in range(n):
            if not w >> x & 1:
                edges.append((w, w | 1 << x, None))
    return ColoredGraph("M%d" % k, k, list(lower) + list(upper), edges)


def necklaces(k: int, wt: int) -> list[NecklaceClass]:
    n = 2 * k + 1
    seen = {}
    for w in level(k, wt):
        c = pi_class(w, n)
        seen.setdefault(c.canonical, c)
    return [seen[key] for key in sorted(seen)]


def quotient_edges(k: int) -> list[tuple[NecklaceClass, int, NecklaceClass]]:
    """Edges of M_k/pi as (lower class, zero position in canonical word, upper class).

    Rotation acts freely on V(M_k) (gcd(k, 2k+1) = 1), so each edge orbit
    is named by one lower class and one of its k+1 zero positions.
    """
    n = 2 * k + 1
    out = []
    for c in necklaces(k, k):
        w = c.word
        for x in range(n):
            if not w >> x & 1:
                out.append((c, x, pi_class(w | 1 << x, n)))
    return out


def build_mk_pi(k: int, limit: int = 9, unsafe: bool = False) -> ColoredGraph:
    check_bound(k, limit, unsafe)
    verts = necklaces(k, k) + necklaces(k, k + 1)
    edges = [(c, d, None) for c, _, d in quotient_edges(k)]
    return ColoredGraph("Mpi%d" % k, k, verts, edges)


def classify_edge(lower: NecklaceClass, upper: NecklaceClass) -> str:
    return "horizontal" if aleph_pi(lower) == upper else "skew"


def horizontal_multiplicities(k: int) -> dict[NecklaceClass, int]:
    """Number of horizontal M_k/pi edges at each weight-k class."""
    out: dict[NecklaceClass, int] = {}
    for c, _, d in quotient_edges(k):
        out.setdefault(c, 0)
        if classify_edge(c, d) == "horizontal":
            out[c] += 1
    return out


def skew_pairing(k: int) -> dict[tuple, tuple]:
    """Reflection partner of each skew quotient edge, keyed by (lower, upper) canon pairs.

    An edge c--d maps to aleph_pi^{-1}(d)--aleph_pi(c).  Parallel edges are
    matched up by multiplicity.
    """
    out = {}
    for c, _, d in quotient_edges(k):
        if classify_edge(c, d) == "skew":
            partner_lower = aleph_pi(d)  # aleph_pi is its own inverse on classes
            out[(c.canonical, d.canonical)] = (partner_lower.canonical, aleph_pi(c).canonical)
    return out


def build_rk(k: int, limit: int = 12, unsafe: bool = False) -> ColoredGraph:
    """The aleph-folding of M_k/pi: one vertex per dihedral class.

    Skew-edge pairs fold to one edge, each horizontal edge to one loop.
    Edges are uncolored here; see ``lexical.colored_rk`` for the colored form.
    """
    check_bound(k, limit, unsafe)
    verts = [DihedralClass(c) for c in necklaces(k, k)]
    edges = []
    pending: dict[tuple[str, str], int] = {}
    for c, _, d in quotient_edges(k):
        other = DihedralClass(aleph_pi(d))
        me = DihedralClass(c)
        if other == me:
            edges.append((me, me, None))
            continue
        key = (me.lower.canonical, other.lower.canonical)
        back = (key[1], key[0])
        if pending.get(back):
            pending[back] -= 1
            continue
        pending[key] = pending.get(key, 0) + 1
        edges.append((me, other, None))
    return ColoredGraph("R%d" % k, k, verts, edges)


def mk_neighbors(w: int, k: int) -> Iterable[int]:
    """Neighbors of w in M_k (insert a bit if w is on level k, else delete one)."""
    n = 2 * k + 1
    on_lower = weight(w) == k
    for x in range(n):
        if bool(w >> x & 1) != on_lower:
            yield w ^ (1 << x)
