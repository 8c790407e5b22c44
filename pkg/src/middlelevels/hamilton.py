"""Hamilton cycles in M_k from the colour-0/1 two-factor and 6-cycle gluing.

The union of the colour-0 and colour-1 matchings is a 2-factor W01 whose
cycles correspond to plane trees.  A hexagon ``u u' u'' v'' v' v`` that meets
one cycle in the edges ``uu'`` and ``v'v`` and another in ``u''v''`` merges
the two when its edges are swapped in and out.  Choosing one hexagon per
non-root cycle, pairwise edge-disjoint, glues everything into one cycle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .germs import Germ, format_germ
from .lexical import edge_color, germ_of_word, lexical_colors
from .midlevels import check_bound, level, weight, word_from_str, word_to_str
from .treecodec import (
    Code,
    format_code,
    mirror_shape,
    plane_canonical,
    rotation_orbit,
    tree_from_shape,
    tree_of_germ,
)

log = logging.getLogger(__name__)

HAMILTON_LIMIT = 7


class HamiltonError(RuntimeError):
    pass


# ---------------------------------------------------------------- the 2-factor


@dataclass
class Cycle:
    index: int
    vertices: tuple[int, ...]
    germs: tuple[Germ, ...]
    label: Code  # plane class of the weight-k vertices
    mirror_label: Code  # plane class of the weight-(k+1) vertices
    xi: int
    leaves: int
    symmetry: int

    @property
    def enantiomorphic(self) -> bool:
        return self.label != self.mirror_label

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass
class CycleDecomposition:
    k: int
    cycles: list[Cycle]
    matching: dict[int, dict[int, int]]  # colour -> vertex -> partner
    cycle_of: dict[int, int]
    position: dict[int, int]

    @property
    def n(self) -> int:
        return 2 * self.k + 1

    def germ_partition(self) -> list[frozenset[Germ]]:
        return [frozenset(c.germs) for c in self.cycles]

    def neighbors(self, v: int) -> tuple[int, int]:
        return self.matching[0][v], self.matching[1][v]


def _matching(k: int, color: int) -> dict[int, int]:
    out = {}
    for w in level(k, k):
        x = next(p for p, c in lexical_colors(w, k).items() if c == color)
        u = w | 1 << x
        out[w] = u
        out[u] = w
    return out


def _tree_stats(alpha: Germ) -> tuple[int, int]:
    tree = tree_of_germ(alpha)
    orbit = len(rotation_orbit(tree))
    k = tree.k
    return tree.leaves(), (2 * k) // orbit if k else 1


def root_word(k: int) -> int:
    """The weight-k vertex 0^{k+1} 1^k whose germ is the null germ."""
    return word_from_str("0" * (k + 1) + "1" * k)


def two_factor_w01(k: int, unsafe: bool = False) -> CycleDecomposition:
    """Cycles of the colour-0/1 two-factor, each read from its least word along its 1-edge."""
    check_bound(k, HAMILTON_LIMIT, unsafe)
    m0, m1 = _matching(k, 0), _matching(k, 1)
    seen: set[int] = set()
    cycles: list[Cycle] = []
    cycle_of: dict[int, int] = {}
    position: dict[int, int] = {}
    verts = sorted(set(level(k, k)) | set(level(k, k + 1)))
    for start in verts:
        if start in seen:
            continue
        seq = [start]
        cur, use_one = m1[start], False
        while cur != start:
            seq.append(cur)
            cur = m1[cur] if use_one else m0[cur]
            use_one = not use_one
        idx = len(cycles)
        for p, v in enumerate(seq):
            seen.add(v)
            cycle_of[v] = idx
            position[v] = p
        germs = tuple(germ_of_word(v, k) for v in seq)
        lower = [g for v, g in zip(seq, germs) if weight(v) == k]
        upper = [g for v, g in zip(seq, germs) if weight(v) != k]
        label = plane_canonical(tree_of_germ(lower[0]))
        mirror_label = plane_canonical(tree_of_germ(upper[0]))
        xi = sum(germs[p] == germs[(p + 1) % len(seq)] for p in range(len(seq)))
        leaves, sym = _tree_stats(lower[0])
        cycles.append(Cycle(idx, tuple(seq), germs, label, mirror_label, xi, leaves, sym))
    return CycleDecomposition(k, cycles, {0: m0, 1: m1}, cycle_of, position)


@dataclass(frozen=True)
class CycleLabel:
    index: int
    length: int
    plane_class: str
    mirror_class: str
    enantiomorphic: bool
    xi: int
    distinct_germs: int


def label_cycles(dec: CycleDecomposition) -> list[CycleLabel]:
    """Plane-tree label, xi and chirality of every cycle."""
    return [
        CycleLabel(
            c.index,
            len(c),
            format_code(c.label),
            format_code(c.mirror_label),
            c.enantiomorphic,
            c.xi,
            len(set(c.germs)),
        )
        for c in dec.cycles
    ]


def plane_class_consistency(dec: CycleDecomposition) -> list[str]:
    """Problems found when checking every vertex's tree against its cycle label."""
    problems = []
    for c in dec.cycles:
        for v, g in zip(c.vertices, c.germs):
            want = c.label if weight(v) == dec.k else c.mirror_label
            got = plane_canonical(tree_of_germ(g))
            if got != want:
                problems.append(f"cycle {c.index}: {word_to_str(v, dec.n)} has class {format_code(got)}")
    return problems


def mirror_class(code: Code) -> Code:
    from .treecodec import shape_of_code

    return plane_canonical(tree_from_shape(mirror_shape(shape_of_code(code))))


# ---------------------------------------------------------------- hexagons


@dataclass(frozen=True)
class SixCycle:
    """Hexagon u u' u'' v'' v' v; host holds u u' and v' v, target holds u'' v''."""

    u: int
    u1: int
    u2: int
    v2: int
    v1: int
    v: int
    host: int
    target: int
    color: int
    position: int
    direction: int

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.u, self.u1, self.u2, self.v2, self.v1, self.v)

    def removed(self) -> list[frozenset[int]]:
        return [frozenset(e) for e in ((self.u, self.u1), (self.v1, self.v), (self.u2, self.v2))]

    def added(self) -> list[frozenset[int]]:
        return [frozenset(e) for e in ((self.u1, self.u2), (self.v2, self.v1), (self.v, self.u))]

    def edges(self) -> frozenset[frozenset[int]]:
        return frozenset(self.removed() + self.added())

    def key(self) -> tuple:
        return (self.host, self.target, self.position, self.direction, self.vertices)


def _adjacent(a: int, b: int) -> bool:
    d = a ^ b
    return d != 0 and d & (d - 1) == 0


def _m_neighbors(w: int, k: int) -> Iterable[int]:
    n = 2 * k + 1
    lower = weight(w) == k
    for x in range(n):
        if bool(w >> x & 1) != lower:
            yield w ^ (1 << x)


def _hexagons_of_cycle(dec: CycleDecomposition, c: Cycle) -> list[SixCycle]:
    k = dec.k
    seq = c.vertices
    L = len(seq)
    out = []
    if L < 6:
        return out
    for p in range(L):
        u = seq[p]
        for d in (1, -1):
            v = seq[(p + 5 * d) % L]
            if not _adjacent(u, v):
                continue
            h = edge_color(u, v, k)
            if h < 2:
                continue
            for s in (-d, d):
                u1 = seq[(p + s) % L]
                v1 = seq[(p + 5 * d + s) % L]
                if u1 in (v, v1) or v1 == u:
                    continue
                for u2 in _m_neighbors(u1, k):
                    j = dec.cycle_of[u2]
                    if j == c.index:
                        continue
                    for v2 in dec.neighbors(u2):
                        if _adjacent(v2, v1):
                            out.append(SixCycle(u, u1, u2, v2, v1, v, c.index, j, h, p, d * (2 if s == d else 1)))
    return out


def find_six_cycles(dec: CycleDecomposition, jobs: int = 1) -> list[SixCycle]:
    """All hexagons of the distance-5 pattern, deduplicated by edge set."""
    if jobs > 1 and len(dec.cycles) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda c: _hexagons_of_cycle(dec, c), dec.cycles))
    else:
        parts = [_hexagons_of_cycle(dec, c) for c in dec.cycles]
    seen: set[frozenset] = set()
    out = []
    for part in parts:
        for hx in sorted(part, key=SixCycle.key):
            e = hx.edges()
            if e in seen:
                continue
            seen.add(e)
            out.append(hx)
    return out


@dataclass
class CycleDigraph:
    """Cycles as nodes; an arc host -> target for every hexagon."""

    nodes: list[int]
    arcs: dict[tuple[int, int], list[SixCycle]] = field(default_factory=dict)

    @classmethod
    def build(cls, dec: CycleDecomposition, hexagons: Sequence[SixCycle]) -> "CycleDigraph":
        g = cls([c.index for c in dec.cycles])
        for hx in hexagons:
            g.arcs.setdefault((hx.host, hx.target), []).append(hx)
        return g

    def out_degree(self, i: int) -> int:
        return sum(len(v) for (a, _), v in self.arcs.items() if a == i)

    def in_degree(self, i: int) -> int:
        return sum(len(v) for (_, b), v in self.arcs.items() if b == i)

    def connected(self) -> bool:
        if not self.nodes:
            return True
        adj: dict[int, set[int]] = {i: set() for i in self.nodes}
        for a, b in self.arcs:
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.nodes[0]}
        stack = [self.nodes[0]]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(self.nodes)

    def to_dot(self, chosen: Sequence[SixCycle] = ()) -> str:
        picked = {(h.host, h.target) for h in chosen}
        lines = ["digraph D {"]
        for i in self.nodes:
            lines.append(f"  C{i};")
        for (a, b), hs in sorted(self.arcs.items()):
            style = ', color="red", penwidth=2' if (a, b) in picked else ""
            lines.append(f'  C{a} -> C{b} [label="{len(hs)}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- gluing


class _TwoFactor:
    """Mutable 2-regular edge set with cycle-membership bookkeeping."""

    def __init__(self, dec: CycleDecomposition):
        self.adj: dict[int, set[int]] = {}
        for c in dec.cycles:
            seq = c.vertices
            for a, b in zip(seq, seq[1:] + seq[:1]):
                self.adj.setdefault(a, set()).add(b)
                self.adj.setdefault(b, set()).add(a)
        self.comp = {c.index: c.index for c in dec.cycles}
        self.size = {c.index: len(c) for c in dec.cycles}

    def find(self, i: int) -> int:
        while self.comp[i] != i:
            self.comp[i] = self.comp[self.comp[i]]
            i = self.comp[i]
        return i

    def has(self, e: frozenset[int]) -> bool:
        a, b = tuple(e)
        return b in self.adj[a]

    def _swap(self, out_edges, in_edges) -> None:
        for e in out_edges:
            a, b = tuple(e)
            self.adj[a].discard(b)
            self.adj[b].discard(a)
        for e in in_edges:
            a, b = tuple(e)
            self.adj[a].add(b)
            self.adj[b].add(a)

    def cycle_length(self, start: int) -> int:
        prev, cur, steps = None, start, 0
        while True:
            nxt = next(iter(x for x in self.adj[cur] if x != prev)) if prev is not None else min(self.adj[cur])
            prev, cur = cur, nxt
            steps += 1
            if cur == start:
                return steps

    def try_glue(self, hx: SixCycle) -> bool:
        if not all(self.has(e) for e in hx.removed()):
            return False
        if any(self.has(e) for e in hx.added()):
            return False
        a, b = self.find(hx.host), self.find(hx.target)
        if a == b:
            return False
        self._swap(hx.removed(), hx.added())
        if self.cycle_length(hx.u) != self.size[a] + self.size[b]:
            self._swap(hx.added(), hx.removed())
            return False
        self.comp[b] = a
        self.size[a] += self.size[b]
        return True

    def undo(self, hx: SixCycle, a: int, b: int, size_a: int) -> None:
        self._swap(hx.added(), hx.removed())
        self.comp[b] = b
        self.size[a] = size_a


def root_cycle(dec: CycleDecomposition) -> int:
    return dec.cycle_of[root_word(dec.k)]


def select_gluing(dec: CycleDecomposition, hexagons: Sequence[SixCycle]) -> list[SixCycle]:
    """One hexagon per non-root cycle, pairwise edge-disjoint, merging into one cycle.

    Cycles are attached to the root's component one at a time; each step
    takes the lowest (host, target, position) hexagon joining an attached
    cycle to a new one, and backtracks if no hexagon fits.
    """
    if len(dec.cycles) == 1:
        return []
    root = root_cycle(dec)
    by_cycle: dict[int, list[SixCycle]] = {}
    for hx in hexagons:
        by_cycle.setdefault(hx.host, []).append(hx)
        by_cycle.setdefault(hx.target, []).append(hx)
    state = _TwoFactor(dec)
    attached = {root}
    chosen: list[SixCycle] = []
    used: set[frozenset[int]] = set()
    total = len(dec.cycles)
    budget = [200000]

    def candidates() -> list[SixCycle]:
        out = []
        for i in sorted(attached):
            for hx in by_cycle.get(i, ()):
                other = hx.target if hx.host == i else hx.host
                if other in attached:
                    continue
                out.append(hx)
        out.sort(key=SixCycle.key)
        return out

    def rec() -> bool:
        if len(attached) == total:
            return True
        for hx in candidates():
            budget[0] -= 1
            if budget[0] < 0:
                return False
            edges = hx.edges()
            if used & edges:
                continue
            a, b = state.find(hx.host), state.find(hx.target)
            size_a = state.size[a]
            if not state.try_glue(hx):
                continue
            new = hx.target if hx.host in attached else hx.host
            attached.add(new)
            chosen.append(hx)
            used.update(edges)
            if rec():
                return True
            log.debug("backtracking over cycle %d", new)
            chosen.pop()
            used.difference_update(edges)
            attached.discard(new)
            state.undo(hx, a, b, size_a)
        return False

    if not rec():
        missing = sorted(set(range(total)) - attached)
        raise HamiltonError(f"no edge-disjoint gluing found; unattached cycles {missing}")
    return chosen


def glue(dec: CycleDecomposition, chosen: Sequence[SixCycle]) -> list[int]:
    """Apply the symmetric differences and read off the resulting cycle."""
    edges: set[frozenset[int]] = set()
    for c in dec.cycles:
        seq = c.vertices
        edges.update(frozenset(e) for e in zip(seq, seq[1:] + seq[:1]))
    for hx in chosen:
        for e in hx.removed():
            if e not in edges:
                raise HamiltonError("hexagon removes an edge that is not present")
            edges.remove(e)
        for e in hx.added():
            if e in edges:
                raise HamiltonError("hexagon adds an edge that is already present")
            edges.add(e)
    adj: dict[int, list[int]] = {}
    for e in edges:
        a, b = tuple(e)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(v) != 2 for v in adj.values()):
        raise HamiltonError("edge set is not 2-regular")
    start = root_word(dec.k)
    seq = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        seq.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    return seq


@dataclass
class HamiltonResult:
    k: int
    cycle: list[int]
    decomposition: CycleDecomposition
    hexagons: list[SixCycle]
    chosen: list[SixCycle]

    @property
    def digraph(self) -> CycleDigraph:
        return CycleDigraph.build(self.decomposition, self.hexagons)


def build_hamilton(k: int, unsafe: bool = False, jobs: int = 1) -> HamiltonResult:
    dec = two_factor_w01(k, unsafe=unsafe)
    hexagons = find_six_cycles(dec, jobs=jobs) if len(dec.cycles) > 1 else []
    chosen = select_gluing(dec, hexagons)
    seq = glue(dec, chosen)
    return HamiltonResult(k, seq, dec, hexagons, chosen)


def hamilton_cycle(k: int, unsafe: bool = False, jobs: int = 1) -> list[int]:
    """Vertex sequence of a Hamilton cycle of M_k, starting at 0^{k+1}1^k."""
    return build_hamilton(k, unsafe=unsafe, jobs=jobs).cycle


# ---------------------------------------------------------------- verification


@dataclass(frozen=True)
class Certificate:
    k: int
    length: int


def verify_hamilton(k: int, seq: Sequence[int]) -> Certificate:
    """Check seq is a Hamilton cycle of M_k using bit arithmetic only."""
    n = 2 * k + 1
    expected = 2 * comb(n, k)
    if len(seq) != expected:
        raise HamiltonError(f"length {len(seq)}, expected {expected}")
    seen = set()
    for step, w in enumerate(seq):
        if w < 0 or w >> n:
            raise HamiltonError(f"step {step}: word has more than {n} bits")
        if bin(w).count("1") not in (k, k + 1):
            raise HamiltonError(f"step {step}: weight {bin(w).count('1')} is off the middle levels")
        if w in seen:
            raise HamiltonError(f"step {step}: vertex repeated")
        seen.add(w)
        nxt = seq[(step + 1) % len(seq)]
        d = w ^ nxt
        if d == 0 or d & (d - 1):
            raise HamiltonError(f"step {step}: consecutive words differ in {bin(d).count('1')} bits")
    return Certificate(k, len(seq))


def write_certificate(seq: Sequence[int], k: int, path) -> None:
    n = 2 * k + 1
    with open(path, "w") as fh:
        for w in list(seq) + [seq[0]]:
            fh.write(word_to_str(w, n) + "\n")


def read_certificate(path) -> tuple[int, list[int]]:
    """Return (k, cycle) from a certificate file; the closing repeat is dropped."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if len(lines) < 2:
        raise HamiltonError("certificate has fewer than two lines")
    n = len(lines[0])
    if n % 2 == 0 or any(len(ln) != n for ln in lines):
        raise HamiltonError("certificate lines must share one odd length")
    if lines[0] != lines[-1]:
        raise HamiltonError("certificate must repeat its first word at the end")
    return n // 2, [word_from_str(ln) for ln in lines[:-1]]


def cycle_length_report(dec: CycleDecomposition) -> list[dict]:
    """Measured cycle lengths next to the two closed forms quoted for them."""
    k = dec.k
    rows = []
    for c in dec.cycles:
        zeta = c.symmetry
        rows.append(
            {
                "cycle": c.index,
                "length": len(c),
                "class": format_code(c.label),
                "symmetry": zeta,
                "matches_2k(4k+2)": len(c) == 2 * k * (4 * k + 2),
                "matches_2k(4k+1)/zeta": len(c) * zeta == 2 * k * (4 * k + 1),
                "matches_2k(4k+2)/zeta": len(c) * zeta == 2 * k * (4 * k + 2),
            }
        )
    return rows


def describe_germs(germs: Iterable[Germ]) -> str:
    return " ".join(format_germ(g) or "-" for g in germs)
