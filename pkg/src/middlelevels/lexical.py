"""Lexical edge coloring of M_k and the germ-level adjacency tables it induces.

The color of the edge that sets the zero at position ``x`` of a weight-k word
comes from a lattice path: read the bits after ``x`` cyclically, step right on
a 0 and up on a 1, and count the right steps taken above the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .germs import Germ, GermError, catalan, enumerate_germs, format_germ, rank_table
from .midlevels import (
    ColoredGraph,
    DihedralClass,
    complement_reverse,
    check_bound,
    level,
    least_rotation,
    necklaces,
    weight,
    word_from_str,
    word_to_str,
)
from .treecodec import STAR, Code, castle, format_code, reflect_phi, theta, uncastle


class ColorError(ValueError):
    pass


# ---------------------------------------------------------------- colors


def lattice_path(w: int, x: int, k: int) -> list[tuple[int, int]]:
    """Grid points visited when reading the 2k bits after position x."""
    n = 2 * k + 1
    px = py = 0
    pts = [(0, 0)]
    for step in range(1, n):
        if w >> ((x + step) % n) & 1:
            py += 1
        else:
            px += 1
        pts.append((px, py))
    return pts


def lexical_color(w: int, x: int, k: int) -> int:
    """Color of the edge that inserts position x into the weight-k word w."""
    n = 2 * k + 1
    if w >> x & 1:
        raise ColorError(f"position {x} of {word_to_str(w, n)} is not a zero")
    if weight(w) != k:
        raise ColorError("lexical colors are read from the weight-k endpoint")
    ups = rights = color = 0
    for step in range(1, n):
        if w >> ((x + step) % n) & 1:
            ups += 1
        else:
            if ups > rights:
                color += 1
            rights += 1
    return color


def lexical_colors(w: int, k: int) -> dict[int, int]:
    """Map each zero position of w to its color."""
    n = 2 * k + 1
    return {x: lexical_color(w, x, k) for x in range(n) if not w >> x & 1}


def lexical_color_formula(support_set, x: int, n: int) -> int:
    """Count zeros y != x for which [y, x) holds fewer ones than zeros."""
    s = set(support_set)
    if x in s:
        raise ColorError("x must lie outside the support")
    count = 0
    for y in range(n):
        if y == x or y in s:
            continue
        ones = zeros = 0
        z = y
        while z != x:
            if z in s:
                ones += 1
            else:
                zeros += 1
            z = (z + 1) % n
        if ones < zeros:
            count += 1
    return count


def color_upper(u: int, p: int, k: int) -> int:
    """Color of the edge deleting the one at position p of the weight-(k+1) word u.

    Read right to left with complemented bits, which is the lower-level rule
    applied to complement_reverse(u) at the mirrored position.
    """
    n = 2 * k + 1
    if not u >> p & 1:
        raise ColorError(f"position {p} of {word_to_str(u, n)} is not a one")
    return lexical_color(complement_reverse(u, n), n - 1 - p, k)


def edge_color(a: int, b: int, k: int) -> int:
    lo, hi = (a, b) if weight(a) == k else (b, a)
    diff = lo ^ hi
    if diff & (diff - 1) or hi & diff == 0:
        raise ColorError("not an edge of M_k")
    return lexical_color(lo, diff.bit_length() - 1, k)


def color_neighbor(w: int, c: int, k: int) -> int:
    """The neighbor of w in M_k along color c."""
    n = 2 * k + 1
    if weight(w) == k:
        for x in range(n):
            if not w >> x & 1 and lexical_color(w, x, k) == c:
                return w | 1 << x
    else:
        for p in range(n):
            if w >> p & 1 and color_upper(w, p, k) == c:
                return w & ~(1 << p)
    raise ColorError(f"no color-{c} edge at {word_to_str(w, n)}")


def one_factorization(k: int, limit: int = 9, unsafe: bool = False) -> ColoredGraph:
    """M_k with every edge colored from its weight-k endpoint."""
    check_bound(k, limit, unsafe)
    n = 2 * k + 1
    lower = level(k, k)
    edges = []
    for w in lower:
        for x, c in lexical_colors(w, k).items():
            edges.append((w, w | 1 << x, c))
    return ColoredGraph("M%d" % k, k, list(lower) + list(level(k, k + 1)), edges)


# ---------------------------------------------------------------- delta notation and germs


def delta_code(w: int, k: int) -> Code:
    """Subscript string of the weight-k word w, read from its color-0 zero."""
    n = 2 * k + 1
    colors = lexical_colors(w, k)
    start = next(x for x, c in colors.items() if c == 0)
    out = []
    for step in range(n):
        pos = (start + step) % n
        out.append(colors[pos] if pos in colors else STAR)
    return tuple(out)


def delta_notation(w: int, k: int) -> str:
    return "<" + format_code(delta_code(w, k)) + ">"


@lru_cache(maxsize=None)
def _germ_of_canonical(canon: str, k: int) -> Germ:
    return uncastle(delta_code(word_from_str(canon), k))


def germ_of_word(w: int, k: int) -> Germ:
    """Germ of the dihedral class of any vertex of M_k."""
    n = 2 * k + 1
    if weight(w) == k + 1:
        w = complement_reverse(w, n)
    elif weight(w) != k:
        raise ColorError("word is not a vertex of M_k")
    s = word_to_str(w, n)
    i = least_rotation(s)
    return _germ_of_canonical(s[i:] + s[:i], k)


def germ_of_vertex(c: DihedralClass) -> Germ:
    k = c.lower.n // 2
    return _germ_of_canonical(c.lower.canonical, k)


def theta_word(alpha: Germ) -> int:
    return word_from_str(theta(alpha))


def neighbor_germ(alpha: Germ, c: int) -> Germ:
    """Germ reached from alpha along color c in R_k (alpha itself on a loop)."""
    k = len(alpha) + 1
    if not 0 <= c <= k:
        raise ColorError(f"color {c} outside 0..{k}")
    w = theta_word(alpha)
    x = next(pos for pos, col in lexical_colors(w, k).items() if col == c)
    return germ_of_word(w | 1 << x, k)


def colored_rk(k: int, limit: int = 12, unsafe: bool = False) -> ColoredGraph:
    """R_k on germs: one edge per color pair, a loop where alpha^c = alpha."""
    check_bound(k, limit, unsafe)
    germs = enumerate_germs(k)
    edges = []
    for g in germs:
        for c in range(k + 1):
            h = neighbor_germ(g, c)
            if h == g:
                edges.append((g, g, c))
            elif g < h:
                edges.append((g, h, c))
    return ColoredGraph("R%d" % k, k, germs, edges)


# ---------------------------------------------------------------- adjacency tables


@dataclass(frozen=True)
class CatTable:
    """Colored adjacency table: ``rows[m] = (alpha, (alpha^k, ..., alpha^0))``."""

    k: int
    rows: tuple[tuple[Germ, tuple[Germ, ...]], ...]

    def column(self, c: int) -> list[Germ]:
        """Neighbors along color c, in row order."""
        return [nbrs[self.k - c] for _, nbrs in self.rows]

    def rank_column(self, c: int) -> list[int]:
        ranks = rank_table(self.k)
        return [ranks[g] for g in self.column(c)]

    def preserved_positions(self, c: int) -> list[int]:
        """Entry indices (k-1..1) on which alpha and alpha^c agree in every row."""
        keep = []
        for j in range(self.k - 1, 0, -1):
            idx = self.k - 1 - j
            if all(a[idx] == col[idx] for (a, _), col in zip(self.rows, self.column(c))):
                keep.append(j)
        return keep

    def footer(self, c: int) -> str:
        """Aggregated row: the entry kept by column c, asterisks elsewhere."""
        keep = set(self.preserved_positions(c))
        return "".join(str(j) if j in keep else "*" for j in range(self.k - 1, 0, -1))

    def to_text(self) -> str:
        k = self.k
        width = max(k - 1, 1)
        head = ["m".rjust(3), "alpha".ljust(max(width, 5))]
        head += [f"a^{c}".ljust(width) for c in range(k, -1, -1)]
        lines = [" ".join(head)]
        for m, (alpha, nbrs) in enumerate(self.rows):
            cells = [str(m).rjust(3), _fmt(alpha).ljust(max(width, 5))]
            cells += [_fmt(b).ljust(max(width, 3)) for b in nbrs]
            lines.append(" ".join(cells).rstrip())
        foot = [" " * 3, "-".ljust(max(width, 5))] + [self.footer(c).ljust(max(width, 3)) for c in range(k, -1, -1)]
        lines.append(" ".join(foot).rstrip())
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        k = self.k
        lines = ["m,germ," + ",".join(f"neighbor_{c}" for c in range(k, -1, -1))]
        for m, (alpha, nbrs) in enumerate(self.rows):
            lines.append(f"{m},{_fmt(alpha)}," + ",".join(_fmt(b) for b in nbrs))
        return "\n".join(lines) + "\n"

    def to_records(self) -> list[dict]:
        k = self.k
        out = []
        for m, (alpha, nbrs) in enumerate(self.rows):
            rec = {"m": m, "germ": _fmt(alpha)}
            for c, b in zip(range(k, -1, -1), nbrs):
                rec[f"neighbor_{c}"] = _fmt(b)
            out.append(rec)
        return out


def _fmt(alpha: Germ) -> str:
    return format_germ(alpha) if alpha else "-"


@lru_cache(maxsize=16)
def cat_table(k: int) -> CatTable:
    if k < 2:
        raise GermError("adjacency tables start at k = 2")
    rows = []
    for g in enumerate_germs(k):
        rows.append((g, tuple(neighbor_germ(g, c) for c in range(k, -1, -1))))
    return CatTable(k, tuple(rows))


def s0_sequence(count: int) -> list[int]:
    """Ranks along the top color, read across increasing k."""
    out: list[int] = []
    k = 1
    while len(out) < count:
        k += 1
        out = cat_table(k).rank_column(k)[:count]
        if catalan(k) >= count:
            break
    return out[:count]


def s1_sequence(count: int) -> list[int]:
    """Blocks [C_{k-1}, C_k) of the color k-1 rank column of each table."""
    out: list[int] = []
    k = 1
    while len(out) < count:
        k += 1
        start = 0 if k == 2 else catalan(k - 1)
        out.extend(cat_table(k).rank_column(k - 1)[start:])
    return out[:count]


def sequence_blocks(values: list[int]) -> list[list[int]]:
    """Split a sequence at the Catalan boundaries 2, 5, 14, 42, ..."""
    blocks = []
    k, lo = 2, 0
    while lo < len(values):
        hi = catalan(k)
        blocks.append(values[lo:hi])
        lo, k = hi, k + 1
    return blocks


# ---------------------------------------------------------------- graph-free neighbors


class UnderdeterminedProcedure(ValueError):
    """The digit-arithmetic route does not settle this (germ, color)."""


def _ascent(digits: list[int], start: int) -> int:
    """Length of the ascent of digits[start:]."""
    if start >= len(digits):
        return 0
    end = start + 1
    if digits[start] == 0:
        while end < len(digits) and digits[end] > digits[end - 1]:
            end += 1
        return end - start
    repeats = 0
    while end < len(digits) and digits[end] >= digits[end - 1]:
        if digits[end] == digits[end - 1]:
            if repeats:
                break
            repeats += 1
        end += 1
    return end - start


def _mirror_blocks(digits: list[int], first_total) -> list[int]:
    """Split into ascents; each block b satisfies a + reverse(b) = B...B."""
    out: list[int] = []
    pos = 0
    prev_len = None
    while pos < len(digits):
        ln = _ascent(digits, pos)
        block = digits[pos:pos + ln]
        total = first_total(ln) if prev_len is None else prev_len + ln - 2
        comp = [total - a for a in block]
        if any(d < 0 for d in comp):
            raise UnderdeterminedProcedure("negative digit in a mirrored block")
        out.extend(reversed(comp))
        prev_len = ln
        pos += ln
    return out


def neighbor_direct(alpha: Germ, p: int) -> Germ:
    """alpha^p by ascent arithmetic on the digits, without any graph.

    Top color ``p = k`` splits alpha into ascents whose digit sums with the
    reversed image are constant.  For ``0 < p < k`` the entries left of
    position p+1 are kept and the same rule runs on the tail; when that
    rule yields a non-germ the procedure reports itself underdetermined.
    ``p = 0`` is the tree reflection.
    """
    k = len(alpha) + 1
    if not 0 <= p <= k:
        raise ColorError(f"color {p} outside 0..{k}")
    if p == 0:
        return reflect_phi(alpha)
    if k == 1:
        return alpha
    digits = list(alpha)
    if p == k:
        padded = digits[0] == 1
        if padded:
            digits = [0] + digits
        beta = _mirror_blocks(digits, lambda ln: ln - 1)
        if padded:
            if beta[0] != 0:
                raise UnderdeterminedProcedure("padding zero did not survive")
            beta = beta[1:]
        return _checked(beta, alpha, p)
    # colors below the top keep the prefix a_{k-1} .. a_q
    q = k if p == k - 1 else p + 1
    keep = k - q  # number of leading entries left alone
    head, tail = digits[:keep], digits[keep:]
    if not tail:
        return _checked(head, alpha, p)
    a_q = head[-1] if head else 0
    beta_tail = _mirror_blocks(tail, lambda ln: ln + a_q)
    return _checked(head + beta_tail, alpha, p)


def _checked(beta, alpha: Germ, p: int) -> Germ:
    from .germs import is_germ

    beta = tuple(beta)
    if len(beta) != len(alpha) or not is_germ(beta):
        raise UnderdeterminedProcedure(
            f"color {p} from {format_germ(alpha)} produced {format_germ(beta)}, not a germ"
        )
    return beta
