"""Tree codes, ordered trees and the bijections between them and k-germs.

A tree code is a tuple of ``2k+1`` symbols: the colors ``0..k`` once each and
``k`` asterisks (stored as ``STAR = -1``).  It is the depth-first reading of an
ordered tree whose nodes are labelled in right-to-left breadth-first order:
a label on every descent, an asterisk on every ascent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .germs import (
    Germ,
    GermError,
    castling_level,
    enumerate_germs,
    format_germ,
    is_germ,
    parent,
)

STAR = -1
Code = tuple[int, ...]
# nested tuples: a node is the tuple of its children, left to right
Shape = tuple

_SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyz"


class CodeError(ValueError):
    """A symbol string that is not the tree code of any ordered tree."""


# ---------------------------------------------------------------- text form


def format_code(code: Sequence[int]) -> str:
    return "".join("*" if s == STAR else _SYMBOLS[s] for s in code)


def parse_code(text: str) -> Code:
    out = []
    for ch in text.strip():
        if ch == "*":
            out.append(STAR)
        elif ch.lower() in _SYMBOLS:
            out.append(_SYMBOLS.index(ch.lower()))
        else:
            raise CodeError(f"bad symbol {ch!r} in tree code {text!r}")
    return tuple(out)


def code_k(code: Sequence[int]) -> int:
    return (len(code) - 1) // 2


# ---------------------------------------------------------------- castling


def root_code(k: int) -> Code:
    return tuple(range(k + 1)) + (STAR,) * k


def castle_step(code: Code, i: int) -> Code:
    """Split ``code`` as W|X|Y|Z (|W| = |Z| = i) and return W|Y|X|Z.

    X starts at the first interior symbol Omega and Y at the color Omega+1.
    """
    k = code_k(code)
    if not 1 <= i <= k - 1:
        raise CodeError(f"castling level {i} outside 1..{k - 1}")
    w, u, z = code[:i], code[i:len(code) - i], code[len(code) - i:]
    omega = u[0]
    if omega == STAR:
        raise CodeError("interior of the code starts with an asterisk")
    try:
        cut = u.index(omega + 1)
    except ValueError:
        raise CodeError(f"color {omega + 1} does not occur after {omega}") from None
    return w + u[cut:] + u[:cut] + z


@lru_cache(maxsize=None)
def castle(alpha: Germ) -> Code:
    """The tree code F(alpha), built from the parent's code by one castling step."""
    k = len(alpha) + 1
    if not any(alpha):
        if not is_germ(alpha):
            raise GermError(f"{format_germ(alpha)!r} is not a germ")
        return root_code(k)
    if not is_germ(alpha):
        raise GermError(f"{format_germ(alpha)!r} is not a germ")
    return castle_step(castle(parent(alpha)), castling_level(alpha))


def uncastle_trace(code: Code) -> list[tuple[Code, Germ]]:
    """Undo castling steps down to the root code.

    Returns the chain ``[(code, germ), (parent code, parent germ), ...,
    (root code, null germ)]``.  Each step reads the castling level off the
    maximal prefix ``0 1 ... i-1``, swaps the interior back, and decrements
    the germ entry at that level.
    """
    code = tuple(code)
    validate_code(code)
    k = code_k(code)
    target = root_code(k)
    levels: list[int] = []
    codes = [code]
    cur = code
    while cur != target:
        i = 0
        while i < len(cur) and cur[i] == i:
            i += 1
        if not 1 <= i <= k - 1:
            raise CodeError(f"cannot uncastle {format_code(cur)}: consecutive prefix has length {i}")
        w, u, z = cur[:i], cur[i:len(cur) - i], cur[len(cur) - i:]
        head = u[0]
        try:
            cut = u.index(head - 1)
        except ValueError:
            raise CodeError(f"cannot uncastle {format_code(cur)}: color {head - 1} missing") from None
        cur = w + u[cut:] + u[:cut] + z
        levels.append(i)
        codes.append(cur)
    # rebuild germs from the root upward
    germ = [0] * (k - 1)
    germs: list[Germ] = [tuple(germ)]
    for i in reversed(levels):
        germ[k - 1 - i] += 1
        germs.append(tuple(germ))
    germs.reverse()
    return list(zip(codes, germs))


def uncastle(code: Code) -> Germ:
    alpha = uncastle_trace(code)[0][1]
    if not is_germ(alpha):
        raise CodeError(f"{format_code(code)} does not uncastle to a germ")
    return alpha


# ---------------------------------------------------------------- ordered trees


@dataclass(frozen=True)
class OrderedTree:
    """Ordered rooted tree with nodes named by right-to-left BFS labels.

    ``children[v]`` lists the labels of the children of node ``v`` from left
    to right; the root is node 0.
    """

    children: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.children) - 1

    @property
    def root(self) -> int:
        return 0

    def shape(self) -> Shape:
        def rec(v: int) -> Shape:
            return tuple(rec(c) for c in self.children[v])

        return rec(0)

    def parents(self) -> dict[int, int]:
        return {c: v for v, cs in enumerate(self.children) for c in cs}

    def leaves(self) -> int:
        """Number of degree-1 nodes, the root included when it has one child."""
        deg = [len(cs) for cs in self.children]
        for v in range(1, len(deg)):
            deg[v] += 1
        return sum(1 for d in deg if d == 1)

    def to_dot(self, name: str = "T") -> str:
        lines = [f"digraph {name} {{", "  ordering=out;"]
        for v in range(len(self.children)):
            lines.append(f'  v{v} [label="v{v}"];')
        for v, cs in enumerate(self.children):
            for pos, c in enumerate(cs):
                lines.append(f"  v{v} -> v{c} [ordinal={pos}];")
        lines.append("}")
        return "\n".join(lines)


def tree_from_shape(shape: Shape) -> OrderedTree:
    """Label a nested-tuple shape by right-to-left breadth-first search."""
    labels: list[Shape] = []
    child_shapes: list[list[int]] = []
    queue = deque([(shape, None)])
    # queue holds (subtree, parent label); ids are assigned on pop
    while queue:
        node, par = queue.popleft()
        me = len(labels)
        labels.append(node)
        child_shapes.append([])
        if par is not None:
            child_shapes[par].append(me)
        for sub in reversed(node):
            queue.append((sub, me))
    # children were appended right-to-left
    return OrderedTree(tuple(tuple(reversed(cs)) for cs in child_shapes))


def shape_of_code(code: Sequence[int]) -> Shape:
    """Parse the depth-first grammar; raises CodeError on bad nesting."""
    code = tuple(code)
    if not code or code[0] == STAR:
        raise CodeError("a tree code starts with a color")
    stack: list[list] = [[]]
    for pos, s in enumerate(code[1:], start=1):
        if s == STAR:
            if len(stack) == 1:
                raise CodeError(f"prefix discipline violated at position {pos}: ascent above the root")
            done = stack.pop()
            stack[-1].append(tuple(done))
        else:
            stack.append([])
    if len(stack) != 1:
        raise CodeError("prefix discipline violated: code ends below the root")

    def freeze(x):
        return tuple(freeze(c) for c in x)

    return freeze(stack[0])


def code_of_tree(tree: OrderedTree) -> Code:
    out: list[int] = []

    def dfs(v: int) -> None:
        out.append(v)
        for c in tree.children[v]:
            dfs(c)
            out.append(STAR)

    dfs(0)
    return tuple(out)


def validate_code(code: Sequence[int]) -> None:
    """Raise CodeError naming the first violated tree-code invariant."""
    code = tuple(code)
    if len(code) % 2 == 0 or len(code) < 1:
        raise CodeError("a tree code has odd length 2k+1")
    k = code_k(code)
    colors = [s for s in code if s != STAR]
    if sorted(colors) != list(range(k + 1)):
        raise CodeError(f"colors must be 0..{k} once each")
    if code[0] != 0:
        raise CodeError("the first symbol must be color 0")
    depth = 0
    for pos, s in enumerate(code):
        depth += -1 if s == STAR else 1
        if pos < len(code) - 1 and depth <= 0:
            raise CodeError(f"prefix discipline violated at position {pos}")
    if k >= 1:
        ks = code.index(k)
        if ks + 1 >= len(code) or code[ks + 1] != STAR:
            raise CodeError(f"'{format_code((k,))}*' must occur")
    for a, b in zip(code, code[1:]):
        if a != STAR and b != STAR and b <= a:
            raise CodeError(f"color {b} right after {a} must be larger")
    tree = tree_from_shape(shape_of_code(code))
    if code_of_tree(tree) != code:
        raise CodeError("labels are not in right-to-left breadth-first order")


def tree_of_code(code: Sequence[int]) -> OrderedTree:
    validate_code(code)
    return tree_from_shape(shape_of_code(code))


def tree_of_germ(alpha: Germ) -> OrderedTree:
    return tree_of_code(castle(alpha))


def germ_of_shape(shape: Shape) -> Germ:
    return uncastle(code_of_tree(tree_from_shape(shape)))


# ---------------------------------------------------------------- binary words


def theta(alpha: Germ) -> str:
    """Binary word of weight k: colors become 0, asterisks 1."""
    return "".join("1" if s == STAR else "0" for s in castle(alpha))


def hat_theta(alpha: Germ) -> list[tuple[str, str]]:
    """theta(alpha) with each bit carrying its code symbol as subscript."""
    return [("1" if s == STAR else "0", format_code((s,))) for s in castle(alpha)]


def hat_aleph(alpha: Germ) -> list[tuple[str, str]]:
    """Complemented reversal of hat_theta, subscripts travelling with bits."""
    return [("0" if b == "1" else "1", sub) for b, sub in reversed(hat_theta(alpha))]


def format_subscripted(pairs: Sequence[tuple[str, str]]) -> str:
    return "".join(f"{b}_{s}" for b, s in pairs)


def aleph(word: str) -> str:
    """Complemented reversal of a binary string."""
    return "".join("0" if b == "1" else "1" for b in reversed(word))


# ---------------------------------------------------------------- rotations and reflections


def rotate_shape(shape: Shape) -> Shape:
    """Make the leftmost child of the root the new root.

    The old root becomes the last (rightmost) child of the new root and keeps
    its remaining children.
    """
    if not shape:
        return shape
    first, rest = shape[0], shape[1:]
    return first + (rest,)


def root_rotate(tree: OrderedTree) -> OrderedTree:
    return tree_from_shape(rotate_shape(tree.shape()))


def mirror_shape(shape: Shape) -> Shape:
    return tuple(mirror_shape(c) for c in reversed(shape))


def _code_key(code: Code) -> tuple[int, ...]:
    # symbol order 0 < 1 < ... < k < *
    big = len(code)
    return tuple(big if s == STAR else s for s in code)


def rotation_orbit(tree: OrderedTree) -> list[OrderedTree]:
    """Trees visited by repeated root rotation until the start recurs."""
    start = tree.shape()
    orbit = [tree]
    cur = rotate_shape(start)
    while cur != start:
        orbit.append(tree_from_shape(cur))
        cur = rotate_shape(cur)
    return orbit


def plane_canonical(tree: OrderedTree) -> Code:
    """Least code over the root-rotation orbit: the plane-tree class label."""
    return min((code_of_tree(t) for t in rotation_orbit(tree)), key=_code_key)


def plane_classes(k: int) -> dict[Code, list[Germ]]:
    """Group all k-germs by the plane class of their trees."""
    out: dict[Code, list[Germ]] = {}
    for g in enumerate_germs(k):
        out.setdefault(plane_canonical(tree_of_germ(g)), []).append(g)
    return out


def reflect_phi(alpha: Germ) -> Germ:
    """Germ of the mirror image of alpha's tree."""
    return germ_of_shape(mirror_shape(tree_of_germ(alpha).shape()))


def rotate_germ(alpha: Germ) -> Germ:
    return germ_of_shape(rotate_shape(tree_of_germ(alpha).shape()))


def psi(alpha: Germ) -> Germ:
    """Reflection followed by one root rotation."""
    return rotate_germ(reflect_phi(alpha))


def dyck_split(code: Code) -> tuple[Code, Code]:
    """Write a code as ``0 v 1 u *`` and return (v, u)."""
    if len(code) == 1:
        raise CodeError("the one-node tree has no 0v1u* form")
    one = code.index(1)
    if code[0] != 0 or code[-1] != STAR:
        raise CodeError("code is not of the form 0v1u*")
    v, u = code[1:one], code[one + 1:-1]
    for word in (v, u):
        depth = 0
        for s in word:
            depth += -1 if s == STAR else 1
            if depth < 0:
                raise CodeError("inner part is not balanced")
        if depth:
            raise CodeError("inner part is not balanced")
    return v, u


# ---------------------------------------------------------------- re-rooting from v_k


def theta_reroot(alpha: Germ) -> Germ:
    """Germ of alpha's tree when its labels are read from v_k instead of v_0.

    Computed on binary words: the class of the reversed theta(alpha) word.
    This is an involution and swaps colour i with colour k - i.
    """
    from .lexical import germ_of_word  # lexical builds on this module

    check = castle(alpha)  # validates alpha
    w = 0
    for i, s in enumerate(reversed(check)):
        if s == STAR:
            w |= 1 << i
    return germ_of_word(w, len(alpha) + 1)


class AtomError(ValueError):
    pass


@dataclass(frozen=True)
class AtomDecomposition:
    """A germ cut into base pieces (spelling 1..max) and parenthesized atoms.

    ``tokens`` lists ``(is_base, digits)`` left to right.
    """

    tokens: tuple[tuple[bool, tuple[int, ...]], ...]

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(d for is_base, p in self.tokens if is_base for d in p)

    @property
    def atoms(self) -> list[tuple[int, ...]]:
        return [p for is_base, p in self.tokens if not is_base]

    @property
    def positions(self) -> list[int]:
        """Start index of each atom inside the germ."""
        out, at = [], 0
        for is_base, p in self.tokens:
            if not is_base:
                out.append(at)
            at += len(p)
        return out

    def reassemble(self) -> Germ:
        return tuple(d for _, p in self.tokens for d in p)

    def __str__(self) -> str:
        return "".join(format_germ(p) if b else f"({format_germ(p)})" for b, p in self.tokens)


def _runs(digits: Sequence[int]) -> list[tuple[int, ...]]:
    """Maximal strictly increasing runs, with a leading 0 split off as its own run."""
    runs: list[list[int]] = []
    for d in digits:
        if runs and d > runs[-1][-1]:
            runs[-1].append(d)
        else:
            runs.append([d])
    out = []
    for r in runs:
        if r[0] == 0 and len(r) > 1:
            out.append((0,))
            out.append(tuple(r[1:]))
        else:
            out.append(tuple(r))
    return out


def _whole_piece_bases(runs: list[tuple[int, ...]], top: int) -> list[tuple[int, ...]]:
    found = []

    def rec(start: int, reached: int, chosen: list[int]) -> None:
        if reached == top:
            found.append(tuple(chosen))
            return
        for j in range(start, len(runs)):
            r = runs[j]
            if r[0] == reached + 1 and r[-1] <= top:
                rec(j + 1, r[-1], chosen + [j])

    rec(0, 0, [])
    return found


def atoms(alpha: Germ) -> AtomDecomposition:
    """Split alpha into a base string 1..max and atoms.

    Atoms are lone 0s or maximal strictly increasing substrings not starting
    with 0.  The base is made of whole atoms, choosing the rightmost such
    placement.  Some germs (1223 is the smallest) admit no such placement;
    there the base is taken digit by digit from the right and the atoms are
    cut from what remains.
    """
    alpha = tuple(alpha)
    if not is_germ(alpha):
        raise GermError(f"{format_germ(alpha)!r} is not a germ")
    top = max(alpha, default=0)
    runs = _runs(alpha)
    if top == 0:
        return AtomDecomposition(tuple((False, r) for r in runs))
    bases = _whole_piece_bases(runs, top)
    if bases:
        pick = set(max(bases, key=lambda c: tuple(reversed(c))))
        return AtomDecomposition(tuple((j in pick, r) for j, r in enumerate(runs)))
    # fallback: rightmost digits spelling top, top-1, ..., 1
    chosen = set()
    pos = len(alpha)
    for v in range(top, 0, -1):
        pos = max(p for p in range(pos) if alpha[p] == v)
        chosen.add(pos)
    tokens: list[tuple[bool, tuple[int, ...]]] = []
    i = 0
    while i < len(alpha):
        j = i
        flag = i in chosen
        while j < len(alpha) and (j in chosen) == flag and (j == i or not flag or alpha[j] == alpha[j - 1] + 1):
            j += 1
        seg = alpha[i:j]
        if flag:
            tokens.append((True, seg))
        else:
            tokens.extend((False, r) for r in _runs(seg))
        i = j
    return AtomDecomposition(tuple(tokens))


def theta_reroot_atoms(alpha: Germ) -> Germ:
    """theta_reroot by atom surgery alone, without trees or words.

    The token sequence (atoms and base pieces) is reversed; base digits are
    pulled forward only where an atom would otherwise break the growth rule.
    Exact for k <= 4; from k = 5 on it departs from ``theta_reroot`` on a
    growing share of germs, which the tests measure.
    """
    dec = atoms(alpha)
    top = max(alpha, default=0)
    if top == 0:
        return tuple(alpha)
    rev = dec.tokens[::-1]
    sizes = [len(p) for is_base, p in rev if is_base]
    out: list[int] = []
    nxt = 1  # next base digit to place
    slot = 0
    for is_base, p in rev:
        if is_base:
            take = min(sizes[slot], top + 1 - nxt)
            out.extend(range(nxt, nxt + take))
            nxt += take
            slot += 1
            continue
        while (out[-1] if out else 0) < p[0] - 1 and nxt <= top:
            out.append(nxt)
            nxt += 1
        out.extend(p)
    out.extend(range(nxt, top + 1))
    beta = tuple(out)
    if len(beta) != len(alpha) or not is_germ(beta):
        raise AtomError(f"atom reversal of {format_germ(alpha)} gives {format_germ(beta)}, not a germ")
    return beta
