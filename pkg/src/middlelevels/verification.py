"""Golden-table diffs and invariant sweeps behind ``middlelevels verify``."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from math import comb

from .germs import catalan, enumerate_germs, format_germ, germ_tree, parse_germ
from .hamilton import hamilton_cycle, two_factor_w01, verify_hamilton, HamiltonError
from .lexical import (
    cat_table,
    color_upper,
    lexical_color,
    lexical_color_formula,
    lexical_colors,
    neighbor_germ,
    s0_sequence,
    s1_sequence,
)
from .midlevels import complement_reverse, level, support, translate
from .treecodec import (
    castle,
    format_code,
    format_subscripted,
    hat_theta,
    aleph,
    parse_code,
    plane_classes,
    theta,
    theta_reroot,
    uncastle,
    uncastle_trace,
)

VERIFY_LIMIT = 6


@dataclass(frozen=True)
class Failure:
    module: str
    invariant: str
    witness: str

    def __str__(self) -> str:
        return f"[{self.module}] {self.invariant}: {self.witness}"


@lru_cache(maxsize=1)
def golden() -> dict:
    """Golden tables exactly as shipped, plus the errata list."""
    text = resources.files("middlelevels").joinpath("data/tables.json").read_text()
    return json.loads(text)


def corrected(table: str) -> dict | list:
    """A golden table with the known misprints replaced by their corrections."""
    data = json.loads(json.dumps(golden()[table]))
    for fix in golden()["errata"]:
        if fix["table"] != table:
            continue
        if table == "table6":
            row = data[fix["row"]]
            col = 2 + (5 - int(fix["column"].split("_")[1]))
            assert row[col] == fix["printed"]
            row[col] = fix["corrected"]
        elif table == "table2":
            for rec in data[str(fix["k"])]:
                if rec["germ"] == fix["germ"]:
                    assert rec[fix["field"]] == fix["printed"]
                    rec[fix["field"]] = fix["corrected"]
    return data


def _germ(text: str, k: int):
    return parse_germ(text, k)


def check_tables() -> list[Failure]:
    out: list[Failure] = []
    g = golden()
    for k, rows in g["table1"].items():
        for germ, code in rows:
            got = format_code(castle(_germ(germ, int(k))))
            if got != code:
                out.append(Failure("treecodec", f"tree codes k={k}", f"{germ}: {got} != {code}"))
    for k, rows in corrected("table2").items():
        for rec in rows:
            a = _germ(rec["germ"], int(k))
            got = {
                "germ": rec["germ"],
                "theta": theta(a),
                "hat_theta": format_subscripted(hat_theta(a)),
                "hat_aleph": format_subscripted(
                    [("0" if b == "1" else "1", s) for b, s in reversed(hat_theta(a))]
                ),
                "aleph": aleph(theta(a)),
            }
            if got != rec:
                out.append(Failure("treecodec", f"theta/aleph k={k}", f"{rec['germ']}: {got} != {rec}"))
    trace = uncastle_trace(parse_code(g["table3"][0][0]))
    got3 = [[format_code(c), format_germ(a)] for c, a in trace]
    if got3 != g["table3"]:
        out.append(Failure("treecodec", "uncastling trace", f"{got3} != {g['table3']}"))
    for k, rows in g["table4"].items():
        k = int(k)
        t = cat_table(k)
        for (alpha, nbrs), row in zip(t.rows, rows):
            want = row[1:] if k == 3 else row[2:]
            got = [format_germ(b) for b in nbrs]
            if format_germ(alpha) != row[0] or got != want:
                out.append(Failure("lexical", f"adjacency k={k}", f"{row[0]}: {got} != {want}"))
    for key, k in (("table5", 4), ("table6", 5)):
        t = cat_table(k)
        rows = corrected(key)
        for (alpha, nbrs), row in zip(t.rows, rows):
            got = [format_germ(alpha)] + [format_germ(b) for b in nbrs]
            if got != row[1:]:
                out.append(Failure("lexical", f"{key} row {row[0]}", f"{got} != {row[1:]}"))
        foot = [t.footer(c) for c in range(k, -1, -1)]
        if foot != g[key + "_footer"]:
            out.append(Failure("lexical", f"{key} footer", f"{foot} != {g[key + '_footer']}"))
    if germ_tree(4) != g["germ_tree_k4"]:
        out.append(Failure("germs", "germ tree k=4", germ_tree(4)))
    if s0_sequence(14) != g["s0_prefix"]:
        out.append(Failure("lexical", "S0 prefix", str(s0_sequence(14))))
    if s1_sequence(14) != g["s1_prefix"]:
        out.append(Failure("lexical", "S1 prefix", str(s1_sequence(14))))
    return out


def check_invariants(k: int) -> list[Failure]:
    """Exhaustive invariant sweep at one k."""
    out: list[Failure] = []
    n = 2 * k + 1
    germs = enumerate_germs(k)
    if len(germs) != catalan(k):
        out.append(Failure("germs", "Catalan count", f"k={k}: {len(germs)}"))
    for a in germs:
        if uncastle(castle(a)) != a:
            out.append(Failure("treecodec", "roundtrip", format_germ(a)))
    for w in level(k, k):
        s = support(w, n)
        for x, c in lexical_colors(w, k).items():
            if lexical_color_formula(s, x, n) != c:
                out.append(Failure("lexical", "path/formula", f"w={w} x={x}"))
            up = w | 1 << x
            if color_upper(up, x, k) != c:
                out.append(Failure("lexical", "upper/lower endpoint", f"w={w} x={x}"))
            if lexical_color(translate(w, 1, n), (x + 1) % n, k) != c:
                out.append(Failure("lexical", "rotation constancy", f"w={w} x={x}"))
            # reflected partner edge: complemented reversal of both endpoints
            lo = complement_reverse(up, n)
            if lexical_color(lo, n - 1 - x, k) != c:
                out.append(Failure("lexical", "reflection constancy", f"w={w} x={x}"))
        if sorted(lexical_colors(w, k).values()) != list(range(k + 1)):
            out.append(Failure("lexical", "proper coloring", f"w={w}"))
    if k >= 2:
        t = cat_table(k)
        for c in range(k + 1):
            if sorted(t.rank_column(c)) != list(range(len(germs))):
                out.append(Failure("lexical", "column permutation", f"k={k} colour {c}"))
        for a in germs:
            b = theta_reroot(a)
            if theta_reroot(b) != a:
                out.append(Failure("treecodec", "reroot involution", format_germ(a)))
            for i in range(1, k):
                if neighbor_germ(b, i) != theta_reroot(neighbor_germ(a, k - i)):
                    out.append(Failure("treecodec", "reroot conjugation", f"{format_germ(a)} i={i}"))
    dec = two_factor_w01(k, unsafe=True)
    if len(dec.cycles) != len(plane_classes(k)):
        out.append(Failure("hamilton", "cycle count", f"{len(dec.cycles)} != {len(plane_classes(k))}"))
    for c in dec.cycles:
        if c.xi % 2:
            out.append(Failure("hamilton", "xi even", f"cycle {c.index}"))
    try:
        seq = hamilton_cycle(k, unsafe=True)
        verify_hamilton(k, seq)
        if len(seq) != 2 * comb(n, k):
            out.append(Failure("hamilton", "length", str(len(seq))))
    except HamiltonError as exc:
        out.append(Failure("hamilton", "hamilton cycle", str(exc)))
    return out
