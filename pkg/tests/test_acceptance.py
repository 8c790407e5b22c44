"""Acceptance criteria 1-11, one or more tests each, tagged with ``criterion(n)``.

The terminal summary prints a PASS/FAIL line per criterion.  A criterion whose
part is known to be unattainable carries a strict xfail for that part, so the
summary reports FAIL while the suite stays green.
"""

import time
from math import comb

import pytest

from middlelevels.germs import catalan, enumerate_germs, format_germ, parse_germ
from middlelevels.hamilton import build_hamilton, hamilton_cycle, two_factor_w01, verify_hamilton
from middlelevels.lexical import (
    cat_table,
    color_upper,
    edge_color,
    lexical_color_formula,
    lexical_colors,
    neighbor_germ,
    one_factorization,
    s0_sequence,
    s1_sequence,
)
from middlelevels.midlevels import (
    build_rk,
    complement_reverse,
    horizontal_multiplicities,
    level,
    necklaces,
    support,
    translate,
)
from middlelevels.treecodec import (
    aleph,
    castle,
    format_code,
    format_subscripted,
    hat_theta,
    parse_code,
    plane_classes,
    theta,
    theta_reroot,
    uncastle,
    uncastle_trace,
)
from middlelevels.verification import corrected, golden

from oracles import cardinality_color, is_hamilton_cycle, plane_tree_count

crit = pytest.mark.criterion


@crit(1)
def test_c01_catalan_counts():
    t0 = time.perf_counter()
    counts = [len(enumerate_germs(k)) for k in range(1, 13)]
    elapsed = time.perf_counter() - t0
    assert counts == [catalan(k) for k in range(1, 13)]
    assert counts[-1] == 208012
    assert elapsed < 5


@crit(2)
def test_c02_tree_codes():
    rows = golden()["table1"]
    assert [len(rows[k]) for k in ("2", "3", "4")] == [2, 5, 14]
    for k, pairs in rows.items():
        for germ, code in pairs:
            assert format_code(castle(parse_germ(germ, int(k)))) == code


@crit(3)
def test_c03_theta_words():
    for k, recs in corrected("table2").items():
        for rec in recs:
            a = parse_germ(rec["germ"], int(k))
            assert theta(a) == rec["theta"]
            assert format_subscripted(hat_theta(a)) == rec["hat_theta"]
            assert aleph(theta(a)) == rec["aleph"]


@crit(4)
def test_c04_roundtrip():
    for k in range(1, 10):
        for a in enumerate_germs(k):
            assert uncastle(castle(a)) == a
    assert len(enumerate_germs(9)) == 4862


@crit(4)
def test_c04_uncastle_trace():
    want = golden()["table3"]
    got = [[format_code(c), format_germ(a)] for c, a in uncastle_trace(parse_code(want[0][0]))]
    assert got == want
    assert len(got) == 7


@crit(5)
def test_c05_path_equals_formula():
    for k in range(1, 7):
        n = 2 * k + 1
        for c in necklaces(k, k):
            s = support(c.word, n)
            for x, col in lexical_colors(c.word, k).items():
                assert lexical_color_formula(s, x, n) == col == cardinality_color(set(s), x, n)


@crit(5)
def test_c05_endpoints_agree():
    for k in range(1, 6):
        for w in level(k, k):
            for x, col in lexical_colors(w, k).items():
                assert color_upper(w | 1 << x, x, k) == col


@crit(6)
def test_c06_one_factorization():
    for k in range(1, 7):
        n = 2 * k + 1
        g = one_factorization(k)
        assert len(g.edges) == (k + 1) * comb(n, k)
        for c in range(k + 1):
            ends = [v for a, b, col in g.edges if col == c for v in (a, b)]
            assert len(ends) == len(set(ends)) == len(g.vertices)
        for a, b, col in g.edges:
            # rotation orbit and skew reflection partner share the colour
            assert edge_color(translate(a, 1, n), translate(b, 1, n), k) == col
            assert edge_color(complement_reverse(b, n), complement_reverse(a, n), k) == col


@crit(7)
def test_c07_adjacency_tables():
    for k, rows in golden()["table4"].items():
        t = cat_table(int(k))
        for (alpha, nbrs), row in zip(t.rows, rows):
            want = row[1:] if k == "3" else row[2:]
            assert [format_germ(b) for b in nbrs] == want
    for key, k in (("table5", 4), ("table6", 5)):
        assert cat_table(k).to_csv().splitlines()[1:] == [",".join(map(str, r)) for r in corrected(key)]
        assert [cat_table(k).footer(c) for c in range(k, -1, -1)] == golden()[key + "_footer"]


@crit(7)
def test_c07_entry_preservation():
    for k in range(2, 9):
        t = cat_table(k)
        ranks = {g: m for m, (g, _) in enumerate(t.rows)}
        for c in range(k + 1):
            keep = {k: [k - 1], k - 1: []}.get(c, [c + 1])
            for (alpha, _), beta in zip(t.rows, t.column(c)):
                assert beta in ranks
                for j in keep:
                    assert alpha[k - 1 - j] == beta[k - 1 - j]


@crit(7)
def test_c07_sequences():
    assert s0_sequence(14) == [0, 1, 3, 2, 4, 7, 9, 5, 8, 6, 12, 11, 10, 13]
    assert s1_sequence(14) == [1, 0, 0, 3, 1, 0, 1, 8, 7, 12, 3, 2, 9, 4]
    for k in range(2, 9):
        p = s0_sequence(catalan(k))
        assert [p[p[i]] for i in range(len(p))] == list(range(len(p)))


@crit(7)
def test_c07_prefix_stability():
    # second-highest colour column, indexed relative to the larger table
    for k in range(2, 8):
        assert cat_table(k + 1).rank_column((k + 1) - 2)[: catalan(k)] == cat_table(k).rank_column(k - 1)


@crit(8)
def test_c08_k4_pairs_and_fixed_points():
    g = lambda s: parse_germ(s, 4)  # noqa: E731
    for a, b in (("001", "100"), ("011", "110"), ("120", "012"), ("112", "121")):
        assert theta_reroot(g(a)) == g(b) and theta_reroot(g(b)) == g(a)
    fixed = [format_germ(a) for a in enumerate_germs(4) if theta_reroot(a) == a]
    assert fixed == ["000", "010", "101", "111", "122", "123"]


@crit(8)
def test_c08_involution_and_conjugation():
    for k in range(1, 7):
        for a in enumerate_germs(k):
            b = theta_reroot(a)
            assert theta_reroot(b) == a
            for i in range(1, k):
                assert neighbor_germ(b, i) == theta_reroot(neighbor_germ(a, k - i))


@crit(8)
@pytest.mark.xfail(strict=True, reason="the expected image contradicts atom reversal of its own input")
def test_c08_worked_example():
    assert format_germ(theta_reroot(parse_germ("0123223442310121"))) == "1120112234342320"


@crit(9)
def test_c09_w01_structure():
    counts = []
    for k in range(1, 7):
        dec = two_factor_w01(k)
        counts.append(len(dec.cycles))
        assert len(dec.cycles) == len(plane_classes(k)) == plane_tree_count(k)
        for c in dec.cycles:
            seq = c.vertices
            cols = [edge_color(a, b, k) for a, b in zip(seq, seq[1:] + seq[:1])]
            assert cols == [1, 0] * (len(seq) // 2)
            assert c.xi % 2 == 0
    assert counts == [1, 1, 2, 3, 6, 14]


@crit(10)
def test_c10_hamilton_k1_to_6():
    t0 = time.perf_counter()
    lengths = []
    for k in range(1, 7):
        seq = hamilton_cycle(k)
        assert verify_hamilton(k, seq).length == len(seq)
        assert is_hamilton_cycle(seq, k)
        lengths.append(len(seq))
    assert lengths == [6, 20, 70, 252, 924, 3432]
    assert time.perf_counter() - t0 < 60


@crit(10)
def test_c10_hamilton_k7():
    t0 = time.perf_counter()
    r = build_hamilton(7)
    assert len(r.decomposition.cycles) == 34
    assert verify_hamilton(7, r.cycle).length == 12870
    assert is_hamilton_cycle(r.cycle, 7)
    assert time.perf_counter() - t0 < 180


@crit(11)
def test_c11_rk():
    from middlelevels.lexical import colored_rk

    r2 = build_rk(2)
    assert len(r2.vertices) == 2
    assert sum(a != b for a, b, _ in r2.edges) == 1
    assert all(len(r2.loops(v)) == 2 for v in r2.vertices)
    c2 = colored_rk(2)
    assert [c for a, b, c in c2.edges if a != b] == [1]
    for v in c2.vertices:
        assert sorted(c for a, b, c in c2.edges if a == b == v) == [0, 2]
    for k in range(1, 9):
        assert len(build_rk(k).vertices) == catalan(k)
    for k in range(1, 8):
        assert max(horizontal_multiplicities(k).values()) <= 2
