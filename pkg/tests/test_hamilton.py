from functools import lru_cache
from math import comb

import pytest

from middlelevels.germs import catalan, enumerate_germs, format_germ
from middlelevels.hamilton import (
    HamiltonError,
    build_hamilton,
    cycle_length_report,
    describe_germs,
    hamilton_cycle,
    label_cycles,
    mirror_class,
    plane_class_consistency,
    read_certificate,
    root_cycle,
    root_word,
    two_factor_w01,
    verify_hamilton,
    write_certificate,
)
from middlelevels.lexical import edge_color
from middlelevels.midlevels import ResourceBoundError, word_to_str, weight
from middlelevels.treecodec import plane_classes, psi, reflect_phi

from oracles import is_hamilton_cycle, plane_tree_count


@lru_cache(maxsize=None)
def result(k):
    return build_hamilton(k)


CYCLE_COUNTS = {1: 1, 2: 1, 3: 2, 4: 3, 5: 6, 6: 14}


@pytest.mark.parametrize("k", sorted(CYCLE_COUNTS))
def test_cycle_counts_match_plane_trees(k):
    dec = result(k).decomposition
    assert len(dec.cycles) == CYCLE_COUNTS[k] == plane_tree_count(k) == len(plane_classes(k))


@pytest.mark.parametrize("k", range(1, 7))
def test_cycles_alternate_colors_and_partition_vertices(k):
    dec = result(k).decomposition
    total = 0
    for c in dec.cycles:
        seq = c.vertices
        total += len(seq)
        colors = [edge_color(a, b, k) for a, b in zip(seq, seq[1:] + seq[:1])]
        assert colors == [1, 0] * (len(seq) // 2)
        assert seq[0] == min(seq)
    assert total == 2 * comb(2 * k + 1, k)
    assert len(dec.cycle_of) == total


@pytest.mark.parametrize("k", range(1, 7))
def test_xi_even_and_germs_partitioned(k):
    dec = result(k).decomposition
    assert all(c.xi % 2 == 0 for c in dec.cycles)
    parts = dec.germ_partition()
    # a germ names a dihedral class, so mirror-image cycles share one germ set
    distinct = set(parts)
    assert sum(len(p) for p in distinct) == catalan(k)
    assert frozenset().union(*distinct) == frozenset(enumerate_germs(k))
    for c in dec.cycles:
        twins = [j for j, p in enumerate(parts) if p == parts[c.index] and j != c.index]
        assert len(twins) == (1 if c.enantiomorphic else 0)


@pytest.mark.parametrize("k", range(1, 7))
def test_every_vertex_sits_in_its_cycle_class(k):
    assert plane_class_consistency(result(k).decomposition) == []


@pytest.mark.parametrize("k", range(1, 6))
def test_zero_and_one_edges_follow_phi_and_psi(k):
    dec = result(k).decomposition
    for c in dec.cycles:
        seq, germs = c.vertices, c.germs
        for p in range(len(seq)):
            a, b = seq[p], seq[(p + 1) % len(seq)]
            ga, gb = germs[p], germs[(p + 1) % len(seq)]
            if weight(a) != k:
                a, b, ga, gb = b, a, gb, ga
            if edge_color(a, b, k) == 0:
                assert gb == reflect_phi(ga)
            else:
                assert gb == psi(ga)


def test_measured_cycle_lengths():
    assert [len(c) for c in result(3).decomposition.cycles] == [42, 28]
    assert [len(c) for c in result(4).decomposition.cycles] == [72, 144, 36]
    assert [len(c) for c in result(5).decomposition.cycles] == [110, 220, 220, 220, 110, 44]


@pytest.mark.parametrize("k", range(1, 7))
def test_length_is_full_orbit_over_symmetry(k):
    for row in cycle_length_report(result(k).decomposition):
        assert row["matches_2k(4k+2)/zeta"]
        assert not row["matches_2k(4k+1)/zeta"]


def test_xi_values_and_chirality():
    assert [c.xi for c in result(3).decomposition.cycles] == [14, 14]
    assert {c.xi for c in result(5).decomposition.cycles} == {22}
    dec6 = result(6).decomposition
    assert sorted(c.xi for c in dec6.cycles).count(0) == 4
    assert sum(c.enantiomorphic for c in dec6.cycles) == 4
    for c in dec6.cycles:
        assert mirror_class(c.label) == c.mirror_label
        assert c.enantiomorphic == (c.xi == 0)
    assert not any(c.enantiomorphic for k in range(1, 6) for c in result(k).decomposition.cycles)


def test_labels():
    labels = label_cycles(result(4).decomposition)
    assert [lab.plane_class for lab in labels] == ["01234****", "0124*3***", "014*3*2**"]
    assert [lab.distinct_germs for lab in labels] == [4, 8, 2]


HEXAGONS = {3: (28, 1), 4: (72, 2), 5: (308, 5), 6: (1066, 13)}


@pytest.mark.parametrize("k", sorted(HEXAGONS))
def test_hexagon_counts_and_selection_size(k):
    r = result(k)
    assert (len(r.hexagons), len(r.chosen)) == HEXAGONS[k]
    assert len(r.chosen) == len(r.decomposition.cycles) - 1
    assert r.digraph.connected()


@pytest.mark.parametrize("k", [3, 4, 5])
def test_hexagon_shape(k):
    dec = result(k).decomposition
    two_factor = {frozenset(e) for c in dec.cycles for e in zip(c.vertices, c.vertices[1:] + c.vertices[:1])}
    for hx in result(k).hexagons:
        ring = hx.vertices
        assert len(set(ring)) == 6
        for a, b in zip(ring, ring[1:] + ring[:1]):
            assert bin(a ^ b).count("1") == 1
        assert all(e in two_factor for e in hx.removed())
        assert not any(e in two_factor for e in hx.added())
        assert dec.cycle_of[hx.u] == dec.cycle_of[hx.v] == hx.host
        assert dec.cycle_of[hx.u2] == dec.cycle_of[hx.v2] == hx.target != hx.host
        assert edge_color(hx.u, hx.v, k) == hx.color >= 2


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_chosen_hexagons_edge_disjoint(k):
    chosen = result(k).chosen
    seen = set()
    for hx in chosen:
        assert not (seen & hx.edges())
        seen |= hx.edges()


def test_root_cycle_holds_null_germ():
    dec = result(5).decomposition
    i = root_cycle(dec)
    assert (0, 0, 0, 0) in dec.cycles[i].germs
    assert word_to_str(root_word(5), 11) == "00000011111"


@pytest.mark.parametrize("k", range(1, 7))
def test_hamilton_cycles(k):
    seq = hamilton_cycle(k)
    assert len(seq) == 2 * comb(2 * k + 1, k)
    assert seq[0] == root_word(k)
    assert is_hamilton_cycle(seq, k)
    assert verify_hamilton(k, seq).length == len(seq)


def test_verifier_rejects_bad_sequences():
    seq = hamilton_cycle(3)
    with pytest.raises(HamiltonError, match="length"):
        verify_hamilton(3, seq[:-1])
    with pytest.raises(HamiltonError, match="repeated"):
        verify_hamilton(1, [1, 3, 1, 3, 1, 3])
    swapped = seq[:]
    swapped[1], swapped[2] = swapped[2], swapped[1]
    with pytest.raises(HamiltonError, match="differ"):
        verify_hamilton(3, swapped)
    with pytest.raises(HamiltonError, match="weight"):
        verify_hamilton(1, [0, 1, 3, 2, 6, 4])


def test_certificate_roundtrip(tmp_path):
    seq = hamilton_cycle(4)
    path = tmp_path / "k4.txt"
    write_certificate(seq, 4, path)
    lines = path.read_text().splitlines()
    assert len(lines) == len(seq) + 1 and lines[0] == lines[-1]
    assert read_certificate(path) == (4, seq)


def test_certificate_format_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0011\n0111\n0011\n")
    with pytest.raises(HamiltonError, match="odd"):
        read_certificate(path)
    path.write_text("00011\n00111\n")
    with pytest.raises(HamiltonError, match="repeat"):
        read_certificate(path)


def test_size_bound():
    with pytest.raises(ResourceBoundError):
        two_factor_w01(8)


def test_describe_germs():
    assert describe_germs([(1, 2), (0, 0)]) == "12 00"
    assert describe_germs([()]) == "-"
    assert format_germ(()) == ""
