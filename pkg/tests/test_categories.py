import math
from itertools import product

import pytest

from haarspace.categories import (
    INF, MATCH_NC2, MATCH_P2, MATCH_PEVEN, MATCH_NCEVEN, NC2, NCEVEN, NCEVEN_MINUS, NCEVEN_S, P2,
    PEVEN, PEVEN_S, TAGS, CategoryId, QuantumFamily, SizeLimitError, axioms_check, contains,
    enumerate_category, family_category, uniformity_check, uniformity_violations,
)
from haarspace.partitions import Partition, is_noncrossing


def cat(tag, s=None):
    return CategoryId(tag, s)


def all_words(n):
    return ["".join(w) for w in product("wb", repeat=n)]


def test_match_examples():
    assert contains(cat(MATCH_NC2), Partition.parse("[[1,2]]", "wb"))
    assert not contains(cat(MATCH_NC2), Partition.parse("[[1,2]]", "ww"))
    for word in all_words(4):
        assert contains(cat(PEVEN_S, 2), Partition.parse("[[1,2,3,4]]", word))


def test_enumeration_examples():
    assert len(enumerate_category(cat(P2), "wwww")) == 3
    assert len(enumerate_category(cat(NC2), "wwww")) == 2
    assert len(enumerate_category(cat(NC2), "www")) == 0
    assert len(enumerate_category(cat(PEVEN), "wwww")) == 4
    assert len(enumerate_category(cat(MATCH_NC2), "wbwb")) == 2
    assert len(enumerate_category(cat(MATCH_NC2), "wwbb")) == 1


def test_size_limit():
    with pytest.raises(SizeLimitError):
        enumerate_category(cat(P2), "w" * 12)


@pytest.mark.parametrize("k", range(5))
def test_pairing_counts(k):
    assert len(enumerate_category(cat(NC2), "w" * 2 * k)) == math.comb(2 * k, k) // (k + 1)
    assert len(enumerate_category(cat(P2), "w" * 2 * k)) == math.prod(range(1, 2 * k, 2))


def test_enumeration_sorted_and_colored():
    for w in all_words(4):
        parts = enumerate_category(cat(MATCH_PEVEN), w)
        assert [p.blocks for p in parts] == sorted(p.blocks for p in parts)
        assert all(p.lower == w for p in parts)


def test_colorblind_ignores_colors():
    base = enumerate_category(cat(PEVEN), "wwwwww")
    for w in all_words(6):
        assert [p.blocks for p in enumerate_category(cat(PEVEN), w)] == [p.blocks for p in base]


def test_family_category():
    assert family_category(QuantumFamily("O")) == cat(P2)
    assert family_category(QuantumFamily("Uplus")) == cat(MATCH_NC2)
    assert family_category(QuantumFamily("HsPlus", 2)) == cat(NCEVEN)
    assert family_category(QuantumFamily("Hs", 4)) == cat(PEVEN_S, 4)
    assert family_category(QuantumFamily("K")) == cat(MATCH_PEVEN)
    assert family_category(QuantumFamily("Kplus")) == cat(MATCH_NCEVEN)


def test_twist_forcing():
    assert QuantumFamily("Obar").q == -1
    assert QuantumFamily("O").q == 1
    assert QuantumFamily("Hs", 2, -1).q == -1
    with pytest.raises(ValueError):
        QuantumFamily("Ubar", q=1)
    with pytest.raises(ValueError):
        QuantumFamily("Hs", 3)
    with pytest.raises(ValueError):
        CategoryId(PEVEN_S)


def test_from_token():
    assert QuantumFamily.from_token("h+") == QuantumFamily("HsPlus", 2)
    assert QuantumFamily.from_token("hs", "inf") == QuantumFamily("Hs", INF)
    assert QuantumFamily.from_token("o-bar").q == -1


def same_sets(a, b, n):
    for w in all_words(n):
        assert set(enumerate_category(a, w)) == set(enumerate_category(b, w)), w


def test_specializations():
    for n in range(7):
        for w in all_words(n):
            assert ({p.blocks for p in enumerate_category(cat(PEVEN_S, 2), w)}
                    == {p.blocks for p in enumerate_category(cat(PEVEN), w)})
        same_sets(cat(PEVEN_S, INF), cat(MATCH_PEVEN), n)
        same_sets(cat(NCEVEN_S, INF), cat(MATCH_NCEVEN), n)


def test_inclusion_chain():
    for n in range(7):
        for w in all_words(n):
            nc2 = {p.blocks for p in enumerate_category(cat(NC2), w)}
            minus = {p.blocks for p in enumerate_category(cat(NCEVEN_MINUS), w)}
            even = {p.blocks for p in enumerate_category(cat(MATCH_NCEVEN), w)}
            match = {p.blocks for p in enumerate_category(cat(MATCH_NC2), w)}
            plain_even = {p.blocks for p in enumerate_category(cat(NCEVEN), w)}
            assert match <= minus <= even <= plain_even
            assert nc2 >= match


def test_nc2_in_ncminus_on_alternating_words():
    # on the alternating coloring every noncrossing pairing is color-alternating
    for k in range(4):
        w = "wb" * k
        assert ({p.blocks for p in enumerate_category(cat(NC2), w)}
                <= {p.blocks for p in enumerate_category(cat(NCEVEN_MINUS), w)})


@pytest.mark.parametrize("tag,s", [(NC2, None), (PEVEN_S, 4), (MATCH_NCEVEN, None), (NCEVEN_MINUS, None)])
def test_uniformity(tag, s):
    assert uniformity_check(cat(tag, s), 6)


def test_uniformity_counterexample():
    extra = Partition.parse("[[1,2,3,4],[5,6]]")

    def truncated(p):
        if p.blocks == extra.blocks:
            return True
        return p.size <= 4 and all(len(b) == 2 for b in p.blocks)

    assert not uniformity_check(truncated, 6, colorblind=True)
    bad = uniformity_violations(truncated, 6, colorblind=True)
    assert any(len(q.blocks) == 1 and q.size == 4 for _, _, q in bad) or bad


def test_uniformity_with_identity_is_still_closed():
    # pairings on <= 4 legs plus a 6-leg pairing: removal lands back in <= 4 legs
    ident = Partition.parse("[[1,6],[2,5],[3,4]]")

    def truncated(p):
        return (p.size <= 4 and all(len(b) == 2 for b in p.blocks)) or p.blocks == ident.blocks

    assert uniformity_check(truncated, 6, colorblind=True)


@pytest.mark.parametrize("tag", [P2, MATCH_NC2, NCEVEN_MINUS])
def test_axioms_examples(tag):
    rep = axioms_check(cat(tag), 6)
    assert rep.passed and rep.checked["compose"] > 0


def test_axioms_detect_non_category():
    # the crossing is allowed on 4 legs only, so tensoring it with a pair leaves the set
    def crossing_on_four(p):
        return all(len(b) == 2 for b in p.blocks) and (p.size <= 4 or is_noncrossing(p))

    rep = axioms_check(crossing_on_four, 6, colorblind=True)
    assert not rep.passed and rep.violations


def test_all_tags_covered():
    assert len(TAGS) == 11
