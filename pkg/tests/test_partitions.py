import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from haarspace.partitions import (
    EMPTY, Partition, all_partitions, compose, delta, involve, is_even, is_noncrossing, join,
    join_count, kernel, refines, remove_block, rotate, set_partitions, signature, tensor,
)


def crossing_parity(p):
    """(-1)^(number of crossing quadruples a < b < c < d, a~c, b~d, a!~b)."""
    lab, _ = p.one_line()
    n = len(lab)
    count = 0
    for a, b, c, d in combinations(range(n), 4):
        if lab[a] == lab[c] and lab[b] == lab[d] and lab[a] != lab[b]:
            count += 1
    return -1 if count % 2 else 1


@st.composite
def partitions(draw, max_legs=8, even=False):
    n = draw(st.integers(0, max_legs // 2)) * 2 if even else draw(st.integers(0, max_legs))
    labels = draw(st.lists(st.integers(0, n), min_size=n, max_size=n))
    blocks = {}
    for x, l in enumerate(labels):
        blocks.setdefault(l, []).append(x)
    blocks = list(blocks.values())
    if even:
        # merge odd blocks pairwise so every block is even
        odd = [b for b in blocks if len(b) % 2]
        blocks = [b for b in blocks if len(b) % 2 == 0]
        for a, b in zip(odd[::2], odd[1::2]):
            blocks.append(a + b)
    word = draw(st.text("wb", min_size=n, max_size=n))
    return Partition.from_blocks(blocks, word)


def P(text, word=None):
    return Partition.parse(text, word)


# -- examples


def test_parse_print():
    p = P("[[1,4],[2,3]]", "wbwb")
    assert p.blocks == ((0, 3), (1, 2))
    assert p.to_text() == "[[1,4],[2,3]]"
    assert Partition.parse("[[3,2],[4,1]]").blocks == ((0, 3), (1, 2))


def test_join_examples():
    a, b = P("[[1,2],[3,4]]"), P("[[1,3],[2,4]]")
    assert join(a, b) == P("[[1,2,3,4]]")
    assert join_count(a, a) == 2


def test_tensor_example():
    assert tensor(P("[[1,2]]"), P("[[1,2]]")) == P("[[1,2],[3,4]]")


def test_compose_cup_cap():
    cup = Partition(((0, 1),), "ww", "")     # two lower legs joined
    cap = Partition(((0, 1),), "", "ww")     # two upper legs joined
    out, loops = compose(cup, cap)
    assert out == EMPTY and loops == 1


def test_compose_word_mismatch():
    with pytest.raises(ValueError):
        compose(Partition(((0, 1),), "wb", ""), Partition(((0, 1),), "", "ww"))


def test_involve_lower_only():
    p = P("[[1,3],[2,4]]", "wwbb")
    q = involve(p)
    assert q.n_lower == 0 and q.upper == "bbww" and q.blocks == p.blocks


def test_rotate():
    p = Partition(((0, 1),), "w", "w")
    r = rotate(p)
    assert r.n_upper == 0 and r.lower == "bw"
    with pytest.raises(ValueError):
        rotate(P("[[1,2]]"))


@pytest.mark.parametrize("text,block,expected", [
    ("[[1,2],[3,4]]", (2, 3), "[[1,2]]"),
    ("[[1,2,3,4]]", (0, 1, 2, 3), "[]"),
    ("[[1,6],[2,5],[3,4]]", (1, 4), "[[1,4],[2,3]]"),
])
def test_remove_block(text, block, expected):
    assert remove_block(P(text), block).to_text() == expected


def test_remove_block_keeps_colors():
    p = remove_block(P("[[1,2],[3,4]]", "wbbw"), (0, 1))
    assert p.lower == "bw"
    with pytest.raises(ValueError):
        remove_block(P("[[1,2],[3,4]]"), (0, 2))


def test_signature_examples():
    assert signature(P("[[1,2],[3,4]]")) == 1
    assert signature(P("[[1,3],[2,4]]")) == -1
    assert signature(P("[[1,2,3,4]]")) == 1
    assert signature(P("[[1,4],[2,5],[3,6]]")) == -1
    with pytest.raises(ValueError):
        signature(P("[[1],[2]]"))


def test_delta_examples():
    cross = P("[[1,3],[2,4]]")
    assert delta(cross, (1, 2, 1, 2)) == 1
    assert delta(cross, (1, 2, 1, 2), q=-1) == -1
    assert delta(P("[[1,2,3,4]]"), (1, 2, 1, 2)) == 0
    assert delta(P("[[1,2]]"), (3, 3), q=-1) == 1
    assert delta(P("[[1,2],[3,4]]"), (1, 1, 1, 1), q=-1) == 1


def test_enumeration_counts():
    bell = [1, 1, 2, 5, 15, 52, 203, 877]
    for n, b in enumerate(bell):
        assert sum(1 for _ in set_partitions(n)) == b


# -- properties


@given(partitions(6), partitions(6))
def test_join_commutative_and_bounded(p, q):
    if p.size != q.size:
        q = Partition(tuple((x,) for x in range(p.size)), p.lower)
    assert join(p, q).blocks == join(q, p).blocks
    assert join_count(p, q) <= min(len(p.blocks), len(q.blocks))
    assert refines(p, join(p, q)) and refines(q, join(p, q))


@given(partitions(6))
def test_join_idempotent(p):
    assert join(p, p) == p


@given(st.integers(0, 6), st.data())
def test_join_associative(n, data):
    word = "w" * n
    pick = st.sampled_from(all_partitions(word))
    a, b, c = data.draw(pick), data.draw(pick), data.draw(pick)
    assert join(join(a, b), c) == join(a, join(b, c))


def test_join_inequality_exhaustive():
    for n in range(7):
        parts = all_partitions("w" * n)
        for p in parts:
            for q in parts:
                lhs = 2 * join_count(p, q)
                rhs = len(p.blocks) + len(q.blocks)
                assert lhs <= rhs
                assert (lhs == rhs) == (p == q)


def test_signature_equals_crossing_parity_exhaustive():
    for n in range(0, 9, 2):
        for p in all_partitions("w" * n):
            if is_even(p):
                assert signature(p) == crossing_parity(p)


@given(partitions(8, even=True), st.integers(0, 2 ** 32))
def test_signature_order_independent(p, seed):
    rng = random.Random(seed)
    values = {signature(p, rng) for _ in range(10)}
    assert values == {signature(p)}


@given(partitions(6, even=True), partitions(6, even=True))
def test_signature_multiplicative(p, q):
    assert signature(tensor(p, q)) == signature(p) * signature(q)


def test_signature_noncrossing_is_one():
    for n in range(0, 9, 2):
        for p in all_partitions("w" * n):
            if is_even(p) and is_noncrossing(p):
                assert signature(p) == 1


@given(partitions(6), st.data())
def test_delta_refinement(p, data):
    i = data.draw(st.lists(st.integers(1, 3), min_size=p.size, max_size=p.size))
    assert delta(p, i) == int(refines(p, kernel(i)))
    if is_even(kernel(i)):
        assert delta(p, i, -1) ** 2 == delta(p, i)


@given(partitions(8))
def test_parse_round_trip(p):
    assert Partition.parse(p.to_text(), p.lower) == p


def test_round_trip_enumerated():
    for n in range(7):
        for p in all_partitions("wb"[: n % 2] + "bw" * (n // 2)):
            assert Partition.parse(p.to_text(), p.lower) == p


@given(partitions(4), partitions(4))
def test_involve_antimultiplicative(p, q):
    assert involve(involve(p)) == p
    assert involve(tensor(p, q)) == tensor(involve(p), involve(q))


def test_noncrossing_counts():
    catalan = [1, 1, 2, 5, 14]
    for k, c in enumerate(catalan):
        pairs = [p for p in all_partitions("w" * 2 * k, sizes={2})]
        assert sum(is_noncrossing(p) for p in pairs) == c
