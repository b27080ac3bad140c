import pytest

from zeta3.exactdet import det_integer
from zeta3.operators import (
    SparseIntegerMatrix,
    build_a1,
    build_a2,
    build_le,
    build_le_geometric,
    build_lb,
    build_lb_geometric,
)


def test_sparse_matrix_basics():
    m = SparseIntegerMatrix(3, {(0, 1): 2, (2, 2): 1})
    assert m.get(0, 1) == 2
    assert m.get(1, 0) == 0
    m2 = m.with_increment(0, 1)
    assert m2.get(0, 1) == 3 and m.get(0, 1) == 2
    assert m.transpose().get(1, 0) == 2
    assert m.trace() == 1
    assert m.row_sums() == [2, 0, 1]
    assert m.col_sums() == [0, 2, 1]
    assert m.triplets() == [(0, 1, 2), (2, 2, 1)]
    canceled = m.with_increment(2, 2, -1)
    assert (2, 2) not in canceled.entries


def test_a1_base_is_seven_times_cycle(base2):
    a1 = build_a1(base2)
    assert a1.n == 3
    assert a1.entries == {(0, 1): 7, (1, 2): 7, (2, 0): 7}


def test_a2_is_transpose(base2):
    a1 = build_a1(base2)
    a2 = build_a2(base2)
    assert a2 == a1.transpose()
    assert a2.transpose() == a1
    assert set(a2.row_sums()) == {7}


def test_row_sums_battery(small_battery):
    for cx in small_battery:
        q = cx.q
        assert set(build_a1(cx).row_sums()) == {q * q + q + 1}
        le = build_le(cx)
        assert set(le.row_sums()) == {q * q}
        assert set(le.col_sums()) == {q * q}
        lb = build_lb(cx)
        assert set(lb.row_sums()) == {q}
        assert set(lb.col_sums()) == {q}


def test_block_cyclic_structure(small_battery):
    for cx in small_battery:
        vtype = cx.vertex_type()
        vid = [v.id for v in cx.vertices]
        a1 = build_a1(cx)
        for (i, j) in a1.entries:
            assert vtype[vid[j]] == (vtype[vid[i]] + 1) % 3


def test_le_trace_zero(small_battery):
    for cx in small_battery:
        assert build_le(cx).trace() == 0


def test_generator_rule_matches_geometric_rule(small_battery):
    for cx in small_battery:
        assert build_le(cx) == build_le_geometric(cx)
        assert build_lb(cx) == build_lb_geometric(cx)


def test_lb_sizes(base2, cover_m3):
    assert build_lb(base2).n == 63
    assert build_lb(cover_m3).n == 189
    assert set(build_lb(cover_m3).row_sums()) == {2}


def test_lb_diagonal_bounded(base2):
    lb = build_lb(base2)
    sums = lb.row_sums()
    for (i, j), v in lb.entries.items():
        if i == j:
            assert v <= sums[i]


def test_full_rank_small(base2, cover_m2):
    for cx in (base2, cover_m2):
        assert det_integer(build_le(cx).to_dense()) != 0
        assert det_integer(build_lb(cx).to_dense()) != 0


def test_entry_bounds(small_battery):
    for cx in small_battery:
        for m in (build_le(cx), build_lb(cx)):
            assert all(v >= 1 for v in m.entries.values())
