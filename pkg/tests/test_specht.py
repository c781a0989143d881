import random
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from cgwrep.specht import (
    DoublePartition, Partition, degree_list, degree_witnesses, dim_sum_check, dn_dim,
    double_partitions, generic_degrees, partitions, restrict_dims, syt_count, syt_enumerate,
)


def test_partition_invariants():
    assert str(Partition(())) == "(0)"
    assert Partition((3, 2, 0)).parts == (3, 2)
    assert Partition((3, 2)).conjugate() == Partition((2, 2, 1))
    with pytest.raises(ValueError):
        Partition((1, 2))


@pytest.mark.parametrize("k,count", [(0, 1), (1, 1), (4, 5), (5, 7), (8, 22)])
def test_partition_counts(k, count):
    parts = list(partitions(k))
    assert len(parts) == count == len(set(parts))
    assert all(p.size == k for p in parts)


@pytest.mark.parametrize("parts,count", [((2, 2), 2), ((4, 4), 14), ((1, 1, 1), 1), ((3,), 1),
                                         ((2, 1), 2)])
def test_syt_examples(parts, count):
    p = Partition(parts)
    assert syt_count(p) == count == syt_enumerate(p)


@pytest.mark.parametrize("n", range(6, 11))
def test_hook_shape_n_minus_3_3(n):
    assert syt_count(Partition((n - 3, 3))) == n * (n - 1) * (n - 5) // 6


def test_syt_count_matches_enumeration_up_to_8():
    for k in range(9):
        for p in partitions(k):
            assert syt_count(p) == syt_enumerate(p), p


def test_double_partition_canonical():
    a = DoublePartition(Partition((3,)), Partition((1,)))
    assert a.lam == Partition((1,)) and a.mu == Partition((3,))
    b = DoublePartition(Partition((2,)), Partition((1, 1)))
    c = DoublePartition(Partition((1, 1)), Partition((2,)))
    assert b == c
    with pytest.raises(ValueError):
        DoublePartition(Partition((2,)), Partition((2,)))
    with pytest.raises(ValueError):
        DoublePartition(Partition((2,)), Partition((1,)), "+")


def test_dn_dim_examples():
    assert dn_dim(DoublePartition(Partition((2,)), Partition((2,)), "+")) == 3
    assert dn_dim(DoublePartition(Partition(()), Partition((3, 2)))) == 5
    assert dn_dim(DoublePartition(Partition((1,)), Partition((3,)))) == 4


@pytest.mark.parametrize("n,total", [(4, 192), (5, 1920), (6, 23040)])
def test_dim_sum(n, total):
    assert sum(dn_dim(dp) ** 2 for dp in double_partitions(n)) == total
    assert dim_sum_check(n)


def test_dim_sum_7_8():
    assert dim_sum_check(7) and dim_sum_check(8)


def test_degree_lists():
    assert degree_list(8, 56) == [1, 7, 8, 14, 20, 21, 28, 35, 42, 48]
    assert degree_list(9, 72) == [1, 8, 9, 27, 28, 36, 42, 48, 56, 63, 70]


def test_degree_list_n4_full():
    degs = degree_list(4, float("inf"))
    assert degs == [1, 2, 3, 4, 6, 8]
    wit = degree_witnesses(4, float("inf"))
    assert {str(dp) for dp in wit[4]} == {"(1),(3)", "(1),(1,1,1)"}


@pytest.mark.parametrize("n", range(5, 10))
def test_generic_degrees_present(n):
    assert set(generic_degrees(n)) <= set(degree_list(n))


def test_restrict_examples():
    kids = restrict_dims(DoublePartition(Partition(()), Partition((4, 4))))
    assert kids == [DoublePartition(Partition(()), Partition((4, 3)))]
    n = 6
    kids = set(restrict_dims(DoublePartition(Partition((1,)), Partition((n - 1,)))))
    assert kids == {DoublePartition(Partition(()), Partition((n - 1,))),
                    DoublePartition(Partition((1,)), Partition((n - 2,)))}
    kids = restrict_dims(DoublePartition(Partition(()), Partition((n - 2, 2))))
    assert DoublePartition(Partition(()), Partition((n - 3, 2))) in kids
    with pytest.raises(ValueError):
        restrict_dims(DoublePartition(Partition((2,)), Partition((2,)), "+"))


def _non_split(n):
    return [dp for dp in double_partitions(n) if dp.lam != dp.mu]


@settings(max_examples=50)
@given(st.integers(4, 9).flatmap(lambda n: st.sampled_from(_non_split(n))))
def test_restriction_preserves_dimension(dp):
    total = 0
    for kid in restrict_dims(dp):
        d = dn_dim(kid)
        # a split child contributes both halves
        total += 2 * d if kid.lam == kid.mu else d
    assert total == dn_dim(dp)
