import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import falling_factorial_coeffs, naive_chain_stats
from superortho.chains import (
    ChainStats,
    coefficient,
    count_chains,
    d_closed_form,
    d_general,
    d_good_pair,
    d_recursion,
)
from superortho.errors import DomainError
from superortho.partitions import (
    PartitionType,
    SetPartition,
    count_partitions_of_type,
    enumerate_coarsenings,
    enumerate_set_partitions,
    enumerate_types,
    partition_type,
    refines,
)

P = SetPartition.parse


def test_single_element_chain():
    assert count_chains(P("1"), P("1")) == ChainStats(1, 0)
    assert count_chains(P("1|2"), P("1|2")).d == 1


def test_two_elements():
    assert count_chains(P("1|2"), P("1,2")) == ChainStats(0, 1)


def test_three_elements_to_top():
    s = count_chains(P("1|2|3"), P("1,2,3"))
    assert (s.odd, s.even, s.d) == (3, 1, 2)
    assert s.to_dict() == {"odd": "3", "even": "1", "d": "2"}


def test_not_refining():
    with pytest.raises(DomainError):
        count_chains(P("1,2|3"), P("1,3|2"))


@pytest.mark.parametrize("n", range(1, 5))
def test_against_subset_listing(n):
    parts = enumerate_set_partitions(n)
    for p1 in parts:
        for p2 in enumerate_coarsenings(p1):
            assert (count_chains(p1, p2).odd, count_chains(p1, p2).even) == naive_chain_stats(p1, p2, parts, refines)


@pytest.mark.parametrize("n", range(1, 8))
def test_closed_form_against_chains(n):
    bottom = SetPartition.bottom(n)
    for p in enumerate_set_partitions(n):
        assert count_chains(bottom, p).d == d_closed_form(partition_type(p)).value


def test_closed_form_examples():
    assert d_closed_form(PartitionType.parse("3,1")).value == 2
    assert d_closed_form(PartitionType.parse("2,2")).value == 1
    assert d_closed_form(PartitionType.parse("4")).value == -6
    assert d_closed_form(PartitionType.parse("1,1,1")).value == 1


@pytest.mark.parametrize("n", range(1, 11))
def test_recursion_matches_closed_form(n):
    for t in enumerate_types(n):
        assert d_recursion(t).value == d_closed_form(t).value


@pytest.mark.parametrize("n", range(1, 7))
def test_depends_only_on_type(n):
    bottom = SetPartition.bottom(n)
    seen = {}
    for p in enumerate_set_partitions(n):
        seen.setdefault(partition_type(p), set()).add(count_chains(bottom, p).d)
    assert all(len(v) == 1 for v in seen.values())


@pytest.mark.parametrize("n", range(1, 7))
def test_relabelling_invariance(n):
    # D(p1, p2) = D(pi p1, pi p2) for a permutation pi of the ground set
    parts = enumerate_set_partitions(n)
    perm = list(range(2, n + 1)) + [1]
    relabel = lambda p: SetPartition.from_blocks([[perm[e - 1] for e in b] for b in p.blocks])
    for p1 in parts[::3]:
        for p2 in enumerate_coarsenings(p1):
            assert count_chains(p1, p2) == count_chains(relabel(p1), relabel(p2))


@pytest.mark.parametrize("n", range(1, 8))
def test_good_pairs(n):
    good = [p for p in enumerate_set_partitions(n) if p.is_good]
    for p1, p2 in itertools.product(good, repeat=2):
        if refines(p1, p2):
            assert d_good_pair(p1, p2).value == count_chains(p1, p2).d


def test_good_pair_rejects():
    with pytest.raises(DomainError):
        d_good_pair(P("1,2,3"), P("1,2,3"))
    with pytest.raises(DomainError):
        d_good_pair(P("1,2|3|4"), P("1,3|2,4"))


@pytest.mark.parametrize("n", range(1, 8))
def test_block_product_against_chains(n):
    for p1 in enumerate_set_partitions(n):
        for p2 in enumerate_coarsenings(p1):
            assert d_general(p1, p2).value == count_chains(p1, p2).d


def test_coefficient_routes():
    assert coefficient(P("1|2|3"), P("1,2,3")) == 2
    big = SetPartition.bottom(10)
    assert coefficient(big, SetPartition.top(10)) == -math.factorial(9)
    with pytest.raises(DomainError):
        count_chains(big, SetPartition.top(10))


@pytest.mark.parametrize("n", range(1, 9))
def test_weighted_block_count_is_falling_factorial(n):
    # sum_P D(P0, P) x^{|P|} = x (x-1) ... (x-n+1)
    coeffs = [0] * (n + 1)
    for t in enumerate_types(n):
        coeffs[len(t.sizes)] += count_partitions_of_type(t) * d_closed_form(t).value
    assert coeffs == falling_factorial_coeffs(n)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=6), min_size=1, max_size=4))
def test_closed_form_sign_and_size(sizes):
    t = PartitionType(tuple(sizes))
    v = d_closed_form(t).value
    assert abs(v) == math.prod(math.factorial(s - 1) for s in sizes)
    assert (v > 0) == ((t.n - len(sizes)) % 2 == 0)
