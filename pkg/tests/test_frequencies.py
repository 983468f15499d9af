import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superortho.errors import BudgetExceeded, DomainError
from superortho.frequencies import (
    FrequencyFamily,
    build_example_family,
    check_s_type_iv,
    find_additive_structure,
    kth_coord_values,
    s_type_tuple_count,
    signed_sum,
    tuple_vanishes,
    verify_example_properties,
    verify_kth_coord,
)


def basis(L):
    return FrequencyFamily(L, tuple(tuple(int(i == j) for i in range(L)) for j in range(L)))


def test_pair_with_itself_does_not_vanish():
    fam = basis(2)
    assert not tuple_vanishes(fam, (0, 0))
    assert tuple_vanishes(fam, (0, 1))
    assert signed_sum(fam, (0, 1)) == (1, -1)


def test_index_and_length_errors():
    fam = basis(2)
    with pytest.raises(DomainError):
        signed_sum(fam, (0, 2))
    with pytest.raises(DomainError):
        tuple_vanishes(fam, (0, 1, 0))
    with pytest.raises(DomainError):
        FrequencyFamily(2, ((1,),))


def test_basis_family_is_type_iv():
    res = check_s_type_iv(basis(4), 2, 0)
    assert res.passed and res.checked == 24


def test_vacuous_pass():
    res = check_s_type_iv(basis(3), 2, 0)
    assert res.passed and res.checked == 0
    assert s_type_tuple_count(3, 2, 0) == 0


def test_budget():
    with pytest.raises(BudgetExceeded):
        check_s_type_iv(basis(12), 4, 0, budget=1000)
    with pytest.raises(BudgetExceeded):
        find_additive_structure([(i,) for i in range(40)], 5, 5, budget=1000)


def test_all_pair_tuples_never_vanish():
    assert not check_s_type_iv(basis(4), 2, 2).passed


def test_tuple_count_matches_listing():
    fam = basis(5)
    for r, s in [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2)]:
        assert check_s_type_iv(fam, r, s).checked == s_type_tuple_count(5, r, s)


def test_small_example_family():
    fam = build_example_family(2, 1, 2)
    assert [f[1] for f in fam.freqs] == [8, 19, 10, 17]
    assert check_s_type_iv(fam, 2, 1).passed
    res = check_s_type_iv(fam, 2, 0)
    assert not res.passed
    assert not tuple_vanishes(fam, res.witness)


def test_example_family_rejects_s0_equal_r():
    with pytest.raises(DomainError):
        build_example_family(2, 2, 2)
    with pytest.raises(DomainError):
        build_example_family(3, 0, 2)


def test_first_block_is_degenerate():
    # k = 1 leaves two equal members, 5/2 each
    assert verify_kth_coord(1)
    assert kth_coord_values(1) == [Fraction(5, 2), Fraction(5, 2)]


@pytest.mark.parametrize("k", range(2, 21))
def test_kth_coord(k):
    assert verify_kth_coord(k)
    vals = kth_coord_values(k)
    assert len(vals) == 2 * k and len(set(vals)) == 2 * k


def test_kth_coord_tuple_does_not_vanish():
    k = 3
    fam = FrequencyFamily(1, tuple((int(v * 2 ** k),) for v in kth_coord_values(k)))
    idx = [x for pair in zip(range(k), range(k, 2 * k)) for x in pair]
    assert not tuple_vanishes(fam, idx)


def test_structure_examples():
    found = find_additive_structure([(1,), (2,), (3,)], 1, 2)
    assert found is not None and found.total == (3,)
    assert sorted(found.zs) == [0, 1] and found.ys == (2,)
    assert find_additive_structure([(1,), (2,), (4,)], 1, 2) is None


@pytest.mark.parametrize("k", range(2, 6))
def test_block_has_its_structure(k):
    vals = [(int(v * 2 ** k),) for v in kth_coord_values(k)]
    found = find_additive_structure(vals, k, k)
    assert found is not None
    assert sum(vals[i][0] for i in found.ys) == sum(vals[i][0] for i in found.zs)


def test_copies_count_only_in_member_mode():
    vals = [(2,), (2,)]
    assert find_additive_structure(vals, 1, 1, distinct_values=False) is not None
    assert find_additive_structure(vals, 1, 1, distinct_values=True) is None


@pytest.mark.parametrize("r, s0, N", [(2, 1, 2), (3, 1, 3), (3, 2, 3), (2, 0, 3)])
def test_example_report(r, s0, N):
    rep = verify_example_properties(r, s0, N)
    assert rep.failures == []
    for row in rep.structures:
        assert (row["member_witness"] is not None) == row["expected"]


def test_json_round_trip():
    fam = build_example_family(3, 1, 3)
    back = FrequencyFamily.from_json(fam.to_json())
    assert back == fam


small_vec = st.tuples(st.integers(-5, 5), st.integers(-5, 5))


@settings(max_examples=60, deadline=None)
@given(st.lists(small_vec, min_size=4, max_size=6), st.randoms())
def test_vanishing_invariant_under_same_parity_swaps(freqs, rnd):
    fam = FrequencyFamily(2, tuple(freqs))
    idx = [rnd.randrange(fam.L) for _ in range(4)]
    swapped = [idx[2], idx[3], idx[0], idx[1]]
    assert tuple_vanishes(fam, idx) == tuple_vanishes(fam, swapped)
    flipped = [idx[1], idx[0], idx[3], idx[2]]
    assert signed_sum(fam, flipped) == tuple(-c for c in signed_sum(fam, idx))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=7))
def test_structure_search_agrees_with_listing(values):
    vals = [(v,) for v in values]
    found = find_additive_structure(vals, 1, 1, distinct_values=False)
    brute = any(a[0] == b[0] for a, b in itertools.combinations(vals, 2))
    assert (found is not None) == brute


@settings(max_examples=30, deadline=None)
@given(st.lists(small_vec, min_size=2, max_size=5, unique=True), st.integers(1, 2))
def test_s_type_result_matches_direct_definition(freqs, r):
    fam = FrequencyFamily(2, tuple(freqs))
    for s in range(r + 1):
        res = check_s_type_iv(fam, r, s)
        expected = True
        for chosen in itertools.permutations(range(fam.L), 2 * r - s):
            head, tail = list(chosen[: 2 * r - 2 * s]), chosen[2 * r - 2 * s:]
            if not any(signed_sum(fam, head + [t for t in tail for _ in (0, 1)])):
                expected = False
                break
        assert res.passed == expected
