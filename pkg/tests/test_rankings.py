import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankfuse.errors import DuplicateObject, EmptyInput, EmptyRanking, UniverseMismatch, ZeroTotalWeight
from rankfuse.rankings import (Ranking, RankingList, WeightedRanking, positions_of, ranking_from_positions,
                               validate_ranking)

perms = st.integers(1, 50).flatmap(lambda m: st.permutations(list(range(1, m + 1))))


def test_validate_example():
    r = validate_ranking([1, 2, 4, 3, 5])
    assert r.m == 5
    assert r.order == (1, 2, 4, 3, 5)


def test_singleton():
    assert validate_ranking([7]).m == 1


def test_duplicate_rejected():
    with pytest.raises(DuplicateObject):
        validate_ranking([1, 2, 2])


def test_empty_rejected():
    with pytest.raises(EmptyRanking):
        validate_ranking([])


def test_non_positive_ids_rejected():
    with pytest.raises(ValueError):
        validate_ranking([0, 1])


@pytest.mark.parametrize("order, expected", [
    ([1, 2, 4, 3, 5], {1: 1, 2: 2, 4: 3, 3: 4, 5: 5}),
    ([7], {7: 1}),
    ([3, 2, 1], {3: 1, 2: 2, 1: 3}),
])
def test_positions_of(order, expected):
    assert positions_of(validate_ranking(order)) == expected


def test_ids_need_not_be_contiguous():
    r = validate_ranking([40, 7, 1000])
    assert positions_of(r) == {40: 1, 7: 2, 1000: 3}


@given(perms)
def test_positions_round_trip(order):
    r = validate_ranking(order)
    assert ranking_from_positions(positions_of(r)) == r


@given(st.lists(st.integers(1, 20), min_size=1, max_size=30))
def test_validate_accepts_exactly_permutations(xs):
    if len(set(xs)) == len(xs):
        assert validate_ranking(xs).order == tuple(xs)
    else:
        with pytest.raises(DuplicateObject):
            validate_ranking(xs)


def test_ranking_is_immutable():
    r = validate_ranking([1, 2])
    with pytest.raises(AttributeError):
        r.order = (2, 1)


def test_weighted_ranking_rejects_negative_weight():
    with pytest.raises(ValueError):
        WeightedRanking(validate_ranking([1]), -0.1)


def test_ranking_list_positions_matrix(pair):
    assert pair.objects.tolist() == [1, 2, 3, 4, 5]
    assert pair.positions.tolist() == [[1, 2, 4, 3, 5], [2, 1, 3, 4, 5]]
    assert pair.weights.tolist() == [1.0, 1.0]


def test_ranking_list_universe_mismatch():
    with pytest.raises(UniverseMismatch):
        RankingList.from_orders([[1, 2, 3], [1, 2, 4]])


def test_ranking_list_needs_positive_weight():
    with pytest.raises(ZeroTotalWeight):
        RankingList.from_orders([[1, 2], [2, 1]], [0.0, 0.0])
    assert len(RankingList.from_orders([[1, 2], [2, 1]], [0.0, 1.0])) == 2


def test_ranking_list_empty():
    with pytest.raises(EmptyInput):
        RankingList([])
