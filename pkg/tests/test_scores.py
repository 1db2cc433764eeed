import pytest
from hypothesis import given
from hypothesis import strategies as st

from rankfuse.errors import PositionOutOfRange, UniverseMismatch, ZeroTotalWeight
from rankfuse.rankings import Ranking
from rankfuse.scores import (ScoreVector, gain_score, merge_scores, overall_score, overall_scores,
                             penalty_score, score_vector)


@pytest.mark.parametrize("k, gain, penalty, overall", [
    (1, 6, 1, 5.0),
    (3, 1, 6, -5.0),
    (5, 0, 15, -15.0),
])
def test_scores_m5(k, gain, penalty, overall):
    assert gain_score(5, k) == gain
    assert penalty_score(5, k) == penalty
    assert overall_score(5, k) == overall


@pytest.mark.parametrize("fn", [gain_score, penalty_score, overall_score])
@pytest.mark.parametrize("m, k", [(5, 0), (5, 6), (0, 1)])
def test_position_out_of_range(fn, m, k):
    with pytest.raises(PositionOutOfRange):
        fn(m, k)


def test_overall_is_gain_minus_penalty_exhaustive():
    for m in range(1, 201):
        for k in range(1, m + 1):
            sc = overall_score(m, k)
            assert sc == gain_score(m, k) - penalty_score(m, k)
            assert sc == (m * m - 2 * m * k - m) / 2
            if k > 1:
                assert sc < overall_score(m, k - 1)


def test_score_sums_exhaustive():
    for m in range(1, 201):
        ks = range(1, m + 1)
        assert sum(overall_score(m, k) for k in ks) == (
            sum(gain_score(m, k) for k in ks) - sum(penalty_score(m, k) for k in ks))


def test_score_vector_examples():
    assert score_vector(Ranking((1, 2, 4, 3, 5))).scores == {1: 5, 2: 0, 4: -5, 3: -10, 5: -15}
    assert score_vector(Ranking((7,))).scores == {7: -1}
    assert score_vector(Ranking((8, 3))).scores == {8: -1, 3: -3}


def test_vectorised_scores_match():
    assert overall_scores(7, range(1, 8)).tolist() == [overall_score(7, k) for k in range(1, 8)]


@given(st.integers(1, 40).flatmap(lambda m: st.permutations(list(range(1, m + 1)))))
def test_score_vector_round_trip(order):
    r = Ranking(tuple(order))
    assert score_vector(r).to_ranking() == r


def test_merge_examples():
    s1, s2 = ScoreVector({1: 5.0}), ScoreVector({1: 0.0})
    assert merge_scores(s1, 2.0, s2, 2.0)[1] == 2.5
    assert merge_scores(ScoreVector({1: 5.0}), 0.6, ScoreVector({1: -5.0}), 0.4)[1] == pytest.approx(1.0, abs=1e-15)
    a = score_vector(Ranking((3, 1, 2)))
    b = score_vector(Ranking((1, 2, 3)))
    assert merge_scores(a, 0.37, b, 0.0).scores == a.scores


def test_merge_errors():
    with pytest.raises(UniverseMismatch):
        merge_scores(ScoreVector({1: 0.0}), 1, ScoreVector({2: 0.0}), 1)
    with pytest.raises(ZeroTotalWeight):
        merge_scores(ScoreVector({1: 0.0}), 0, ScoreVector({1: 0.0}), 0)


@given(
    st.integers(2, 12).flatmap(lambda m: st.tuples(st.permutations(list(range(1, m + 1))),
                                                    st.permutations(list(range(1, m + 1))))),
    st.floats(0, 5), st.floats(0, 5),
)
def test_merge_is_convex(orders, w1, w2):
    if w1 + w2 == 0:
        return
    s1, s2 = score_vector(Ranking(tuple(orders[0]))), score_vector(Ranking(tuple(orders[1])))
    merged = merge_scores(s1, w1, s2, w2)
    for o in s1.scores:
        lo, hi = sorted((s1[o], s2[o]))
        assert lo - 1e-12 <= merged[o] <= hi + 1e-12
    assert merge_scores(s1, w1, s1, w2).scores == s1.scores
