from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sklearn.metrics import adjusted_rand_score

from esdf.partition import DistinctEnsemble, canonicalize, deduplicate, Ensemble
from esdf.similarity import (
    DegeneratePairError,
    SimilarityMatrix,
    adjusted_rand,
    contingency,
    pair_counting_ari,
    pairwise_ari,
    weights,
)

# frozen from pair_counting_ari over all C(6,2) point pairs: 12/37
WORKED_ARI = 12 / 37


def test_contingency_examples():
    t = contingency(canonicalize([0, 0, 1, 1]), canonicalize([0, 0, 1, 1]))
    assert t.counts.tolist() == [[2, 0], [0, 2]]
    t = contingency(canonicalize([0, 0, 0, 1, 1, 1]), canonicalize([0, 0, 1, 1, 1, 1]))
    assert t.counts.tolist() == [[2, 1], [0, 3]]
    assert t.row_sums.tolist() == [3, 3] and t.col_sums.tolist() == [2, 4] and t.n == 6
    t = contingency(canonicalize([0] * 5), canonicalize([0, 1, 1, 2, 2]))
    assert t.counts.tolist() == [[1, 2, 2]]


def test_contingency_size_mismatch():
    with pytest.raises(ValueError):
        contingency(canonicalize([0, 1]), canonicalize([0, 1, 1]))


def test_worked_example_oracle_first():
    p, q = [0, 0, 0, 1, 1, 1], [0, 0, 1, 1, 1, 1]
    assert pair_counting_ari(p, q) == pytest.approx(WORKED_ARI, abs=1e-15)
    # t0=4, t1=6, t2=7, t3=42/15
    t3 = Fraction(6 * 7, 15)
    exact = (4 - t3) / (Fraction(13, 2) - t3)
    assert exact == Fraction(12, 37)
    assert abs(adjusted_rand(canonicalize(p), canonicalize(q)) - WORKED_ARI) < 1e-12


def test_identical_partitions_score_one():
    p = canonicalize([0, 1, 1, 2, 0, 2])
    assert adjusted_rand(p, p) == 1.0


def test_fewer_than_two_points():
    with pytest.raises(ValueError, match="fewer than 2"):
        adjusted_rand(canonicalize([0]), canonicalize([0]))


def test_degenerate_identical_pairs_return_one():
    one = canonicalize([0, 0, 0, 0])
    single = canonicalize([0, 1, 2, 3])
    assert adjusted_rand(one, one) == 1.0
    assert adjusted_rand(single, single) == 1.0


def test_negative_values_are_not_clamped():
    v = adjusted_rand(canonicalize([0, 0, 1, 1]), canonicalize([0, 1, 0, 1]))
    assert v < 0
    assert v == pytest.approx(pair_counting_ari([0, 0, 1, 1], [0, 1, 0, 1]))


def test_wide_integer_arithmetic_large_n():
    rng = np.random.default_rng(0)
    a = rng.integers(0, 3, 100_000)
    b = np.where(rng.random(100_000) < 0.9, a, rng.integers(0, 3, 100_000))
    assert adjusted_rand(canonicalize(a), canonicalize(b)) == pytest.approx(adjusted_rand_score(a, b), abs=1e-10)


partitions = st.integers(2, 12).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 4), min_size=n, max_size=n),
        st.lists(st.integers(0, 4), min_size=n, max_size=n),
    )
)


def _non_degenerate(a, b):
    try:
        pair_counting_ari(a, b)
    except ZeroDivisionError:
        return False
    return True


@given(partitions)
def test_matches_pair_counting_oracle(pair):
    a, b = pair
    if not _non_degenerate(a, b):
        return
    assert abs(adjusted_rand(canonicalize(a), canonicalize(b)) - pair_counting_ari(a, b)) < 1e-12


@given(partitions)
def test_symmetric_exactly(pair):
    a, b = map(canonicalize, pair)
    assert adjusted_rand(a, b) == adjusted_rand(b, a)


@given(partitions, st.permutations(list(range(5))))
def test_relabel_invariant(pair, perm):
    a, b = pair
    relabeled = [perm[x] for x in a]
    assert adjusted_rand(canonicalize(relabeled), canonicalize(b)) == adjusted_rand(canonicalize(a), canonicalize(b))


def _random_distinct(rng, r, n, kmax=4):
    seen = {}
    while len(seen) < r:
        p = canonicalize(rng.integers(0, kmax, n))
        seen.setdefault(p, None)
    return DistinctEnsemble(tuple(seen), tuple(int(v) for v in rng.integers(1, 6, r)))


def test_pairwise_matches_oracle():
    rng = np.random.default_rng(5)
    e = _random_distinct(rng, 10, 20)
    s = pairwise_ari(e)
    assert np.allclose(np.diag(s.values), 1)
    assert np.array_equal(s.values, s.values.T)
    for i in range(10):
        for j in range(10):
            if i != j:
                assert abs(s.values[i, j] - pair_counting_ari(e.partitions[i].labels, e.partitions[j].labels)) < 1e-12


def test_pairwise_small_cases():
    p, q = canonicalize([0, 0, 1, 1]), canonicalize([0, 1, 1, 1])
    assert pairwise_ari(DistinctEnsemble((p,), (3,))).values.tolist() == [[1.0]]
    s = pairwise_ari(DistinctEnsemble((p, q), (1, 1)))
    assert s.values[0, 1] == s.values[1, 0] == adjusted_rand(p, q)


def test_weights_definitions():
    rng = np.random.default_rng(1)
    e = _random_distinct(rng, 3, 15)
    s = pairwise_ari(e)
    wt = weights(e, s)
    a = s.values
    assert wt.mar[0] == pytest.approx((a[0, 1] + a[0, 2]) / 2)
    assert np.allclose(wt.diversity, 1 - wt.mar)
    v = np.array(e.frequencies, dtype=float)
    assert np.allclose(wt.weight, wt.diversity * v / v.sum())


def test_weights_two_partitions():
    p, q = canonicalize([0, 0, 1, 1, 2]), canonicalize([0, 1, 1, 1, 0])
    e = DistinctEnsemble((p, q), (3, 1))
    wt = weights(e, pairwise_ari(e))
    assert wt.diversity[0] == wt.diversity[1]
    assert wt.weight[0] / wt.weight[1] == pytest.approx(3.0)


def test_weights_singleton_convention():
    e = DistinctEnsemble((canonicalize([0, 1, 1]),), (7,))
    wt = weights(e, pairwise_ari(e))
    assert wt.diversity.tolist() == [1.0] and wt.weight.tolist() == [1.0]


def test_diversity_may_exceed_one():
    e = deduplicate(Ensemble.from_labels([[0, 0, 1, 1], [0, 1, 0, 1]]))
    wt = weights(e, pairwise_ari(e))
    assert np.all(wt.diversity > 1)


def test_weights_shape_mismatch():
    e = DistinctEnsemble((canonicalize([0, 1, 1]),), (1,))
    with pytest.raises(ValueError):
        weights(e, SimilarityMatrix(np.eye(2)))


@settings(max_examples=30)
@given(st.integers(0, 10_000), st.integers(2, 9))
def test_weight_order_invariant_to_frequency_scaling(seed, c):
    from esdf.selection import rank_partitions

    rng = np.random.default_rng(seed)
    e = _random_distinct(rng, 6, 12)
    s = pairwise_ari(e)
    scaled = DistinctEnsemble(e.partitions, tuple(c * v for v in e.frequencies))
    assert rank_partitions(e, weights(e, s)) == rank_partitions(scaled, weights(scaled, s))
