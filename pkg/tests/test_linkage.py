import numpy as np
import pytest
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import pdist, squareform
from sklearn.metrics import adjusted_rand_score

from esdf.linkage import agglomerate


@pytest.mark.parametrize("method", ["single", "average", "complete"])
def test_matches_scipy_without_ties(method):
    rng = np.random.default_rng(42)
    for _ in range(20):
        X = rng.normal(size=(30, 3))
        k = int(rng.integers(1, 8))
        ours = agglomerate(squareform(pdist(X)), k, method)
        ref = fcluster(linkage(pdist(X), method), k, "maxclust")
        assert adjusted_rand_score(ours, ref) == 1.0


def test_tie_break_smallest_pair():
    # all distances equal: merges go (0,1), then (0,2), ... leaving the last items alone
    d = np.ones((5, 5))
    np.fill_diagonal(d, 0)
    assert agglomerate(d, 3).tolist() == [0, 0, 0, 1, 2]


def test_cut_sizes():
    d = squareform(pdist(np.arange(6.0)[:, None]))
    assert agglomerate(d, 6).tolist() == list(range(6))
    assert agglomerate(d, 1).tolist() == [0] * 6


def test_bad_arguments():
    with pytest.raises(ValueError):
        agglomerate(np.zeros((3, 3)), 4)
    with pytest.raises(ValueError):
        agglomerate(np.zeros((3, 3)), 2, "ward")
