import numpy as np
import pytest

from esdf.data import Dataset, iris_path, load_dataset
from esdf.kmeans import GeneratorConfig, generate_ensemble, kmeans, lloyd
from esdf.partition import canonicalize


def _blobs(rng, per=15):
    a = rng.normal(0, 0.1, size=(per, 2))
    b = rng.normal(10, 0.1, size=(per, 2))
    return np.vstack([a, b])


def test_separated_blobs_recovered_for_every_seed():
    rng = np.random.default_rng(0)
    X = _blobs(rng)
    truth = canonicalize([0] * 15 + [1] * 15)
    for seed in range(20):
        assert kmeans(X, 2, seed) == truth


def test_k_equals_n():
    X = np.arange(10.0).reshape(5, 2)
    assert kmeans(X, 5, 3).labels.tolist() == [0, 1, 2, 3, 4]


def test_k_greater_than_n():
    with pytest.raises(ValueError):
        kmeans(np.zeros((3, 2)), 4)


def test_reproducible():
    X = np.random.default_rng(1).normal(size=(60, 3))
    a = lloyd(X, 4, seed=9)
    b = lloyd(X, 4, seed=9)
    assert a.partition == b.partition
    assert a.history == b.history


def test_empty_cluster_repair_gives_exactly_k():
    # duplicated points make empty clusters likely with Forgy starts
    X = np.array([[0.0, 0]] * 6 + [[1.0, 1]] * 2 + [[5.0, 5]])
    for seed in range(30):
        res = lloyd(X, 4, seed)
        assert res.partition.n_clusters == 4
        assert np.all(np.diff(res.history) <= 1e-12)


def test_generate_ensemble_shape_and_determinism():
    data = load_dataset(iris_path(), "species")
    cfg = GeneratorConfig(k=3, runs=200, seed=4)
    ens = generate_ensemble(data, cfg)
    assert ens.size == 200
    assert all(p.n_points == 150 and p.n_clusters == 3 for p in ens)
    assert generate_ensemble(data, cfg).members == ens.members
    single = generate_ensemble(data, GeneratorConfig(k=3, runs=1, seed=4))
    assert single.size == 1


def test_per_run_seeds_do_not_depend_on_run_count():
    data = Dataset(np.random.default_rng(2).normal(size=(40, 2)))
    short = generate_ensemble(data, GeneratorConfig(k=3, runs=5, seed=1))
    long = generate_ensemble(data, GeneratorConfig(k=3, runs=9, seed=1))
    assert long.members[:5] == short.members


def test_config_validation():
    with pytest.raises(ValueError):
        GeneratorConfig(k=0)
    with pytest.raises(ValueError):
        GeneratorConfig(k=2, convergence_tol=-1)
