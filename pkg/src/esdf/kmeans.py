"""Lloyd's k-means with Forgy initialisation and seeded ensemble generation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .partition import Ensemble, Partition, canonicalize


@dataclass(frozen=True)
class KMeansResult:
    partition: Partition
    centroids: np.ndarray
    history: tuple[float, ...]  # within-cluster sum of squares after each update
    n_iter: int


@dataclass(frozen=True)
class GeneratorConfig:
    k: int
    runs: int = 200
    seed: int = 0
    max_iters: int = 300
    convergence_tol: float = 1e-6

    def __post_init__(self):
        if self.k < 1 or self.runs < 1 or self.max_iters < 1:
            raise ValueError("k, runs and max_iters must all be at least 1")
        if self.convergence_tol < 0:
            raise ValueError("convergence_tol must be non-negative")


def _sq_dists(X, C):
    return ((X[:, None, :] - C[None, :, :]) ** 2).sum(axis=2)


def _wcss(X, labels, C):
    return float(((X - C[labels]) ** 2).sum())


def lloyd(data, k: int, seed=0, max_iters: int = 300, tol: float = 1e-6) -> KMeansResult:
    """Run Lloyd iterations from ``k`` distinct data points drawn uniformly.

    An empty cluster takes over the point lying farthest from its own
    centroid (among clusters with at least two points), so every returned
    partition has exactly ``k`` clusters. Iteration stops when no centroid
    moves by ``tol`` or more, or after ``max_iters`` updates.
    """
    X = np.asarray(data, dtype=float)
    n = X.shape[0]
    if k > n:
        raise ValueError(f"k={k} exceeds the {n} data points")
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = np.random.default_rng(seed)
    C = X[rng.choice(n, size=k, replace=False)].copy()
    history = []
    labels = None
    it = 0
    for it in range(1, max_iters + 1):
        D = _sq_dists(X, C)
        labels = np.argmin(D, axis=1)
        counts = np.bincount(labels, minlength=k)
        for empty in np.flatnonzero(counts == 0):
            own = D[np.arange(n), labels]
            donors = counts[labels] >= 2
            far = int(np.argmax(np.where(donors, own, -1.0)))
            counts[labels[far]] -= 1
            labels[far] = empty
            counts[empty] = 1
            C[empty] = X[far]
            D[:, empty] = ((X - X[far]) ** 2).sum(axis=1)
        new_C = np.zeros_like(C)
        np.add.at(new_C, labels, X)
        new_C /= counts[:, None]
        shift = float(np.sqrt(((new_C - C) ** 2).sum(axis=1)).max())
        C = new_C
        history.append(_wcss(X, labels, C))
        if shift < tol:
            break
    return KMeansResult(canonicalize(labels), C, tuple(history), it)


def kmeans(data, k: int, seed=0, max_iters: int = 300, tol: float = 1e-6) -> Partition:
    return lloyd(data, k, seed, max_iters, tol).partition


def run_seeds(seed: int, runs: int) -> list[np.random.SeedSequence]:
    """Independent per-run seed sequences split off a base seed."""
    return np.random.SeedSequence(seed).spawn(runs)


def generate_ensemble(dataset: Dataset | np.ndarray, cfg: GeneratorConfig) -> Ensemble:
    """``cfg.runs`` k-means partitions that differ only in their random start."""
    X = dataset.points if isinstance(dataset, Dataset) else np.asarray(dataset, dtype=float)
    members = tuple(
        kmeans(X, cfg.k, s, cfg.max_iters, cfg.convergence_tol) for s in run_seeds(cfg.seed, cfg.runs)
    )
    return Ensemble(members)
