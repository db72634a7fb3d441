"""Agglomerative clustering on a precomputed distance matrix.

Merges follow the Lance-Williams recurrences. Among equally close cluster
pairs the one with the lexicographically smallest ``(i, j)`` slot pair wins,
where a merged cluster occupies the smaller of its two slots. This makes the
result independent of floating point tie handling in third party code.
"""
from __future__ import annotations

import numpy as np

LINKAGES = ("single", "average", "complete")


def agglomerate(dist: np.ndarray, n_clusters: int, linkage: str = "average") -> np.ndarray:
    """Cluster ``n`` items into ``n_clusters`` groups.

    Parameters
    ----------
    dist : ndarray of shape (n, n)
        Symmetric dissimilarities; the diagonal is ignored.
    n_clusters : int
        Number of clusters at which the dendrogram is cut.
    linkage : {"single", "average", "complete"}

    Returns
    -------
    ndarray of shape (n,)
        Group labels numbered by first occurrence.
    """
    if linkage not in LINKAGES:
        raise ValueError(f"unknown linkage {linkage!r}; expected one of {LINKAGES}")
    d = np.array(dist, dtype=float)
    n = d.shape[0]
    if d.shape != (n, n):
        raise ValueError("distance matrix must be square")
    if not 1 <= n_clusters <= n:
        raise ValueError(f"cannot cut {n} items into {n_clusters} clusters")

    owner = np.arange(n)  # slot currently holding each item
    size = np.ones(n)
    active = np.ones(n, dtype=bool)

    # only the strict upper triangle is searched: row i looks at j > i
    d[np.tril_indices(n)] = np.inf
    row_min = np.full(n, np.inf)
    row_arg = np.full(n, -1)

    def refresh(i):
        if i < n - 1:
            j = int(np.argmin(d[i, i + 1:])) + i + 1
            row_min[i] = d[i, j]
            row_arg[i] = j
        else:
            row_min[i] = np.inf
            row_arg[i] = -1

    for i in range(n):
        refresh(i)

    for _ in range(n - n_clusters):
        i = int(np.argmin(np.where(active, row_min, np.inf)))
        j = int(row_arg[i])
        # i < j by construction; merge j into i
        di = np.where(np.arange(n) < i, d[:, i], d[i, :])
        dj = np.where(np.arange(n) < j, d[:, j], d[j, :])
        if linkage == "single":
            new = np.minimum(di, dj)
        elif linkage == "complete":
            new = np.maximum(di, dj)
        else:
            new = (size[i] * di + size[j] * dj) / (size[i] + size[j])
        size[i] += size[j]
        active[j] = False
        owner[owner == j] = i

        others = active.copy()
        others[i] = False
        new = np.where(others, new, np.inf)
        below = np.arange(n) < i
        d[below, i] = new[below]
        d[i, i + 1:] = new[i + 1:]
        d[:, j] = np.inf
        d[j, :] = np.inf
        row_min[j] = np.inf
        row_arg[j] = -1

        refresh(i)
        # rows above i that pointed at i or j rescan; the rest may only improve
        upper = np.flatnonzero(below & active)
        stale = (row_arg[upper] == i) | (row_arg[upper] == j)
        for a in upper[stale]:
            refresh(a)
        keep = upper[~stale]
        better = (new[keep] < row_min[keep]) | ((new[keep] == row_min[keep]) & (i < row_arg[keep]))
        row_min[keep[better]] = new[keep[better]]
        row_arg[keep[better]] = i
        # rows between i and j that pointed at j lost their target
        between = np.flatnonzero(active[i + 1:j] & (row_arg[i + 1:j] == j)) + i + 1
        for a in between:
            refresh(a)

    _, first, inverse = np.unique(owner, return_index=True, return_inverse=True)
    rank = np.empty(first.size, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(first.size)
    return rank[inverse]
