"""Locally linear embedding of partitions from their pairwise 1 - ARI distances."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .formats import write_rows
from .similarity import SimilarityMatrix

ROLES = (
    "distinct",
    "esdf-selected",
    "cas-selected",
    "both",
    "ground-truth",
    "consensus-full",
    "consensus-cas",
    "consensus-esdf",
)


class EmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class EmbeddingConfig:
    n_neighbors: int = 10
    target_dim: int = 5
    regularization: float = 1e-3

    def check(self, r: int) -> None:
        if not 1 <= self.n_neighbors < r:
            raise EmbeddingError(
                f"n_neighbors={self.n_neighbors} needs at least {self.n_neighbors + 1} partitions, got {r}; "
                "use a smaller n_neighbors"
            )
        if not 1 <= self.target_dim < r:
            raise EmbeddingError(f"target_dim={self.target_dim} must be in [1, {r - 1}]")
        if self.regularization <= 0:
            raise EmbeddingError("regularization must be positive")


@dataclass(frozen=True)
class Embedding:
    coordinates: np.ndarray
    neighbors: np.ndarray
    reconstruction_weights: np.ndarray
    eigenvalues: np.ndarray

    def cost_matrix(self) -> np.ndarray:
        """``(I - W)^T (I - W)`` for the sparse reconstruction matrix ``W``."""
        r = self.coordinates.shape[0]
        W = np.zeros((r, r))
        np.put_along_axis(W, self.neighbors, self.reconstruction_weights, axis=1)
        A = np.eye(r) - W
        return A.T @ A


def partition_distance_matrix(s: SimilarityMatrix | np.ndarray) -> np.ndarray:
    values = s.values if isinstance(s, SimilarityMatrix) else np.asarray(s, dtype=float)
    d = 1.0 - values
    np.fill_diagonal(d, 0.0)
    return d


def _components(neighbors: np.ndarray) -> int:
    r = neighbors.shape[0]
    adj = [set() for _ in range(r)]
    for i, row in enumerate(neighbors):
        for j in row:
            adj[i].add(int(j))
            adj[int(j)].add(i)
    seen = np.zeros(r, dtype=bool)
    count = 0
    for start in range(r):
        if seen[start]:
            continue
        count += 1
        stack = [start]
        seen[start] = True
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
    return count


def lle(d: np.ndarray, cfg: EmbeddingConfig = EmbeddingConfig()) -> Embedding:
    """Embed items known only through a distance matrix.

    For each item the Gram matrix of its neighbours, centred on the item, is
    recovered from squared distances as ``(d_ia^2 + d_ib^2 - d_ab^2) / 2``.
    Reconstruction weights solve the regularised system ``G w = 1`` scaled to
    sum to one. The coordinates are the bottom eigenvectors of
    ``(I - W)^T (I - W)`` after the constant vector is projected out.
    """
    d = np.asarray(d, dtype=float)
    r = d.shape[0]
    if d.shape != (r, r):
        raise EmbeddingError("distance matrix must be square")
    cfg.check(r)
    k = cfg.n_neighbors

    masked = d.copy()
    np.fill_diagonal(masked, np.inf)
    neighbors = np.argsort(masked, axis=1, kind="stable")[:, :k]

    if _components(neighbors) > 1:
        warnings.warn("neighbourhood graph is disconnected; embedding components jointly", RuntimeWarning)

    sq = d**2
    W = np.zeros((r, k))
    for i in range(r):
        nb = neighbors[i]
        G = 0.5 * (sq[i, nb][:, None] + sq[i, nb][None, :] - sq[np.ix_(nb, nb)])
        tr = np.trace(G)
        G[np.diag_indices(k)] += cfg.regularization * tr / k if tr > 0 else cfg.regularization
        try:
            w = np.linalg.solve(G, np.ones(k))
        except np.linalg.LinAlgError:
            raise EmbeddingError(f"local Gram matrix of point {i} is singular") from None
        if not np.all(np.isfinite(w)) or abs(w.sum()) < 1e-300:
            raise EmbeddingError(f"local Gram matrix of point {i} is singular")
        W[i] = w / w.sum()

    full = np.zeros((r, r))
    np.put_along_axis(full, neighbors, W, axis=1)
    A = np.eye(r) - full
    M = A.T @ A

    # orthonormal basis of the complement of the constant vector
    basis, _ = np.linalg.qr(np.column_stack([np.ones(r), np.eye(r)[:, : r - 1]]))
    Q = basis[:, 1:]
    evals, evecs = np.linalg.eigh(Q.T @ M @ Q)
    Y = Q @ evecs[:, : cfg.target_dim]
    for c in range(Y.shape[1]):
        j = int(np.argmax(np.abs(Y[:, c])))
        if Y[j, c] < 0:
            Y[:, c] = -Y[:, c]
    return Embedding(Y, neighbors, W, evals[: cfg.target_dim])


def assign_roles(r: int, esdf: Sequence[int], cas: Sequence[int], extra: Sequence[str] = ()) -> list[str]:
    """Role of each embedded row: the ``r`` distinct partitions, then ``extra`` rows."""
    esdf, cas = set(esdf), set(cas)
    roles = []
    for i in range(r):
        if i in esdf and i in cas:
            roles.append("both")
        elif i in esdf:
            roles.append("esdf-selected")
        elif i in cas:
            roles.append("cas-selected")
        else:
            roles.append("distinct")
    for role in extra:
        if role not in ROLES:
            raise ValueError(f"unknown role {role!r}")
        roles.append(role)
    return roles


def emit_scatter(embedding: Embedding, dims: tuple[int, int], annotations: Sequence[str], out_prefix,
                 title: str = "") -> tuple[Path, Path]:
    """Write ``<out_prefix>.svg`` and ``<out_prefix>.csv`` for two embedding axes."""
    from .plotting import plot_embedding

    dim = embedding.coordinates.shape[1]
    a, b = dims
    if not (0 <= a < dim and 0 <= b < dim) or a == b:
        raise EmbeddingError(f"dims {dims} must be two different axes in [0, {dim})")
    if len(annotations) != embedding.coordinates.shape[0]:
        raise EmbeddingError("one annotation per embedded row required")
    xy = embedding.coordinates[:, [a, b]]
    prefix = Path(out_prefix)
    csv_path = prefix.with_suffix(".csv")
    write_rows(csv_path, ("index", "x", "y", "role"), ((i, x, y, role) for i, ((x, y), role) in enumerate(zip(xy, annotations))))
    svg_path = plot_embedding(xy, list(annotations), prefix.with_suffix(".svg"), dims=(a, b), title=title)
    return svg_path, csv_path
