"""Consensus functions: co-association clustering (CSPA) and hypergraph cuts (HGPA)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .hypergraph import Hypergraph, partition_hypergraph
from .linkage import LINKAGES, agglomerate
from .partition import Partition, canonicalize

METHODS = ("cspa", "hgpa")


@dataclass(frozen=True)
class ConsensusConfig:
    method: str = "cspa"
    target_k: int = 2
    balance_tolerance: float = 0.05
    linkage: str = "average"
    restarts: int = 8
    seed: int = 0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown consensus method {self.method!r}")
        if self.target_k < 1:
            raise ValueError("target_k must be at least 1")
        if not 0 <= self.balance_tolerance < 1:
            raise ValueError("balance_tolerance must lie in [0, 1)")
        if self.linkage not in LINKAGES:
            raise ValueError(f"unknown linkage {self.linkage!r}")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")


@dataclass(frozen=True)
class CoassociationMatrix:
    values: np.ndarray

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _check_subset(subset: Sequence[Partition]) -> list[Partition]:
    subset = [p if isinstance(p, Partition) else canonicalize(p) for p in subset]
    if not subset:
        raise ValueError("empty subset: consensus needs at least one partition")
    n = subset[0].n_points
    if any(p.n_points != n for p in subset):
        raise ValueError("inconsistent subset: partitions cover different numbers of points")
    return subset


def coassociation(subset: Sequence[Partition]) -> CoassociationMatrix:
    """Fraction of partitions in ``subset`` that put each pair of points together."""
    subset = _check_subset(subset)
    n = subset[0].n_points
    acc = np.zeros((n, n))
    for p in subset:
        onehot = np.zeros((n, p.n_clusters))
        onehot[np.arange(n), p.labels] = 1.0
        acc += onehot @ onehot.T
    values = acc / len(subset)
    values.setflags(write=False)
    return CoassociationMatrix(values)


def cspa(subset: Sequence[Partition], cfg: ConsensusConfig) -> Partition:
    """Cut an agglomerative tree over ``1 - co-association`` at ``cfg.target_k``."""
    subset = _check_subset(subset)
    n = subset[0].n_points
    if cfg.target_k > n:
        raise ValueError(f"target_k={cfg.target_k} exceeds the {n} points")
    co = coassociation(subset)
    return Partition(agglomerate(1.0 - co.values, cfg.target_k, cfg.linkage))


def build_hypergraph(subset: Sequence[Partition]) -> Hypergraph:
    """One hyperedge per cluster of every partition; duplicates are kept."""
    subset = _check_subset(subset)
    edges = [tuple(c.tolist()) for p in subset for c in p.clusters()]
    return Hypergraph(subset[0].n_points, tuple(edges))


def hgpa(subset: Sequence[Partition], cfg: ConsensusConfig) -> Partition:
    subset = _check_subset(subset)
    n = subset[0].n_points
    if cfg.target_k > n:
        raise ValueError(f"target_k={cfg.target_k} exceeds the {n} points")
    graph = build_hypergraph(subset)
    parts = partition_hypergraph(
        graph, cfg.target_k, cfg.balance_tolerance, restarts=cfg.restarts, seed=cfg.seed
    )
    return canonicalize(parts)


def consensus(subset: Sequence[Partition], cfg: ConsensusConfig) -> Partition:
    if cfg.method == "cspa":
        return cspa(subset, cfg)
    return hgpa(subset, cfg)
