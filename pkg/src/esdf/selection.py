"""Ranking distinct partitions and picking sub-ensembles for consensus."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linkage import agglomerate
from .partition import DistinctEnsemble, Ensemble, deduplicate
from .similarity import SimilarityMatrix, WeightTable, pairwise_ari, weights

CRITERIA = ("weight", "diversity", "frequency")


@dataclass(frozen=True)
class SelectionResult:
    selected_indices: tuple[int, ...]
    criterion: str
    k: int

    def __len__(self) -> int:
        return len(self.selected_indices)


@dataclass(frozen=True)
class Analysis:
    """Everything selection needs about one ensemble, computed once."""

    distinct: DistinctEnsemble
    similarity: SimilarityMatrix
    table: WeightTable


def analyse(ensemble: Ensemble | DistinctEnsemble) -> Analysis:
    distinct = ensemble if isinstance(ensemble, DistinctEnsemble) else deduplicate(ensemble)
    sim = pairwise_ari(distinct)
    return Analysis(distinct, sim, weights(distinct, sim))


def rank_partitions(e: DistinctEnsemble, wt: WeightTable, criterion: str = "weight") -> list[int]:
    """Indices of ``e`` by decreasing criterion value, ties by first appearance."""
    if criterion == "weight":
        key = wt.weight
    elif criterion == "diversity":
        key = wt.diversity
    elif criterion == "frequency":
        key = np.asarray(e.frequencies, dtype=float)
    else:
        raise ValueError(f"unknown criterion {criterion!r}; expected one of {CRITERIA}")
    if len(key) != e.r:
        raise ValueError("weight table does not match the ensemble")
    return [int(i) for i in np.argsort(-np.asarray(key), kind="stable")]


def select_top(analysis: Analysis, k: int, criterion: str = "weight") -> SelectionResult:
    if k < 1:
        raise ValueError("k must be at least 1")
    order = rank_partitions(analysis.distinct, analysis.table, criterion)
    return SelectionResult(tuple(order[:k]), criterion, k)


def esdf_select(ensemble: Ensemble, k: int) -> SelectionResult:
    """Keep the ``k`` distinct partitions with the largest diversity-frequency weight."""
    return select_top(analyse(ensemble), k, "weight")


def cas_select(e: DistinctEnsemble, s: SimilarityMatrix, k: int) -> SelectionResult:
    """Cluster-and-select baseline.

    Groups the distinct partitions into ``min(k, r)`` groups by average-linkage
    clustering on ``1 - ARI`` and keeps, from each group, the member with the
    highest mean ARI to the rest of the ensemble. Representatives are ordered
    by that score, best first.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    r = e.r
    groups = agglomerate(1.0 - s.values, min(k, r), "average")
    mar = weights(e, s).mar
    reps = []
    for g in range(groups.max() + 1):
        members = np.flatnonzero(groups == g)
        reps.append(int(members[np.argmax(mar[members])]))
    reps.sort(key=lambda i: (-mar[i], i))
    return SelectionResult(tuple(reps), "cas", k)
