"""Adjusted Rand index between partitions and the diversity/frequency weights."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .partition import DistinctEnsemble, Partition, canonicalize


class DegeneratePairError(ValueError):
    pass


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray
    row_sums: np.ndarray
    col_sums: np.ndarray
    n: int


@dataclass(frozen=True)
class SimilarityMatrix:
    values: np.ndarray

    @property
    def r(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class WeightTable:
    mar: np.ndarray
    diversity: np.ndarray
    weight: np.ndarray
    frequency: np.ndarray

    def __len__(self) -> int:
        return len(self.weight)


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else canonicalize(p)


def contingency(p: Partition, q: Partition) -> ContingencyTable:
    """Counts of shared points between every cluster of ``p`` and of ``q``."""
    p, q = _as_partition(p), _as_partition(q)
    if p.n_points != q.n_points:
        raise ValueError(f"size mismatch: {p.n_points} vs {q.n_points} points")
    kp, kq = p.n_clusters, q.n_clusters
    flat = np.bincount(p.labels * kq + q.labels, minlength=kp * kq)
    counts = flat.reshape(kp, kq)
    return ContingencyTable(counts, counts.sum(axis=1), counts.sum(axis=0), p.n_points)


def _pairs(x: np.ndarray) -> int:
    # python ints so products of pair counts cannot overflow
    return sum(int(v) * (int(v) - 1) // 2 for v in x[x > 1])


def adjusted_rand(p: Partition, q: Partition) -> float:
    """Hubert-Arabie adjusted Rand index.

    With ``t0 = sum C(N_rs, 2)``, ``t1``/``t2`` the pair counts of the row and
    column marginals and ``t3 = t1 t2 / C(n, 2)``, the index is
    ``(t0 - t3) / ((t1 + t2) / 2 - t3)``. All terms are accumulated as exact
    integers; the only floating point operation is the final division.

    Raises
    ------
    ValueError
        If the partitions cover different numbers of points or fewer than two.
    DegeneratePairError
        If the denominator vanishes for two different groupings.
    """
    table = contingency(p, q)
    n = table.n
    if n < 2:
        raise ValueError("undefined for fewer than 2 points")
    t0 = _pairs(table.counts.ravel())
    t1 = _pairs(table.row_sums)
    t2 = _pairs(table.col_sums)
    total = n * (n - 1) // 2
    # multiply through by C(n,2) to stay in integers
    num = 2 * (total * t0 - t1 * t2)
    den = total * (t1 + t2) - 2 * t1 * t2
    if den == 0:
        if num == 0:
            return 1.0
        raise DegeneratePairError("degenerate pair: adjusted Rand index has zero denominator")
    return num / den


def pair_counting_ari(a, b) -> float:
    """Reference ARI from an explicit loop over all point pairs.

    Quadratic in ``n``; used as an independent check of :func:`adjusted_rand`.
    """
    a, b = list(a), list(b)
    n = len(a)
    same_a = same_b = both = 0
    for i in range(n):
        for j in range(i + 1, n):
            sa, sb = a[i] == a[j], b[i] == b[j]
            same_a += sa
            same_b += sb
            both += sa and sb
    if n < 2:
        raise ValueError("adjusted Rand index is undefined for fewer than 2 points")
    total = n * (n - 1) // 2
    expected = Fraction(same_a * same_b, total)
    num = both - expected
    den = Fraction(same_a + same_b, 2) - expected
    if den == 0:
        if num == 0:
            return 1.0
        raise DegeneratePairError("degenerate pair: adjusted Rand index has zero denominator")
    return float(num / den)


def pairwise_ari(
    e: DistinctEnsemble,
    measure: Callable[[Partition, Partition], float] = adjusted_rand,
) -> SimilarityMatrix:
    """Symmetric ``r x r`` matrix of pairwise similarities with unit diagonal."""
    r = e.r
    values = np.eye(r)
    for i in range(r):
        for j in range(i + 1, r):
            try:
                v = measure(e.partitions[i], e.partitions[j])
            except ValueError as exc:
                raise type(exc)(f"pair ({i}, {j}): {exc}") from exc
            values[i, j] = values[j, i] = v
    values.setflags(write=False)
    return SimilarityMatrix(values)


def weights(e: DistinctEnsemble, s: SimilarityMatrix) -> WeightTable:
    """Mean ARI, diversity and weight for each distinct partition.

    ``weight = (1 - mean ARI to the other partitions) * v_i / sum(v)``. A single
    partition gets diversity 1 and weight 1. Negative ARIs are kept, so
    diversity can exceed 1.
    """
    freq = np.asarray(e.frequencies, dtype=float)
    r = e.r
    if s.r != r:
        raise ValueError(f"similarity matrix is {s.r}x{s.r} but ensemble has {r} partitions")
    if r == 1:
        one = np.ones(1)
        return WeightTable(mar=np.zeros(1), diversity=one, weight=one.copy(), frequency=freq)
    # exactly rounded sums, so rows holding the same values tie exactly
    vals = s.values
    off = np.array([math.fsum(np.delete(vals[i], i)) for i in range(r)])
    mar = off / (r - 1)
    diversity = 1.0 - mar
    weight = diversity * freq / freq.sum()
    return WeightTable(mar=mar, diversity=diversity, weight=weight, frequency=freq)
