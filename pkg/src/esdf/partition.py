"""Partitions, ensembles and deduplication up to cluster relabeling."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np


class PartitionError(ValueError):
    pass


class Partition:
    """A hard clustering of ``n`` points stored in canonical form.

    Canonical form numbers clusters by first occurrence, so ``labels[0] == 0``
    and every new cluster index is one more than the largest seen so far. Two
    partitions compare equal exactly when they induce the same grouping.

    Use :func:`canonicalize` to build one from arbitrary labels.
    """

    __slots__ = ("_labels", "_n_clusters", "_hash")

    def __init__(self, labels: Sequence[int] | np.ndarray):
        arr = np.array(labels, dtype=np.int64).ravel()
        if arr.size == 0:
            raise PartitionError("empty partition")
        # canonical iff each label is at most 1 + running max of the prefix
        running = np.maximum.accumulate(arr)
        prev = np.concatenate(([-1], running[:-1]))
        if arr[0] != 0 or np.any(arr > prev + 1) or np.any(arr < 0):
            raise PartitionError("labels are not in canonical form; use canonicalize()")
        arr.setflags(write=False)
        self._labels = arr
        self._n_clusters = int(running[-1]) + 1
        self._hash = None

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    @property
    def n_points(self) -> int:
        return int(self._labels.size)

    @property
    def n_clusters(self) -> int:
        return self._n_clusters

    def clusters(self) -> list[np.ndarray]:
        """Point indices of each cluster, in cluster-index order."""
        order = np.argsort(self._labels, kind="stable")
        bounds = np.cumsum(np.bincount(self._labels, minlength=self._n_clusters))[:-1]
        return np.split(order, bounds)

    def sizes(self) -> np.ndarray:
        return np.bincount(self._labels, minlength=self._n_clusters)

    def __len__(self) -> int:
        return self.n_points

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n_points == other.n_points and np.array_equal(self._labels, other._labels)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._labels.tobytes())
        return self._hash

    def __repr__(self) -> str:
        head = " ".join(map(str, self._labels[:12]))
        tail = " ..." if self.n_points > 12 else ""
        return f"Partition(n={self.n_points}, k={self.n_clusters}, [{head}{tail}])"


def canonicalize(raw_labels: Iterable[Hashable]) -> Partition:
    """Relabel clusters in order of first appearance.

    >>> canonicalize(["B", "B", "A", "A"]).labels.tolist()
    [0, 0, 1, 1]
    """
    if isinstance(raw_labels, Partition):
        return raw_labels
    arr = np.asarray(raw_labels)
    if arr.size == 0:
        raise PartitionError("empty partition")
    if arr.ndim == 1 and arr.dtype.kind in "iub":
        _, first, inverse = np.unique(arr, return_index=True, return_inverse=True)
        rank = np.empty(first.size, dtype=np.int64)
        rank[np.argsort(first, kind="stable")] = np.arange(first.size)
        return Partition(rank[inverse.ravel()])
    # arbitrary hashable identifiers
    mapping: dict = {}
    out = [mapping.setdefault(x, len(mapping)) for x in list(raw_labels)]
    return Partition(out)


@dataclass(frozen=True)
class Ensemble:
    """An ordered multiset of partitions of the same ``n`` points."""

    members: tuple[Partition, ...]

    def __post_init__(self):
        members = tuple(m if isinstance(m, Partition) else canonicalize(m) for m in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise PartitionError("empty ensemble")
        n = members[0].n_points
        for i, m in enumerate(members):
            if m.n_points != n:
                raise PartitionError(
                    f"inconsistent ensemble: member {i} has {m.n_points} points, expected {n}"
                )

    @classmethod
    def from_labels(cls, rows: Iterable[Iterable[Hashable]]) -> "Ensemble":
        return cls(tuple(canonicalize(r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def n_points(self) -> int:
        return self.members[0].n_points

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]


@dataclass(frozen=True)
class DistinctEnsemble:
    """Distinct partitions with their multiplicities in the source ensemble."""

    partitions: tuple[Partition, ...]
    frequencies: tuple[int, ...]
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not self.partitions:
            raise PartitionError("a distinct ensemble needs at least one partition")
        if len(self.partitions) != len(self.frequencies):
            raise PartitionError("partitions and frequencies differ in length")
        if any(int(v) < 1 for v in self.frequencies):
            raise PartitionError("frequencies must be positive")
        index = {p: i for i, p in enumerate(self.partitions)}
        if len(index) != len(self.partitions):
            raise PartitionError("partitions are not pairwise distinct")
        object.__setattr__(self, "frequencies", tuple(int(v) for v in self.frequencies))
        object.__setattr__(self, "_index", index)

    @property
    def r(self) -> int:
        return len(self.partitions)

    @property
    def total(self) -> int:
        return sum(self.frequencies)

    @property
    def n_points(self) -> int:
        return self.partitions[0].n_points

    def index_of(self, p: Partition) -> int:
        return self._index[p]

    def label_matrix(self) -> np.ndarray:
        """``r x n`` array of canonical labels."""
        return np.vstack([p.labels for p in self.partitions])

    def expand(self) -> Ensemble:
        """Ensemble with each distinct partition repeated by its frequency."""
        return Ensemble(tuple(p for p, v in zip(self.partitions, self.frequencies) for _ in range(v)))

    def subset(self, indices: Sequence[int]) -> list[Partition]:
        return [self.partitions[i] for i in indices]


def deduplicate(ensemble: Ensemble | Iterable[Partition]) -> DistinctEnsemble:
    """Collapse an ensemble to its distinct groupings.

    Distinct partitions keep the order of their first appearance; each one's
    frequency is the number of members with the same grouping.
    """
    if not isinstance(ensemble, Ensemble):
        ensemble = Ensemble(tuple(ensemble))
    counts: dict[Partition, int] = {}
    for p in ensemble:
        counts[p] = counts.get(p, 0) + 1
    return DistinctEnsemble(tuple(counts), tuple(counts.values()))
