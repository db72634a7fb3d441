"""Plain-text ensemble files and CSV exports."""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .partition import DistinctEnsemble, Ensemble, Partition, canonicalize


def fmt(x) -> str:
    """Stable text form of a number for CSV output."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def read_ensemble(path) -> Ensemble:
    """One partition per row of whitespace-separated labels; ``#`` lines are comments."""
    rows = []
    with Path(path).open() as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            try:
                rows.append([int(tok) for tok in s.split()])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: labels must be integers") from None
    if not rows:
        raise ValueError(f"{path}: no partitions")
    return Ensemble.from_labels(rows)


def write_ensemble(path, partitions: Iterable[Partition], comment: str | None = None) -> None:
    with Path(path).open("w") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        for p in partitions:
            fh.write(" ".join(map(str, p.labels.tolist())) + "\n")


def read_partition(path, row: int = 0) -> Partition:
    return read_ensemble(path)[row]


def write_rows(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) if not isinstance(v, str) else v for v in row])


def read_rows(path) -> list[dict[str, str]]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh))


def write_similarity_csv(path, values: np.ndarray) -> None:
    r = values.shape[0]
    write_rows(path, ("i", "j", "ari"), ((i, j, values[i, j]) for i in range(r) for j in range(r)))


def write_weights_csv(path, e: DistinctEnsemble, table) -> None:
    write_rows(
        path,
        ("i", "frequency", "mar", "diversity", "weight"),
        ((i, e.frequencies[i], table.mar[i], table.diversity[i], table.weight[i]) for i in range(e.r)),
    )


def write_selection_csv(path, e: DistinctEnsemble, table, selected: Sequence[int]) -> None:
    write_rows(
        path,
        ("rank", "partition_index", "frequency", "mar", "diversity", "weight"),
        (
            (rank, i, e.frequencies[i], table.mar[i], table.diversity[i], table.weight[i])
            for rank, i in enumerate(selected)
        ),
    )


def write_coassociation_csv(path, values: np.ndarray) -> None:
    n = values.shape[0]
    write_rows(path, [""] + [str(j) for j in range(n)], ([i, *values[i]] for i in range(n)))


def as_partition(x) -> Partition:
    return x if isinstance(x, Partition) else canonicalize(x)
