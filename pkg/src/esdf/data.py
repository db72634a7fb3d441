"""Loading labelled tabular datasets from CSV or whitespace-delimited text."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .partition import Partition, canonicalize


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class Dataset:
    points: np.ndarray
    true_labels: Partition | None = None
    name: str = "dataset"

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 2 or pts.shape[1] < 1:
            raise DatasetError(f"need an n x d point matrix with n >= 2, d >= 1; got shape {pts.shape}")
        if self.true_labels is not None and self.true_labels.n_points != pts.shape[0]:
            raise DatasetError("ground truth length does not match the number of points")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def n_classes(self) -> int | None:
        return None if self.true_labels is None else self.true_labels.n_clusters

    def standardized(self) -> "Dataset":
        """Copy with every feature z-scored; constant features are only centred."""
        mu = self.points.mean(axis=0)
        sd = self.points.std(axis=0)
        sd[sd == 0] = 1.0
        return Dataset((self.points - mu) / sd, self.true_labels, self.name)


def iris_path() -> Path:
    """Path of the bundled copy of the UCI Iris data (label column ``species``)."""
    return Path(str(resources.files("esdf") / "data" / "iris.csv"))


def _split(line: str, delimiter: str | None) -> list[str]:
    if delimiter is None:
        return line.split()
    return [c.strip() for c in next(csv.reader([line], delimiter=delimiter))]


def _is_number(tok: str) -> bool:
    try:
        float(tok)
    except ValueError:
        return False
    return True


def _is_name(spec) -> bool:
    return isinstance(spec, str) and spec not in ("first", "last", "none") and not spec.lstrip("-").isdigit()


def _resolve_column(spec, header: list[str] | None, width: int) -> int | None:
    if spec is None or spec == "none":
        return None
    if spec == "first":
        return 0
    if spec == "last":
        return width - 1
    if isinstance(spec, int) or (isinstance(spec, str) and spec.lstrip("-").isdigit()):
        idx = int(spec)
        if not -width <= idx < width:
            raise DatasetError(f"column index {idx} out of range for {width} columns")
        return idx % width
    if header is None:
        raise DatasetError(f"column {spec!r} given by name but the file has no header row")
    if spec not in header:
        raise DatasetError(f"no column named {spec!r}; header is {header}")
    return header.index(spec)


def load_dataset(
    path,
    label_col="last",
    drop_cols: Sequence = (),
    delimiter: str | None = "auto",
    name: str | None = None,
) -> Dataset:
    """Read a numeric feature table with an optional class column.

    Parameters
    ----------
    path : path-like
        CSV or whitespace-separated text. ``#`` lines and blank lines are
        skipped. A first row with any non-numeric feature cell is a header.
    label_col : {"first", "last", "none"}, int or str
        Column holding the ground-truth classes, by position or header name.
    drop_cols : sequence of int or str
        Extra columns to ignore, e.g. identifier columns.
    delimiter : str, None or "auto"
        ``None`` splits on whitespace; ``"auto"`` picks comma when present.
    """
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"no such dataset file: {path}")
    rows: list[tuple[int, list[str]]] = []
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if delimiter == "auto":
                delimiter = "," if "," in stripped else ("\t" if "\t" in stripped else None)
            rows.append((lineno, _split(stripped, delimiter)))
    if not rows:
        raise DatasetError(f"{path}: no data rows")
    width = len(rows[0][1])
    for lineno, cells in rows:
        if len(cells) != width:
            raise DatasetError(f"{path}:{lineno}: ragged row with {len(cells)} cells, expected {width}")

    header = None
    first = rows[0][1]
    by_name = [c for c in (label_col, *drop_cols) if _is_name(c)]
    if by_name:
        has_header = True
    else:
        skip = {_resolve_column(c, None, width) for c in (label_col, *drop_cols)}
        text = [j for j, c in enumerate(first) if j not in skip and not _is_number(c)]
        # a bad first data row looks like a header unless the next row disagrees
        has_header = bool(text) and (len(rows) == 1 or all(_is_number(rows[1][1][j]) for j in text))
    if has_header:
        header = first
        rows = rows[1:]
        if not rows:
            raise DatasetError(f"{path}: header but no data rows")

    label_idx = _resolve_column(label_col, header, width)
    dropped = {_resolve_column(c, header, width) for c in drop_cols}
    feature_idx = [j for j in range(width) if j != label_idx and j not in dropped]
    if not feature_idx:
        raise DatasetError("no feature columns left")

    points = np.empty((len(rows), len(feature_idx)))
    labels = []
    for i, (lineno, cells) in enumerate(rows):
        for out_j, j in enumerate(feature_idx):
            try:
                points[i, out_j] = float(cells[j])
            except ValueError:
                col = header[j] if header else j
                raise DatasetError(f"{path}:{lineno}: non-numeric value {cells[j]!r} in column {col}") from None
        if label_idx is not None:
            labels.append(cells[label_idx])
    truth = canonicalize(labels) if label_idx is not None else None
    return Dataset(points, truth, name or path.stem)
