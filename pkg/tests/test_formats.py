import numpy as np
import pytest

from esdf.formats import (
    fmt,
    read_ensemble,
    read_partition,
    read_rows,
    write_coassociation_csv,
    write_ensemble,
    write_similarity_csv,
    write_weights_csv,
)
from esdf.partition import Ensemble, canonicalize
from esdf.selection import analyse


def test_ensemble_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    ens = Ensemble.from_labels([rng.integers(0, 4, 30) for _ in range(6)])
    f = tmp_path / "e.txt"
    write_ensemble(f, ens, comment="seed=0\nk=4")
    assert f.read_text().startswith("# seed=0\n# k=4\n")
    again = read_ensemble(f)
    assert again.members == ens.members
    assert read_partition(f, 2) == ens[2]


def test_relabeled_rows_are_canonicalized(tmp_path):
    f = tmp_path / "e.txt"
    f.write_text("5 5 2\n\n# note\n0 1 1\n")
    ens = read_ensemble(f)
    assert [p.labels.tolist() for p in ens] == [[0, 0, 1], [0, 1, 1]]


@pytest.mark.parametrize(
    "content, match",
    [("0 1 x\n", "integers"), ("# only comments\n", "no partitions"), ("0 1 1\n0 1\n", "inconsistent")],
)
def test_bad_ensemble_files(tmp_path, content, match):
    f = tmp_path / "bad.txt"
    f.write_text(content)
    with pytest.raises(ValueError, match=match):
        read_ensemble(f)


def test_fmt():
    assert fmt(3) == "3" and fmt(np.int64(4)) == "4"
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(None) == ""


def test_csv_exports(tmp_path):
    ens = Ensemble.from_labels([[0, 0, 1, 1], [0, 1, 1, 1], [0, 0, 1, 1]])
    an = analyse(ens)
    write_similarity_csv(tmp_path / "s.csv", an.similarity.values)
    rows = read_rows(tmp_path / "s.csv")
    assert len(rows) == 4 and rows[0] == {"i": "0", "j": "0", "ari": "1"}
    write_weights_csv(tmp_path / "w.csv", an.distinct, an.table)
    w = read_rows(tmp_path / "w.csv")
    assert [r["frequency"] for r in w] == ["2", "1"]
    write_coassociation_csv(tmp_path / "c.csv", np.eye(2))
    assert (tmp_path / "c.csv").read_text() == ",0,1\n0,1,0\n1,0,1\n"
