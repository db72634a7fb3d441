import numpy as np
import pytest

from esdf.data import Dataset, DatasetError, iris_path, load_dataset


def test_iris():
    d = load_dataset(iris_path(), "species")
    assert (d.n, d.d, d.n_classes) == (150, 4, 3)
    assert d.name == "iris"


def test_two_row_file(tmp_path):
    f = tmp_path / "tiny.csv"
    f.write_text("1.0,2.0,x\n3.0,4.0,x\n")
    d = load_dataset(f)
    assert d.true_labels.labels.tolist() == [0, 0]
    assert d.points.tolist() == [[1, 2], [3, 4]]


def test_whitespace_first_label_and_comments(tmp_path):
    f = tmp_path / "ws.txt"
    f.write_text("# comment\nb 1 2\na 3 4\n\nb 5 6\n")
    d = load_dataset(f, "first")
    assert d.true_labels.labels.tolist() == [0, 1, 0]
    assert d.d == 2


def test_drop_id_column(tmp_path):
    f = tmp_path / "ecoli.data"
    f.write_text("AAT_ECOLI 0.49 0.29 cp\nACEA_ECOLI 0.07 0.40 im\nACEK_ECOLI 0.56 0.40 cp\n")
    d = load_dataset(f, "last", drop_cols=["0"])
    assert d.points.shape == (3, 2)
    assert d.true_labels.labels.tolist() == [0, 1, 0]


def test_named_column_with_header(tmp_path):
    f = tmp_path / "h.csv"
    f.write_text("cls,a,b,id\n1,0.5,0.1,7\n2,0.4,0.2,8\n")
    d = load_dataset(f, "cls", drop_cols=["id"])
    assert d.points.tolist() == [[0.5, 0.1], [0.4, 0.2]]


def test_no_labels(tmp_path):
    f = tmp_path / "x.csv"
    f.write_text("1,2\n3,4\n")
    d = load_dataset(f, "none")
    assert d.true_labels is None and d.d == 2


@pytest.mark.parametrize(
    "content, match",
    [
        ("1,2,a\n3,a\n", "ragged"),
        ("1,2,a\n3,oops,b\n4,5,c\n", "non-numeric"),
    ],
)
def test_errors_name_the_row(tmp_path, content, match):
    f = tmp_path / "bad.csv"
    f.write_text(content)
    with pytest.raises(DatasetError, match=match) as err:
        load_dataset(f)
    assert ":2" in str(err.value)


def test_missing_file(tmp_path):
    with pytest.raises(DatasetError, match="no such"):
        load_dataset(tmp_path / "nope.csv")


def test_standardized():
    d = Dataset(np.array([[1.0, 5.0], [3.0, 5.0], [5.0, 5.0]]))
    z = d.standardized().points
    assert np.allclose(z.mean(axis=0), 0)
    assert np.allclose(z[:, 0].std(), 1) and np.all(z[:, 1] == 0)


def test_dataset_validation():
    with pytest.raises(DatasetError):
        Dataset(np.zeros((1, 2)))
