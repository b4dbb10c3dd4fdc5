import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzyshrink import (
    TFN,
    CrispInputDataset,
    CsvParseError,
    DatasetId,
    DomainError,
    FuzzyInputDataset,
    load_builtin,
    parse_csv,
    write_csv,
)
from fuzzyshrink.datasets import fifteen_percent_spreads, parse_csv_with_fitted

from conftest import tfns

ALL = list(DatasetId)


@pytest.mark.parametrize("id", ALL)
def test_row_counts_agree(id):
    d = load_builtin(id)
    assert len(d.published_fitted) == len(d.published_shrunk) == d.data.n == len(d.data.X)


def test_lookup_by_name():
    assert load_builtin("DATASET2").id is DatasetId.DATASET2
    with pytest.raises(DomainError):
        load_builtin("dataset9")


def test_dataset1_row1():
    d = load_builtin(DatasetId.DATASET1).data
    assert tuple(d.X[0]) == (2.00, 0.00, 15.25)
    assert d.Y[0] == TFN.symmetric(5.83, 3.56)


def test_dataset2_row4():
    d = load_builtin(DatasetId.DATASET2).data
    assert tuple(d.X[3]) == (4,)
    assert d.Y[3] == TFN.symmetric(13.50, 2.60)


def test_dataset3_row12():
    d = load_builtin(DatasetId.DATASET3).data
    assert tuple(d.X[11]) == (6.446, 7.908, 1.9)
    assert d.Y[11] == TFN.symmetric(57.20, 8.580)


def test_dataset3_spreads_are_fifteen_percent():
    d = load_builtin(DatasetId.DATASET3).data
    centers = [y.m for y in d.Y]
    for y, want in zip(d.Y, fifteen_percent_spreads(centers)):
        assert y.l == pytest.approx(want.l, abs=6e-4)


def test_dataset4_response_duplicates_input():
    d = load_builtin(DatasetId.DATASET4)
    assert isinstance(d.data, FuzzyInputDataset)
    assert [tuple(x[0]) for x in d.data.X] == [y.as_tuple() for y in d.data.Y]
    assert d.notes


def test_builtins_are_independent_copies():
    a = load_builtin("dataset2")
    a.fixture_models.clear()
    assert "14a" in load_builtin("dataset2").fixture_models


class TestParse:
    def test_symmetric_crisp_input(self):
        d = parse_csv("x1,y_m,y_s\n1,8.00,1.80\n")
        assert isinstance(d, CrispInputDataset)
        assert d.symmetric
        assert list(d.Y) == [TFN(1.8, 8.0, 1.8)]
        assert d.X.tolist() == [[1.0]]

    def test_fuzzy_input(self):
        d = parse_csv("x_m,x_s,y_m,y_s\n2,0.5,4,1\n")
        assert isinstance(d, FuzzyInputDataset)
        assert d.X.tolist() == [[[0.5, 2.0, 0.5]]]

    def test_triples_and_comments(self):
        text = "# name: demo\n# anything\nx1,x2,y_l,y_m,y_r\n\n1,2,0.5,3,1\n"
        d = parse_csv(text)
        assert d.name == "demo"
        assert d.Y[0] == TFN(0.5, 3, 1)
        assert not d.symmetric

    def test_negative_spread(self):
        with pytest.raises(CsvParseError, match="negative spread at row 1") as err:
            parse_csv("x1,y_m,y_s\n1,8,-1\n")
        assert (err.value.row, err.value.column) == (1, "y_s")

    def test_missing_group_column(self):
        with pytest.raises(CsvParseError, match="missing column") as err:
            parse_csv("x1,y_l,y_m\n1,2,3\n")
        assert err.value.column == "y_r"

    def test_non_numeric(self):
        with pytest.raises(CsvParseError, match="non-numeric") as err:
            parse_csv("x1,y_m,y_s\n1,8,1\nabc,9,1\n")
        assert (err.value.row, err.value.column) == (2, "x1")

    def test_ragged(self):
        with pytest.raises(CsvParseError, match="ragged") as err:
            parse_csv("x1,y_m,y_s\n1,8\n")
        assert err.value.row == 1

    def test_errors_are_distinct(self):
        messages = set()
        for text in ("x1,y_m,y_s\n1,8,-1\n", "x1,y_l,y_m\n1,2,3\n", "x1,y_m,y_s\nq,8,1\n", "x1,y_m,y_s\n1,8\n"):
            with pytest.raises(CsvParseError) as err:
                parse_csv(text)
            messages.add(str(err.value).split(" at ")[0])
        assert len(messages) == 4

    def test_no_header(self):
        with pytest.raises(CsvParseError):
            parse_csv("# only a comment\n")

    def test_missing_response(self):
        with pytest.raises(CsvParseError):
            parse_csv("x1,z_m,z_s\n1,2,3\n")

    def test_parse_error_is_value_error(self):
        with pytest.raises(ValueError):
            parse_csv("x1,y_m,y_s\n1,8,-1\n")


class TestWrite:
    @pytest.mark.parametrize("id", ALL)
    def test_round_trip_builtins(self, id):
        d = load_builtin(id).data
        back = parse_csv(write_csv(d))
        assert type(back) is type(d)
        assert back.name == d.name
        assert np.array_equal(back.X, d.X)
        assert list(back.Y) == list(d.Y)

    def test_fitted_columns(self):
        d = load_builtin("dataset2")
        text = write_csv(d.data, d.published_fitted)
        assert text.splitlines()[1] == "x1,y_m,y_s,yhat_m,yhat_s"
        data, fitted = parse_csv_with_fitted(text)
        assert list(fitted) == list(d.published_fitted)
        assert np.array_equal(data.X, d.data.X)

    def test_fitted_length_mismatch(self):
        d = load_builtin("dataset2")
        with pytest.raises(DomainError):
            write_csv(d.data, d.published_fitted[:-1])

    def test_empty(self):
        d = CrispInputDataset(np.empty((0, 2)), [], "empty")
        lines = write_csv(d).splitlines()
        assert lines[1:] == ["x1,x2,y_m,y_s"]

    @settings(max_examples=200)
    @given(st.lists(tfns(), min_size=1, max_size=8), st.integers(0, 2**32 - 1))
    def test_round_trip_random(self, ys, seed):
        X = np.random.default_rng(seed).normal(0, 1e3, size=(len(ys), 2))
        d = CrispInputDataset(X, ys, "random")
        back = parse_csv(write_csv(d))
        assert np.array_equal(back.X, X)
        assert list(back.Y) == list(ys)
