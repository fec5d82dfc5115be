"""Tests for loading, validating and writing datasets."""

import shutil

import pytest

from fanoverify import records
from fanoverify.dataset import load_dataset, save_dataset, validate_dataset
from fanoverify.exceptions import DatasetError, FanoVerifyException
from fanoverify.records import SectionRow, SectionTable


@pytest.fixture
def shipped():
    return load_dataset()


@pytest.fixture
def quintic_copy(quintic_dir, tmp_path):
    target = tmp_path / "quintic"
    shutil.copytree(quintic_dir, str(target))
    return target


def replace_in(path, old, new):
    text = path.read_text()
    assert old in text
    path.write_text(text.replace(old, new))


class TestShippedDataset:
    def test_loads_and_validates(self, shipped):
        assert sorted(shipped.keys) == ["Pi13", "Pi14", "Sigma12"]
        assert len(shipped) == 31
        assert validate_dataset(shipped).ok()

    def test_ambient_of_393(self, shipped):
        record = shipped.record(393)
        key = shipped.key_for(record)
        assert records.section_space(key, record, "X").sorted_weights() == [1, 4, 5, 5, 6, 7, 8, 9]
        assert record.ambient_string() == "P(1,4,5^2,6,7,8,9)"

    def test_profiles_match_key_dimension(self, shipped):
        for record in shipped.select():
            key = shipped.key_for(record)
            assert record.profile_sum() == key.dimension - 3

    def test_unknown_class(self, shipped):
        with pytest.raises(DatasetError):
            shipped.record(2)


class TestQuinticDataset:
    def test_load(self, quintic):
        assert len(quintic) == 2
        record = quintic.record(1)
        key = quintic.key_for(record)
        assert key.weights_for(record) == [1, 1, 1, 1, 1, 2]
        assert key.has_equations()
        assert records.section_space(key, record, "T").names == ("x0", "x1", "x2", "y")

    def test_select_sorts(self, quintic):
        assert [r.number for r in quintic.select([2, 1, 2])] == [1, 2]

    def test_wrong_row_weight(self, quintic_copy):
        replace_in(quintic_copy / "classes" / "1.toml", 'rhs = "a*x2"', 'rhs = "a*x2^2"')
        with pytest.raises(DatasetError) as e:
            load_dataset(str(quintic_copy))
        assert e.value.line == 21
        assert "weight 2" in str(e.value)

    def test_row_uses_eliminated(self, quintic_copy):
        replace_in(quintic_copy / "classes" / "1.toml", 'rhs = "b*x2"', 'rhs = "b*x3"')
        dataset = load_dataset(str(quintic_copy), validate=False)
        report = validate_dataset(dataset)
        assert not report.ok()
        assert "uses eliminated x3" in str(report.problems[0])
        assert report.problems[0].line == 26

    def test_undeclared_parameter(self, quintic_copy):
        replace_in(quintic_copy / "classes" / "1.toml", 'rhs = "b*x2"', 'rhs = "c*x2"')
        with pytest.raises(DatasetError) as e:
            load_dataset(str(quintic_copy))
        assert "'c' is not declared" in str(e.value)

    def test_unknown_key(self, quintic_copy):
        replace_in(quintic_copy / "classes" / "2.toml", 'key = "QuinticFail"', 'key = "Sextic"')
        with pytest.raises(DatasetError):
            load_dataset(str(quintic_copy))

    def test_invalid_toml(self, quintic_copy):
        (quintic_copy / "classes" / "2.toml").write_text("number = 2\nkey = \n")
        with pytest.raises(DatasetError) as e:
            load_dataset(str(quintic_copy))
        assert e.value.path.endswith("2.toml")

    def test_format_tag(self, quintic_copy):
        replace_in(quintic_copy / "dataset.toml", "fanoverify-dataset/1", "fanoverify-dataset/0")
        with pytest.raises(DatasetError):
            load_dataset(str(quintic_copy))

    def test_missing_directory(self, tmp_path):
        with pytest.raises(DatasetError):
            load_dataset(str(tmp_path / "nowhere"))

    def test_save(self, quintic, tmp_path):
        save_dataset(quintic, str(tmp_path / "saved"))
        again = load_dataset(str(tmp_path / "saved"))
        assert [r.object() for r in again.select()] == [r.object() for r in quintic.select()]
        assert [k.object() for k in again.keys.values()] == [
            k.object() for k in quintic.keys.values()
        ]


class TestSectionTable:
    def table(self, level="T"):
        rows = [
            SectionRow(1, "a", "0"),
            SectionRow(2, "b", "0"),
            SectionRow(1, "c", "0"),
            SectionRow(1, "d", "0"),
        ]
        return SectionTable(rows, level=level)

    def test_levels(self):
        table = self.table()
        assert table.eliminated("T") == ["a", "b", "c", "d"]
        assert table.eliminated("X") == ["a", "b", "c"]
        assert table.profile("X") == [(1, 2), (2, 1)]

    def test_curve_level(self):
        table = self.table("C")
        assert table.eliminated("T") == ["a", "b", "c"]
        assert table.eliminated("X") == ["a", "b"]

    def test_level_too_deep(self):
        with pytest.raises(FanoVerifyException):
            self.table("T").rows_for("C")

    def test_unknown_level(self):
        with pytest.raises(FanoVerifyException):
            SectionTable([], level="Y")
