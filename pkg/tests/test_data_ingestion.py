# tests/test_data_ingestion.py
import numpy as np
import pandas as pd
import pytest

from gi.data_ingestion import dump_samples_csv, load_json, read_csv_smart
from gi.errors import SchemaError


@pytest.mark.parametrize("sep", [",", ";", "\t"])
def test_read_csv_detects_separator(tmp_path, sep):
    path = tmp_path / "samples.csv"
    path.write_text(sep.join(["r", "value"]) + "\n" + sep.join(["1.5", "0.25"]) + "\n", encoding="utf-8")
    df = read_csv_smart(path)
    assert list(df.columns) == ["r", "value"]
    assert df.iloc[0]["value"] == 0.25


def test_dump_then_read_keeps_full_precision(tmp_path):
    path = tmp_path / "dump.csv"
    frame = pd.DataFrame({"r": [1.0, 2.0], "value": [1.0 / 3.0, np.pi]})
    dump_samples_csv(frame, path)
    back = read_csv_smart(path)
    assert back["value"].tolist() == frame["value"].tolist()


def test_malformed_json(tmp_path):
    path = tmp_path / "run.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(SchemaError):
        load_json(path)


def test_json_must_be_object(tmp_path):
    path = tmp_path / "run.json"
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(SchemaError):
        load_json(path)


def test_missing_file(tmp_path):
    with pytest.raises(SchemaError):
        load_json(tmp_path / "absent.json")


def test_missing_csv(tmp_path):
    with pytest.raises(SchemaError):
        read_csv_smart(tmp_path / "absent.csv")


def test_empty_csv(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")
    with pytest.raises(SchemaError):
        read_csv_smart(path)
