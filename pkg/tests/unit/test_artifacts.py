from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from core.artifacts import read_csv, to_jsonable, version_string, write_atomic_text, write_csv, write_json
from core.errors import ConfigError


def test_csv_round_trips_every_bit(tmp_path: Path) -> None:
    values = np.random.default_rng(71).normal(scale=1e3, size=200)
    values[:3] = [math.pi, 1.0 / 3.0, 5e-324]
    path = write_csv(tmp_path / "values.csv", pd.DataFrame({"t": np.arange(200.0), "x": values}))
    back = read_csv(path)
    assert back["x"].to_numpy().tobytes() == values.tobytes()
    assert path.read_text(encoding="utf-8").splitlines()[0] == "t,x"


def test_csv_writes_shortest_repr(tmp_path: Path) -> None:
    path = write_csv(tmp_path / "short.csv", pd.DataFrame({"t": [0.0], "v1": [0.3], "v2": [0.1]}))
    assert path.read_text(encoding="utf-8").splitlines()[1] == "0.0,0.3,0.1"
    assert pd.read_csv(path).iloc[0].tolist() == [0.0, 0.3, 0.1]


def test_csv_is_deterministic(tmp_path: Path) -> None:
    frame = pd.DataFrame({"a": [0.1, 0.2], "b": [1, 2]})
    first = write_csv(tmp_path / "a.csv", frame).read_bytes()
    second = write_csv(tmp_path / "b.csv", frame).read_bytes()
    assert first == second
    assert b"\r" not in first


def test_atomic_write_leaves_no_temp_files(tmp_path: Path) -> None:
    target = tmp_path / "nested" / "out.json"
    write_atomic_text(target, "first")
    write_atomic_text(target, "second")
    assert target.read_text(encoding="utf-8") == "second"
    assert [item.name for item in target.parent.iterdir()] == ["out.json"]


def test_unwritable_directory_is_a_config_error(tmp_path: Path) -> None:
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(ConfigError):
        write_atomic_text(blocker / "out.csv", "data")


def test_missing_input_csv(tmp_path: Path) -> None:
    with pytest.raises(ConfigError):
        read_csv(tmp_path / "absent.csv")


def test_to_jsonable_converts_numpy() -> None:
    payload = {"a": np.float64(0.5), "b": np.arange(3), "c": (np.bool_(True), np.int64(4)), 1: None}
    assert to_jsonable(payload) == {"a": 0.5, "b": [0, 1, 2], "c": [True, 4], "1": None}


def test_json_is_sorted_and_round_trips_floats(tmp_path: Path) -> None:
    path = write_json(tmp_path / "side.json", {"z": 0.1 + 0.2, "a": [1e-17]})
    text = path.read_text(encoding="utf-8")
    assert text.index('"a"') < text.index('"z"')
    assert json.loads(text)["z"] == 0.1 + 0.2


def test_version_string_is_stable() -> None:
    assert version_string() == version_string()
    assert version_string()
