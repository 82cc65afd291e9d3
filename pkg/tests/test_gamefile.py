"""Game-file schema validation and grid resolution."""

import json

import pytest

from coopetition.demo import coopetitive_game_dict, finite_game_dict
from coopetition.errors import GameFileError
from coopetition.gamefile import (
    DEFAULT_GRID_2D,
    DEFAULT_GRID_3D,
    GRID_ENV_VAR,
    load_game_file,
    resolve_grid,
)


def write(tmp_path, data, name="game.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data, indent=1) if isinstance(data, dict) else data)
    return path


def test_loads_finite_fixture(tmp_path):
    spec = load_game_file(write(tmp_path, finite_game_dict()))
    assert spec.kind == "finite"
    assert spec.finite.rows == 2
    assert spec.finite.row_labels == ("E", "N")


def test_loads_coopetitive_fixture(tmp_path):
    spec = load_game_file(write(tmp_path, coopetitive_game_dict()))
    assert spec.kind == "coopetitive"
    assert len(spec.coopetitive.c_grid) == 65
    assert spec.coopetitive.initial_z == 0.0
    assert spec.analysis.grid_n == 65


def test_invalid_json_reports_line(tmp_path):
    path = write(tmp_path, '{\n  "kind": "finite",\n  broken\n}')
    with pytest.raises(GameFileError) as exc:
        load_game_file(path)
    assert ":3:" in str(exc.value)


def test_missing_kind(tmp_path):
    with pytest.raises(GameFileError, match="kind"):
        load_game_file(write(tmp_path, {"orientation": "gain"}))


def test_bad_orientation(tmp_path):
    data = finite_game_dict()
    data["orientation"] = "up"
    with pytest.raises(GameFileError, match="orientation"):
        load_game_file(write(tmp_path, data))


def test_ragged_matrix_rejected_with_line(tmp_path):
    data = finite_game_dict()
    data["payoff1"] = [[1, 2], [3]]
    path = write(tmp_path, data)
    with pytest.raises(GameFileError, match="rectangular") as exc:
        load_game_file(path)
    line = int(str(exc.value).split(":")[1])
    assert path.read_text().splitlines()[line - 1].strip().startswith('"payoff1"')


def test_matrix_shape_mismatch(tmp_path):
    data = finite_game_dict()
    data["payoff2"] = [[1, 2, 3], [4, 5, 6]]
    with pytest.raises(GameFileError, match="shape"):
        load_game_file(write(tmp_path, data))


def test_nonfinite_entry_rejected(tmp_path):
    data = finite_game_dict()
    data["payoff1"][0][0] = 1e400
    text = json.dumps(data).replace("Infinity", "1e999")
    with pytest.raises(GameFileError):
        load_game_file(write(tmp_path, text))


def test_label_count_checked(tmp_path):
    data = finite_game_dict()
    data["row_labels"] = ["only-one"]
    with pytest.raises(GameFileError, match="row_labels"):
        load_game_file(write(tmp_path, data))


def test_coefficients_need_five_entries(tmp_path):
    data = coopetitive_game_dict()
    data["coefficients"]["p1"] = [1, 2, 3]
    with pytest.raises(GameFileError, match="5 numbers"):
        load_game_file(write(tmp_path, data))


def test_initial_z_off_grid_rejected(tmp_path):
    data = coopetitive_game_dict()
    data["initial_z"] = 0.013
    with pytest.raises(GameFileError, match="initial_z"):
        load_game_file(write(tmp_path, data))


def test_bad_c_grid_size(tmp_path):
    data = coopetitive_game_dict()
    data["c_grid_size"] = 1
    with pytest.raises(GameFileError, match="c_grid_size"):
        load_game_file(write(tmp_path, data))


def test_bad_analysis_block(tmp_path):
    data = finite_game_dict()
    data["analysis"] = {"grid_n": 1}
    with pytest.raises(GameFileError, match="grid_n"):
        load_game_file(write(tmp_path, data))


class TestResolveGrid:
    def test_cli_flag_wins(self, tmp_path, monkeypatch):
        monkeypatch.setenv(GRID_ENV_VAR, "99")
        data = finite_game_dict()
        data["analysis"] = {"grid_n": 55}
        spec = load_game_file(write(tmp_path, data))
        assert resolve_grid(spec, 21) == 21

    def test_file_beats_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv(GRID_ENV_VAR, "99")
        data = finite_game_dict()
        data["analysis"] = {"grid_n": 55}
        spec = load_game_file(write(tmp_path, data))
        assert resolve_grid(spec, None) == 55

    def test_env_beats_default(self, tmp_path, monkeypatch):
        monkeypatch.setenv(GRID_ENV_VAR, "99")
        spec = load_game_file(write(tmp_path, finite_game_dict()))
        assert resolve_grid(spec, None) == 99

    def test_defaults_by_kind(self, tmp_path, monkeypatch):
        monkeypatch.delenv(GRID_ENV_VAR, raising=False)
        finite = load_game_file(write(tmp_path, finite_game_dict(), "a.json"))
        assert resolve_grid(finite, None) == DEFAULT_GRID_2D
        data = coopetitive_game_dict()
        del data["analysis"]
        coop = load_game_file(write(tmp_path, data, "b.json"))
        assert resolve_grid(coop, None) == DEFAULT_GRID_3D

    def test_bad_env_value(self, tmp_path, monkeypatch):
        monkeypatch.setenv(GRID_ENV_VAR, "many")
        spec = load_game_file(write(tmp_path, finite_game_dict()))
        with pytest.raises(GameFileError, match=GRID_ENV_VAR):
            resolve_grid(spec, None)
