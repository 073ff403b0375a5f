import json

import pytest

from config.run_config import RunConfig, load_manifest
from config.settings import DEFAULT_CATEGORY, DEFAULT_REACHABILITY_BOUND
from core.errors import ConfigInvalid


def _write(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_defaults_are_valid():
    config = RunConfig().validate()
    assert config.reachability_bound == DEFAULT_REACHABILITY_BOUND
    assert config.output_format == "json"
    assert config.jobs == 1


def test_overrides_skip_none():
    config = RunConfig(jobs=3).with_overrides(jobs=None, reachability_bound=7)
    assert (config.jobs, config.reachability_bound) == (3, 7)


@pytest.mark.parametrize("overrides", [
    {"reachability_bound": 0},
    {"reachability_bound": 100},
    {"output_format": "yaml"},
    {"jobs": 0},
])
def test_invalid_values(overrides):
    with pytest.raises(ConfigInvalid):
        RunConfig().with_overrides(**overrides).validate()


def test_missing_reference_file(tmp_path):
    with pytest.raises(ConfigInvalid):
        RunConfig(lexicon_path=tmp_path / "nope.json").validate()


def test_manifest_paths_are_relative_to_file(tmp_path, yr_dir):
    (tmp_path / "p.txt").write_text("We use analytics.", encoding="utf-8")
    path = _write(tmp_path / "manifest.json", [
        {"app_dir": str(yr_dir), "policy": "p.txt", "category": "weather"},
        {"policy": "p.txt"},
    ])
    entries = load_manifest(path)
    assert entries[0].app_dir == yr_dir
    assert entries[0].policy == tmp_path / "p.txt"
    assert entries[0].category == "weather"
    assert entries[0].name == "yr"
    assert entries[1].app_dir is None
    assert entries[1].category == DEFAULT_CATEGORY
    assert entries[1].name == "p.txt"
    RunConfig(entries=entries).validate()


@pytest.mark.parametrize("data", [
    [],
    {"app_dir": "a"},
    [{"category": "x"}],
    ["a"],
    [{"policy": "p.txt", "category": 3}],
    [{"policy": ""}],
])
def test_bad_manifest(tmp_path, data):
    with pytest.raises(ConfigInvalid):
        load_manifest(_write(tmp_path / "m.json", data))


def test_manifest_entries_must_exist(tmp_path):
    entries = load_manifest(_write(tmp_path / "m.json", [{"app_dir": "missing"}]))
    with pytest.raises(ConfigInvalid, match="앱 디렉터리"):
        RunConfig(entries=entries).validate()


def test_config_file(tmp_path):
    (tmp_path / "p.txt").write_text("We use analytics.", encoding="utf-8")
    _write(tmp_path / "m.json", [{"policy": "p.txt"}])
    path = _write(tmp_path / "run.json", {"bound": 7, "format": "markdown", "jobs": 2, "manifest": "m.json"})
    config = RunConfig.from_file(path).validate()
    assert config.reachability_bound == 7
    assert config.output_format == "markdown"
    assert config.jobs == 2
    assert config.entries[0].policy == tmp_path / "p.txt"


def test_config_file_errors(tmp_path):
    with pytest.raises(ConfigInvalid, match="알 수 없는 설정 키"):
        RunConfig.from_file(_write(tmp_path / "a.json", {"bond": 5}))
    bad = tmp_path / "b.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(ConfigInvalid):
        RunConfig.from_file(bad)
    with pytest.raises(ConfigInvalid):
        RunConfig.from_file(tmp_path / "missing.json")
