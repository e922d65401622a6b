"""Unit tests for the rb_common module."""

from pathlib import Path

import pytest

from resonant_blocks.rb_common import RBCommon


def _square(value: int) -> int:
    return value * value


def test_is_probable_path():
    assert RBCommon.is_probable_path("/tmp/report.json") is True
    assert RBCommon.is_probable_path("reports/summary.txt") is True
    assert RBCommon.is_probable_path("graphs.json") is True
    assert RBCommon.is_probable_path(Path("config.yaml")) is True
    assert RBCommon.is_probable_path("charpoly") is False


def test_get_project_root():
    root = RBCommon.get_project_root()
    assert (root / "pyproject.toml").exists(), "The project root holds the build manifest"


def test_get_project_root_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("RB_PROJECT_ROOT", str(tmp_path))
    assert RBCommon.get_project_root() == tmp_path.resolve()


def test_select_folder_location(tmp_path):
    target = tmp_path / "reports" / "run1"
    assert RBCommon.select_folder_location(str(target), create_folder=True) == target
    assert target.is_dir(), "Folder created on request"
    assert RBCommon.select_folder_location(None) == RBCommon.get_project_root(), "None means the project root"


def test_select_file_location(tmp_path):
    absolute = tmp_path / "logs" / "run.log"
    assert RBCommon.select_file_location(str(absolute), create_folder=True) == absolute
    assert absolute.parent.is_dir(), "Parent folder created on request"
    assert RBCommon.select_file_location("charpoly") is None, "Not a path"
    assert RBCommon.select_file_location("tests/config.yaml") == (Path.cwd() / "tests/config.yaml").resolve()


def test_get_thread_count(monkeypatch):
    monkeypatch.setenv("RB_THREADS", "3")
    assert RBCommon.get_thread_count() == 3
    monkeypatch.setenv("RB_THREADS", "zero")
    assert RBCommon.get_thread_count() == 1
    monkeypatch.setenv("RB_THREADS", "-4")
    assert RBCommon.get_thread_count() == 1
    monkeypatch.delenv("RB_THREADS")
    assert RBCommon.get_thread_count() == 1


@pytest.mark.parametrize("threads", [1, 2])
def test_parallel_map_keeps_order(threads):
    assert RBCommon.parallel_map(_square, range(10), threads) == [v * v for v in range(10)]


def test_stable_seed():
    seed = RBCommon.stable_seed("[0,0] [1,-1]")
    assert seed == RBCommon.stable_seed("[0,0] [1,-1]"), "Same text, same seed"
    assert seed != RBCommon.stable_seed("[0,0] [-1,-1]t"), "Different text, different seed"
    assert 0 <= seed < 2**64, "64 bit seed"
