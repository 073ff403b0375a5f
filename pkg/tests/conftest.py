from pathlib import Path

import pytest

from analyzer.signatures import load_sigdb
from apk.app_model import load_app
from policy.lexicon import load_lexicon
from tests.synthetic import (
    build_custom_analytics_app,
    build_deep_app,
    build_gesture_app,
    build_manifest_only_app,
    build_paired_timestamp_app,
    build_timed_app,
    build_yr_app,
)
from utils.logger import configure_logging

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def _logging():
    configure_logging(verbose=False)


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon()


@pytest.fixture(scope="session")
def sigdb():
    return load_sigdb()


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def apps_dir(tmp_path_factory) -> Path:
    """고정 앱 디렉터리 전체 (세션당 한 번 생성)"""
    root = tmp_path_factory.mktemp("apps")
    build_yr_app(root / "yr")
    build_gesture_app(root / "gesture")
    build_deep_app(root / "deep")
    build_custom_analytics_app(root / "shop")
    build_timed_app(root / "timed")
    build_paired_timestamp_app(root / "stopwatch")
    build_manifest_only_app(root / "empty")
    return root


@pytest.fixture(scope="session")
def yr_dir(apps_dir) -> Path:
    return apps_dir / "yr"


@pytest.fixture
def yr_app(yr_dir):
    return load_app(yr_dir)
