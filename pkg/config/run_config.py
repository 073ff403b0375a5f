"""실행 설정 (RunConfig)과 코퍼스 매니페스트 로드"""

import json
from dataclasses import dataclass, replace
from pathlib import Path

from config.settings import (
    DEFAULT_CATEGORY,
    DEFAULT_LEXICON_PATH,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_REACHABILITY_BOUND,
    DEFAULT_SIGDB_PATH,
    OUTPUT_FORMATS,
)
from core.errors import ConfigInvalid
from utils.validators import validate_app_dir, validate_bound, validate_input_file


@dataclass(frozen=True)
class ManifestEntry:
    """코퍼스 매니페스트 한 줄. app_dir, policy 중 하나는 있어야 한다."""

    app_dir: Path | None
    policy: Path | None
    category: str = DEFAULT_CATEGORY

    @property
    def name(self) -> str:
        return (self.app_dir or self.policy).name


@dataclass(frozen=True)
class RunConfig:
    lexicon_path: Path = DEFAULT_LEXICON_PATH
    sigdb_path: Path = DEFAULT_SIGDB_PATH
    reachability_bound: int = DEFAULT_REACHABILITY_BOUND
    output_format: str = DEFAULT_OUTPUT_FORMAT
    jobs: int = 1
    entries: tuple[ManifestEntry, ...] = ()
    widgets_path: Path | None = None
    include_composite: bool = False

    def validate(self) -> "RunConfig":
        """참조 경로 존재, bound, 출력 형식, jobs 검증.

        Raises:
            ConfigInvalid: 첫 번째로 발견한 문제
        """
        for path in (self.lexicon_path, self.sigdb_path, self.widgets_path):
            if path is not None:
                valid, message = validate_input_file(path)
                if not valid:
                    raise ConfigInvalid(message)
        valid, message = validate_bound(self.reachability_bound)
        if not valid:
            raise ConfigInvalid(message)
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigInvalid(
                f"지원하지 않는 출력 형식: {self.output_format} (가능: {', '.join(OUTPUT_FORMATS)})"
            )
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ConfigInvalid("jobs는 1 이상의 정수여야 합니다.")
        for entry in self.entries:
            if entry.app_dir is not None:
                valid, message = validate_app_dir(entry.app_dir)
                if not valid:
                    raise ConfigInvalid(message)
            if entry.policy is not None:
                valid, message = validate_input_file(entry.policy)
                if not valid:
                    raise ConfigInvalid(message)
        return self

    def with_overrides(self, **overrides) -> "RunConfig":
        """None이 아닌 값만 덮어쓴다 (CLI 플래그 > 설정 파일)"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        """JSON 설정 파일 로드. 상대 경로는 설정 파일 위치 기준.

        키: lexicon, sigdb, bound, format, jobs, manifest, widgets, composite
        """
        path = Path(path)
        data = _read_json(path)
        if not isinstance(data, dict):
            raise ConfigInvalid(f"설정 파일은 JSON 객체여야 합니다: {path}")

        unknown = set(data) - {"lexicon", "sigdb", "bound", "format", "jobs", "manifest", "widgets", "composite"}
        if unknown:
            raise ConfigInvalid(f"알 수 없는 설정 키: {', '.join(sorted(unknown))}")

        base = path.parent
        config = cls()
        overrides = {
            "lexicon_path": _resolve(base, data.get("lexicon")),
            "sigdb_path": _resolve(base, data.get("sigdb")),
            "widgets_path": _resolve(base, data.get("widgets")),
            "reachability_bound": data.get("bound"),
            "output_format": data.get("format"),
            "jobs": data.get("jobs"),
            "include_composite": data.get("composite"),
        }
        if data.get("manifest") is not None:
            overrides["entries"] = load_manifest(_resolve(base, data["manifest"]))
        return config.with_overrides(**overrides)


def load_manifest(path: str | Path) -> tuple[ManifestEntry, ...]:
    """코퍼스 매니페스트: [{"app_dir": ..., "policy": ..., "category": ...}, ...]

    상대 경로는 매니페스트 파일 위치 기준. 순서는 파일 순서 그대로.

    Raises:
        ConfigInvalid: 형식 오류 또는 빈 매니페스트
    """
    path = Path(path)
    data = _read_json(path)
    if not isinstance(data, list):
        raise ConfigInvalid(f"매니페스트는 JSON 배열이어야 합니다: {path}")
    if not data:
        raise ConfigInvalid(f"매니페스트가 비어 있습니다: {path}")

    entries = []
    for i, item in enumerate(data):
        if not isinstance(item, dict):
            raise ConfigInvalid(f"매니페스트 {i}번째 항목이 객체가 아닙니다.")
        app_dir = _resolve(path.parent, item.get("app_dir"))
        policy = _resolve(path.parent, item.get("policy"))
        if app_dir is None and policy is None:
            raise ConfigInvalid(f"매니페스트 {i}번째 항목에 app_dir과 policy가 모두 없습니다.")
        category = item.get("category") or DEFAULT_CATEGORY
        if not isinstance(category, str):
            raise ConfigInvalid(f"매니페스트 {i}번째 항목의 category가 문자열이 아닙니다.")
        entries.append(ManifestEntry(app_dir=app_dir, policy=policy, category=category))
    return tuple(entries)


def _read_json(path: Path):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigInvalid(f"설정 파일을 읽을 수 없습니다: {path} ({e.strerror})") from e
    except json.JSONDecodeError as e:
        raise ConfigInvalid(f"JSON 형식 오류: {path} ({e.msg}, {e.lineno}행)") from e


def _resolve(base: Path, value) -> Path | None:
    if value is None:
        return None
    if not isinstance(value, str) or not value:
        raise ConfigInvalid(f"경로 값이 올바르지 않습니다: {value!r}")
    p = Path(value)
    return p if p.is_absolute() else base / p
