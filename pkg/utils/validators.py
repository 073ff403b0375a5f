"""입력 값 검증 유틸리티"""

import re
from pathlib import Path

from config.settings import MAX_REACHABILITY_BOUND

# Java 식별자 (내부 클래스 '$' 포함), 점으로 구분
_CLASS_NAME_RE = re.compile(r"[A-Za-z_$][\w$]*(?:\.[A-Za-z_$][\w$]*)*")
_RESOURCE_ID_RE = re.compile(r"@\+?id/([A-Za-z_][\w.]*)")


def is_valid_class_name(name: str) -> bool:
    """완전한 점 구분 클래스 이름인지 (예: no.nrk.yr.MainActivity)"""
    return bool(name) and _CLASS_NAME_RE.fullmatch(name) is not None


def resource_id_name(value: str | None) -> str | None:
    """레이아웃 id 속성 → 리소스 이름.

    "@+id/myButton", "@id/myButton" → "myButton"
    "@android:id/list" 같은 프레임워크 id는 앱 리소스가 아니므로 None.
    """
    if not value:
        return None
    m = _RESOURCE_ID_RE.fullmatch(value.strip())
    return m.group(1) if m else None


def validate_app_dir(path: str | Path) -> tuple[bool, str]:
    """apktool 디렉터리 검증. (valid, message) 반환."""
    path = Path(path)
    if not path.is_dir():
        return False, f"앱 디렉터리가 없습니다: {path}"
    if not (path / "AndroidManifest.xml").is_file():
        return False, f"AndroidManifest.xml이 없습니다 (apktool로 디코딩한 디렉터리인지 확인해주세요): {path}"
    return True, ""


def validate_input_file(path: str | Path) -> tuple[bool, str]:
    """입력 파일 존재 여부 검증. (valid, message) 반환."""
    path = Path(path)
    if not path.is_file():
        return False, f"파일이 없습니다: {path}"
    return True, ""


def validate_bound(bound: int) -> tuple[bool, str]:
    """도달 가능성 분석 깊이 검증. (valid, message) 반환."""
    if not isinstance(bound, int) or isinstance(bound, bool):
        return False, "탐색 깊이는 정수여야 합니다."
    if bound < 1:
        return False, "탐색 깊이는 1 이상이어야 합니다."
    if bound > MAX_REACHABILITY_BOUND:
        return False, f"탐색 깊이는 {MAX_REACHABILITY_BOUND} 이하여야 합니다."
    return True, ""
