"""분석 서비스 DCM(데이터 수집 메서드) 시그니처 DB

파일 형식 (UTF-8 JSON):
    {"signatures": [
        {"service_name": "Firebase Analytics",
         "class_pattern": "com.google.firebase.analytics.FirebaseAnalytics",
         "method_name": "logEvent",
         "descriptor": "(Ljava/lang/String;Landroid/os/Bundle;)V",
         "category": "EventLog"}, ...]}

class_pattern / descriptor는 정확히 일치하거나, '*'로 끝나면 접두사 일치.
descriptor가 null이면 모든 오버로드에 일치.
"""

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from apk.smali import MethodRef
from config.settings import DEFAULT_SIGDB_PATH
from core.errors import SignatureDbInvalid
from core.vocabulary import CollectionMeans


class DcmCategory(Enum):
    EVENT_LOG = "EventLog"
    TIMED_EVENT = "TimedEvent"
    MOTION_LOG = "MotionLog"
    SCREEN_VIEW = "ScreenView"

    @property
    def default_means(self) -> frozenset[CollectionMeans]:
        means = {CollectionMeans.FREQUENCY}
        if self is DcmCategory.TIMED_EVENT:
            means.add(CollectionMeans.DURATION)
        elif self is DcmCategory.MOTION_LOG:
            means.add(CollectionMeans.MOTION_DETAILS)
        return frozenset(means)


def _pattern_matches(pattern: str, value: str) -> bool:
    if pattern.endswith("*"):
        return value.startswith(pattern[:-1])
    return value == pattern


@dataclass(frozen=True)
class DcmSignature:
    service_name: str
    class_pattern: str
    method_name: str
    descriptor_pattern: str | None
    category: DcmCategory

    def __post_init__(self):
        if not self.class_pattern or self.class_pattern == "*":
            raise SignatureDbInvalid(f"class_pattern이 비어 있습니다 ({self.service_name}).")
        if not self.method_name:
            raise SignatureDbInvalid(f"method_name이 비어 있습니다 ({self.service_name}).")

    def matches_class(self, class_name: str) -> bool:
        return _pattern_matches(self.class_pattern, class_name)

    def matches(self, target: MethodRef) -> bool:
        if target.name != self.method_name or not self.matches_class(target.class_name):
            return False
        return self.descriptor_pattern is None or _pattern_matches(
            self.descriptor_pattern, target.descriptor
        )

    @property
    def specificity(self) -> tuple:
        """정렬 키: 더 구체적인 시그니처가 앞 (정확한 클래스 > 긴 접두사, 정확한 디스크립터 > 패턴 > 없음)"""
        cls_exact = not self.class_pattern.endswith("*")
        desc = self.descriptor_pattern
        desc_rank = 2 if desc is None else (1 if desc.endswith("*") else 0)
        return (not cls_exact, -len(self.class_pattern), desc_rank, -len(desc or ""))

    def to_dict(self) -> dict:
        return {
            "service_name": self.service_name,
            "class_pattern": self.class_pattern,
            "method_name": self.method_name,
            "descriptor": self.descriptor_pattern,
            "category": self.category.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DcmSignature":
        try:
            return cls(
                service_name=str(data["service_name"]),
                class_pattern=str(data["class_pattern"]).strip(),
                method_name=str(data["method_name"]).strip(),
                descriptor_pattern=data.get("descriptor") or None,
                category=DcmCategory(data["category"]),
            )
        except KeyError as e:
            raise SignatureDbInvalid(f"시그니처에 {e.args[0]} 항목이 없습니다: {data}") from None
        except TypeError:
            raise SignatureDbInvalid(f"시그니처 항목은 객체여야 합니다: {data!r}") from None
        except ValueError as e:
            if isinstance(e, SignatureDbInvalid):
                raise
            raise SignatureDbInvalid(f"알 수 없는 category: {data.get('category')!r}") from None


@dataclass(frozen=True)
class SignatureDb:
    signatures: tuple[DcmSignature, ...]

    def __iter__(self):
        return iter(self.signatures)

    def __len__(self):
        return len(self.signatures)

    def match(self, target: MethodRef) -> DcmSignature | None:
        """가장 구체적인 일치 시그니처 (같으면 파일 순서)"""
        candidates = [s for s in self.signatures if s.matches(target)]
        if not candidates:
            return None
        return min(candidates, key=lambda s: s.specificity)

    def is_sdk_class(self, class_name: str) -> bool:
        return any(s.matches_class(class_name) for s in self.signatures)

    def extended(self, extra) -> "SignatureDb":
        return SignatureDb(self.signatures + tuple(extra))

    def to_dict(self) -> dict:
        return {"signatures": [s.to_dict() for s in self.signatures]}


def load_sigdb(path: str | Path | None = None) -> SignatureDb:
    """시그니처 DB 로드. path가 없으면 기본 DB."""
    path = Path(path) if path else DEFAULT_SIGDB_PATH
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise SignatureDbInvalid(f"시그니처 DB를 읽을 수 없습니다 ({path}): {e}") from e
    return sigdb_from_dict(data)


def sigdb_from_dict(data) -> SignatureDb:
    if not isinstance(data, dict) or not isinstance(data.get("signatures"), list):
        raise SignatureDbInvalid('시그니처 DB 최상위는 {"signatures": [...]} 형식이어야 합니다.')
    if not data["signatures"]:
        raise SignatureDbInvalid("시그니처 DB가 비어 있습니다.")
    return SignatureDb(tuple(DcmSignature.from_dict(s) for s in data["signatures"]))
