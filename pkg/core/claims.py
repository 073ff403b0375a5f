"""표준 수집 클레임 (CollectionClaim)과 JSON 직렬화"""

from dataclasses import dataclass, field
from enum import Enum

from core.errors import InvalidClaim
from core.vocabulary import (
    CollectionMeans,
    InteractionDataType,
    sort_means,
    sort_types,
)


class Provenance(Enum):
    POLICY_DERIVED = "policy_derived"
    EVIDENCE_DERIVED = "evidence_derived"
    CHECKED_STANDARDIZED = "checked_standardized"


@dataclass(frozen=True)
class CollectionClaim:
    """어떤 타입의 상호작용 데이터를 어떤 수단으로 수집하는지에 대한 클레임.

    타입/수단은 집합이다 (템플릿은 종류를 말할 뿐 개수를 말하지 않는다).
    생성 시 검증:
    - data_types와 means가 둘 다 비어 있으면 InvalidClaim
    - CHECKED_STANDARDIZED가 아니면 source_refs가 비어 있을 수 없음
    """

    data_types: frozenset[InteractionDataType]
    means: frozenset[CollectionMeans]
    provenance: Provenance
    source_refs: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "data_types", frozenset(self.data_types))
        object.__setattr__(self, "means", frozenset(self.means))
        object.__setattr__(self, "source_refs", tuple(self.source_refs))

        if not self.data_types and not self.means:
            raise InvalidClaim("데이터 타입과 수집 수단이 모두 비어 있는 클레임입니다.")
        if not self.source_refs and self.provenance is not Provenance.CHECKED_STANDARDIZED:
            raise InvalidClaim(
                f"{self.provenance.value} 클레임에는 출처(source_refs)가 필요합니다."
            )

    def to_dict(self) -> dict:
        return {
            "data_types": [t.phrase for t in sort_types(self.data_types)],
            "means": [m.phrase for m in sort_means(self.means)],
            "provenance": self.provenance.value,
            "source_refs": list(self.source_refs),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CollectionClaim":
        if not isinstance(data, dict):
            raise InvalidClaim("클레임 JSON은 객체여야 합니다.")
        try:
            return cls(
                data_types=frozenset(
                    InteractionDataType.from_phrase(p) for p in data.get("data_types", [])
                ),
                means=frozenset(CollectionMeans.from_phrase(p) for p in data.get("means", [])),
                provenance=Provenance(data["provenance"]),
                source_refs=tuple(str(r) for r in data.get("source_refs", [])),
            )
        except (KeyError, TypeError, AttributeError, ValueError) as e:
            if isinstance(e, InvalidClaim):
                raise
            raise InvalidClaim(f"클레임 JSON 형식 오류: {e}") from e
