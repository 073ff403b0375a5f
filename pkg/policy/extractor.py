"""정책 문장에서 상호작용 데이터 수집 문장 탐지 → 분류 → 정책 클레임 합성"""

from dataclasses import dataclass
from enum import Enum

from core.claims import CollectionClaim, Provenance
from core.errors import VagueOnlyPolicy
from core.vocabulary import (
    CollectionMeans,
    InteractionDataType,
    sort_means,
    sort_types,
)
from policy.lexicon import Lexicon
from policy.loader import PolicyDocument


class Classification(Enum):
    BOTH_SPECIFIED = "both_specified"
    MEANS_ONLY = "means_only"
    TYPES_ONLY = "types_only"
    VAGUE = "vague"

    @classmethod
    def of(cls, types, means) -> "Classification":
        if types and means:
            return cls.BOTH_SPECIFIED
        if means:
            return cls.MEANS_ONLY
        if types:
            return cls.TYPES_ONLY
        return cls.VAGUE


@dataclass(frozen=True)
class SentenceFinding:
    doc_id: str
    sentence_index: int
    text: str
    matched_terms: frozenset[str]
    matched_verbs: frozenset[str]
    mentioned_types: frozenset[InteractionDataType]
    mentioned_means: frozenset[CollectionMeans]
    classification: Classification

    @property
    def source_ref(self) -> str:
        return f"{self.doc_id}#{self.sentence_index}"

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "sentence_index": self.sentence_index,
            "text": self.text,
            "matched_terms": sorted(self.matched_terms),
            "matched_verbs": sorted(self.matched_verbs),
            "mentioned_types": [t.phrase for t in sort_types(self.mentioned_types)],
            "mentioned_means": [m.phrase for m in sort_means(self.mentioned_means)],
            "classification": self.classification.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SentenceFinding":
        return cls(
            doc_id=data["doc_id"],
            sentence_index=int(data["sentence_index"]),
            text=data.get("text", ""),
            matched_terms=frozenset(data.get("matched_terms", [])),
            matched_verbs=frozenset(data.get("matched_verbs", [])),
            mentioned_types=frozenset(
                InteractionDataType.from_phrase(p) for p in data.get("mentioned_types", [])
            ),
            mentioned_means=frozenset(
                CollectionMeans.from_phrase(p) for p in data.get("mentioned_means", [])
            ),
            classification=Classification(data["classification"]),
        )


def find_collection_sentences(doc: PolicyDocument, lexicon: Lexicon) -> list[SentenceFinding]:
    """용어 그룹(용어 또는 동의어)이 하나라도 나오는 문장마다 finding 하나.

    동사만 나오는 문장은 제외 (동사 매칭은 정밀도가 낮다). 동사는 기록만 한다.
    """
    findings = []
    for sentence in doc.sentences:
        terms = lexicon.match_terms(sentence.text)
        if not terms:
            continue
        verbs = lexicon.match_verbs(sentence.text)
        types, means = lexicon.match_types_and_means(sentence.text)

        findings.append(SentenceFinding(
            doc_id=doc.doc_id,
            sentence_index=sentence.index,
            text=sentence.text,
            matched_terms=frozenset(m.label for m in terms),
            matched_verbs=frozenset(m.label for m in verbs),
            mentioned_types=frozenset(types),
            mentioned_means=frozenset(means),
            classification=Classification.of(types, means),
        ))
    return findings


def build_policy_claim(findings: list[SentenceFinding]) -> CollectionClaim:
    """모든 finding의 타입/수단 합집합으로 정책 클레임 생성.

    Raises:
        VagueOnlyPolicy: finding이 없거나 전부 Vague (호출자는 "모호한 클레임만 있음"으로 보고)
    """
    types = frozenset().union(*(f.mentioned_types for f in findings))
    means = frozenset().union(*(f.mentioned_means for f in findings))
    if not types and not means:
        raise VagueOnlyPolicy(findings)

    return CollectionClaim(
        data_types=types,
        means=means,
        provenance=Provenance.POLICY_DERIVED,
        source_refs=tuple(f.source_ref for f in findings),
    )
