"""클레임 검증: 정책 클레임 vs 증거 클레임 비교와 판정"""

from dataclasses import dataclass, field
from enum import Enum

from config.settings import REPORT_VERSION
from core.claims import CollectionClaim, Provenance
from core.errors import InvalidClaim, ProvenanceError
from core.vocabulary import (
    CollectionMeans,
    InteractionDataType,
    sort_means,
    sort_types,
)

_POLICY_PROVENANCES = {Provenance.POLICY_DERIVED, Provenance.CHECKED_STANDARDIZED}


class Verdict(Enum):
    COMPLETE = "Complete"
    INCOMPLETE = "Incomplete"
    OVERCLAIMED = "Overclaimed"
    MIXED = "Mixed"

    @classmethod
    def of(cls, undisclosed: bool, overclaimed: bool) -> "Verdict":
        """누락 없음 + 과잉 없음 → Complete, 누락만 → Incomplete,
        과잉만 → Overclaimed, 둘 다 → Mixed
        """
        if undisclosed:
            return cls.MIXED if overclaimed else cls.INCOMPLETE
        return cls.OVERCLAIMED if overclaimed else cls.COMPLETE

    @property
    def is_disclosure_complete(self) -> bool:
        """공개 완전성 기준: 증거에 있는 것이 모두 정책에 있음"""
        return self in (Verdict.COMPLETE, Verdict.OVERCLAIMED)


@dataclass(frozen=True)
class ClaimDiff:
    """a − b, b − a 집합 차 (출처와 무관)"""

    only_a_types: frozenset[InteractionDataType]
    only_a_means: frozenset[CollectionMeans]
    only_b_types: frozenset[InteractionDataType]
    only_b_means: frozenset[CollectionMeans]


def _parts(claim: CollectionClaim | None) -> tuple[frozenset, frozenset]:
    if claim is None:
        return frozenset(), frozenset()
    return claim.data_types, claim.means


def diff_claims(a: CollectionClaim | None, b: CollectionClaim | None) -> ClaimDiff:
    """None은 아무것도 주장하지 않는 클레임으로 본다"""
    a_types, a_means = _parts(a)
    b_types, b_means = _parts(b)
    return ClaimDiff(
        only_a_types=a_types - b_types,
        only_a_means=a_means - b_means,
        only_b_types=b_types - a_types,
        only_b_means=b_means - a_means,
    )


@dataclass(frozen=True)
class FactCheckReport:
    policy_claim: CollectionClaim | None
    evidence_claim: CollectionClaim
    undisclosed_types: frozenset[InteractionDataType]
    undisclosed_means: frozenset[CollectionMeans]
    overclaimed_types: frozenset[InteractionDataType]
    overclaimed_means: frozenset[CollectionMeans]
    verdict: Verdict
    citations: dict[str, str] = field(default_factory=dict)   # source_ref → 정책 문장
    app_name: str | None = None

    @property
    def policy_vague_only(self) -> bool:
        """정책이 모호한 문장만 있어 클레임이 없었음"""
        return self.policy_claim is None

    @property
    def has_undisclosed(self) -> bool:
        return bool(self.undisclosed_types or self.undisclosed_means)

    def to_dict(self) -> dict:
        return {
            "report_version": REPORT_VERSION,
            "app_name": self.app_name,
            "policy_claim": self.policy_claim.to_dict() if self.policy_claim else None,
            "policy_vague_only": self.policy_vague_only,
            "evidence_claim": self.evidence_claim.to_dict(),
            "undisclosed_types": [t.phrase for t in sort_types(self.undisclosed_types)],
            "undisclosed_means": [m.phrase for m in sort_means(self.undisclosed_means)],
            "overclaimed_types": [t.phrase for t in sort_types(self.overclaimed_types)],
            "overclaimed_means": [m.phrase for m in sort_means(self.overclaimed_means)],
            "verdict": self.verdict.value,
            "citations": dict(sorted(self.citations.items())),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FactCheckReport":
        if not isinstance(data, dict):
            raise InvalidClaim("리포트 JSON은 객체여야 합니다.")
        version = data.get("report_version")
        if version != REPORT_VERSION:
            raise InvalidClaim(f"지원하지 않는 report_version: {version!r}")
        try:
            policy = data.get("policy_claim")
            return cls(
                policy_claim=CollectionClaim.from_dict(policy) if policy is not None else None,
                evidence_claim=CollectionClaim.from_dict(data["evidence_claim"]),
                undisclosed_types=frozenset(map(InteractionDataType.from_phrase, data["undisclosed_types"])),
                undisclosed_means=frozenset(map(CollectionMeans.from_phrase, data["undisclosed_means"])),
                overclaimed_types=frozenset(map(InteractionDataType.from_phrase, data["overclaimed_types"])),
                overclaimed_means=frozenset(map(CollectionMeans.from_phrase, data["overclaimed_means"])),
                verdict=Verdict(data["verdict"]),
                citations={str(k): str(v) for k, v in data.get("citations", {}).items()},
                app_name=data.get("app_name"),
            )
        except (KeyError, TypeError, AttributeError, ValueError) as e:
            if isinstance(e, InvalidClaim):
                raise
            raise InvalidClaim(f"리포트 JSON 형식 오류: {e}") from e


def check(
    policy: CollectionClaim | None,
    evidence: CollectionClaim,
    citations: dict[str, str] | None = None,
    app_name: str | None = None,
) -> FactCheckReport:
    """정책 클레임을 증거 클레임과 비교.

    policy=None은 모호한 문장만 있는 정책: 증거의 모든 타입/수단이 누락으로 잡힌다.

    Raises:
        ProvenanceError: policy가 PolicyDerived/CheckedStandardized가 아니거나
            evidence가 EvidenceDerived가 아님
    """
    if policy is not None and policy.provenance not in _POLICY_PROVENANCES:
        raise ProvenanceError(
            f"정책 클레임의 출처가 올바르지 않습니다: {policy.provenance.value}"
        )
    if evidence.provenance is not Provenance.EVIDENCE_DERIVED:
        raise ProvenanceError(
            f"증거 클레임의 출처가 올바르지 않습니다: {evidence.provenance.value}"
        )

    diff = diff_claims(evidence, policy)
    undisclosed = bool(diff.only_a_types or diff.only_a_means)
    overclaimed = bool(diff.only_b_types or diff.only_b_means)

    cited = {}
    if policy is not None and citations:
        cited = {ref: citations[ref] for ref in policy.source_refs if ref in citations}

    return FactCheckReport(
        policy_claim=policy,
        evidence_claim=evidence,
        undisclosed_types=diff.only_a_types,
        undisclosed_means=diff.only_a_means,
        overclaimed_types=diff.only_b_types,
        overclaimed_means=diff.only_b_means,
        verdict=Verdict.of(undisclosed, overclaimed),
        citations=cited,
        app_name=app_name,
    )
