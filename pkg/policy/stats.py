"""정책 코퍼스 통계 (문장 분류 비율 + 용어/동사 빈도표)"""

from collections import Counter
from dataclasses import dataclass

from policy.extractor import Classification, SentenceFinding, find_collection_sentences
from policy.lexicon import Lexicon
from policy.loader import PolicyDocument


@dataclass(frozen=True)
class PolicyStats:
    doc_count: int
    finding_count: int
    classification_counts: dict[Classification, int]
    term_counts: dict[str, int]   # 정식 용어 → 그 용어가 나온 문장 수
    verb_counts: dict[str, int]

    @property
    def classification_percentages(self) -> dict[Classification, float]:
        """분류별 비율 (%). finding이 없으면 전부 0."""
        if not self.finding_count:
            return {c: 0.0 for c in Classification}
        return {
            c: self.classification_counts.get(c, 0) * 100 / self.finding_count
            for c in Classification
        }

    def top_terms(self, n: int = 5) -> list[tuple[str, int]]:
        return _ranked(self.term_counts)[:n]

    def top_verbs(self, n: int = 5) -> list[tuple[str, int]]:
        return _ranked(self.verb_counts)[:n]

    def to_dict(self) -> dict:
        percentages = self.classification_percentages
        return {
            "doc_count": self.doc_count,
            "finding_count": self.finding_count,
            "classification": {
                c.value: {
                    "count": self.classification_counts.get(c, 0),
                    "percent": round(percentages[c], 1),
                }
                for c in Classification
            },
            "terms": [{"term": t, "count": n} for t, n in _ranked(self.term_counts)],
            "verbs": [{"verb": v, "count": n} for v, n in _ranked(self.verb_counts)],
        }


def stats_from_findings(doc_count: int, findings: list[SentenceFinding]) -> PolicyStats:
    """이미 추출한 finding 목록으로 통계 계산 (CLI는 문서별 추출 결과를 재사용)"""
    classification_counts = Counter(f.classification for f in findings)
    term_counts = Counter(t for f in findings for t in f.matched_terms)
    verb_counts = Counter(v for f in findings for v in f.matched_verbs)
    return PolicyStats(
        doc_count=doc_count,
        finding_count=len(findings),
        classification_counts={c: classification_counts.get(c, 0) for c in Classification},
        term_counts=dict(term_counts),
        verb_counts=dict(verb_counts),
    )


def corpus_policy_stats(docs: list[PolicyDocument], lexicon: Lexicon) -> PolicyStats:
    findings = [f for doc in docs for f in find_collection_sentences(doc, lexicon)]
    return stats_from_findings(len(docs), findings)


def _ranked(counts: dict[str, int]) -> list[tuple[str, int]]:
    # 빈도 내림차순, 같으면 이름순
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
