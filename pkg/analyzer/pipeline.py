"""CLI와 Streamlit UI가 공유하는 분석 파이프라인.

- 정책 하나: 로드 → 수집 문장 탐지 → 정책 클레임
- 앱 하나: 로드 → DCM 호출 → 리스너 바인딩 → 연결 → 증거 클레임
- 코퍼스: 매니페스트 항목별로 위 두 작업을 (병렬로) 돌리고 매니페스트 순서로 합친다
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from analyzer.dcm_finder import DcmInvocation, find_dcm_invocations
from analyzer.evidence import EvidenceRecord, associate, build_evidence_claim
from analyzer.evidence_stats import AppEvidenceSummary, EvidenceStats, corpus_evidence_stats
from analyzer.listeners import ListenerBinding, find_listener_bindings
from analyzer.signatures import SignatureDb, load_sigdb
from apk.app_model import AppModel, AppWarning, load_app
from apk.layout import load_widget_table
from config.run_config import ManifestEntry, RunConfig
from config.settings import DEFAULT_REACHABILITY_BOUND, REPORT_VERSION
from core.claims import CollectionClaim
from core.errors import ClaimCheckError, NoEvidence, VagueOnlyPolicy
from core.vocabulary import WidgetKind
from policy.extractor import SentenceFinding, build_policy_claim, find_collection_sentences
from policy.lexicon import Lexicon, load_lexicon
from policy.loader import PolicyDocument, PolicyFormat, load_policy, load_policy_file
from policy.stats import PolicyStats, stats_from_findings
from utils.logger import configure_logging, get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class PolicyResult:
    doc_id: str
    findings: tuple[SentenceFinding, ...]
    claim: CollectionClaim | None          # None: 모호한 문장만 있음

    @property
    def vague_only(self) -> bool:
        return self.claim is None

    @property
    def citations(self) -> dict[str, str]:
        return {f.source_ref: f.text for f in self.findings}


@dataclass(frozen=True)
class AppResult:
    app: AppModel
    invocations: tuple[DcmInvocation, ...]
    bindings: tuple[ListenerBinding, ...]
    records: tuple[EvidenceRecord, ...]
    claim: CollectionClaim | None          # None: 증거 없음
    warnings: tuple[AppWarning, ...] = ()

    @property
    def no_evidence(self) -> bool:
        return self.claim is None


def analyze_policy_document(doc: PolicyDocument, lexicon: Lexicon) -> PolicyResult:
    findings = find_collection_sentences(doc, lexicon)
    try:
        claim = build_policy_claim(findings)
    except VagueOnlyPolicy:
        logger.warning("vague_only_policy", path=doc.doc_id, message="모호한 수집 문장만 있습니다.")
        claim = None
    logger.debug("policy_loaded", path=doc.doc_id, message=f"{len(doc.sentences)} sentences, {len(findings)} findings")
    return PolicyResult(doc_id=doc.doc_id, findings=tuple(findings), claim=claim)


def analyze_policy(path: str | Path, lexicon: Lexicon, fmt: PolicyFormat | None = None) -> PolicyResult:
    """Raises: OSError, EmptyPolicy"""
    return analyze_policy_document(load_policy_file(path, fmt), lexicon)


def analyze_policy_bytes(data: bytes, fmt: PolicyFormat, doc_id: str, lexicon: Lexicon) -> PolicyResult:
    """업로드된 정책 (Streamlit)"""
    return analyze_policy_document(load_policy(data, fmt, doc_id), lexicon)


def analyze_app_model(
    app: AppModel,
    sigdb: SignatureDb,
    bound: int = DEFAULT_REACHABILITY_BOUND,
) -> AppResult:
    warnings: list[AppWarning] = list(app.warnings)
    invocations = find_dcm_invocations(app, sigdb)
    bindings = find_listener_bindings(app, warnings)
    records = associate(app, invocations, bindings, bound)
    try:
        claim = build_evidence_claim(records)
    except NoEvidence:
        logger.warning("no_evidence", path=app.name, message="수집 증거 레코드가 없습니다.")
        claim = None
    return AppResult(
        app=app,
        invocations=tuple(invocations),
        bindings=tuple(bindings),
        records=tuple(records),
        claim=claim,
        warnings=tuple(warnings),
    )


def analyze_app(
    app_dir: str | Path,
    sigdb: SignatureDb,
    bound: int = DEFAULT_REACHABILITY_BOUND,
    widget_table: dict[str, WidgetKind] | None = None,
) -> AppResult:
    """Raises: AppLayoutInvalid, ManifestInvalid, ParseError (매니페스트)"""
    return analyze_app_model(load_app(app_dir, widget_table), sigdb, bound)


# === 코퍼스 ===

@dataclass(frozen=True)
class EntryResult:
    """매니페스트 항목 하나의 결과. 프로세스 사이로 넘기므로 요약만 담는다."""

    entry: ManifestEntry
    findings: tuple[SentenceFinding, ...] | None = None     # None: 정책 없음/실패
    evidence: AppEvidenceSummary | None = None              # None: 앱 없음/실패
    errors: tuple[str, ...] = ()


@dataclass(frozen=True)
class CorpusStats:
    policy: PolicyStats
    evidence: EvidenceStats
    skipped: tuple[tuple[str, str], ...] = field(default=())   # (항목 이름, 오류)

    def to_dict(self) -> dict:
        return {
            "report_version": REPORT_VERSION,
            "policy": self.policy.to_dict(),
            "evidence": self.evidence.to_dict(),
            "skipped": [{"entry": name, "error": error} for name, error in self.skipped],
        }


@lru_cache(maxsize=4)
def _cached_lexicon(path: Path) -> Lexicon:
    return load_lexicon(path)


@lru_cache(maxsize=4)
def _cached_sigdb(path: Path) -> SignatureDb:
    return load_sigdb(path)


@lru_cache(maxsize=4)
def _cached_widgets(path: Path | None):
    return load_widget_table(path)


def analyze_entry(entry: ManifestEntry, config: RunConfig) -> EntryResult:
    """매니페스트 항목 하나 처리 (작업 프로세스에서 실행). 항목별 실패는 errors에 남긴다."""
    findings = evidence = None
    errors = []

    if entry.policy is not None:
        try:
            result = analyze_policy(entry.policy, _cached_lexicon(config.lexicon_path))
            findings = result.findings
        except (OSError, ClaimCheckError) as e:
            errors.append(f"{entry.policy}: {e}")

    if entry.app_dir is not None:
        try:
            result = analyze_app(
                entry.app_dir,
                _cached_sigdb(config.sigdb_path),
                config.reachability_bound,
                _cached_widgets(config.widgets_path),
            )
            evidence = AppEvidenceSummary.from_records(result.app.name, entry.category, list(result.records))
        except (OSError, ClaimCheckError) as e:
            errors.append(f"{entry.app_dir}: {e}")

    return EntryResult(entry=entry, findings=findings, evidence=evidence, errors=tuple(errors))


def _analyze_entry_args(args: tuple[ManifestEntry, RunConfig]) -> EntryResult:
    return analyze_entry(*args)


def run_corpus(config: RunConfig, verbose: bool = False) -> list[EntryResult]:
    """매니페스트 전체 처리. jobs > 1이면 프로세스 풀, 결과는 항상 매니페스트 순서.

    작업 프로세스도 같은 로그 설정(stderr)으로 시작한다.
    """
    tasks = [(entry, config) for entry in config.entries]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(
            max_workers=config.jobs, initializer=configure_logging, initargs=(verbose,)
        ) as pool:
            results = list(pool.map(_analyze_entry_args, tasks, chunksize=max(1, len(tasks) // (config.jobs * 4))))
    else:
        results = [_analyze_entry_args(t) for t in tasks]

    for result in results:
        for error in result.errors:
            logger.warning("entry_failed", path=result.entry.name, message=error)
    return results


def merge_corpus_stats(results: list[EntryResult], include_composite: bool = False) -> CorpusStats:
    """항목 결과 → 정책 통계 + 증거 통계 (실패한 쪽은 집계에서 빠진다)"""
    policy_findings = [r.findings for r in results if r.findings is not None]
    summaries = [r.evidence for r in results if r.evidence is not None]
    return CorpusStats(
        policy=stats_from_findings(
            len(policy_findings), [f for findings in policy_findings for f in findings]
        ),
        evidence=corpus_evidence_stats(summaries, include_composite),
        skipped=tuple((r.entry.name, e) for r in results for e in r.errors),
    )


def corpus_stats(config: RunConfig, verbose: bool = False) -> CorpusStats:
    return merge_corpus_stats(run_corpus(config, verbose), config.include_composite)
