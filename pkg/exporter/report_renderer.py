"""리포트 렌더링 (Markdown / JSON / 일반 텍스트)

- 검증 리포트: 검증된 표준 클레임 문장에서 누락된 타입은 **굵게**, 누락된 수단은 _기울임_
- 정책/앱 추출 결과: JSON Lines 또는 표
- 코퍼스 통계: 정책 용어/동사 빈도표, 문장 분류, UI 타입별 수집 현황
"""

import json
import re
from enum import Enum

from analyzer.claim_checker import FactCheckReport
from analyzer.pipeline import AppResult, CorpusStats, PolicyResult
from config.settings import CITATION_MAX_LENGTH
from core.template import render_claim
from core.vocabulary import sort_means, sort_types
from policy.extractor import Classification
from utils.text_cleaner import normalize_whitespace, truncate_text

_MD_SPECIAL_RE = re.compile(r"([\\`*_\[\]<>|#])")

_CLASSIFICATION_LABELS = {
    Classification.BOTH_SPECIFIED: "타입+수단 명시",
    Classification.MEANS_ONLY: "수단만 명시",
    Classification.TYPES_ONLY: "타입만 명시",
    Classification.VAGUE: "모호함",
}


class ReportFormat(Enum):
    JSON = "json"
    MARKDOWN = "markdown"
    PLAIN = "plain"


def dump_json(data) -> str:
    """결정적 JSON (키 정렬, 한글 그대로)"""
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def dump_json_lines(items) -> str:
    return "".join(json.dumps(item, sort_keys=True, ensure_ascii=False) + "\n" for item in items)


def escape_markdown(text: str) -> str:
    return _MD_SPECIAL_RE.sub(r"\\\1", text)


def _phrases(items) -> str:
    return ", ".join(i.phrase for i in items) or "-"


# === 검증 리포트 ===

def render_report(report: FactCheckReport, fmt: ReportFormat = ReportFormat.MARKDOWN) -> str:
    if fmt is ReportFormat.JSON:
        return dump_json(report.to_dict())
    if fmt is ReportFormat.PLAIN:
        return _report_plain(report)
    return _report_markdown(report)


def _checked_sentence(report: FactCheckReport, marked: bool) -> str:
    if not marked:
        return render_claim(report.evidence_claim)
    undisclosed_types = {t.phrase for t in report.undisclosed_types}
    undisclosed_means = {m.phrase for m in report.undisclosed_means}
    return render_claim(
        report.evidence_claim,
        decorate_type=lambda p: f"**{p}**" if p in undisclosed_types else p,
        decorate_means=lambda p: f"_{p}_" if p in undisclosed_means else p,
    )


def _policy_sentence(report: FactCheckReport) -> str:
    if report.policy_claim is None:
        return "정책에 구체적인 수집 문장이 없습니다 (모호한 문장만 있음)."
    return render_claim(report.policy_claim)


def _sorted_lists(report: FactCheckReport):
    return (
        sort_types(report.undisclosed_types),
        sort_means(report.undisclosed_means),
        sort_types(report.overclaimed_types),
        sort_means(report.overclaimed_means),
    )


def _report_markdown(report: FactCheckReport) -> str:
    ut, um, ot, om = _sorted_lists(report)
    lines = [
        f"# 수집 클레임 검증 리포트: {escape_markdown(report.app_name or '-')}",
        "",
        f"## 판정: {report.verdict.value}",
        "",
        "## 검증된 표준 클레임",
        "",
        _checked_sentence(report, marked=True),
        "",
        "## 정책 클레임",
        "",
        _policy_sentence(report),
        "",
        "## 차이",
        "",
        "| 구분 | 데이터 타입 | 수집 수단 |",
        "|---|---|---|",
        f"| 미공개 (증거에만 있음) | {_phrases(ut)} | {_phrases(um)} |",
        f"| 과잉 주장 (정책에만 있음) | {_phrases(ot)} | {_phrases(om)} |",
    ]
    if report.citations:
        lines += ["", "## 인용된 정책 문장", ""]
        for ref, text in sorted(report.citations.items()):
            quoted = escape_markdown(truncate_text(normalize_whitespace(text), CITATION_MAX_LENGTH))
            lines.append(f"- `{ref}`: {quoted}")
    return "\n".join(lines) + "\n"


def _report_plain(report: FactCheckReport) -> str:
    ut, um, ot, om = _sorted_lists(report)
    lines = [
        f"수집 클레임 검증 리포트: {report.app_name or '-'}",
        f"판정: {report.verdict.value}",
        "",
        "검증된 표준 클레임:",
        _checked_sentence(report, marked=False),
        "",
        "정책 클레임:",
        _policy_sentence(report),
        "",
        f"미공개 데이터 타입: {_phrases(ut)}",
        f"미공개 수집 수단: {_phrases(um)}",
        f"과잉 주장 데이터 타입: {_phrases(ot)}",
        f"과잉 주장 수집 수단: {_phrases(om)}",
    ]
    if report.citations:
        lines += ["", "인용된 정책 문장:"]
        for ref, text in sorted(report.citations.items()):
            lines.append(f"- [{ref}] {truncate_text(normalize_whitespace(text), CITATION_MAX_LENGTH)}")
    return "\n".join(lines) + "\n"


# === 정책 추출 결과 ===

def policy_claim_line(result: PolicyResult) -> dict:
    return {
        "record": "policy_claim",
        "doc_id": result.doc_id,
        "vague_only": result.vague_only,
        "claim": result.claim.to_dict() if result.claim else None,
        "sentence": render_claim(result.claim) if result.claim else None,
    }


def render_policy_results(results: list[PolicyResult], fmt: ReportFormat = ReportFormat.JSON) -> str:
    if fmt is ReportFormat.JSON:
        lines = []
        for result in results:
            lines.extend({"record": "finding", **f.to_dict()} for f in result.findings)
            lines.append(policy_claim_line(result))
        return dump_json_lines(lines)

    markdown = fmt is ReportFormat.MARKDOWN
    out = []
    for result in results:
        claim = render_claim(result.claim) if result.claim else "모호한 수집 문장만 있어 클레임을 만들 수 없습니다."
        if markdown:
            out += [f"## {escape_markdown(result.doc_id)}", "", "| # | 분류 | 문장 |", "|---|---|---|"]
            for f in result.findings:
                text = escape_markdown(truncate_text(f.text, CITATION_MAX_LENGTH))
                out.append(f"| {f.sentence_index} | {_CLASSIFICATION_LABELS[f.classification]} | {text} |")
            out += ["", f"정책 클레임: {claim}", ""]
        else:
            out += [f"[{result.doc_id}] 수집 문장 {len(result.findings)}개"]
            for f in result.findings:
                out.append(f"  {f.sentence_index:>4}  {_CLASSIFICATION_LABELS[f.classification]:<10} {truncate_text(f.text, 120)}")
            out += [f"정책 클레임: {claim}", ""]
    return "\n".join(out)


# === 앱 증거 결과 ===

def evidence_claim_line(result: AppResult) -> dict:
    return {
        "record": "evidence_claim",
        "app": result.app.name,
        "claim": result.claim.to_dict() if result.claim else None,
        "sentence": render_claim(result.claim) if result.claim else None,
        "invocation_count": len(result.invocations),
        "binding_count": len(result.bindings),
        "warnings": [w.to_dict() for w in result.warnings],
    }


def render_app_results(results: list[AppResult], fmt: ReportFormat = ReportFormat.JSON) -> str:
    if fmt is ReportFormat.JSON:
        lines = []
        for result in results:
            lines.extend({"record": "evidence", **r.to_dict()} for r in result.records)
            lines.append(evidence_claim_line(result))
        return dump_json_lines(lines)

    markdown = fmt is ReportFormat.MARKDOWN
    out = []
    for result in results:
        claim = render_claim(result.claim) if result.claim else "수집 증거가 없습니다."
        if markdown:
            out += [
                f"## {escape_markdown(result.app.name)}", "",
                "| 데이터 타입 | 수집 수단 | 액티비티 | 위젯 | 분석 서비스 | 경로 길이 |",
                "|---|---|---|---|---|---|",
            ]
            for r in result.records:
                widget = escape_markdown(r.widget.label) if r.widget else "-"
                out.append(
                    f"| {r.data_type.phrase} | {_phrases(sort_means(r.means))} "
                    f"| {escape_markdown(r.activity_class)} | {widget} "
                    f"| {escape_markdown(r.invocation.signature.service_name)} | {len(r.call_chain) - 1} |"
                )
            out += ["", f"증거 클레임: {claim}", ""]
        else:
            out += [f"[{result.app.name}] 증거 레코드 {len(result.records)}개"]
            for r in result.records:
                widget = r.widget.label if r.widget else "-"
                out.append(f"  {r.data_type.phrase:<18} {r.activity_class}  {widget}  {r.invocation.site}")
            out += [f"증거 클레임: {claim}", ""]
    return "\n".join(out)


# === 코퍼스 통계 ===

def render_corpus_stats(stats: CorpusStats, fmt: ReportFormat = ReportFormat.JSON) -> str:
    if fmt is ReportFormat.JSON:
        return dump_json(stats.to_dict())

    policy = stats.policy
    evidence = stats.evidence
    percentages = policy.classification_percentages
    md = fmt is ReportFormat.MARKDOWN
    esc = escape_markdown if md else (lambda s: s)

    def table(header: list[str], rows: list[list[str]]) -> list[str]:
        if md:
            return (
                ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
                + ["| " + " | ".join(r) + " |" for r in rows]
            )
        return ["  ".join(header)] + ["  ".join(r) for r in rows]

    def heading(text: str) -> str:
        return f"## {text}" if md else f"[{text}]"

    out = [
        "# 코퍼스 통계" if md else "코퍼스 통계",
        "",
        f"정책 {policy.doc_count}개, 수집 문장 {policy.finding_count}개, 앱 {evidence.app_count}개",
        "",
        heading("수집 용어 빈도"),
    ]
    out += table(["용어", "문장 수"], [[esc(t), str(n)] for t, n in policy.top_terms(len(policy.term_counts))])
    out += ["", heading("수집 동사 빈도")]
    out += table(["동사", "문장 수"], [[esc(v), str(n)] for v, n in policy.top_verbs(len(policy.verb_counts))])
    out += ["", heading("문장 분류")]
    out += table(
        ["분류", "문장 수", "비율"],
        [
            [_CLASSIFICATION_LABELS[c], str(policy.classification_counts.get(c, 0)), f"{percentages[c]:.1f}%"]
            for c in Classification
        ],
    )
    out += ["", heading("UI 타입별 수집 현황")]
    out += table(
        ["UI 타입", "수집 앱 비율", "평균 수집 건수", "주요 수단", "주요 카테고리"],
        [
            [
                esc(row.label),
                f"{row.percent_collected:.1f}%",
                str(row.average_collected),
                ", ".join(f"{m.phrase} ({p:.0f}%)" for m, p in row.top_means) or "-",
                ", ".join(f"{esc(c)} ({p:.0f}%)" for c, p in row.top_categories) or "-",
            ]
            for row in evidence.rows
        ],
    )
    if stats.skipped:
        out += ["", heading("건너뛴 항목")]
        out += [f"- {esc(name)}: {esc(error)}" for name, error in stats.skipped]
    return "\n".join(out) + "\n"
