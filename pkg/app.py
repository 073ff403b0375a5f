"""Interaction Claim Checker - Streamlit 메인 앱 (개인정보 처리방침 ↔ 앱 정적 분석 대조)"""

import streamlit as st

from analyzer.claim_checker import check
from analyzer.pipeline import analyze_app, analyze_policy_bytes
from analyzer.signatures import load_sigdb
from config.settings import (
    DEFAULT_REACHABILITY_BOUND,
    DEFAULT_LEXICON_PATH,
    DEFAULT_SIGDB_PATH,
    MAX_REACHABILITY_BOUND,
)
from core.errors import ClaimCheckError
from core.template import render_claim
from exporter.report_renderer import (
    ReportFormat,
    escape_markdown,
    render_app_results,
    render_policy_results,
    render_report,
)
from exporter.word_exporter import WordExporter
from policy.extractor import Classification
from policy.lexicon import load_lexicon
from policy.loader import PolicyFormat
from utils.logger import configure_logging
from utils.validators import validate_app_dir

st.set_page_config(
    page_title="Interaction Claim Checker",
    page_icon="🔍",
    layout="wide",
)

# --- 커스텀 CSS ---
st.markdown("""
<style>
    .main-title { font-size: 2rem; font-weight: 700; margin-bottom: 0.5rem; }
    .sub-title { color: #666; font-size: 1rem; margin-bottom: 2rem; }
    .stButton > button[kind="primary"] { width: 100%; }
    .verdict-badge {
        display: inline-block;
        padding: 4px 12px;
        border-radius: 12px;
        font-weight: 600;
        font-size: 0.85rem;
        margin-left: 8px;
    }
    .badge-ok { background: #03C75A; color: white; }
    .badge-missing { background: #E03131; color: white; }
</style>
""", unsafe_allow_html=True)

_CLASSIFICATION_LABELS = {
    Classification.BOTH_SPECIFIED: "타입+수단",
    Classification.MEANS_ONLY: "수단만",
    Classification.TYPES_ONLY: "타입만",
    Classification.VAGUE: "모호함",
}


@st.cache_resource
def _lexicon():
    return load_lexicon(DEFAULT_LEXICON_PATH)


@st.cache_resource
def _sigdb():
    return load_sigdb(DEFAULT_SIGDB_PATH)


def main():
    configure_logging()
    st.markdown('<div class="main-title">Interaction Claim Checker</div>', unsafe_allow_html=True)
    st.markdown(
        '<div class="sub-title">개인정보 처리방침과 apktool로 디코딩한 앱 디렉터리를 입력하면 '
        '사용자 상호작용 데이터 수집 클레임을 정적 분석 증거와 대조합니다</div>',
        unsafe_allow_html=True,
    )

    # --- 입력 섹션 ---
    uploaded = st.file_uploader("개인정보 처리방침 (HTML 또는 텍스트)", type=["html", "htm", "txt"])
    app_dir = st.text_input(
        "앱 디렉터리",
        placeholder="apktool d app.apk -o decoded/app 로 만든 디렉터리 경로",
    )

    st.subheader("분석 옵션")
    bound = st.slider(
        "콜백 → DCM 최대 호출 간선 수",
        min_value=1,
        max_value=MAX_REACHABILITY_BOUND,
        value=DEFAULT_REACHABILITY_BOUND,
    )

    # --- 분석 시작 ---
    if st.button("분석 시작", type="primary"):
        if uploaded is None:
            st.error("개인정보 처리방침 파일을 업로드해주세요.")
            return
        valid, message = validate_app_dir(app_dir.strip())
        if not valid:
            st.error(message)
            return

        run_analysis(uploaded, app_dir.strip(), bound)

    # --- 하단 고지문 ---
    st.divider()
    st.warning(
        "정적 분석은 실제 동작을 과소 추정합니다. "
        "증거가 없다고 해서 수집하지 않는다는 뜻은 아닙니다. "
        "결과는 반드시 다운로드 받으세요."
    )


def run_analysis(uploaded, app_dir: str, bound: int):
    """정책 추출 → 증거 추출 → 검증"""
    progress = st.progress(0, text="준비 중...")

    try:
        progress.progress(10, text="정책 문장 분석 중...")
        fmt = PolicyFormat.from_path(uploaded.name)
        doc_id = uploaded.name.rsplit(".", 1)[0]
        policy = analyze_policy_bytes(uploaded.getvalue(), fmt, doc_id, _lexicon())

        progress.progress(40, text="앱 정적 분석 중...")
        app = analyze_app(app_dir, _sigdb(), bound)
    except (ClaimCheckError, OSError) as e:
        progress.empty()
        st.error(f"분석 실패: {e}")
        return

    progress.progress(90, text="클레임 검증 중...")
    display_policy(policy)
    display_evidence(app)

    if app.claim is None:
        progress.empty()
        st.error("수집 증거가 없어 검증할 수 없습니다.")
        return

    report = check(policy.claim, app.claim, policy.citations, app_name=app.app.name)
    progress.progress(100, text="완료")
    display_report(report)
    create_downloads(policy, app, report)


def display_policy(policy):
    st.divider()
    st.subheader(f"정책 분석 - {policy.doc_id}")
    with st.expander(f"수집 문장 {len(policy.findings)}개", expanded=False):
        for f in policy.findings:
            st.markdown(f"- `{_CLASSIFICATION_LABELS[f.classification]}` {escape_markdown(f.text)}")
    if policy.claim is None:
        st.warning("모호한 수집 문장만 있어 정책 클레임을 만들 수 없습니다.")
    else:
        st.info(render_claim(policy.claim))


def display_evidence(app):
    st.divider()
    st.subheader(f"앱 분석 - {app.app.name}")
    st.caption(
        f"DCM 호출 {len(app.invocations)}개, 리스너 바인딩 {len(app.bindings)}개, "
        f"증거 레코드 {len(app.records)}개, 경고 {len(app.warnings)}개"
    )
    with st.expander("증거 레코드", expanded=False):
        st.markdown(render_app_results([app], ReportFormat.MARKDOWN))
    if app.warnings:
        with st.expander("경고", expanded=False):
            for w in app.warnings:
                st.markdown(f"- `{w.code}` {escape_markdown(w.path)}: {escape_markdown(w.message)}")


def display_report(report):
    st.divider()
    badge = "badge-missing" if report.has_undisclosed else "badge-ok"
    st.markdown(
        f'검증 결과 <span class="verdict-badge {badge}">{report.verdict.value}</span>',
        unsafe_allow_html=True,
    )
    st.markdown(render_report(report, ReportFormat.MARKDOWN))


def create_downloads(policy, app, report):
    """Word / Markdown / JSON 다운로드 버튼 생성"""
    st.divider()
    st.subheader("다운로드")

    prefix = f"{app.app.name}_claim_check"
    col1, col2, col3, col4 = st.columns(4)

    with col1:
        try:
            word_bytes = WordExporter().generate(report)
            st.download_button(
                label="Word (.docx)",
                data=word_bytes,
                file_name=f"{prefix}.docx",
                mime="application/vnd.openxmlformats-officedocument.wordprocessingml.document",
                key="word",
            )
        except Exception as e:
            st.error(f"Word 생성 실패: {e}")

    with col2:
        st.download_button(
            label="리포트 (.md)",
            data=render_report(report, ReportFormat.MARKDOWN),
            file_name=f"{prefix}.md",
            mime="text/markdown",
            key="markdown",
        )

    with col3:
        st.download_button(
            label="리포트 (.json)",
            data=render_report(report, ReportFormat.JSON),
            file_name=f"{prefix}.json",
            mime="application/json",
            key="json",
        )

    with col4:
        st.download_button(
            label="추출 결과 (.jsonl)",
            data=render_policy_results([policy]) + render_app_results([app]),
            file_name=f"{prefix}_records.jsonl",
            mime="application/json",
            key="jsonl",
        )


if __name__ == "__main__":
    main()
