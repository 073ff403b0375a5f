"""Word 검증 리포트 내보내기 (누락된 타입은 빨강, 누락된 수단은 파랑)"""

import io
from docx import Document
from docx.shared import Pt, RGBColor
from docx.enum.text import WD_ALIGN_PARAGRAPH

from analyzer.claim_checker import FactCheckReport
from core.template import NO_TYPES_PREFIX, TYPES_PREFIX, render_claim
from core.vocabulary import sort_means, sort_types
from utils.text_cleaner import normalize_whitespace

UNDISCLOSED_TYPE_COLOR = RGBColor(0xC0, 0x00, 0x00)
UNDISCLOSED_MEANS_COLOR = RGBColor(0x00, 0x4E, 0xC0)


class WordExporter:
    def generate(self, report: FactCheckReport) -> bytes:
        doc = Document()

        title = doc.add_heading("수집 클레임 검증 리포트", level=0)
        title.alignment = WD_ALIGN_PARAGRAPH.CENTER

        subtitle = doc.add_paragraph()
        subtitle.alignment = WD_ALIGN_PARAGRAPH.CENTER
        run = subtitle.add_run(report.app_name or "-")
        run.font.size = Pt(14)
        run.font.color.rgb = RGBColor(100, 100, 100)

        doc.add_paragraph()

        table = doc.add_table(rows=0, cols=2)
        table.style = "Table Grid"
        info = [
            ("판정", report.verdict.value),
            ("미공개 데이터 타입", ", ".join(t.phrase for t in sort_types(report.undisclosed_types)) or "-"),
            ("미공개 수집 수단", ", ".join(m.phrase for m in sort_means(report.undisclosed_means)) or "-"),
            ("과잉 주장 데이터 타입", ", ".join(t.phrase for t in sort_types(report.overclaimed_types)) or "-"),
            ("과잉 주장 수집 수단", ", ".join(m.phrase for m in sort_means(report.overclaimed_means)) or "-"),
        ]
        for label, value in info:
            row = table.add_row()
            row.cells[0].text = label
            row.cells[1].text = value

        doc.add_heading("검증된 표준 클레임", level=1)
        self._add_checked_claim(doc, report)

        doc.add_heading("정책 클레임", level=1)
        if report.policy_claim is None:
            doc.add_paragraph("정책에 구체적인 수집 문장이 없습니다 (모호한 문장만 있음).")
        else:
            doc.add_paragraph(render_claim(report.policy_claim))

        if report.citations:
            doc.add_heading("인용된 정책 문장", level=1)
            for ref, text in sorted(report.citations.items()):
                p = doc.add_paragraph(style="List Bullet")
                p.add_run(f"[{ref}] ").bold = True
                p.add_run(normalize_whitespace(text))
                p.paragraph_format.space_after = Pt(2)

        buffer = io.BytesIO()
        doc.save(buffer)
        return buffer.getvalue()

    def _add_checked_claim(self, doc, report: FactCheckReport):
        """표준 문장을 문구 단위 run으로 써서 누락 항목만 색칠"""
        claim = report.evidence_claim
        p = doc.add_paragraph()
        types = sort_types(claim.data_types)
        means = sort_means(claim.means)

        if types:
            p.add_run(TYPES_PREFIX)
            self._add_list(p, [(t.phrase, t in report.undisclosed_types) for t in types], UNDISCLOSED_TYPE_COLOR)
            p.add_run(" interactions")
            if means:
                p.add_run(", along with their ")
        else:
            p.add_run(NO_TYPES_PREFIX)
        if means:
            self._add_list(p, [(m.phrase, m in report.undisclosed_means) for m in means], UNDISCLOSED_MEANS_COLOR)
        p.add_run(".")

    def _add_list(self, paragraph, items: list[tuple[str, bool]], color: RGBColor):
        for i, (phrase, missing) in enumerate(items):
            if i:
                paragraph.add_run(" and " if i == len(items) - 1 else ", ")
            run = paragraph.add_run(phrase)
            if missing:
                run.font.color.rgb = color
                run.bold = True
