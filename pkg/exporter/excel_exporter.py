"""Excel 내보내기 (4시트: 수집 용어/수집 동사/문장 분류/UI 타입)"""

import io
from openpyxl import Workbook
from openpyxl.styles import Font, Alignment, PatternFill, Border, Side

from analyzer.pipeline import CorpusStats
from policy.extractor import Classification


HEADER_FONT = Font(bold=True, size=11, color="FFFFFF")
HEADER_FILL = PatternFill(start_color="4472C4", end_color="4472C4", fill_type="solid")
HEADER_ALIGNMENT = Alignment(horizontal="center", vertical="center", wrap_text=True)
CELL_ALIGNMENT = Alignment(vertical="top", wrap_text=True)
THIN_BORDER = Border(
    left=Side(style="thin"),
    right=Side(style="thin"),
    top=Side(style="thin"),
    bottom=Side(style="thin"),
)

SHEET_TERMS = "수집 용어"
SHEET_VERBS = "수집 동사"
SHEET_CLASSIFICATION = "문장 분류"
SHEET_UI_TYPES = "UI 타입"


class ExcelExporter:
    def generate(self, stats: CorpusStats) -> bytes:
        wb = Workbook()

        ws1 = wb.active
        ws1.title = SHEET_TERMS
        self._write_table(
            ws1, ["용어", "문장 수"],
            [[t, n] for t, n in stats.policy.top_terms(len(stats.policy.term_counts))],
            widths=[30, 12],
        )

        ws2 = wb.create_sheet(SHEET_VERBS)
        self._write_table(
            ws2, ["동사", "문장 수"],
            [[v, n] for v, n in stats.policy.top_verbs(len(stats.policy.verb_counts))],
            widths=[30, 12],
        )

        ws3 = wb.create_sheet(SHEET_CLASSIFICATION)
        self._write_classification_sheet(ws3, stats)

        ws4 = wb.create_sheet(SHEET_UI_TYPES)
        self._write_ui_type_sheet(ws4, stats)

        buffer = io.BytesIO()
        wb.save(buffer)
        return buffer.getvalue()

    def _write_header(self, ws, headers: list[str]):
        for col, h in enumerate(headers, 1):
            cell = ws.cell(row=1, column=col, value=h)
            cell.font = HEADER_FONT
            cell.fill = HEADER_FILL
            cell.alignment = HEADER_ALIGNMENT
            cell.border = THIN_BORDER

    def _write_table(self, ws, headers: list[str], rows: list[list], widths: list[int]):
        self._write_header(ws, headers)
        for i, values in enumerate(rows, 2):
            for col, value in enumerate(values, 1):
                cell = ws.cell(row=i, column=col, value=value)
                cell.border = THIN_BORDER
                cell.alignment = CELL_ALIGNMENT
        for col, width in enumerate(widths):
            ws.column_dimensions[chr(ord("A") + col)].width = width

    def _write_classification_sheet(self, ws, stats: CorpusStats):
        percentages = stats.policy.classification_percentages
        rows = [
            [c.value, stats.policy.classification_counts.get(c, 0), round(percentages[c], 1)]
            for c in Classification
        ]
        self._write_table(ws, ["분류", "문장 수", "비율(%)"], rows, widths=[20, 12, 12])

        row = len(rows) + 3
        ws.cell(row=row, column=1, value="정책 문서 수").font = Font(bold=True)
        ws.cell(row=row, column=2, value=stats.policy.doc_count)
        ws.cell(row=row + 1, column=1, value="수집 문장 수").font = Font(bold=True)
        ws.cell(row=row + 1, column=2, value=stats.policy.finding_count)

    def _write_ui_type_sheet(self, ws, stats: CorpusStats):
        rows = [
            [
                r.label,
                r.apps_collecting,
                round(r.percent_collected, 1),
                r.average_collected,
                ", ".join(f"{m.phrase} ({p:.0f}%)" for m, p in r.top_means),
                ", ".join(f"{c} ({p:.0f}%)" for c, p in r.top_categories),
            ]
            for r in stats.evidence.rows
        ]
        self._write_table(
            ws,
            ["UI 타입", "수집 앱 수", "수집 앱 비율(%)", "평균 수집 건수", "주요 수단", "주요 카테고리"],
            rows,
            widths=[40, 12, 16, 16, 36, 40],
        )

        row = len(rows) + 3
        ws.cell(row=row, column=1, value="앱 수").font = Font(bold=True)
        ws.cell(row=row, column=2, value=stats.evidence.app_count)
