"""코퍼스 수집 증거 통계 (UI 타입별 수집 앱 비율, 평균 수집 건수, 주요 수단, 주요 카테고리)"""

from collections import Counter
from dataclasses import dataclass, field

from analyzer.evidence import EvidenceRecord
from config.settings import STATS_TOP_CATEGORIES, STATS_TOP_MEANS
from core.vocabulary import (
    MEANS_ORDER,
    UI_TYPE_LABELS,
    CollectionMeans,
    InteractionDataType,
)

# 통계 표 행 순서
STATS_ROW_ORDER = (
    InteractionDataType.APP_PRESENTATION,
    InteractionDataType.BINARY,
    InteractionDataType.USER_INPUT,
    InteractionDataType.CATEGORICAL,
    InteractionDataType.GESTURE,
)


@dataclass(frozen=True)
class AppEvidenceSummary:
    """앱 하나의 레코드 요약. 병렬 작업 결과를 합칠 때 레코드 대신 이것만 넘긴다."""

    app_name: str
    category: str
    type_counts: dict[InteractionDataType, int] = field(default_factory=dict)
    type_means: dict[InteractionDataType, frozenset[CollectionMeans]] = field(default_factory=dict)

    @classmethod
    def from_records(cls, app_name: str, category: str, records: list[EvidenceRecord]) -> "AppEvidenceSummary":
        counts: Counter = Counter()
        means: dict[InteractionDataType, set] = {}
        for record in records:
            counts[record.data_type] += 1
            means.setdefault(record.data_type, set()).update(record.means)
        return cls(
            app_name=app_name,
            category=category,
            type_counts=dict(counts),
            type_means={t: frozenset(m) for t, m in means.items()},
        )

    def collects(self, data_type: InteractionDataType) -> bool:
        return self.type_counts.get(data_type, 0) > 0


@dataclass(frozen=True)
class UiTypeRow:
    data_type: InteractionDataType
    apps_collecting: int
    percent_collected: float
    average_collected: int
    top_means: tuple[tuple[CollectionMeans, float], ...] = ()
    top_categories: tuple[tuple[str, float], ...] = ()

    @property
    def label(self) -> str:
        return UI_TYPE_LABELS[self.data_type]

    def to_dict(self) -> dict:
        return {
            "ui_type": self.label,
            "data_type": self.data_type.phrase,
            "apps_collecting": self.apps_collecting,
            "percent_collected": round(self.percent_collected, 1),
            "average_collected": self.average_collected,
            "top_means": [
                {"means": m.phrase, "percent": round(p, 1)} for m, p in self.top_means
            ],
            "top_categories": [
                {"category": c, "percent": round(p, 1)} for c, p in self.top_categories
            ],
        }


@dataclass(frozen=True)
class EvidenceStats:
    app_count: int
    rows: tuple[UiTypeRow, ...]

    def row(self, data_type: InteractionDataType) -> UiTypeRow | None:
        return next((r for r in self.rows if r.data_type is data_type), None)

    def to_dict(self) -> dict:
        return {
            "app_count": self.app_count,
            "ui_types": [r.to_dict() for r in self.rows],
        }


def corpus_evidence_stats(
    apps: list[AppEvidenceSummary],
    include_composite: bool = False,
) -> EvidenceStats:
    """UI 타입별 통계.

    - percent_collected: 전체 앱 중 해당 타입 레코드가 1개 이상인 앱 비율
    - average_collected: 수집 앱당 평균 레코드 수 (반올림, .5는 올림)
    - top_means: 수집 앱 중 해당 수단이 나온 앱 비율 상위 STATS_TOP_MEANS개 (0% 제외)
    - top_categories: 카테고리별 수집 앱 비율 상위 STATS_TOP_CATEGORIES개 (0% 제외)

    앱이 없으면 행도 없다.
    """
    if not apps:
        return EvidenceStats(app_count=0, rows=())

    order = STATS_ROW_ORDER + ((InteractionDataType.COMPOSITE_GESTURE,) if include_composite else ())
    category_sizes = Counter(app.category for app in apps)
    rows = []
    for data_type in order:
        collecting = [app for app in apps if app.collects(data_type)]
        n = len(collecting)
        total = sum(app.type_counts[data_type] for app in collecting)

        means_counts = Counter(m for app in collecting for m in app.type_means.get(data_type, ()))
        top_means = sorted(
            ((m, 100.0 * c / n) for m, c in means_counts.items() if c),
            key=lambda item: (-item[1], MEANS_ORDER.index(item[0])),
        )[:STATS_TOP_MEANS]

        category_counts = Counter(app.category for app in collecting)
        top_categories = sorted(
            ((c, 100.0 * k / category_sizes[c]) for c, k in category_counts.items() if k),
            key=lambda item: (-item[1], item[0]),
        )[:STATS_TOP_CATEGORIES]

        rows.append(UiTypeRow(
            data_type=data_type,
            apps_collecting=n,
            percent_collected=100.0 * n / len(apps),
            average_collected=_round_half_up(total, n),
            top_means=tuple(top_means),
            top_categories=tuple(top_categories),
        ))
    return EvidenceStats(app_count=len(apps), rows=tuple(rows))


def _round_half_up(total: int, n: int) -> int:
    if n == 0:
        return 0
    return (2 * total + n) // (2 * n)
