from analyzer.evidence_stats import AppEvidenceSummary, corpus_evidence_stats
from analyzer.pipeline import analyze_app_model
from core.vocabulary import CollectionMeans, InteractionDataType

T = InteractionDataType
M = CollectionMeans


def _app(name, category="game", **counts):
    types = {
        "view": T.APP_PRESENTATION, "button": T.BINARY, "text": T.USER_INPUT,
        "check": T.CATEGORICAL, "gesture": T.GESTURE, "composite": T.COMPOSITE_GESTURE,
    }
    type_counts = {types[k]: v for k, v in counts.items() if v}
    return AppEvidenceSummary(
        app_name=name,
        category=category,
        type_counts=type_counts,
        type_means={t: frozenset({M.FREQUENCY}) for t in type_counts},
    )


def test_ten_app_corpus():
    view_counts = [10, 12, 14, 11, 13, 12, 12, 12, 0, 0]
    apps = [_app(f"a{i}", view=n, button=1 if i < 5 else 0) for i, n in enumerate(view_counts)]
    stats = corpus_evidence_stats(apps)

    assert stats.app_count == 10
    assert [r.data_type for r in stats.rows] == [
        T.APP_PRESENTATION, T.BINARY, T.USER_INPUT, T.CATEGORICAL, T.GESTURE,
    ]
    view = stats.row(T.APP_PRESENTATION)
    assert view.apps_collecting == 8
    assert view.percent_collected == 80.0
    assert view.average_collected == 12
    assert view.top_means == ((M.FREQUENCY, 100.0),)
    assert view.to_dict()["ui_type"] == "View (Presentation)"

    button = stats.row(T.BINARY)
    assert (button.apps_collecting, button.percent_collected, button.average_collected) == (5, 50.0, 1)

    gesture = stats.row(T.GESTURE)
    assert (gesture.percent_collected, gesture.average_collected, gesture.top_means) == (0.0, 0, ())


def test_single_app_percentages_are_all_or_nothing():
    stats = corpus_evidence_stats([_app("solo", view=3, text=1)])
    assert {r.percent_collected for r in stats.rows} == {0.0, 100.0}
    assert stats.row(T.USER_INPUT).average_collected == 1


def test_empty_corpus():
    stats = corpus_evidence_stats([])
    assert stats.app_count == 0
    assert stats.rows == ()
    assert stats.to_dict() == {"app_count": 0, "ui_types": []}


def test_average_rounds_half_up():
    stats = corpus_evidence_stats([_app("a", view=1), _app("b", view=2)])
    assert stats.row(T.APP_PRESENTATION).average_collected == 2


def test_composite_row_is_optional():
    apps = [_app("a", composite=2)]
    assert corpus_evidence_stats(apps).row(T.COMPOSITE_GESTURE) is None
    row = corpus_evidence_stats(apps, include_composite=True).row(T.COMPOSITE_GESTURE)
    assert (row.apps_collecting, row.average_collected) == (1, 2)


def test_top_categories_are_relative_to_category_size():
    apps = [
        _app("g1", "game", button=1), _app("g2", "game"),
        _app("s1", "shopping", button=1),
        _app("n1", "news", button=1), _app("n2", "news", button=1), _app("n3", "news"), _app("n4", "news"),
    ]
    row = corpus_evidence_stats(apps).row(T.BINARY)
    assert row.top_categories == (("shopping", 100.0), ("game", 50.0), ("news", 50.0))


def test_summary_from_records_counts_per_type(yr_app, sigdb):
    result = analyze_app_model(yr_app, sigdb)
    summary = AppEvidenceSummary.from_records("yr", "weather", list(result.records))
    assert summary.type_counts == {T.APP_PRESENTATION: 1, T.BINARY: 1, T.CATEGORICAL: 1, T.USER_INPUT: 2}
    assert summary.type_means[T.USER_INPUT] == {M.FREQUENCY}
