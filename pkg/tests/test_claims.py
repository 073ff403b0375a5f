import pytest

from core.claims import CollectionClaim, Provenance
from core.errors import InvalidClaim, UnmappedWidgetKind
from core.vocabulary import (
    CollectionMeans,
    InteractionDataType,
    WidgetKind,
    sort_means,
    sort_types,
    widget_kind_to_data_type,
)

T = InteractionDataType
M = CollectionMeans


@pytest.mark.parametrize("kind, expected", [
    (WidgetKind.VIEW, T.APP_PRESENTATION),
    (WidgetKind.BUTTON, T.BINARY),
    (WidgetKind.TEXTFIELD, T.USER_INPUT),
    (WidgetKind.CHECKBOX_OR_SPINNER, T.CATEGORICAL),
    (WidgetKind.GESTURE_DETECTOR, T.GESTURE),
    (WidgetKind.COMPOSITE_GESTURE_DETECTOR, T.COMPOSITE_GESTURE),
])
def test_widget_kind_mapping(kind, expected):
    assert widget_kind_to_data_type(kind) is expected


def test_other_widget_is_unmapped():
    with pytest.raises(UnmappedWidgetKind) as exc:
        widget_kind_to_data_type(WidgetKind.OTHER, "ProgressBar")
    assert exc.value.element_name == "ProgressBar"
    assert "ProgressBar" in str(exc.value)


def test_sorting_follows_declaration_order():
    assert sort_types({T.GESTURE, T.APP_PRESENTATION, T.CATEGORICAL}) == [
        T.APP_PRESENTATION, T.CATEGORICAL, T.GESTURE,
    ]
    assert sort_means({M.MOTION_DETAILS, M.FREQUENCY}) == [M.FREQUENCY, M.MOTION_DETAILS]


def test_from_phrase_is_case_insensitive():
    assert T.from_phrase("  User Input ") is T.USER_INPUT
    assert M.from_phrase("Motion Details") is M.MOTION_DETAILS
    with pytest.raises(ValueError):
        T.from_phrase("telepathy")


def test_empty_claim_is_rejected():
    with pytest.raises(InvalidClaim):
        CollectionClaim(frozenset(), frozenset(), Provenance.CHECKED_STANDARDIZED)


def test_derived_claims_need_sources():
    with pytest.raises(InvalidClaim):
        CollectionClaim({T.BINARY}, set(), Provenance.POLICY_DERIVED)
    claim = CollectionClaim({T.BINARY}, set(), Provenance.CHECKED_STANDARDIZED)
    assert claim.source_refs == ()


def test_means_only_claim_is_valid():
    claim = CollectionClaim(set(), {M.FREQUENCY, M.DURATION}, Provenance.POLICY_DERIVED, ("dami#4",))
    assert claim.data_types == frozenset()
    assert claim.means == {M.FREQUENCY, M.DURATION}


def test_claim_normalizes_collections():
    claim = CollectionClaim([T.BINARY, T.BINARY], [M.FREQUENCY], Provenance.EVIDENCE_DERIVED, ["a", "b"])
    assert claim.data_types == frozenset({T.BINARY})
    assert claim.source_refs == ("a", "b")
    assert hash(claim) == hash(CollectionClaim({T.BINARY}, {M.FREQUENCY}, Provenance.EVIDENCE_DERIVED, ("a", "b")))


def test_claim_json_uses_canonical_order():
    claim = CollectionClaim(
        {T.USER_INPUT, T.APP_PRESENTATION}, {M.DURATION, M.FREQUENCY},
        Provenance.POLICY_DERIVED, ("yr#2",),
    )
    data = claim.to_dict()
    assert data == {
        "data_types": ["app presentation", "user input"],
        "means": ["frequency", "duration"],
        "provenance": "policy_derived",
        "source_refs": ["yr#2"],
    }
    assert CollectionClaim.from_dict(data) == claim


@pytest.mark.parametrize("data", [
    [],
    {"data_types": ["binary"]},
    {"data_types": ["binary"], "provenance": "guessed"},
    {"data_types": ["sorcery"], "provenance": "checked_standardized"},
    {"data_types": [], "means": [], "provenance": "checked_standardized"},
])
def test_claim_from_bad_json(data):
    with pytest.raises(InvalidClaim):
        CollectionClaim.from_dict(data)
