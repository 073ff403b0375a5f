from itertools import chain, combinations

import pytest

from core.claims import CollectionClaim, Provenance
from core.errors import ParseError
from core.template import join_phrases, parse_claim, render_claim
from core.vocabulary import CollectionMeans, InteractionDataType

T = InteractionDataType
M = CollectionMeans

YR_SENTENCE = (
    "We collect the following types of user interaction data: app presentation, binary, "
    "categorical and user input interactions, along with their frequency."
)


def _subsets(items):
    return [frozenset(c) for c in chain.from_iterable(combinations(items, n) for n in range(len(items) + 1))]


def _claim(types, means):
    return CollectionClaim(types, means, Provenance.CHECKED_STANDARDIZED)


def test_join_phrases():
    assert join_phrases([]) == ""
    assert join_phrases(["a"]) == "a"
    assert join_phrases(["a", "b"]) == "a and b"
    assert join_phrases(["a", "b", "c"]) == "a, b and c"


def test_render_yr_claim():
    claim = _claim({T.USER_INPUT, T.BINARY, T.APP_PRESENTATION, T.CATEGORICAL}, {M.FREQUENCY})
    assert render_claim(claim) == YR_SENTENCE


def test_render_without_means():
    assert render_claim(_claim({T.GESTURE}, set())) == (
        "We collect the following types of user interaction data: gesture interactions."
    )


def test_render_means_only():
    assert render_claim(_claim(set(), {M.DURATION, M.FREQUENCY})) == (
        "We collect user interaction data, along with its frequency and duration."
    )


def test_render_with_decorators():
    claim = _claim({T.BINARY, T.GESTURE}, {M.FREQUENCY})
    text = render_claim(claim, decorate_type=lambda p: f"<{p}>", decorate_means=str.upper)
    assert text == (
        "We collect the following types of user interaction data: <binary> and <gesture> "
        "interactions, along with their FREQUENCY."
    )


def test_parse_yr_sentence():
    claim = parse_claim(YR_SENTENCE)
    assert claim.data_types == {T.APP_PRESENTATION, T.BINARY, T.CATEGORICAL, T.USER_INPUT}
    assert claim.means == {M.FREQUENCY}
    assert claim.provenance is Provenance.CHECKED_STANDARDIZED


def test_parse_tolerates_prose_variants():
    text = (
        "we collect the following types of user interaction data: App presentation, binary and "
        "categorical interactions, and user input interactions, along with their frequency"
    )
    claim = parse_claim(text)
    assert claim.data_types == {T.APP_PRESENTATION, T.BINARY, T.CATEGORICAL, T.USER_INPUT}
    assert claim.means == {M.FREQUENCY}


def test_parse_oxford_comma():
    claim = parse_claim(
        "We collect the following types of user interaction data: binary, gesture, and composite "
        "gesture interactions, along with their frequency, duration, and motion details."
    )
    assert claim.data_types == {T.BINARY, T.GESTURE, T.COMPOSITE_GESTURE}
    assert claim.means == set(M)


def test_parse_rejects_foreign_sentence():
    with pytest.raises(ParseError) as exc:
        parse_claim("We gather your soul")
    assert exc.value.span == (3, 9)


def test_parse_reports_unknown_type_span():
    text = "We collect the following types of user interaction data: binary and telepathy interactions."
    with pytest.raises(ParseError) as exc:
        parse_claim(text)
    start, end = exc.value.span
    assert text[start:end] == "telepathy interactions"


def test_parse_rejects_unknown_means():
    text = "We collect the following types of user interaction data: binary interactions, along with their mood."
    with pytest.raises(ParseError) as exc:
        parse_claim(text)
    start, end = exc.value.span
    assert text[start:end] == "mood"


def test_render_parse_is_identity_on_every_valid_claim():
    checked = 0
    for types in _subsets(list(T)):
        for means in _subsets(list(M)):
            if not types and not means:
                continue
            claim = _claim(types, means)
            parsed = parse_claim(render_claim(claim))
            assert (parsed.data_types, parsed.means) == (types, means)
            checked += 1
    assert checked == 64 * 8 - 1
