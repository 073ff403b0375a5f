"""표준 수집 클레임 문장의 렌더링과 파싱.

템플릿:
    We collect the following types of user interaction data: <타입 목록> interactions,
    along with their <수단 목록>.

목록은 열거형 선언 순서로 쓰고 마지막 항목 앞에만 "and"를 둔다.
render_claim(parse_claim(t))가 t의 정규형이 되도록 맞춘다.
"""

import re
from typing import Callable

from core.claims import CollectionClaim, Provenance
from core.errors import ParseError
from core.vocabulary import (
    CollectionMeans,
    InteractionDataType,
    sort_means,
    sort_types,
)

TYPES_PREFIX = "We collect the following types of user interaction data: "
NO_TYPES_PREFIX = "We collect user interaction data, along with its "

_TYPES_PREFIX_RE = re.compile(
    r"\s*we\s+collect\s+the\s+following\s+types\s+of\s+user\s+interaction\s+data\s*:\s*",
    re.IGNORECASE,
)
_NO_TYPES_PREFIX_RE = re.compile(
    r"\s*we\s+collect\s+user\s+interaction\s+data\s*,?\s*along\s+with\s+(?:its|their)\s+",
    re.IGNORECASE,
)
_ALONG_WITH_RE = re.compile(r"\s*,?\s*along\s+with\s+(?:their|its)\s+", re.IGNORECASE)
# ", " / ", and " / " and " 모두 목록 구분자로 허용 (Oxford comma 포함)
_SEPARATOR_RE = re.compile(r"\s*,\s*(?:and\s+)?|\s+and\s+", re.IGNORECASE)
_INTERACTIONS_SUFFIX_RE = re.compile(r"\s+interactions?$", re.IGNORECASE)

_EXPECTED_WORDS = TYPES_PREFIX.lower().split()

Decorator = Callable[[str], str]


def join_phrases(phrases: list[str]) -> str:
    """["a", "b", "c"] → "a, b and c" """
    if len(phrases) <= 1:
        return "".join(phrases)
    return ", ".join(phrases[:-1]) + " and " + phrases[-1]


def render_claim(
    claim: CollectionClaim,
    *,
    decorate_type: Decorator | None = None,
    decorate_means: Decorator | None = None,
) -> str:
    """클레임을 표준 문장 한 개로 렌더링.

    decorate_type / decorate_means: 개별 문구를 감싸는 함수 (리포트의 강조 표시용).
    """
    dt = decorate_type or (lambda p: p)
    dm = decorate_means or (lambda p: p)

    type_list = join_phrases([dt(t.phrase) for t in sort_types(claim.data_types)])
    means_list = join_phrases([dm(m.phrase) for m in sort_means(claim.means)])

    if not claim.data_types:
        return f"{NO_TYPES_PREFIX}{means_list}."
    sentence = f"{TYPES_PREFIX}{type_list} interactions"
    if claim.means:
        sentence += f", along with their {means_list}"
    return sentence + "."


def parse_claim(text: str) -> CollectionClaim:
    """표준 문장 → CollectionClaim (provenance = CHECKED_STANDARDIZED).

    대소문자, Oxford comma, "and" 위치 차이는 허용한다.

    Raises:
        ParseError: 템플릿에 맞지 않음. span은 처음 인식하지 못한 토큰의 위치.
    """
    end = len(text.rstrip())
    if end and text[end - 1] == ".":
        end -= 1

    types: set[InteractionDataType] = set()
    means: set[CollectionMeans] = set()

    m = _NO_TYPES_PREFIX_RE.match(text)
    if m:
        means = _parse_items(text, m.end(), end, CollectionMeans.from_phrase, "수집 수단")
    else:
        m = _TYPES_PREFIX_RE.match(text)
        if not m:
            raise ParseError(
                "표준 클레임 템플릿과 일치하지 않습니다.", span=_first_mismatch(text)
            )
        along = _ALONG_WITH_RE.search(text, m.end(), end)
        types_end = along.start() if along else end
        types = _parse_items(
            text, m.end(), types_end, InteractionDataType.from_phrase, "데이터 타입",
            strip_suffix=True,
        )
        if along:
            means = _parse_items(text, along.end(), end, CollectionMeans.from_phrase, "수집 수단")

    return CollectionClaim(
        data_types=frozenset(types),
        means=frozenset(means),
        provenance=Provenance.CHECKED_STANDARDIZED,
    )


def _parse_items(text, start, end, convert, label, strip_suffix=False) -> set:
    """text[start:end] 구간의 목록을 항목별로 변환. 실패 시 해당 항목 span으로 ParseError."""
    if start >= end:
        raise ParseError(f"{label} 목록이 비어 있습니다.", span=(start, max(start, end)))

    bounds = []
    pos = start
    for sep in _SEPARATOR_RE.finditer(text, start, end):
        bounds.append((pos, sep.start()))
        pos = sep.end()
    bounds.append((pos, end))

    items = set()
    for a, b in bounds:
        raw = text[a:b]
        lead = len(raw) - len(raw.lstrip())
        item = raw.strip()
        item_span = (a + lead, a + lead + len(item))
        if strip_suffix:
            item = _INTERACTIONS_SUFFIX_RE.sub("", item)
        if not item:
            raise ParseError(f"빈 {label} 항목이 있습니다.", span=item_span if item_span[1] > item_span[0] else (a, b))
        try:
            items.add(convert(item))
        except ValueError:
            raise ParseError(f"알 수 없는 {label}: {item!r}", span=item_span) from None
    return items


def _first_mismatch(text: str) -> tuple[int, int]:
    """템플릿 앞부분과 처음으로 어긋나는 단어의 span"""
    tokens = list(re.finditer(r"\S+", text))
    for expected, token in zip(_EXPECTED_WORDS, tokens):
        if token.group(0).lower() != expected:
            return token.span()
    if len(tokens) < len(_EXPECTED_WORDS):
        return (len(text), len(text))
    return tokens[len(_EXPECTED_WORDS) - 1].span()
