"""정책 문장 탐지용 어휘집 (용어/동사 그룹 + 타입/수단 문구 매핑)

어휘집 JSON 형식:
    {
      "terms":         {"<정식 용어>": ["동의어", ...], ...},
      "verbs":         {"<정식 동사>": ["활용형/동의어", ...], ...},
      "type_phrases":  {"<데이터 타입 문구>": ["문구", ...], ...},
      "means_phrases": {"<수집 수단 문구>": ["문구", ...], ...}
    }

정식 이름이 "/"나 괄호 없는 평범한 문구면 그 자체도 매칭 대상에 포함된다.
"""

import json
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

from config.settings import DEFAULT_LEXICON_PATH
from core.errors import LexiconInvalid
from core.vocabulary import CollectionMeans, InteractionDataType


@dataclass(frozen=True)
class PhraseGroup:
    canonical: str
    phrases: frozenset[str]


@dataclass(frozen=True)
class PhraseMatch:
    start: int
    end: int
    phrase: str
    label: str  # 그룹의 정식 이름 또는 타입/수단 문구


@dataclass(frozen=True)
class Lexicon:
    term_groups: tuple[PhraseGroup, ...]
    verb_groups: tuple[PhraseGroup, ...]
    type_phrases: dict[str, InteractionDataType]
    means_phrases: dict[str, CollectionMeans]

    def __post_init__(self):
        self.validate()

    def validate(self):
        """모든 문구는 소문자, 한 문구는 한 그룹에만 속해야 한다.

        용어/동사 그룹 문구는 타입/수단 문구와도 겹치면 안 된다.
        """
        owner: dict[str, str] = {}
        for group in (*self.term_groups, *self.verb_groups):
            if not group.phrases:
                raise LexiconInvalid(f"문구가 없는 그룹: {group.canonical}")
            for phrase in group.phrases:
                _check_phrase(phrase)
                if owner.setdefault(phrase, group.canonical) != group.canonical:
                    raise LexiconInvalid(
                        f"문구 {phrase!r}가 두 그룹에 속합니다: "
                        f"{owner[phrase]}, {group.canonical}"
                    )
        for phrase in self.type_phrases:
            _check_phrase(phrase)
        for phrase in self.means_phrases:
            _check_phrase(phrase)
            if phrase in self.type_phrases:
                raise LexiconInvalid(f"문구 {phrase!r}가 타입과 수단 양쪽에 있습니다.")
        for phrase, canonical in owner.items():
            if phrase in self.type_phrases or phrase in self.means_phrases:
                raise LexiconInvalid(
                    f"문구 {phrase!r}가 {canonical} 그룹과 타입/수단 사전에 함께 있습니다."
                )

    # 정규식은 한 번만 컴파일
    @cached_property
    def _term_patterns(self):
        return _compile_groups(self.term_groups)

    @cached_property
    def _verb_patterns(self):
        return _compile_groups(self.verb_groups)

    @cached_property
    def _type_patterns(self):
        return [(p, _phrase_regex(p), t.phrase) for p, t in sorted(self.type_phrases.items())]

    @cached_property
    def _means_patterns(self):
        return [(p, _phrase_regex(p), m.phrase) for p, m in sorted(self.means_phrases.items())]

    def match_terms(self, text: str) -> list[PhraseMatch]:
        return _scan(text, self._term_patterns)

    def match_verbs(self, text: str) -> list[PhraseMatch]:
        return _scan(text, self._verb_patterns)

    def match_types_and_means(
        self, text: str
    ) -> tuple[set[InteractionDataType], set[CollectionMeans]]:
        """타입/수단 문구 매칭. 더 긴 매칭 안에 포함된 짧은 매칭은 버린다
        ("double tap" 안의 "tap", "mouse movements" 안의 "movements")."""
        matches = [
            (m, "type") for m in _scan(text, self._type_patterns)
        ] + [
            (m, "means") for m in _scan(text, self._means_patterns)
        ]
        kept = [
            (m, kind) for m, kind in matches
            if not any(
                o.start <= m.start and m.end <= o.end and (o.end - o.start) > (m.end - m.start)
                for o, _ in matches
            )
        ]
        types = {InteractionDataType(m.label) for m, kind in kept if kind == "type"}
        means = {CollectionMeans(m.label) for m, kind in kept if kind == "means"}
        return types, means

    @property
    def all_term_phrases(self) -> set[str]:
        return {p for g in self.term_groups for p in g.phrases}

    def to_dict(self) -> dict:
        def groups(gs):
            return {g.canonical: sorted(g.phrases) for g in gs}

        def inverse(mapping):
            out: dict[str, list[str]] = {}
            for phrase, value in sorted(mapping.items()):
                out.setdefault(value.phrase, []).append(phrase)
            return out

        return {
            "terms": groups(self.term_groups),
            "verbs": groups(self.verb_groups),
            "type_phrases": inverse(self.type_phrases),
            "means_phrases": inverse(self.means_phrases),
        }


def load_lexicon(path: str | Path | None = None) -> Lexicon:
    """어휘집 JSON 파일 로드. path가 없으면 기본 어휘집."""
    path = Path(path) if path else DEFAULT_LEXICON_PATH
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise LexiconInvalid(f"어휘집을 읽을 수 없습니다 ({path}): {e}") from e
    return lexicon_from_dict(data)


def lexicon_from_dict(data: dict) -> Lexicon:
    if not isinstance(data, dict):
        raise LexiconInvalid("어휘집 최상위는 객체여야 합니다.")
    missing = {"terms", "verbs", "type_phrases", "means_phrases"} - data.keys()
    if missing:
        raise LexiconInvalid(f"어휘집에 섹션이 없습니다: {', '.join(sorted(missing))}")

    type_phrases: dict[str, InteractionDataType] = {}
    for label, phrases in _section(data, "type_phrases").items():
        try:
            data_type = InteractionDataType.from_phrase(label)
        except ValueError:
            raise LexiconInvalid(f"알 수 없는 데이터 타입: {label}") from None
        for phrase in phrases:
            _assign(type_phrases, _normalize(phrase), data_type)

    means_phrases: dict[str, CollectionMeans] = {}
    for label, phrases in _section(data, "means_phrases").items():
        try:
            means = CollectionMeans.from_phrase(label)
        except ValueError:
            raise LexiconInvalid(f"알 수 없는 수집 수단: {label}") from None
        for phrase in phrases:
            _assign(means_phrases, _normalize(phrase), means)

    return Lexicon(
        term_groups=_groups(_section(data, "terms")),
        verb_groups=_groups(_section(data, "verbs")),
        type_phrases=type_phrases,
        means_phrases=means_phrases,
    )


def _section(data: dict, name: str) -> dict[str, list[str]]:
    section = data[name]
    if not isinstance(section, dict) or not all(
        isinstance(v, list) and all(isinstance(p, str) for p in v) for v in section.values()
    ):
        raise LexiconInvalid(f"{name} 섹션은 {{이름: [문구, ...]}} 형식이어야 합니다.")
    return section


def _groups(section: dict[str, list[str]]) -> tuple[PhraseGroup, ...]:
    groups = []
    for canonical, synonyms in section.items():
        phrases = {_normalize(p) for p in synonyms}
        if re.fullmatch(r"[a-z][a-z \-]*", canonical.lower()):
            phrases.add(_normalize(canonical))
        groups.append(PhraseGroup(canonical=canonical, phrases=frozenset(phrases)))
    return tuple(groups)


def _assign(mapping: dict, phrase: str, value):
    if mapping.setdefault(phrase, value) != value:
        raise LexiconInvalid(f"문구 {phrase!r}가 두 항목에 매핑됩니다.")


def _normalize(phrase: str) -> str:
    return re.sub(r"\s+", " ", phrase.strip().lower())


def _check_phrase(phrase: str):
    if not phrase or phrase != phrase.lower():
        raise LexiconInvalid(f"문구는 비어 있지 않은 소문자여야 합니다: {phrase!r}")


def _phrase_regex(phrase: str) -> re.Pattern:
    body = r"\s+".join(re.escape(w) for w in phrase.split(" "))
    return re.compile(rf"(?<!\w){body}(?!\w)", re.IGNORECASE)


def _compile_groups(groups) -> list[tuple[str, re.Pattern, str]]:
    return [
        (phrase, _phrase_regex(phrase), g.canonical)
        for g in groups
        for phrase in sorted(g.phrases)
    ]


def _scan(text: str, patterns) -> list[PhraseMatch]:
    found = []
    for phrase, regex, label in patterns:
        for m in regex.finditer(text):
            found.append(PhraseMatch(m.start(), m.end(), phrase, label))
    found.sort(key=lambda m: (m.start, -m.end, m.phrase))
    return found
