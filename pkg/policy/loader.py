"""개인정보 처리방침 문서 로드 (HTML/일반 텍스트 → 문장 목록)"""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from core.errors import EmptyPolicy
from utils.text_cleaner import html_to_blocks, split_sentences, text_to_blocks


class PolicyFormat(Enum):
    HTML = "html"
    PLAIN_TEXT = "text"

    @classmethod
    def from_path(cls, path: str | Path) -> "PolicyFormat":
        """확장자로 형식 추정 (.html/.htm/.xhtml → HTML, 그 외 텍스트)"""
        suffix = Path(path).suffix.lower()
        return cls.HTML if suffix in {".html", ".htm", ".xhtml"} else cls.PLAIN_TEXT


@dataclass(frozen=True)
class PolicySentence:
    index: int
    text: str


@dataclass(frozen=True)
class PolicyDocument:
    doc_id: str
    sentences: tuple[PolicySentence, ...]

    def sentence(self, index: int) -> str:
        return self.sentences[index].text


def load_policy(data: bytes, fmt: PolicyFormat, doc_id: str) -> PolicyDocument:
    """정책 바이트 → PolicyDocument.

    HTML은 태그/스크립트/스타일을 제거하고 블록 요소를 문장 경계로 삼는다.
    UTF-8로 디코딩하며 깨진 바이트는 대체 문자로 바꾼다.

    Raises:
        EmptyPolicy: 마크업 제거 후 문장이 하나도 없음
    """
    text = data.decode("utf-8-sig", errors="replace")
    blocks = html_to_blocks(text) if fmt is PolicyFormat.HTML else text_to_blocks(text)

    sentences = [s for block in blocks for s in split_sentences(block)]
    if not sentences:
        raise EmptyPolicy(f"정책 문서에 문장이 없습니다: {doc_id}")

    return PolicyDocument(
        doc_id=doc_id,
        sentences=tuple(PolicySentence(i, s) for i, s in enumerate(sentences)),
    )


def load_policy_file(path: str | Path, fmt: PolicyFormat | None = None) -> PolicyDocument:
    """파일 경로에서 로드. doc_id는 파일 이름(확장자 제외)."""
    path = Path(path)
    return load_policy(path.read_bytes(), fmt or PolicyFormat.from_path(path), path.stem)
