"""텍스트 정제 유틸리티 (HTML → 블록, 공백 정리, 문장 분리)"""

import re

from bs4 import BeautifulSoup, Comment

from config.settings import HTML_BLOCK_TAGS, HTML_STRIP_TAGS, SENTENCE_ABBREVIATIONS

# 블록 경계 표시용 문자 (정책 본문에 나올 일이 없는 제어 문자)
_BLOCK_MARK = "\x1e"

# 종결 부호 (+ 닫는 따옴표/괄호) + 공백 + 대문자/숫자 (여는 따옴표/괄호 허용)
_BOUNDARY_RE = re.compile(r"[.!?]+[\"'”’)\]]*(\s+)(?=[\"'“‘(\[]?[A-Z0-9])")
_INITIAL_RE = re.compile(r"[a-z]\.")


def normalize_whitespace(text: str) -> str:
    """연속 공백/개행을 공백 하나로"""
    return re.sub(r"\s+", " ", text).strip()


def html_to_blocks(html: str) -> list[str]:
    """HTML에서 script/style 등을 제거하고 블록 요소 단위 텍스트 목록으로 변환"""
    soup = BeautifulSoup(html, "html.parser")

    for tag in soup.find_all(HTML_STRIP_TAGS):
        tag.decompose()
    for comment in soup.find_all(string=lambda s: isinstance(s, Comment)):
        comment.extract()

    for tag in soup.find_all(HTML_BLOCK_TAGS):
        tag.insert_before(_BLOCK_MARK)
        tag.insert_after(_BLOCK_MARK)

    text = soup.get_text()
    return [b for b in (normalize_whitespace(part) for part in text.split(_BLOCK_MARK)) if b]


def text_to_blocks(text: str) -> list[str]:
    """일반 텍스트: 빈 줄을 블록 경계로 본다"""
    return [b for b in (normalize_whitespace(part) for part in re.split(r"\n\s*\n", text)) if b]


def split_sentences(block: str) -> list[str]:
    """블록 하나를 문장 목록으로 분리.

    종결 부호 뒤에 공백과 대문자/숫자가 오면 문장 경계.
    단, 마지막 단어가 약어(e.g., i.e., etc. …)나 이니셜이면 경계가 아니다.
    """
    sentences = []
    start = 0
    for m in _BOUNDARY_RE.finditer(block):
        candidate = block[start:m.start(1)]
        words = candidate.split()
        last_word = words[-1].lstrip("(\"'“‘").lower() if words else ""
        if last_word in SENTENCE_ABBREVIATIONS or _INITIAL_RE.fullmatch(last_word):
            continue
        sentences.append(candidate.strip())
        start = m.end()

    tail = block[start:].strip()
    if tail:
        sentences.append(tail)
    return [s for s in sentences if s]


def truncate_text(text: str, max_length: int = 500) -> str:
    """텍스트를 max_length로 잘라서 반환"""
    if len(text) <= max_length:
        return text
    return text[:max_length] + "..."
