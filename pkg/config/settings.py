"""앱 전체 상수 및 설정"""

from pathlib import Path

CONFIG_DIR = Path(__file__).resolve().parent

# === 데이터 파일 ===
DEFAULT_LEXICON_PATH = CONFIG_DIR / "default_lexicon.json"
DEFAULT_SIGDB_PATH = CONFIG_DIR / "dcm_signatures.json"

# === 정적 분석 ===
DEFAULT_REACHABILITY_BOUND = 5
MAX_REACHABILITY_BOUND = 64

# 위젯 바인딩 없이 DCM에 도달하면 AppPresentation으로 분류하는 생명주기 메서드
LIFECYCLE_METHODS = ("onCreate", "onStart", "onResume", "onPause", "onStop")

# paired-timestamp 휴리스틱용 시간 소스 (클래스, 메서드)
TIME_SOURCES = {
    ("java.lang.System", "currentTimeMillis"),
    ("java.lang.System", "nanoTime"),
    ("android.os.SystemClock", "elapsedRealtime"),
    ("android.os.SystemClock", "uptimeMillis"),
}
TIMED_EVENT_METHOD_NAMES = {"startTimedEvent", "endTimedEvent"}

# === 정책 문서 ===
# 문장 분리 시 마침표로 끝나도 문장 끝으로 보지 않는 약어
SENTENCE_ABBREVIATIONS = {
    "e.g.", "i.e.", "etc.", "vs.", "inc.", "ltd.", "co.", "corp.",
    "mr.", "mrs.", "ms.", "dr.", "no.", "u.s.", "approx.",
}
HTML_STRIP_TAGS = ["script", "style", "noscript", "head", "title", "meta", "template"]
HTML_BLOCK_TAGS = [
    "p", "div", "br", "li", "ul", "ol", "h1", "h2", "h3", "h4", "h5", "h6",
    "table", "tr", "td", "th", "section", "article", "header", "footer",
    "blockquote", "pre", "dt", "dd", "hr", "nav", "aside", "main",
]

# === 리포트 / 통계 ===
REPORT_VERSION = 1
STATS_TOP_MEANS = 2
STATS_TOP_CATEGORIES = 3
CITATION_MAX_LENGTH = 300

# === CLI 종료 코드 ===
EXIT_OK = 0
EXIT_IO_ERROR = 1
EXIT_VAGUE_POLICY = 2
EXIT_NO_EVIDENCE = 3
EXIT_USAGE = 64

# === 출력 ===
OUTPUT_FORMATS = ("json", "markdown", "plain")
DEFAULT_OUTPUT_FORMAT = "json"
DEFAULT_CATEGORY = "uncategorized"
