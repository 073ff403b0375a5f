"""structlog 설정.

경고는 stderr에 한 줄씩 key=value 형식으로 남긴다 (event = 경고 코드):
    level='warning' event='layout_parse_error' path='res/layout/main.xml' message='...'
stdout은 명령 출력 전용.
"""

import logging
import sys

import structlog


def configure_logging(verbose: bool = False):
    """CLI/UI 시작 시 호출. 호출 시점의 sys.stderr에 출력을 묶는다."""
    level = logging.DEBUG if verbose else logging.WARNING
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.KeyValueRenderer(
                key_order=["level", "event", "path", "message"],
                drop_missing=True,
            ),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str):
    return structlog.get_logger(name)
