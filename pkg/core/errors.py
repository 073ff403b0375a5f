"""도구 전체에서 쓰는 예외 계층.

모든 예외는 ValueError를 상속한다 (잘못된 입력 = ValueError 관례 유지).
CLI는 이 계층을 보고 종료 코드를 결정한다.
"""


class ClaimCheckError(ValueError):
    """모든 도메인 예외의 기반 클래스"""


class InvalidClaim(ClaimCheckError):
    """유효하지 않은 CollectionClaim (타입/수단 둘 다 비어 있음 등)"""


class ParseError(ClaimCheckError):
    """텍스트/XML/smali 파싱 실패.

    Attributes:
        span: 문장 템플릿 파싱 시 처음 인식하지 못한 토큰의 (start, end)
        line, column: XML/smali 파싱 시 오류 위치 (1부터 시작)
        path: 오류가 난 파일 경로
    """

    def __init__(
        self,
        message: str,
        *,
        span: tuple[int, int] | None = None,
        line: int | None = None,
        column: int | None = None,
        path: str | None = None,
    ):
        super().__init__(message)
        self.span = span
        self.line = line
        self.column = column
        self.path = path


class UnmappedWidgetKind(ClaimCheckError):
    """Other 위젯은 상호작용 데이터 타입으로 매핑되지 않음"""

    def __init__(self, element_name: str | None = None):
        super().__init__(f"데이터 타입으로 매핑되지 않는 위젯: {element_name or 'Other'}")
        self.element_name = element_name


class EmptyPolicy(ClaimCheckError):
    """마크업 제거 후 문장이 하나도 없는 정책 문서"""


class VagueOnlyPolicy(ClaimCheckError):
    """정책 문장이 모두 Vague라서 클레임을 만들 수 없음"""

    def __init__(self, findings: list):
        super().__init__("정책이 모호한 수집 문장만 포함하고 있습니다.")
        self.findings = list(findings)


class LexiconInvalid(ClaimCheckError):
    """어휘집 파일 형식 오류"""


class SignatureDbInvalid(ClaimCheckError):
    """DCM 시그니처 DB 파일 형식 오류"""


class ManifestInvalid(ClaimCheckError):
    """AndroidManifest.xml에 필수 속성이 없음"""


class AppLayoutInvalid(ClaimCheckError):
    """apktool 디렉터리 구조가 아님 (매니페스트 없음)"""


class NoEvidence(ClaimCheckError):
    """수집 증거 레코드가 하나도 없음"""


class ProvenanceError(ClaimCheckError):
    """check()에 잘못된 출처의 클레임이 전달됨"""


class ConfigInvalid(ClaimCheckError):
    """실행 설정(RunConfig) 검증 실패"""
