"""apktool 출력의 XML 공통 처리 (안전한 파서, android: 속성, public.xml)"""

from lxml import etree

from core.errors import ParseError

ANDROID_NS = "http://schemas.android.com/apk/res/android"


def parse_xml(xml_text: str | bytes, path: str | None = None) -> etree._Element:
    """XML 텍스트 → 루트 요소.

    외부 엔티티/네트워크 접근은 막는다.

    Raises:
        ParseError: 형식이 잘못된 XML (line, column 포함)
    """
    if isinstance(xml_text, str):
        xml_text = xml_text.encode("utf-8")
    parser = etree.XMLParser(
        resolve_entities=False, no_network=True, remove_comments=True, remove_pis=True
    )
    try:
        root = etree.fromstring(xml_text, parser)
    except etree.XMLSyntaxError as e:
        line, column = e.position if e.position else (None, None)
        raise ParseError(
            f"XML 파싱 실패: {e.msg}", line=line, column=column, path=path
        ) from None
    except (ValueError, LookupError) as e:
        # 지원하지 않는 인코딩 선언 등
        raise ParseError(f"XML 파싱 실패: {e}", path=path) from None
    if root is None:
        raise ParseError("XML 문서가 비어 있습니다.", path=path)
    return root


def android_attr(elem: etree._Element, name: str) -> str | None:
    """android:NAME 속성 값. 네임스페이스 선언이 빠진 문서도 허용."""
    value = elem.get(f"{{{ANDROID_NS}}}{name}")
    if value is None:
        value = elem.get(f"android:{name}")
    return value


def local_name(elem: etree._Element) -> str:
    return etree.QName(elem).localname


def parse_public_xml(xml_text: str | bytes, path: str | None = None) -> dict[str, dict[str, int]]:
    """res/values/public.xml → {리소스 타입: {이름: 숫자 id}}.

    <public type="id" name="myButton" id="0x7f0a0042" /> 형식.
    id 값을 해석할 수 없는 항목은 건너뛴다.
    """
    root = parse_xml(xml_text, path)
    table: dict[str, dict[str, int]] = {}
    for elem in root.iter("public"):
        res_type, name, raw_id = elem.get("type"), elem.get("name"), elem.get("id")
        if not (res_type and name and raw_id):
            continue
        try:
            value = int(raw_id, 0)
        except ValueError:
            continue
        table.setdefault(res_type, {}).setdefault(name, value)
    return table
