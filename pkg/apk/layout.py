"""레이아웃 XML 파싱 → LayoutWidget 목록"""

import json
from dataclasses import dataclass
from pathlib import Path, PurePosixPath

from lxml import etree

from apk.resources import android_attr, local_name, parse_xml
from config.widgets import BUTTON_SUFFIX, DEFAULT_WIDGET_TABLE
from core.errors import ConfigInvalid
from core.vocabulary import WidgetKind
from utils.validators import resource_id_name


@dataclass(frozen=True)
class LayoutWidget:
    layout_file: str          # 앱 디렉터리 기준 상대 경로 (posix)
    element_name: str
    widget_kind: WidgetKind
    resource_id_name: str | None = None
    onclick_handler: str | None = None
    position: int = 0         # 레이아웃 문서 안의 요소 순서 (루트 = 0)

    @property
    def layout_name(self) -> str:
        """R.layout 이름 (파일 이름에서 확장자 제외)"""
        return PurePosixPath(self.layout_file).stem

    @property
    def label(self) -> str:
        return self.resource_id_name or self.element_name

    @property
    def key(self) -> str:
        """앱 안에서 위젯 하나를 가리키는 키. id가 없으면 문서 순서로 구분한다."""
        if self.resource_id_name:
            return f"{self.layout_file}:{self.resource_id_name}"
        return f"{self.layout_file}:{self.element_name}#{self.position}"

    def to_dict(self) -> dict:
        return {
            "layout_file": self.layout_file,
            "element_name": self.element_name,
            "widget_kind": self.widget_kind.value,
            "resource_id_name": self.resource_id_name,
            "onclick_handler": self.onclick_handler,
            "position": self.position,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LayoutWidget":
        return cls(
            layout_file=data["layout_file"],
            element_name=data["element_name"],
            widget_kind=WidgetKind(data["widget_kind"]),
            resource_id_name=data.get("resource_id_name"),
            onclick_handler=data.get("onclick_handler"),
            position=data.get("position", 0),
        )


def classify_element(
    element_name: str, table: dict[str, WidgetKind] | None = None
) -> WidgetKind:
    """요소 이름 → WidgetKind.

    완전한 이름(com.google.android.material.button.MaterialButton)은 마지막 부분으로 본다.
    명시 테이블 → "…Button" 접미사 → OTHER 순서.
    """
    table = DEFAULT_WIDGET_TABLE if table is None else table
    if element_name in table:
        return table[element_name]
    simple = element_name.rsplit(".", 1)[-1]
    if simple in table:
        return table[simple]
    if simple.endswith(BUTTON_SUFFIX):
        return WidgetKind.BUTTON
    return WidgetKind.OTHER


def parse_layout(
    xml_text: str | bytes,
    path: str,
    table: dict[str, WidgetKind] | None = None,
) -> list[LayoutWidget]:
    """레이아웃 XML의 요소마다 LayoutWidget 하나 (문서 순서).

    <view class="..."> 형식은 class 속성을 요소 이름으로 쓴다.

    Raises:
        ParseError: XML 형식 오류
    """
    root = parse_xml(xml_text, path)
    widgets = []
    for position, elem in enumerate(root.iter(etree.Element)):
        name = local_name(elem)
        if name == "view" and elem.get("class"):
            name = elem.get("class")
        widgets.append(LayoutWidget(
            layout_file=path,
            element_name=name,
            widget_kind=classify_element(name, table),
            resource_id_name=resource_id_name(android_attr(elem, "id")),
            onclick_handler=(android_attr(elem, "onClick") or "").strip() or None,
            position=position,
        ))
    return widgets


def load_widget_table(path: str | Path | None) -> dict[str, WidgetKind]:
    """기본 분류 테이블 + JSON 오버라이드 ({"요소 이름": "Button"} 형식).

    Raises:
        ConfigInvalid: 파일을 읽을 수 없거나 알 수 없는 위젯 종류
    """
    table = dict(DEFAULT_WIDGET_TABLE)
    if path is None:
        return table
    try:
        overrides = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigInvalid(f"위젯 테이블을 읽을 수 없습니다 ({path}): {e}") from e
    if not isinstance(overrides, dict):
        raise ConfigInvalid("위젯 테이블은 {요소 이름: 위젯 종류} 객체여야 합니다.")
    for element, kind in overrides.items():
        try:
            table[element] = WidgetKind(kind)
        except ValueError:
            valid = ", ".join(k.value for k in WidgetKind)
            raise ConfigInvalid(f"알 수 없는 위젯 종류 {kind!r} (가능한 값: {valid})") from None
    return table
