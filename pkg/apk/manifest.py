"""AndroidManifest.xml 파싱 (패키지 이름 + 선언된 액티비티)"""

from dataclasses import dataclass, field

from apk.resources import android_attr, parse_xml
from core.errors import ManifestInvalid
from utils.validators import is_valid_class_name


@dataclass(frozen=True)
class ManifestInfo:
    package_name: str
    activities: frozenset[str]
    # 클래스 이름으로 해석할 수 없어 제외한 액티비티 값 (경고용)
    skipped_activities: tuple[str, ...] = field(default=(), compare=False)

    def to_dict(self) -> dict:
        return {
            "package_name": self.package_name,
            "activities": sorted(self.activities),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ManifestInfo":
        return cls(data["package_name"], frozenset(data.get("activities", [])))


def resolve_class_name(name: str, package_name: str) -> str:
    """".MainActivity" 또는 "MainActivity" → "<package>.MainActivity" """
    name = name.strip()
    if name.startswith("."):
        return package_name + name
    if "." not in name:
        return f"{package_name}.{name}"
    return name


def parse_manifest(xml_text: str | bytes, path: str | None = None) -> ManifestInfo:
    """매니페스트 XML → ManifestInfo.

    Raises:
        ParseError: XML 형식 오류
        ManifestInvalid: 루트가 <manifest>가 아니거나 package 속성이 없음
    """
    root = parse_xml(xml_text, path)
    if root.tag != "manifest":
        raise ManifestInvalid(f"루트 요소가 <manifest>가 아닙니다: <{root.tag}>")

    package_name = (root.get("package") or "").strip()
    if not is_valid_class_name(package_name):
        raise ManifestInvalid("매니페스트에 유효한 package 속성이 없습니다.")

    activities, skipped = set(), []
    for elem in root.iter("activity"):
        raw = android_attr(elem, "name")
        if not raw:
            skipped.append("")
            continue
        name = resolve_class_name(raw, package_name)
        if is_valid_class_name(name):
            activities.add(name)
        else:
            skipped.append(raw)

    return ManifestInfo(package_name, frozenset(activities), tuple(skipped))
