"""apktool 디렉터리 → AppModel (매니페스트 + 레이아웃 위젯 + smali 클래스 + 리소스 id)

디렉터리 구조:
    AndroidManifest.xml
    res/layout*/*.xml
    res/values/public.xml      (선택)
    smali*/**/*.smali
파일 단위 파싱 실패는 경고로 모으고 계속 진행한다. 매니페스트 없음만 치명적.
"""

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from apk.layout import LayoutWidget, parse_layout
from apk.manifest import ManifestInfo, parse_manifest
from apk.resources import parse_public_xml
from apk.smali import MethodRef, SmaliClass, SmaliMethod, parse_smali
from core.errors import AppLayoutInvalid, ParseError
from core.vocabulary import WidgetKind
from utils.logger import get_logger

logger = get_logger(__name__)

MODEL_VERSION = 1


@dataclass(frozen=True)
class AppWarning:
    code: str
    path: str
    message: str

    def to_dict(self) -> dict:
        return {"code": self.code, "path": self.path, "message": self.message}


@dataclass(frozen=True)
class AppModel:
    name: str
    manifest: ManifestInfo
    layouts: tuple[LayoutWidget, ...]
    classes: dict[str, SmaliClass]
    resource_ids: dict[str, int]
    layout_ids: dict[str, int] = field(default_factory=dict)
    warnings: tuple[AppWarning, ...] = field(default=(), compare=False)

    # --- 조회 ---

    @property
    def activities(self) -> frozenset[str]:
        return self.manifest.activities

    @property
    def layout_files(self) -> list[str]:
        return sorted({w.layout_file for w in self.layouts})

    @cached_property
    def widgets_by_resource(self) -> dict[int, list[LayoutWidget]]:
        """숫자 리소스 id → 그 id를 가진 위젯들 (여러 레이아웃에 같은 id가 있을 수 있음)"""
        out: dict[int, list[LayoutWidget]] = {}
        for w in self.layouts:
            if w.resource_id_name and w.resource_id_name in self.resource_ids:
                out.setdefault(self.resource_ids[w.resource_id_name], []).append(w)
        return out

    @cached_property
    def layout_names_by_id(self) -> dict[int, str]:
        return {value: name for name, value in self.layout_ids.items()}

    def widget_for_resource(self, value: int, layout_names: set[str] | None = None) -> LayoutWidget | None:
        """리소스 id → 위젯. 후보가 여럿이면 layout_names에 속한 레이아웃을 우선, 그다음 경로순."""
        candidates = self.widgets_by_resource.get(value, [])
        if layout_names:
            preferred = [w for w in candidates if w.layout_name in layout_names]
            candidates = preferred or candidates
        return min(candidates, key=lambda w: w.layout_file) if candidates else None

    def method(self, ref: MethodRef) -> SmaliMethod | None:
        cls = self.classes.get(ref.class_name)
        return cls.method(ref.name, ref.descriptor) if cls else None

    def iter_methods(self):
        for name in sorted(self.classes):
            yield from self.classes[name].methods

    def is_activity_or_inner(self, class_name: str) -> bool:
        """선언된 액티비티이거나 그 내부 클래스 (Outer$Inner)"""
        outer = class_name.split("$", 1)[0]
        return class_name in self.activities or outer in self.activities

    def hosting_activity(self, class_name: str) -> str | None:
        """클래스를 포함하는 액티비티 (자기 자신 또는 바깥 클래스)"""
        if class_name in self.activities:
            return class_name
        outer = class_name.split("$", 1)[0]
        return outer if outer in self.activities else None

    def superclasses(self, class_name: str) -> list[str]:
        """앱 안에서 알려진 상위 클래스 체인 (자기 자신 제외, 순환 방지)"""
        chain, seen = [], {class_name}
        current = self.classes.get(class_name)
        while current and current.super_class and current.super_class not in seen:
            chain.append(current.super_class)
            seen.add(current.super_class)
            current = self.classes.get(current.super_class)
        return chain

    def supertypes(self, class_name: str) -> set[str]:
        """상위 클래스와 구현 인터페이스 전체 (앱 밖 타입 이름도 포함)"""
        out, stack = set(), [class_name]
        while stack:
            cls = self.classes.get(stack.pop())
            if not cls:
                continue
            for parent in (cls.super_class, *cls.interfaces):
                if parent and parent not in out:
                    out.add(parent)
                    stack.append(parent)
        out.discard(class_name)
        return out

    # --- 직렬화 ---

    def to_dict(self) -> dict:
        return {
            "model_version": MODEL_VERSION,
            "name": self.name,
            "manifest": self.manifest.to_dict(),
            "layouts": [w.to_dict() for w in self.layouts],
            "classes": {name: self.classes[name].to_dict() for name in sorted(self.classes)},
            "resource_ids": dict(sorted(self.resource_ids.items())),
            "layout_ids": dict(sorted(self.layout_ids.items())),
            "warnings": [w.to_dict() for w in self.warnings],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AppModel":
        return cls(
            name=data["name"],
            manifest=ManifestInfo.from_dict(data["manifest"]),
            layouts=tuple(LayoutWidget.from_dict(w) for w in data.get("layouts", [])),
            classes={
                name: SmaliClass.from_dict(c) for name, c in data.get("classes", {}).items()
            },
            resource_ids={k: int(v) for k, v in data.get("resource_ids", {}).items()},
            layout_ids={k: int(v) for k, v in data.get("layout_ids", {}).items()},
            warnings=tuple(AppWarning(**w) for w in data.get("warnings", [])),
        )


def load_app(directory: str | Path, widget_table: dict[str, WidgetKind] | None = None) -> AppModel:
    """apktool 디렉터리를 읽어 AppModel 생성.

    Raises:
        AppLayoutInvalid: 디렉터리나 AndroidManifest.xml이 없음
        ParseError / ManifestInvalid: 매니페스트 자체를 읽을 수 없음
    """
    root = Path(directory)
    manifest_path = root / "AndroidManifest.xml"
    if not manifest_path.is_file():
        raise AppLayoutInvalid(f"AndroidManifest.xml이 없습니다: {root}")

    warnings: list[AppWarning] = []

    def warn(code: str, path: Path | str, message: str):
        rel = _relative(root, path)
        warnings.append(AppWarning(code, rel, message))
        logger.warning(code, path=rel, message=message)

    manifest = parse_manifest(manifest_path.read_bytes(), path=_relative(root, manifest_path))
    for raw in manifest.skipped_activities:
        warn("invalid_activity_name", manifest_path, f"액티비티 이름을 해석할 수 없습니다: {raw!r}")

    # 레이아웃
    layouts: list[LayoutWidget] = []
    layout_paths = sorted(p for p in root.glob("res/layout*/*.xml") if p.is_file())
    for path in layout_paths:
        try:
            layouts.extend(parse_layout(path.read_bytes(), _relative(root, path), widget_table))
        except ParseError as e:
            warn("layout_parse_error", path, _describe(e))
    if not layout_paths:
        warn("no_layouts", root / "res", "레이아웃 파일이 없습니다.")

    # 리소스 id
    resource_ids: dict[str, int] = {}
    layout_ids: dict[str, int] = {}
    public_path = root / "res" / "values" / "public.xml"
    if public_path.is_file():
        try:
            table = parse_public_xml(public_path.read_bytes(), _relative(root, public_path))
            resource_ids = table.get("id", {})
            layout_ids = table.get("layout", {})
        except ParseError as e:
            warn("public_xml_parse_error", public_path, _describe(e))

    # smali
    classes: dict[str, SmaliClass] = {}
    smali_paths = sorted(p for p in root.glob("smali*/**/*.smali") if p.is_file())
    for path in smali_paths:
        rel = _relative(root, path)
        try:
            cls = parse_smali(path.read_text(encoding="utf-8", errors="replace"), rel)
        except ParseError as e:
            warn("smali_parse_error", path, _describe(e))
            continue
        if cls.name in classes:
            warn("duplicate_class", path, f"{cls.name} 클래스가 이미 {classes[cls.name].source_path}에 있습니다.")
            continue
        classes[cls.name] = cls
    if not smali_paths:
        warn("no_smali", root, "smali 파일이 없습니다.")

    model = AppModel(
        name=root.resolve().name,
        manifest=manifest,
        layouts=tuple(layouts),
        classes=classes,
        resource_ids=resource_ids,
        layout_ids=layout_ids,
        warnings=tuple(warnings),
    )
    logger.debug(
        "app_loaded", path=str(root), message=f"{len(layout_paths)} layouts, {len(classes)} classes"
    )
    return model


def _relative(root: Path, path: Path | str) -> str:
    try:
        return Path(path).relative_to(root).as_posix()
    except ValueError:
        return Path(path).as_posix()


def _describe(e: ParseError) -> str:
    if e.line is not None:
        return f"{e} (line {e.line}, column {e.column})"
    return str(e)
