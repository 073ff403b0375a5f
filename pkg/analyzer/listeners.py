"""리스너 바인딩 탐지 (UI 위젯 ↔ 리스너 ↔ 콜백)

세 가지 등록 형태:
- SetListenerCall: view.setOn*Listener(listener). view는 findViewById(R.id.x)로 찾은 값
- XmlOnClick: 레이아웃의 android:onClick="handler" → 액티비티의 handler(View)
- GestureDetectorAttach: new GestureDetector(context, listener) 등
"""

from dataclasses import dataclass
from enum import Enum

from analyzer.registers import const_value, defining_instruction, field_owner, field_type, return_type
from apk.app_model import AppModel, AppWarning
from apk.layout import LayoutWidget
from apk.smali import ConstInt, Invoke, MethodRef, SmaliMethod, descriptor_params, type_to_class
from config.widgets import (
    CALLBACK_KINDS,
    FIND_VIEW_METHODS,
    GESTURE_CALLBACKS,
    GESTURE_DETECTOR_CLASSES,
    LISTENER_CALLBACKS,
    SET_CONTENT_VIEW_METHOD,
    SET_LISTENER_PREFIX,
    SET_LISTENER_SUFFIX,
    XML_ONCLICK_DESCRIPTOR,
)
from core.vocabulary import WidgetKind
from utils.logger import get_logger

logger = get_logger(__name__)

_MAX_FIELD_DEPTH = 2
_MAX_MOVE_DEPTH = 8


class Registration(Enum):
    SET_LISTENER = "SetListenerCall"
    XML_ONCLICK = "XmlOnClick"
    GESTURE_DETECTOR = "GestureDetectorAttach"


@dataclass(frozen=True)
class ListenerBinding:
    activity_class: str             # 등록한 코드를 품은 액티비티 (없으면 등록한 클래스)
    widget: LayoutWidget | None
    listener_class: str
    callback: MethodRef
    registration: Registration
    site: str                       # 등록 위치 (메서드@명령 번호 또는 레이아웃 파일)
    synthetic_kind: WidgetKind | None = None

    @property
    def kind(self) -> WidgetKind | None:
        """레코드 데이터 타입을 정하는 위젯 종류. 위젯이 없거나 Other면 콜백에서 유추한 종류."""
        if self.widget is not None and self.widget.widget_kind is not WidgetKind.OTHER:
            return self.widget.widget_kind
        return self.synthetic_kind

    @property
    def binding_id(self) -> str:
        widget = self.widget.key if self.widget else "-"
        return f"{self.registration.value}|{self.site}|{widget}|{self.callback}"

    def to_dict(self) -> dict:
        return {
            "activity_class": self.activity_class,
            "widget": self.widget.to_dict() if self.widget else None,
            "listener_class": self.listener_class,
            "callback": str(self.callback),
            "registration": self.registration.value,
            "site": self.site,
            "kind": self.kind.value if self.kind else None,
        }


def find_listener_bindings(app: AppModel, warnings: list[AppWarning] | None = None) -> list[ListenerBinding]:
    """앱 전체의 리스너 바인딩.

    findViewById 수신자를 위젯으로 해석하지 못하면 위젯 없는 바인딩을 만들고 경고를 남긴다.
    """
    finder = _BindingFinder(app, warnings if warnings is not None else [])
    return finder.run()


def content_layouts(app: AppModel, activity: str) -> set[str]:
    """액티비티(와 앱 안의 상위 클래스)가 setContentView로 지정한 레이아웃 이름"""
    names = set()
    for cls_name in (activity, *app.superclasses(activity)):
        cls = app.classes.get(cls_name)
        if not cls:
            continue
        for method in cls.methods:
            for index, ins in method.invokes():
                if ins.target_name == SET_CONTENT_VIEW_METHOD and ins.call_args:
                    value = const_value(method, index, ins.call_args[0])
                    if value is not None and value in app.layout_names_by_id:
                        names.add(app.layout_names_by_id[value])
    return names


def find_callbacks(app: AppModel, class_name: str, names) -> list[SmaliMethod]:
    """클래스와 앱 안의 상위 클래스에서 이름이 names에 속하는 콜백 메서드 (하위 클래스 정의 우선)"""
    found: dict[tuple[str, str], SmaliMethod] = {}
    for cls_name in (class_name, *app.superclasses(class_name)):
        cls = app.classes.get(cls_name)
        if not cls:
            continue
        for method in cls.methods:
            key = (method.name, method.descriptor)
            if method.name in names and not method.is_static and key not in found:
                found[key] = method
    return list(found.values())


class _BindingFinder:
    def __init__(self, app: AppModel, warnings: list[AppWarning]):
        self.app = app
        self.warnings = warnings
        self._layouts: dict[str, set[str]] = {}

    def run(self) -> list[ListenerBinding]:
        bindings = []
        for method in self.app.iter_methods():
            for index, ins in method.invokes():
                if _is_set_listener(ins):
                    bindings.extend(self._set_listener(method, index, ins))
                elif ins.target_name == "<init>" and ins.target_class in GESTURE_DETECTOR_CLASSES:
                    bindings.extend(self._gesture_detector(method, index, ins))
        bindings.extend(self._xml_onclick())
        return bindings

    def warn(self, code: str, path: str, message: str):
        self.warnings.append(AppWarning(code, path, message))
        logger.warning(code, path=path, message=message)

    def layouts_of(self, activity: str) -> set[str]:
        if activity not in self._layouts:
            self._layouts[activity] = content_layouts(self.app, activity)
        return self._layouts[activity]

    # --- setOn*Listener ---

    def _set_listener(self, method: SmaliMethod, index: int, ins: Invoke) -> list[ListenerBinding]:
        site = f"{method.ref}@{index}"
        listener_reg = ins.call_args[0]
        if isinstance(_definition(method, index, listener_reg), ConstInt):
            return []  # setOnClickListener(null): 해제

        listener = self.resolve_class(method, index, listener_reg)
        if listener is None or listener not in self.app.classes:
            self.warn("unresolved_listener", site, f"리스너 클래스를 찾을 수 없습니다: {listener or '?'}")
            return []

        params = descriptor_params(ins.target_descriptor)
        interface = type_to_class(params[0]) if params else ""
        names = LISTENER_CALLBACKS.get(interface, set(CALLBACK_KINDS))
        callbacks = find_callbacks(self.app, listener, names)
        if not callbacks:
            return []

        activity = self.app.hosting_activity(method.owner_class) or method.owner_class
        widget = None
        value = self.resolve_view_id(method, index, ins.receiver)
        if value is not None:
            widget = self.app.widget_for_resource(value, self.layouts_of(activity))
        if widget is None:
            detail = f"0x{value:x}" if value is not None else "findViewById 결과가 아님"
            self.warn("unresolved_receiver", site, f"{ins.target_name} 수신자를 위젯으로 해석하지 못했습니다 ({detail}).")

        return [
            ListenerBinding(
                activity_class=activity,
                widget=widget,
                listener_class=listener,
                callback=cb.ref,
                registration=Registration.SET_LISTENER,
                site=site,
                synthetic_kind=CALLBACK_KINDS.get(cb.name),
            )
            for cb in callbacks
        ]

    def resolve_view_id(self, method: SmaliMethod, index: int, register: str | None, depth: int = 0) -> int | None:
        """register가 findViewById(상수)의 결과면 그 상수. 필드에 저장된 뷰도 따라간다."""
        if register is None:
            return None
        found = defining_instruction(method, index, register)
        if found is None or isinstance(found[1], ConstInt):
            return None
        i, ins = found
        op, operands = ins.opcode, ins.operands

        if op.startswith("move-result"):
            prev = method.instructions[i - 1] if i > 0 else None
            if isinstance(prev, Invoke) and prev.target_name in FIND_VIEW_METHODS and prev.call_args:
                return const_value(method, i - 1, prev.call_args[-1])
            return None
        if op.startswith("move-object") and len(operands) > 1 and depth < _MAX_MOVE_DEPTH:
            return self.resolve_view_id(method, i, operands[1], depth + 1)
        if op.startswith(("iget-object", "sget-object")) and depth < _MAX_FIELD_DEPTH:
            return self._field_view_id(operands[-1], depth + 1)
        return None

    def _field_view_id(self, field_ref: str, depth: int) -> int | None:
        """필드에 뷰를 저장하는 iput/sput을 찾아 그 값의 id를 해석"""
        cls = self.app.classes.get(field_owner(field_ref))
        if not cls:
            return None
        for method in cls.methods:
            for i, ins in enumerate(method.instructions):
                if isinstance(ins, (Invoke, ConstInt)) or len(ins.operands) < 2:
                    continue
                if ins.opcode.startswith(("iput-object", "sput-object")) and ins.operands[-1] == field_ref:
                    value = self.resolve_view_id(method, i, ins.operands[0], depth)
                    if value is not None:
                        return value
        return None

    def resolve_class(self, method: SmaliMethod, index: int, register: str, depth: int = 0) -> str | None:
        """register에 들어 있는 객체의 클래스 (new-instance, 필드 타입, 파라미터 타입, 반환 타입)"""
        found = defining_instruction(method, index, register)
        if found is None:
            for reg, type_descriptor in method.param_registers():
                if reg == register and type_descriptor.startswith("L"):
                    return type_to_class(type_descriptor)
            return None
        i, ins = found
        if isinstance(ins, ConstInt):
            return None
        op, operands = ins.opcode, ins.operands
        if op == "new-instance" and len(operands) > 1:
            return type_to_class(operands[1])
        if op.startswith("move-object") and len(operands) > 1 and depth < _MAX_MOVE_DEPTH:
            return self.resolve_class(method, i, operands[1], depth + 1)
        if op.startswith(("iget-object", "sget-object")):
            return type_to_class(field_type(operands[-1]))
        if op.startswith("move-result"):
            prev = method.instructions[i - 1] if i > 0 else None
            if isinstance(prev, Invoke):
                rtype = return_type(prev.target_descriptor)
                return type_to_class(rtype) if rtype.startswith("L") else None
        return None

    # --- GestureDetector ---

    def _gesture_detector(self, method: SmaliMethod, index: int, ins: Invoke) -> list[ListenerBinding]:
        site = f"{method.ref}@{index}"
        for register in ins.call_args:
            listener = self.resolve_class(method, index, register)
            if listener is None or listener not in self.app.classes:
                continue
            callbacks = find_callbacks(self.app, listener, GESTURE_CALLBACKS)
            if not callbacks:
                continue
            activity = self.app.hosting_activity(method.owner_class) or method.owner_class
            return [
                ListenerBinding(
                    activity_class=activity,
                    widget=None,
                    listener_class=listener,
                    callback=cb.ref,
                    registration=Registration.GESTURE_DETECTOR,
                    site=site,
                    synthetic_kind=CALLBACK_KINDS[cb.name],
                )
                for cb in callbacks
            ]
        self.warn("unresolved_listener", site, f"{ins.target_class} 리스너를 찾을 수 없습니다.")
        return []

    # --- android:onClick ---

    def _xml_onclick(self) -> list[ListenerBinding]:
        bindings = []
        for widget in self.app.layouts:
            handler = widget.onclick_handler
            if not handler:
                continue
            candidates = []
            for activity in sorted(self.app.activities):
                for cls_name in (activity, *self.app.superclasses(activity)):
                    cls = self.app.classes.get(cls_name)
                    if cls and cls.method(handler, XML_ONCLICK_DESCRIPTOR):
                        candidates.append((activity, cls_name))
                        break
            preferred = [c for c in candidates if widget.layout_name in self.layouts_of(c[0])]
            chosen = preferred or candidates
            if not chosen:
                self.warn(
                    "unresolved_onclick_handler", widget.layout_file,
                    f"onClick 핸들러 {handler}(View)를 가진 액티비티가 없습니다.",
                )
            for activity, owner in chosen:
                bindings.append(ListenerBinding(
                    activity_class=activity,
                    widget=widget,
                    listener_class=activity,
                    callback=MethodRef(owner, handler, XML_ONCLICK_DESCRIPTOR),
                    registration=Registration.XML_ONCLICK,
                    site=widget.layout_file,
                    synthetic_kind=WidgetKind.BUTTON,
                ))
        return bindings


def _is_set_listener(ins: Invoke) -> bool:
    return (
        ins.target_name.startswith(SET_LISTENER_PREFIX)
        and ins.target_name.endswith(SET_LISTENER_SUFFIX)
        and not ins.is_static
        and len(ins.call_args) >= 1
    )


def _definition(method: SmaliMethod, index: int, register: str):
    found = defining_instruction(method, index, register)
    return found[1] if found else None
