"""수집 어휘: 상호작용 데이터 타입 6종, 수집 수단 3종, 위젯 종류"""

from enum import Enum

from core.errors import UnmappedWidgetKind


class InteractionDataType(Enum):
    """값은 표준 클레임 문장에 쓰이는 정식 문구. 선언 순서가 곧 렌더링 순서."""

    APP_PRESENTATION = "app presentation"
    BINARY = "binary"
    CATEGORICAL = "categorical"
    USER_INPUT = "user input"
    GESTURE = "gesture"
    COMPOSITE_GESTURE = "composite gesture"

    @property
    def phrase(self) -> str:
        return self.value

    @classmethod
    def from_phrase(cls, phrase: str) -> "InteractionDataType":
        return cls(phrase.strip().lower())


class CollectionMeans(Enum):
    FREQUENCY = "frequency"
    DURATION = "duration"
    MOTION_DETAILS = "motion details"

    @property
    def phrase(self) -> str:
        return self.value

    @classmethod
    def from_phrase(cls, phrase: str) -> "CollectionMeans":
        return cls(phrase.strip().lower())


class WidgetKind(Enum):
    """레이아웃/코드에서 식별한 UI 위젯 종류.

    OTHER는 매핑되지 않는 요소 (이름은 LayoutWidget.element_name에 남는다).
    """

    VIEW = "View"
    BUTTON = "Button"
    TEXTFIELD = "Textfield"
    CHECKBOX_OR_SPINNER = "CheckboxOrSpinner"
    GESTURE_DETECTOR = "GestureDetector"
    COMPOSITE_GESTURE_DETECTOR = "CompositeGestureDetector"
    OTHER = "Other"


DATA_TYPE_ORDER: tuple[InteractionDataType, ...] = tuple(InteractionDataType)
MEANS_ORDER: tuple[CollectionMeans, ...] = tuple(CollectionMeans)

_WIDGET_TO_DATA_TYPE = {
    WidgetKind.VIEW: InteractionDataType.APP_PRESENTATION,
    WidgetKind.BUTTON: InteractionDataType.BINARY,
    WidgetKind.TEXTFIELD: InteractionDataType.USER_INPUT,
    WidgetKind.CHECKBOX_OR_SPINNER: InteractionDataType.CATEGORICAL,
    WidgetKind.GESTURE_DETECTOR: InteractionDataType.GESTURE,
    WidgetKind.COMPOSITE_GESTURE_DETECTOR: InteractionDataType.COMPOSITE_GESTURE,
}

# 통계 표 행 라벨 (UI 타입 (데이터 타입))
UI_TYPE_LABELS = {
    InteractionDataType.APP_PRESENTATION: "View (Presentation)",
    InteractionDataType.BINARY: "Button (Binary)",
    InteractionDataType.USER_INPUT: "Textfield (Input)",
    InteractionDataType.CATEGORICAL: "Checkbox & Spinner (Categorical)",
    InteractionDataType.GESTURE: "GestureDetector (Gesture)",
    InteractionDataType.COMPOSITE_GESTURE: "CompositeGestureDetector (Composite gesture)",
}


def widget_kind_to_data_type(
    kind: WidgetKind, element_name: str | None = None
) -> InteractionDataType:
    """위젯 종류 → 상호작용 데이터 타입.

    Raises:
        UnmappedWidgetKind: kind가 OTHER인 경우. 건너뛸지 보고할지는 호출자가 결정.
    """
    try:
        return _WIDGET_TO_DATA_TYPE[kind]
    except KeyError:
        raise UnmappedWidgetKind(element_name) from None


def sort_types(types) -> list[InteractionDataType]:
    return sorted(types, key=DATA_TYPE_ORDER.index)


def sort_means(means) -> list[CollectionMeans]:
    return sorted(means, key=MEANS_ORDER.index)
