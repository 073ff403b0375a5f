"""Android UI 관련 조회 테이블 중앙 관리 (레이아웃 요소, 리스너 콜백, 제스처 감지기)"""

from core.vocabulary import WidgetKind

# === 레이아웃 요소 분류 ===
# 명시적 테이블을 먼저 보고, 그다음 "…Button" 접미사 규칙을 적용한다.
# (RadioButton은 접미사 규칙보다 테이블이 우선)
TEXTFIELD_ELEMENTS = {"EditText", "SearchView", "AutoCompleteTextView"}
CHECKBOX_OR_SPINNER_ELEMENTS = {
    "CheckBox", "Spinner", "RadioButton", "RadioGroup", "Switch", "RatingBar",
}
VIEW_ELEMENTS = {
    "VideoView", "WebView", "ImageView", "TextView", "RecyclerView",
    "ListView", "ViewPager", "ScrollView",
}
BUTTON_SUFFIX = "Button"

DEFAULT_WIDGET_TABLE: dict[str, WidgetKind] = {
    **{name: WidgetKind.TEXTFIELD for name in TEXTFIELD_ELEMENTS},
    **{name: WidgetKind.CHECKBOX_OR_SPINNER for name in CHECKBOX_OR_SPINNER_ELEMENTS},
    **{name: WidgetKind.VIEW for name in VIEW_ELEMENTS},
}

# === 리스너 등록 ===
SET_LISTENER_PREFIX = "setOn"
SET_LISTENER_SUFFIX = "Listener"
FIND_VIEW_METHODS = {"findViewById", "requireViewById"}
SET_CONTENT_VIEW_METHOD = "setContentView"

# 리스너 인터페이스 콜백 → 위젯이 없거나 Other일 때 쓰는 합성 위젯 종류
CALLBACK_KINDS: dict[str, WidgetKind] = {
    "onClick": WidgetKind.BUTTON,
    "onLongClick": WidgetKind.BUTTON,
    "onCheckedChanged": WidgetKind.CHECKBOX_OR_SPINNER,
    "onItemSelected": WidgetKind.CHECKBOX_OR_SPINNER,
    "onItemClick": WidgetKind.CHECKBOX_OR_SPINNER,
    "onRatingChanged": WidgetKind.CHECKBOX_OR_SPINNER,
    "onEditorAction": WidgetKind.TEXTFIELD,
    "onQueryTextSubmit": WidgetKind.TEXTFIELD,
    "onQueryTextChange": WidgetKind.TEXTFIELD,
    "onKey": WidgetKind.TEXTFIELD,
    "onTouch": WidgetKind.GESTURE_DETECTOR,
    "onScroll": WidgetKind.GESTURE_DETECTOR,
    "onFling": WidgetKind.GESTURE_DETECTOR,
    "onSingleTapUp": WidgetKind.GESTURE_DETECTOR,
    "onSingleTapConfirmed": WidgetKind.GESTURE_DETECTOR,
    "onDoubleTap": WidgetKind.COMPOSITE_GESTURE_DETECTOR,
    "onDoubleTapEvent": WidgetKind.COMPOSITE_GESTURE_DETECTOR,
    "onLongPress": WidgetKind.COMPOSITE_GESTURE_DETECTOR,
    "onScale": WidgetKind.COMPOSITE_GESTURE_DETECTOR,
    "onScaleBegin": WidgetKind.COMPOSITE_GESTURE_DETECTOR,
    "onScaleEnd": WidgetKind.COMPOSITE_GESTURE_DETECTOR,
}

# setOn*Listener 인자 타입(리스너 인터페이스) → 그 인터페이스의 콜백 이름
# 표에 없는 인터페이스는 CALLBACK_KINDS의 이름으로 콜백을 찾는다.
LISTENER_CALLBACKS: dict[str, set[str]] = {
    "android.view.View$OnClickListener": {"onClick"},
    "android.view.View$OnLongClickListener": {"onLongClick"},
    "android.view.View$OnTouchListener": {"onTouch"},
    "android.view.View$OnKeyListener": {"onKey"},
    "android.widget.CompoundButton$OnCheckedChangeListener": {"onCheckedChanged"},
    "android.widget.RadioGroup$OnCheckedChangeListener": {"onCheckedChanged"},
    "android.widget.AdapterView$OnItemSelectedListener": {"onItemSelected"},
    "android.widget.AdapterView$OnItemClickListener": {"onItemClick"},
    "android.widget.RatingBar$OnRatingBarChangeListener": {"onRatingChanged"},
    "android.widget.TextView$OnEditorActionListener": {"onEditorAction"},
    "android.widget.SearchView$OnQueryTextListener": {"onQueryTextSubmit", "onQueryTextChange"},
    "androidx.appcompat.widget.SearchView$OnQueryTextListener": {
        "onQueryTextSubmit", "onQueryTextChange",
    },
}

# === 제스처 감지기 ===
GESTURE_DETECTOR_CLASSES = {
    "android.view.GestureDetector",
    "android.view.ScaleGestureDetector",
    "androidx.core.view.GestureDetectorCompat",
    "android.support.v4.view.GestureDetectorCompat",
}
GESTURE_CALLBACKS = {
    name for name, kind in CALLBACK_KINDS.items()
    if kind in (WidgetKind.GESTURE_DETECTOR, WidgetKind.COMPOSITE_GESTURE_DETECTOR)
    and name != "onTouch"
}

# MotionDetails 추론: MotionEvent/속도 인자가 DCM 인자로 흘러가는지 보는 콜백
MOTION_CALLBACKS = {"onTouch", "onScroll", "onFling", "onDoubleTap"}
MOTION_EVENT_DESCRIPTOR = "Landroid/view/MotionEvent;"

XML_ONCLICK_DESCRIPTOR = "(Landroid/view/View;)V"
