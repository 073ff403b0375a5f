"""수집 수단 추론 (빈도 / 지속 시간 / 동작 세부)

- Frequency: 항상 (기록된 이벤트는 횟수로 셀 수 있음)
- Duration: TimedEvent 분류, startTimedEvent/endTimedEvent 이름,
  또는 시각 기록 필드를 읽으면서 시간 소스를 다시 호출하는 메서드 (paired timestamp)
- MotionDetails: MotionLog 분류, 또는 터치/제스처 콜백의 MotionEvent·속도 인자가 DCM 인자로 흘러감
"""

from analyzer.dcm_finder import DcmInvocation
from analyzer.registers import field_owner, flow_states
from analyzer.signatures import DcmCategory
from apk.app_model import AppModel
from apk.smali import Invoke, MethodRef, Other, SmaliMethod
from config.settings import TIME_SOURCES, TIMED_EVENT_METHOD_NAMES
from config.widgets import MOTION_CALLBACKS, MOTION_EVENT_DESCRIPTOR
from core.vocabulary import CollectionMeans

_MOTION_PARAM_TYPES = {MOTION_EVENT_DESCRIPTOR, "F"}


def infer_means(
    app: AppModel,
    invocation: DcmInvocation,
    callback: MethodRef | None = None,
    chain: list[MethodRef] | tuple[MethodRef, ...] = (),
) -> frozenset[CollectionMeans]:
    """호출과 그것을 감싼 콜백으로 수집 수단 추론.

    chain: 콜백부터 호출이 있는 메서드까지의 경로. 비어 있으면 콜백 안에서 바로 호출한 것으로 본다.
    """
    signature = invocation.signature
    means = set(signature.category.default_means)

    if signature.method_name in TIMED_EVENT_METHOD_NAMES:
        means.add(CollectionMeans.DURATION)

    site_method = app.method(invocation.site.method_ref)
    if site_method is not None and has_paired_timestamp(app, site_method):
        means.add(CollectionMeans.DURATION)

    if signature.category is not DcmCategory.MOTION_LOG and callback is not None:
        path = list(chain) or [callback]
        if callback.name in MOTION_CALLBACKS and motion_flows_into(app, path, invocation):
            means.add(CollectionMeans.MOTION_DETAILS)

    return frozenset(means)


def has_paired_timestamp(app: AppModel, method: SmaliMethod) -> bool:
    """method가 시간 소스를 호출하고, 시간 소스 호출 뒤 저장된 wide 필드를 읽는가"""
    if not _calls_time_source(method.instructions):
        return False
    read = {
        ins.operands[-1] for ins in method.instructions
        if isinstance(ins, Other) and ins.opcode.startswith(("iget-wide", "sget-wide")) and ins.operands
    }
    if not read:
        return False

    owners = {method.owner_class} | {field_owner(f) for f in read}
    stored = set()
    for owner in owners:
        cls = app.classes.get(owner)
        for m in cls.methods if cls else ():
            seen_time = False
            for ins in m.instructions:
                if isinstance(ins, Invoke) and (ins.target_class, ins.target_name) in TIME_SOURCES:
                    seen_time = True
                elif (
                    seen_time and isinstance(ins, Other)
                    and ins.opcode.startswith(("iput-wide", "sput-wide")) and ins.operands
                ):
                    stored.add(ins.operands[-1])
    return bool(read & stored)


def motion_flows_into(app: AppModel, chain: list[MethodRef], invocation: DcmInvocation) -> bool:
    """콜백의 MotionEvent/float 파라미터가 경로를 따라 DCM 호출 인자까지 흘러가는가"""
    start = app.method(chain[0])
    if start is None:
        return False
    tainted = {reg for reg, t in start.param_registers() if t in _MOTION_PARAM_TYPES}

    for k, ref in enumerate(chain):
        method = app.method(ref)
        if method is None or not tainted:
            return False
        if k == len(chain) - 1:
            for i, ins, live in flow_states(method, tainted):
                if i == invocation.site.instruction_index:
                    return isinstance(ins, Invoke) and any(r in live for r in ins.call_args)
            return False

        nxt = chain[k + 1]
        mapped: set[str] = set()
        for _, ins, live in flow_states(method, tainted):
            if (
                isinstance(ins, Invoke)
                and ins.target_name == nxt.name
                and ins.target_descriptor == nxt.descriptor
            ):
                # 인자 레지스터 j번째 → 피호출 메서드의 pj
                mapped = {f"p{j}" for j, r in enumerate(ins.arg_registers) if r in live}
                if mapped:
                    break
        tainted = mapped
    return False


def _calls_time_source(instructions) -> bool:
    return any(
        isinstance(ins, Invoke) and (ins.target_class, ins.target_name) in TIME_SOURCES
        for ins in instructions
    )
