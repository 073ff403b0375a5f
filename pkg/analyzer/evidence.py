"""수집 증거 레코드: (DCM 호출, 위젯, 콜백 경로, 액티비티) 연결과 증거 클레임 생성"""

import hashlib
from collections import defaultdict
from dataclasses import dataclass

from analyzer.call_graph import CallGraph
from analyzer.dcm_finder import DcmInvocation
from analyzer.listeners import ListenerBinding
from analyzer.means import infer_means
from apk.app_model import AppModel
from apk.layout import LayoutWidget
from apk.smali import MethodRef
from config.settings import DEFAULT_REACHABILITY_BOUND, LIFECYCLE_METHODS
from core.claims import CollectionClaim, Provenance
from core.errors import ConfigInvalid, NoEvidence
from core.vocabulary import (
    CollectionMeans,
    InteractionDataType,
    WidgetKind,
    sort_means,
    widget_kind_to_data_type,
)
from utils.logger import get_logger
from utils.validators import validate_bound

logger = get_logger(__name__)

LIFECYCLE = "Lifecycle"


@dataclass(frozen=True)
class EvidenceRecord:
    record_id: str
    data_type: InteractionDataType
    means: frozenset[CollectionMeans]
    activity_class: str
    widget: LayoutWidget | None
    invocation: DcmInvocation
    call_chain: tuple[str, ...]        # 콜백/생명주기 메서드 → … → DCM
    widget_kind: WidgetKind | None = None
    registration: str = LIFECYCLE

    def to_dict(self) -> dict:
        return {
            "record_id": self.record_id,
            "data_type": self.data_type.phrase,
            "means": [m.phrase for m in sort_means(self.means)],
            "activity_class": self.activity_class,
            "widget": self.widget.to_dict() if self.widget else None,
            "widget_kind": self.widget_kind.value if self.widget_kind else None,
            "registration": self.registration,
            "invocation": self.invocation.to_dict(),
            "call_chain": list(self.call_chain),
        }


def lifecycle_methods(app: AppModel, activity: str) -> list[MethodRef]:
    """액티비티의 생명주기 메서드 (앱 안의 상위 클래스에 정의된 것 포함, LIFECYCLE_METHODS 순서)"""
    found = []
    for name in LIFECYCLE_METHODS:
        for owner in (activity, *app.superclasses(activity)):
            cls = app.classes.get(owner)
            methods = [m for m in cls.find_methods(name) if not m.is_static] if cls else []
            if methods:
                found.extend(m.ref for m in methods)
                break
    return found


def associate(
    app: AppModel,
    invocations: list[DcmInvocation],
    bindings: list[ListenerBinding],
    bound: int = DEFAULT_REACHABILITY_BOUND,
    graph: CallGraph | None = None,
) -> list[EvidenceRecord]:
    """콜백에서 bound 간선 이내로 닿는 DCM 호출마다 (바인딩, 호출) 레코드 하나.

    DCM 호출 자체도 간선 하나로 센다 (콜백 안에서 바로 호출 = 1).
    어떤 바인딩 콜백에서도 (깊이 제한 없이) 닿지 않고 액티비티 생명주기 메서드에서만 닿는 호출은
    위젯 없는 AppPresentation 레코드가 된다 (액티비티당 하나, 가장 짧은 경로).

    Raises:
        ConfigInvalid: bound < 1
    """
    valid, message = validate_bound(bound)
    if not valid:
        raise ConfigInvalid(message)
    graph = graph or CallGraph(app)
    max_depth = bound - 1

    by_method: dict[MethodRef, list[DcmInvocation]] = defaultdict(list)
    for inv in invocations:
        by_method[inv.site.method_ref].append(inv)

    records: list[EvidenceRecord] = []
    from_callbacks: set[str] = set()

    for binding in bindings:
        reachable = graph.reachable(binding.callback)
        from_callbacks.update(inv.key for m in reachable for inv in by_method.get(m, ()))

        kind = binding.kind
        if kind is None or kind is WidgetKind.OTHER:
            logger.debug("unmapped_binding", path=binding.site, message=str(binding.callback))
            continue
        data_type = widget_kind_to_data_type(kind)

        paths = graph.shortest_paths(binding.callback, max_depth)
        for method_ref in sorted(paths, key=lambda m: (len(paths[m]), m)):
            for inv in by_method.get(method_ref, ()):
                path = paths[method_ref]
                records.append(EvidenceRecord(
                    record_id=_record_id(app, binding.binding_id, inv),
                    data_type=data_type,
                    means=infer_means(app, inv, binding.callback, path),
                    activity_class=binding.activity_class,
                    widget=binding.widget,
                    invocation=inv,
                    call_chain=_chain(app, path, inv),
                    widget_kind=kind,
                    registration=binding.registration.value,
                ))

    for activity in sorted(app.activities):
        best: dict[str, tuple[DcmInvocation, list[MethodRef]]] = {}
        for entry in lifecycle_methods(app, activity):
            paths = graph.shortest_paths(entry, max_depth)
            for method_ref in sorted(paths, key=lambda m: (len(paths[m]), m)):
                for inv in by_method.get(method_ref, ()):
                    if inv.key in from_callbacks:
                        continue
                    path = paths[method_ref]
                    if inv.key not in best or len(path) < len(best[inv.key][1]):
                        best[inv.key] = (inv, path)
        for key in sorted(best):
            inv, path = best[key]
            records.append(EvidenceRecord(
                record_id=_record_id(app, f"{LIFECYCLE}|{activity}", inv),
                data_type=InteractionDataType.APP_PRESENTATION,
                means=infer_means(app, inv, path[0], path),
                activity_class=activity,
                widget=None,
                invocation=inv,
                call_chain=_chain(app, path, inv),
            ))

    return records


def build_evidence_claim(records: list[EvidenceRecord]) -> CollectionClaim:
    """레코드의 타입/수단 합집합 → 증거 클레임.

    Raises:
        NoEvidence: 레코드가 없음
    """
    if not records:
        raise NoEvidence("수집 증거 레코드가 없습니다.")
    return CollectionClaim(
        data_types=frozenset(r.data_type for r in records),
        means=frozenset().union(*(r.means for r in records)),
        provenance=Provenance.EVIDENCE_DERIVED,
        source_refs=tuple(r.record_id for r in records),
    )


def _chain(app: AppModel, path: list[MethodRef], inv: DcmInvocation) -> tuple[str, ...]:
    method = app.method(inv.site.method_ref)
    target = method.instructions[inv.site.instruction_index].target
    return tuple(str(m) for m in path) + (str(target),)


def _record_id(app: AppModel, origin: str, inv: DcmInvocation) -> str:
    digest = hashlib.sha1(f"{origin}|{inv.key}".encode("utf-8")).hexdigest()[:12]
    return f"{app.name}/{digest}"
