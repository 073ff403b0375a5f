"""DCM 호출 탐지: 직접 호출 + 앱 자체 분석 래퍼 클래스(customized analytics) 경유 호출"""

from dataclasses import dataclass
from enum import Enum

from analyzer.signatures import DcmCategory, DcmSignature, SignatureDb
from apk.app_model import AppModel
from apk.smali import Invoke, MethodRef, SmaliClass


class InvocationKind(Enum):
    DIRECT = "direct"
    VIA_CUSTOM_ANALYTICS = "via_custom_analytics"


@dataclass(frozen=True, order=True)
class DcmSite:
    owner_class: str
    method_name: str
    method_descriptor: str
    instruction_index: int

    @property
    def method_ref(self) -> MethodRef:
        return MethodRef(self.owner_class, self.method_name, self.method_descriptor)

    def __str__(self) -> str:
        return f"{self.method_ref}@{self.instruction_index}"


@dataclass(frozen=True)
class DcmInvocation:
    site: DcmSite
    signature: DcmSignature
    kind: InvocationKind = InvocationKind.DIRECT
    wrapper_class: str | None = None

    @property
    def key(self) -> str:
        return f"{self.site}#{self.signature.category.value}"

    def to_dict(self) -> dict:
        return {
            "site": str(self.site),
            "service_name": self.signature.service_name,
            "target": f"{self.signature.class_pattern}->{self.signature.method_name}",
            "category": self.signature.category.value,
            "kind": self.kind.value,
            "wrapper_class": self.wrapper_class,
        }


def find_direct_dcm_invocations(app: AppModel, sigdb: SignatureDb) -> list[DcmInvocation]:
    """시그니처(클래스 완전/접두사, 메서드 이름, 디스크립터)가 일치하는 모든 invoke 명령.

    같은 메서드 안의 두 호출은 instruction_index로 구분되는 별개의 호출이다.
    """
    found = []
    for method in app.iter_methods():
        for index, ins in method.invokes():
            signature = sigdb.match(ins.target)
            if signature is not None:
                site = DcmSite(method.owner_class, method.name, method.descriptor, index)
                found.append(DcmInvocation(site, signature))
    return found


def invocation_matches(app: AppModel, invocation: DcmInvocation) -> bool:
    """호출 위치의 명령을 다시 읽어 시그니처와 일치하는지 확인 (재검증)"""
    method = app.method(invocation.site.method_ref)
    if method is None or not 0 <= invocation.site.instruction_index < len(method.instructions):
        return False
    ins = method.instructions[invocation.site.instruction_index]
    return isinstance(ins, Invoke) and invocation.signature.matches(ins.target)


def find_custom_analytics_classes(
    app: AppModel,
    sigdb: SignatureDb,
    direct: list[DcmInvocation] | None = None,
) -> set[str]:
    """앱이 직접 만든 분석 래퍼 클래스.

    조건:
    (a) 메서드 안에 직접 DCM 호출이 있거나, 시그니처 DB 클래스를 상속/구현하고
    (b) 선언된 액티비티(또는 그 내부 클래스)의 메서드가 이 클래스의 메서드를 호출하며
    (c) 자신은 액티비티/액티비티 내부 클래스/SDK 클래스가 아님
    """
    if direct is None:
        direct = find_direct_dcm_invocations(app, sigdb)
    invoking = {inv.site.owner_class for inv in direct}
    extending = {
        name for name in app.classes
        if any(sigdb.is_sdk_class(parent) for parent in app.supertypes(name))
    }

    called_from_activity = set()
    for method in app.iter_methods():
        if not app.is_activity_or_inner(method.owner_class):
            continue
        for _, ins in method.invokes():
            if ins.target_name not in ("<init>", "<clinit>"):
                called_from_activity.add(ins.target_class)

    return {
        name for name in (invoking | extending) & called_from_activity
        if name in app.classes
        and not app.is_activity_or_inner(name)
        and not sigdb.is_sdk_class(name)
    }


def promote_wrapper_signatures(
    app: AppModel,
    sigdb: SignatureDb,
    custom_classes: set[str],
    direct: list[DcmInvocation],
) -> list[DcmSignature]:
    """래퍼 클래스의 진입 메서드를 래퍼 시그니처로 승격.

    진입 메서드: 생성자가 아니고, public이거나 클래스 밖에서 호출되는 메서드 (접근 제한자 무관).
    - DCM에 (클래스 내부 호출을 거쳐) 도달하는 진입 메서드 → 도달한 DCM의 분류마다 하나
    - SDK 클래스를 상속/구현한 래퍼는 모든 진입 메서드 → 같은 이름의 SDK 시그니처 분류, 없으면 EventLog
    """
    promoted: list[DcmSignature] = []
    external = _externally_called(app, custom_classes)
    for name in sorted(custom_classes):
        cls = app.classes[name]
        reached = _reached_categories(cls, direct)
        sdk_parents = [p for p in sorted(app.supertypes(name)) if sigdb.is_sdk_class(p)]
        service = _service_name(direct, name, sigdb, sdk_parents)
        for method in cls.methods:
            if method.is_constructor:
                continue
            if not method.is_public and (name, method.name, method.descriptor) not in external:
                continue
            categories = reached.get((method.name, method.descriptor), set())
            if not categories and sdk_parents:
                categories = {_inherited_category(sigdb, sdk_parents, method.name, method.descriptor)}
            for category in sorted(categories, key=lambda c: list(DcmCategory).index(c)):
                promoted.append(DcmSignature(
                    service_name=service,
                    class_pattern=name,
                    method_name=method.name,
                    descriptor_pattern=method.descriptor,
                    category=category,
                ))
    return promoted


def find_dcm_invocations(app: AppModel, sigdb: SignatureDb) -> list[DcmInvocation]:
    """직접 호출 + 래퍼 경유 호출.

    래퍼 클래스 밖에서 래퍼 메서드를 부르는 곳은 ViaCustomAnalytics 호출이 되고,
    승격된 메서드에서 (클래스 내부 호출로) 닿는 래퍼 안의 직접 호출은 그것으로 대체된다.
    어떤 승격 메서드에서도 닿지 않는 래퍼 안의 직접 호출은 그대로 남는다.
    """
    direct = find_direct_dcm_invocations(app, sigdb)
    custom = find_custom_analytics_classes(app, sigdb, direct)
    if not custom:
        return direct

    wrappers = SignatureDb(tuple(promote_wrapper_signatures(app, sigdb, custom, direct)))
    covered = _covered_methods(app, custom, wrappers)
    invocations = [
        inv for inv in direct
        if (inv.site.owner_class, inv.site.method_name, inv.site.method_descriptor) not in covered
    ]
    for method in app.iter_methods():
        if method.owner_class in custom:
            continue
        for index, ins in method.invokes():
            site = DcmSite(method.owner_class, method.name, method.descriptor, index)
            for signature in wrappers:
                if signature.matches(ins.target):
                    invocations.append(DcmInvocation(
                        site, signature, InvocationKind.VIA_CUSTOM_ANALYTICS, signature.class_pattern
                    ))
    invocations.sort(key=lambda inv: (inv.site, inv.key))
    return invocations


def _internal_calls(cls: SmaliClass) -> dict[tuple[str, str], set[tuple[str, str]]]:
    return {
        (m.name, m.descriptor): {
            (ins.target_name, ins.target_descriptor)
            for _, ins in m.invokes() if ins.target_class == cls.name
        }
        for m in cls.methods
    }


def _externally_called(app: AppModel, custom_classes: set[str]) -> set[tuple[str, str, str]]:
    """래퍼 클래스 밖에서 호출되는 래퍼 메서드 (클래스, 이름, 디스크립터)"""
    called = set()
    for method in app.iter_methods():
        for _, ins in method.invokes():
            if ins.target_class in custom_classes and ins.target_class != method.owner_class:
                called.add((ins.target_class, ins.target_name, ins.target_descriptor))
    return called


def _covered_methods(app: AppModel, custom_classes: set[str], wrappers: SignatureDb) -> set[tuple[str, str, str]]:
    """승격된 메서드와, 거기서 클래스 내부 호출로 닿는 메서드"""
    covered = set()
    for name in custom_classes:
        calls = _internal_calls(app.classes[name])
        stack = [
            (s.method_name, s.descriptor_pattern) for s in wrappers
            if s.class_pattern == name and (s.method_name, s.descriptor_pattern) in calls
        ]
        seen = set(stack)
        while stack:
            for callee in calls.get(stack.pop(), ()):
                if callee in calls and callee not in seen:
                    seen.add(callee)
                    stack.append(callee)
        covered |= {(name, m, d) for m, d in seen}
    return covered


def _reached_categories(cls: SmaliClass, direct: list[DcmInvocation]) -> dict[tuple[str, str], set]:
    """클래스 내부 호출 관계를 따라 각 메서드가 도달하는 DCM 분류 집합"""
    reached: dict[tuple[str, str], set] = {(m.name, m.descriptor): set() for m in cls.methods}
    for inv in direct:
        if inv.site.owner_class == cls.name:
            reached[(inv.site.method_name, inv.site.method_descriptor)].add(inv.signature.category)

    calls = _internal_calls(cls)
    changed = True
    while changed:
        changed = False
        for key, callees in calls.items():
            for callee in callees:
                extra = reached.get(callee, set()) - reached[key]
                if extra:
                    reached[key] |= extra
                    changed = True
    return reached


def _inherited_category(sigdb: SignatureDb, parents: list[str], name: str, descriptor: str) -> DcmCategory:
    for parent in parents:
        signature = sigdb.match(MethodRef(parent, name, descriptor))
        if signature is not None:
            return signature.category
    return DcmCategory.EVENT_LOG


def _service_name(direct, class_name, sigdb, sdk_parents) -> str:
    services = sorted({inv.signature.service_name for inv in direct if inv.site.owner_class == class_name})
    if not services:
        services = sorted({
            s.service_name for s in sigdb for p in sdk_parents if s.matches_class(p)
        })
    return ", ".join(services) or "custom"
