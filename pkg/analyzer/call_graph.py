"""클래스 계층을 고려한(CHA) 정적 호출 그래프"""

import networkx as nx

from apk.app_model import AppModel
from apk.smali import Invoke, MethodRef

# 선언 타입으로만 해석하는 호출 (가상 디스패치 없음)
_STATIC_DISPATCH = ("invoke-static", "invoke-direct", "invoke-super")


class CallGraph:
    """앱 메서드를 노드로 하는 호출 그래프.

    invoke-virtual/interface는 선언 타입(상위 클래스로 올라가며 찾은 정의)과
    앱 안의 모든 하위 타입이 재정의한 메서드로 해석한다.
    앱 밖 메서드(SDK, 프레임워크)는 노드가 되지 않는다.
    """

    def __init__(self, app: AppModel):
        self.app = app
        self.graph = nx.DiGraph()
        self._children: dict[str, set[str]] = {}
        self._descendants: dict[str, list[str]] = {}
        self._build()

    def _build(self):
        for name, cls in self.app.classes.items():
            for parent in (cls.super_class, *cls.interfaces):
                if parent:
                    self._children.setdefault(parent, set()).add(name)

        for method in self.app.iter_methods():
            self.graph.add_node(method.ref)
        for method in self.app.iter_methods():
            for index, ins in method.invokes():
                for target in self.resolve(ins):
                    if not self.graph.has_edge(method.ref, target):
                        self.graph.add_edge(method.ref, target, index=index)

    def descendants(self, class_name: str) -> list[str]:
        """앱 안의 모든 하위 타입 (이름순)"""
        if class_name not in self._descendants:
            seen, stack = set(), [class_name]
            while stack:
                for child in self._children.get(stack.pop(), ()):
                    if child not in seen:
                        seen.add(child)
                        stack.append(child)
            seen.discard(class_name)
            self._descendants[class_name] = sorted(seen)
        return self._descendants[class_name]

    def lookup(self, class_name: str, name: str, descriptor: str) -> MethodRef | None:
        """class_name에서 시작해 상위 클래스로 올라가며 처음 정의된 메서드"""
        for owner in (class_name, *self.app.superclasses(class_name)):
            cls = self.app.classes.get(owner)
            if cls and cls.method(name, descriptor):
                return MethodRef(owner, name, descriptor)
        return None

    def resolve(self, ins: Invoke) -> list[MethodRef]:
        targets = []
        declared = self.lookup(ins.target_class, ins.target_name, ins.target_descriptor)
        if declared:
            targets.append(declared)
        if not ins.opcode.startswith(_STATIC_DISPATCH):
            for sub in self.descendants(ins.target_class):
                if self.app.classes[sub].method(ins.target_name, ins.target_descriptor):
                    ref = MethodRef(sub, ins.target_name, ins.target_descriptor)
                    if ref not in targets:
                        targets.append(ref)
        return targets

    def shortest_paths(self, source: MethodRef, max_depth: int | None) -> dict[MethodRef, list[MethodRef]]:
        """source에서 max_depth 간선 이내로 닿는 메서드 → 최단 경로 (source 포함)"""
        if source not in self.graph:
            return {}
        return nx.single_source_shortest_path(self.graph, source, cutoff=max_depth)

    def reachable(self, source: MethodRef) -> set[MethodRef]:
        """깊이 제한 없이 닿는 메서드 전체 (source 포함)"""
        if source not in self.graph:
            return set()
        return nx.descendants(self.graph, source) | {source}
