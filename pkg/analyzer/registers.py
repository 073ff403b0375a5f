"""메서드 내부 레지스터 추적.

제어 흐름을 따지지 않는 선형 스캔이다:
- defining_instruction: 어떤 위치 이전에 레지스터에 마지막으로 값을 쓴 명령
- flow_states: 시작 레지스터 집합에서 값이 흘러가는 레지스터 집합을 명령마다 계산
"""

from apk.smali import ConstInt, Invoke, Other, SmaliMethod, type_to_class

# 첫 피연산자를 읽기만 하는 명령
_NON_DEFINING = (
    "iput", "sput", "aput", "if-", "return", "throw", "monitor-", "fill-array-data",
    "packed-switch", "sparse-switch", "goto", "nop", "check-cast",
)
_MAX_MOVE_DEPTH = 8


def writes_register(ins: Other) -> bool:
    return bool(ins.operands) and not ins.opcode.startswith(_NON_DEFINING)


def defining_instruction(method: SmaliMethod, index: int, register: str):
    """index 이전에 register를 마지막으로 정의한 (위치, 명령). 없으면 None."""
    for i in range(min(index, len(method.instructions)) - 1, -1, -1):
        ins = method.instructions[i]
        if isinstance(ins, ConstInt):
            if ins.register == register:
                return i, ins
        elif isinstance(ins, Other):
            if writes_register(ins) and ins.operands[0] == register:
                return i, ins
    return None


def const_value(method: SmaliMethod, index: int, register: str, depth: int = 0) -> int | None:
    """레지스터에 들어 있는 정수 상수 (move로 옮겨진 경우 포함)"""
    found = defining_instruction(method, index, register)
    if found is None:
        return None
    i, ins = found
    if isinstance(ins, ConstInt):
        return ins.value
    if ins.opcode in ("move", "move/from16", "move/16") and len(ins.operands) > 1 and depth < _MAX_MOVE_DEPTH:
        return const_value(method, i, ins.operands[1], depth + 1)
    return None


def field_type(field_ref: str) -> str:
    """"Lcom/a/B;->mButton:Landroid/widget/Button;" → "Landroid/widget/Button;" """
    return field_ref.rsplit(":", 1)[-1]


def field_owner(field_ref: str) -> str:
    return type_to_class(field_ref.split("->", 1)[0])


def return_type(descriptor: str) -> str:
    return descriptor.rsplit(")", 1)[-1]


def flow_states(method: SmaliMethod, initial):
    """(index, 명령, 그 명령 직전의 값 전파 레지스터 집합) 순회.

    전파 규칙:
    - 전파 레지스터를 인자로 받은 invoke → receiver와 바로 뒤 move-result 대상
    - 원본 피연산자 중 하나라도 전파 레지스터인 move/변환/산술 → 대상 레지스터
    - 그 밖의 값으로 덮어쓰면 전파 해제
    """
    tainted = set(initial)
    pending_result = False
    for i, ins in enumerate(method.instructions):
        yield i, ins, frozenset(tainted)

        if isinstance(ins, Invoke):
            hit = any(r in tainted for r in ins.arg_registers)
            if hit and ins.receiver:
                tainted.add(ins.receiver)
            pending_result = hit
            continue

        if isinstance(ins, ConstInt):
            tainted.discard(ins.register)
        elif ins.opcode.startswith("move-result"):
            if ins.operands:
                if pending_result:
                    tainted.add(ins.operands[0])
                else:
                    tainted.discard(ins.operands[0])
        elif writes_register(ins):
            target, sources = ins.operands[0], ins.operands[1:]
            if any(s in tainted for s in sources):
                tainted.add(target)
            else:
                tainted.discard(target)
        pending_result = False
