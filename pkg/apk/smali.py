"""smali 디스어셈블리 파싱.

클래스 헤더(.class/.super/.implements)와 메서드 시그니처, 메서드 본문의 명령을 읽는다.
명령은 세 종류만 구분한다:
    Invoke   : invoke-* (대상 클래스/메서드/디스크립터, 인자 레지스터)
    ConstInt : const, const/4, const/16, const/high16, const-wide* 정수 리터럴
    Other    : 그 밖의 모든 명령 (원문 보존, opcode/operands로 조회 가능)
알 수 없는 지시어나 명령은 Other로 남기고 파싱을 멈추지 않는다.
"""

import re
from dataclasses import dataclass

from core.errors import ParseError

_TYPE_RE = re.compile(r"\[*(?:L[^;]+;|[ZBSCIJFDV])")
_DESCRIPTOR_RE = re.compile(r"\(([^)]*)\)(\S+)")
_CLASS_TYPE_RE = re.compile(r"L[^;\s]+;")
_METHOD_SIG_RE = re.compile(r"([^\s(]+)(\([^)]*\)\S+)")
_INVOKE_RE = re.compile(
    r"(invoke-[\w/-]+)\s+\{([^}]*)\}\s*,\s*(\[*L[^;\s]+;|\[+[ZBSCIJFD])->([^\s(]+)(\([^)]*\)\S+)"
)
_CONST_RE = re.compile(
    r"(const(?:/4|/16|/high16)?|const-wide(?:/16|/32|/high16)?)\s+([vp]\d+)\s*,\s*"
    r"(-?0x[0-9a-fA-F]+|-?\d+)[LlTtSs]?"
)
_REG_RANGE_RE = re.compile(r"([vp])(\d+)\s*\.\.\s*([vp])(\d+)")
_MAX_RANGE = 256

# 본문을 건너뛰어야 하는 블록 지시어 → 종료 지시어
_BLOCK_DIRECTIVES = {
    ".annotation": ".end annotation",
    ".array-data": ".end array-data",
    ".packed-switch": ".end packed-switch",
    ".sparse-switch": ".end sparse-switch",
}


def type_to_class(type_descriptor: str) -> str:
    """"Lcom/a/B;" → "com.a.B". 배열/기본 타입은 그대로."""
    if type_descriptor.startswith("L") and type_descriptor.endswith(";"):
        return type_descriptor[1:-1].replace("/", ".")
    return type_descriptor


def class_to_type(class_name: str) -> str:
    return "L" + class_name.replace(".", "/") + ";"


def descriptor_params(descriptor: str) -> list[str]:
    """"(Ljava/lang/String;IJ)V" → ["Ljava/lang/String;", "I", "J"]"""
    m = _DESCRIPTOR_RE.fullmatch(descriptor)
    return _TYPE_RE.findall(m.group(1)) if m else []


def is_balanced_descriptor(descriptor: str) -> bool:
    return _DESCRIPTOR_RE.fullmatch(descriptor) is not None


@dataclass(frozen=True, order=True)
class MethodRef:
    class_name: str
    name: str
    descriptor: str

    def __str__(self) -> str:
        return f"{self.class_name}->{self.name}{self.descriptor}"

    @classmethod
    def parse(cls, text: str) -> "MethodRef":
        class_name, _, rest = text.partition("->")
        m = _METHOD_SIG_RE.fullmatch(rest)
        if not class_name or not m:
            raise ValueError(f"메서드 참조 형식이 아닙니다: {text!r}")
        return cls(class_name, m.group(1), m.group(2))


# === 명령 ===

@dataclass(frozen=True)
class Invoke:
    opcode: str
    target_class: str
    target_name: str
    target_descriptor: str
    arg_registers: tuple[str, ...]

    @property
    def target(self) -> MethodRef:
        return MethodRef(self.target_class, self.target_name, self.target_descriptor)

    @property
    def is_static(self) -> bool:
        return self.opcode.startswith("invoke-static")

    @property
    def receiver(self) -> str | None:
        if self.is_static or not self.arg_registers:
            return None
        return self.arg_registers[0]

    @property
    def call_args(self) -> tuple[str, ...]:
        """receiver를 제외한 인자 레지스터"""
        return self.arg_registers if self.is_static else self.arg_registers[1:]

    def to_dict(self) -> dict:
        return {
            "op": "invoke",
            "opcode": self.opcode,
            "target_class": self.target_class,
            "target_name": self.target_name,
            "target_descriptor": self.target_descriptor,
            "arg_registers": list(self.arg_registers),
        }


@dataclass(frozen=True)
class ConstInt:
    register: str
    value: int
    opcode: str = "const"

    def to_dict(self) -> dict:
        return {"op": "const", "opcode": self.opcode, "register": self.register, "value": self.value}


@dataclass(frozen=True)
class Other:
    text: str

    @property
    def opcode(self) -> str:
        return self.text.split(None, 1)[0] if self.text.strip() else ""

    @property
    def operands(self) -> list[str]:
        parts = self.text.split(None, 1)
        if len(parts) < 2:
            return []
        return [p.strip() for p in parts[1].split(",")]

    def to_dict(self) -> dict:
        return {"op": "other", "text": self.text}


Instruction = Invoke | ConstInt | Other


def instruction_from_dict(data: dict) -> Instruction:
    op = data.get("op")
    if op == "invoke":
        return Invoke(
            data["opcode"], data["target_class"], data["target_name"],
            data["target_descriptor"], tuple(data["arg_registers"]),
        )
    if op == "const":
        return ConstInt(data["register"], int(data["value"]), data.get("opcode", "const"))
    if op == "other":
        return Other(data["text"])
    raise ValueError(f"알 수 없는 명령 종류: {op!r}")


# === 메서드 / 클래스 ===

@dataclass(frozen=True)
class SmaliMethod:
    owner_class: str
    name: str
    descriptor: str
    access_flags: tuple[str, ...]
    instructions: tuple[Instruction, ...]

    @property
    def ref(self) -> MethodRef:
        return MethodRef(self.owner_class, self.name, self.descriptor)

    @property
    def is_static(self) -> bool:
        return "static" in self.access_flags

    @property
    def is_public(self) -> bool:
        return "public" in self.access_flags

    @property
    def is_constructor(self) -> bool:
        return self.name in ("<init>", "<clinit>")

    @property
    def param_types(self) -> list[str]:
        return descriptor_params(self.descriptor)

    def param_registers(self) -> list[tuple[str, str]]:
        """파라미터 레지스터 (p0 = this, 비정적 메서드) 와 타입. long/double은 2칸."""
        regs = []
        index = 0
        if not self.is_static:
            regs.append(("p0", class_to_type(self.owner_class)))
            index = 1
        for t in self.param_types:
            regs.append((f"p{index}", t))
            index += 2 if t in ("J", "D") else 1
        return regs

    def invokes(self):
        """(instruction_index, Invoke) 순회"""
        for i, ins in enumerate(self.instructions):
            if isinstance(ins, Invoke):
                yield i, ins

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "descriptor": self.descriptor,
            "access_flags": list(self.access_flags),
            "instructions": [ins.to_dict() for ins in self.instructions],
        }

    @classmethod
    def from_dict(cls, owner_class: str, data: dict) -> "SmaliMethod":
        return cls(
            owner_class=owner_class,
            name=data["name"],
            descriptor=data["descriptor"],
            access_flags=tuple(data.get("access_flags", [])),
            instructions=tuple(instruction_from_dict(i) for i in data.get("instructions", [])),
        )


@dataclass(frozen=True)
class SmaliClass:
    name: str
    super_class: str | None
    interfaces: tuple[str, ...]
    methods: tuple[SmaliMethod, ...]
    access_flags: tuple[str, ...] = ()
    source_path: str | None = None

    def find_methods(self, name: str) -> list[SmaliMethod]:
        return [m for m in self.methods if m.name == name]

    def method(self, name: str, descriptor: str) -> SmaliMethod | None:
        for m in self.methods:
            if m.name == name and m.descriptor == descriptor:
                return m
        return None

    @property
    def is_interface(self) -> bool:
        return "interface" in self.access_flags

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "super_class": self.super_class,
            "interfaces": list(self.interfaces),
            "access_flags": list(self.access_flags),
            "source_path": self.source_path,
            "methods": [m.to_dict() for m in self.methods],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SmaliClass":
        name = data["name"]
        return cls(
            name=name,
            super_class=data.get("super_class"),
            interfaces=tuple(data.get("interfaces", [])),
            methods=tuple(SmaliMethod.from_dict(name, m) for m in data.get("methods", [])),
            access_flags=tuple(data.get("access_flags", [])),
            source_path=data.get("source_path"),
        )


# === 파서 ===

def parse_registers(text: str) -> tuple[str, ...]:
    """"v0, v1" / "v0 .. v5" / "" → 레지스터 튜플"""
    text = text.strip()
    if not text:
        return ()
    m = _REG_RANGE_RE.fullmatch(text)
    if m:
        prefix, start, end_prefix, end = m.group(1), int(m.group(2)), m.group(3), int(m.group(4))
        if prefix == end_prefix and 0 <= end - start < _MAX_RANGE:
            return tuple(f"{prefix}{i}" for i in range(start, end + 1))
        return (f"{prefix}{start}", f"{end_prefix}{end}")
    return tuple(r.strip() for r in text.split(",") if r.strip())


def parse_instruction(line: str) -> Instruction:
    """본문 한 줄 → 명령. 형식이 맞지 않으면 Other."""
    if line.startswith("invoke-"):
        m = _INVOKE_RE.fullmatch(line)
        if m:
            return Invoke(
                opcode=m.group(1),
                target_class=type_to_class(m.group(3)),
                target_name=m.group(4),
                target_descriptor=m.group(5),
                arg_registers=parse_registers(m.group(2)),
            )
    elif line.startswith("const"):
        m = _CONST_RE.fullmatch(line)
        if m:
            literal = m.group(3)
            value = int(literal, 16) if "0x" in literal else int(literal, 10)
            return ConstInt(register=m.group(2), value=value, opcode=m.group(1))
    return Other(line)


def parse_smali(text: str, path: str | None = None) -> SmaliClass:
    """smali 파일 하나 → SmaliClass.

    Raises:
        ParseError: .class 헤더가 없거나 클래스 이름을 읽을 수 없음
    """
    class_name = None
    class_flags: tuple[str, ...] = ()
    super_class = None
    interfaces: list[str] = []
    methods: list[SmaliMethod] = []

    current = None        # (name, descriptor, flags, instructions)
    skip_until = None     # 블록 지시어 종료 문자열

    def close_method():
        nonlocal current
        if current is not None and class_name is not None:
            name, descriptor, flags, body = current
            methods.append(SmaliMethod(class_name, name, descriptor, flags, tuple(body)))
        current = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if skip_until is not None:
            if line.startswith(skip_until):
                skip_until = None
            continue

        directive = line.split(None, 1)[0]
        if directive in _BLOCK_DIRECTIVES:
            skip_until = _BLOCK_DIRECTIVES[directive]
            continue

        if directive == ".class":
            if class_name is not None:
                continue
            tokens = line.split()
            if len(tokens) < 2 or not _CLASS_TYPE_RE.fullmatch(tokens[-1]):
                raise ParseError(".class 헤더에서 클래스 이름을 읽을 수 없습니다.", line=lineno, path=path)
            class_name = type_to_class(tokens[-1])
            class_flags = tuple(tokens[1:-1])
        elif directive == ".super":
            tokens = line.split()
            if len(tokens) == 2 and _CLASS_TYPE_RE.fullmatch(tokens[1]):
                super_class = type_to_class(tokens[1])
        elif directive == ".implements":
            tokens = line.split()
            if len(tokens) == 2 and _CLASS_TYPE_RE.fullmatch(tokens[1]):
                interfaces.append(type_to_class(tokens[1]))
        elif directive == ".method":
            close_method()
            tokens = line.split()
            m = _METHOD_SIG_RE.fullmatch(tokens[-1]) if len(tokens) > 1 else None
            if m:
                current = (m.group(1), m.group(2), tuple(tokens[1:-1]), [])
        elif directive == ".end" and line.startswith(".end method"):
            close_method()
        elif line.startswith((".", ":")):
            # .registers/.locals/.line/.param/.field/.source 등, 레이블
            continue
        elif current is not None:
            current[3].append(parse_instruction(line))

    if class_name is None:
        raise ParseError("smali 파일에 .class 헤더가 없습니다.", path=path)
    close_method()

    return SmaliClass(
        name=class_name,
        super_class=super_class,
        interfaces=tuple(interfaces),
        methods=tuple(methods),
        access_flags=class_flags,
        source_path=path,
    )
