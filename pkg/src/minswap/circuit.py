"""Circuit representation and the OpenQASM 2.0 subset used by the mapper.

The input IR is deliberately small: an ordered gate list over one quantum
register, where only CNOTs matter for routing and every one-qubit gate is an
opaque passthrough. Gate order is preserved exactly as parsed; the mapper
never reorders or groups gates.

Mapped outputs are a separate type (:class:`MappedCircuit`) whose ops run on
physical qubits and may include SWAPs. They round-trip through
:func:`emit_qasm` / :func:`parse_mapped_qasm` in native-SWAP mode.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field


class QasmError(ValueError):
    """Parse failure, annotated with the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True)
class Cnot:
    control: int
    target: int


@dataclass(frozen=True)
class Single:
    name: str
    qubit: int
    params: str = ""


Gate = Cnot | Single


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...]
    name: str = ""

    def __post_init__(self):
        for g in self.gates:
            if isinstance(g, Cnot):
                if g.control == g.target:
                    raise QasmError(f"cx with identical qubits {g.control}")
                if not (0 <= g.control < self.n and 0 <= g.target < self.n):
                    raise QasmError(f"cx ({g.control},{g.target}) out of range for n={self.n}")
            else:
                if not 0 <= g.qubit < self.n:
                    raise QasmError(f"{g.name} on qubit {g.qubit} out of range for n={self.n}")


def two_qubit_skeleton(c: Circuit) -> list[tuple[int, int]]:
    """The CNOTs of the circuit in order; one-qubit gates need no mapping."""
    return [(g.control, g.target) for g in c.gates if isinstance(g, Cnot)]


# -- mapped circuits ----------------------------------------------------------

@dataclass(frozen=True)
class SwapOp:
    a: int
    b: int


@dataclass(frozen=True)
class CxOp:
    control: int
    target: int


@dataclass(frozen=True)
class SingleOp:
    name: str
    qubit: int
    params: str = ""


MappedOp = SwapOp | CxOp | SingleOp


@dataclass(frozen=True)
class MappedCircuit:
    """A routed circuit over ``m`` physical qubits.

    ``initial_layout[q]`` is the physical qubit initially holding logical
    ``q``. Ops reference physical indices throughout.
    """

    m: int
    initial_layout: tuple[int, ...]
    ops: tuple[MappedOp, ...]
    name: str = ""

    def swap_count(self) -> int:
        return sum(1 for op in self.ops if isinstance(op, SwapOp))


def realize_mapping(
    c: Circuit, m: int, initial_layout: tuple[int, ...], steps: list[list[tuple[int, int]]]
) -> MappedCircuit:
    """Assemble a MappedCircuit from a per-CNOT SWAP schedule.

    ``steps[i]`` holds the SWAP edges inserted immediately before the i-th
    skeleton CNOT. One-qubit gates stay at their original relative position
    and are re-addressed under the layout current at that point.
    """
    skeleton_len = sum(1 for g in c.gates if isinstance(g, Cnot))
    if len(steps) != skeleton_len:
        raise ValueError(f"got {len(steps)} step lists for {skeleton_len} CNOTs")
    pos = list(initial_layout)
    ops: list[MappedOp] = []
    k = 0
    for g in c.gates:
        if isinstance(g, Cnot):
            for a, b in steps[k]:
                ops.append(SwapOp(a, b))
                for q in range(len(pos)):
                    if pos[q] == a:
                        pos[q] = b
                    elif pos[q] == b:
                        pos[q] = a
            ops.append(CxOp(pos[g.control], pos[g.target]))
            k += 1
        else:
            ops.append(SingleOp(g.name, pos[g.qubit], g.params))
    return MappedCircuit(m=m, initial_layout=tuple(initial_layout), ops=tuple(ops), name=c.name)


# -- OpenQASM 2.0 subset ------------------------------------------------------

_LAYOUT_RE = re.compile(r"^//\s*layout:\s*(.*)$")
_LAYOUT_ITEM_RE = re.compile(r"q(\d+)->p(\d+)")
_QREG_RE = re.compile(r"^qreg\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")
_CREG_RE = re.compile(r"^creg\s+([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")
_GATE_RE = re.compile(
    r"^([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(([^)]*)\))?\s+(.+)$"
)
_OPERAND_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*\[\s*(\d+)\s*\]$")


def _statements(text: str):
    """Yield (line_number, statement) pairs, comments stripped.

    Layout header comments are yielded as-is so the mapped-circuit parser can
    pick them up; all other comments are dropped.
    """
    buf = ""
    buf_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        layout = _LAYOUT_RE.match(raw.strip())
        if layout:
            yield lineno, raw.strip()
            continue
        line = raw.split("//", 1)[0]
        for ch in line:
            if ch == ";":
                stmt = buf.strip()
                if stmt:
                    yield buf_line, stmt
                buf = ""
                buf_line = None
            else:
                if buf_line is None and not ch.isspace():
                    buf_line = lineno
                buf += ch
    if buf.strip():
        raise QasmError("statement missing trailing ';'", buf_line)


def _parse_operands(args: str, lineno: int) -> list[tuple[str, int]]:
    operands = []
    for part in args.split(","):
        part = part.strip()
        match = _OPERAND_RE.match(part)
        if match is None:
            raise QasmError(f"expected register[index] operand, got {part!r}", lineno)
        operands.append((match.group(1), int(match.group(2))))
    return operands


class _SubsetParser:
    """Shared statement walker for plain and mapped circuit files."""

    def __init__(self, text: str):
        self.reg: str | None = None
        self.size = 0
        self.layout_items: list[tuple[int, int]] | None = None
        self.text = text

    def check_operand(self, reg: str, idx: int, lineno: int):
        if self.reg is None:
            raise QasmError("gate before qreg declaration", lineno)
        if reg != self.reg:
            raise QasmError(f"unknown register {reg!r}", lineno)
        if idx >= self.size:
            raise QasmError(f"index {idx} out of range for qreg {reg}[{self.size}]", lineno)

    def walk(self, handle_gate):
        for lineno, stmt in _statements(self.text):
            layout = _LAYOUT_RE.match(stmt)
            if layout:
                self.layout_items = [
                    (int(a), int(b)) for a, b in _LAYOUT_ITEM_RE.findall(layout.group(1))
                ]
                continue
            if stmt.startswith("OPENQASM"):
                continue
            if stmt.startswith("include"):
                continue
            m = _QREG_RE.match(stmt)
            if m:
                if self.reg is not None:
                    raise QasmError("multiple quantum registers are not supported", lineno)
                self.reg = m.group(1)
                self.size = int(m.group(2))
                continue
            if _CREG_RE.match(stmt):
                continue
            if stmt.startswith("barrier"):
                continue
            if stmt.startswith("measure"):
                warnings.warn(f"line {lineno}: measure ignored", stacklevel=3)
                continue
            m = _GATE_RE.match(stmt)
            if m is None:
                raise QasmError(f"cannot parse statement {stmt!r}", lineno)
            name, params, args = m.group(1), m.group(2) or "", m.group(3)
            operands = _parse_operands(args, lineno)
            for reg, idx in operands:
                self.check_operand(reg, idx, lineno)
            handle_gate(lineno, name, params, [idx for _, idx in operands])


def parse_qasm(text: str, name: str = "") -> Circuit:
    """Parse an input circuit: one qreg, cx + arbitrary one-qubit gates.

    ``creg`` and ``barrier`` are ignored, ``measure`` is ignored with a
    warning. Multi-qubit gates other than ``cx`` are rejected; mapper output
    containing SWAPs is handled by :func:`parse_mapped_qasm` instead.
    """
    parser = _SubsetParser(text)
    gates: list[Gate] = []

    def handle(lineno, gname, params, qubits):
        if gname == "cx":
            if len(qubits) != 2:
                raise QasmError(f"cx needs 2 operands, got {len(qubits)}", lineno)
            if qubits[0] == qubits[1]:
                raise QasmError("cx with identical control and target", lineno)
            gates.append(Cnot(qubits[0], qubits[1]))
        elif len(qubits) == 1:
            gates.append(Single(gname, qubits[0], params))
        elif len(qubits) == 2:
            raise QasmError(f"unknown two-qubit gate {gname!r}", lineno)
        else:
            raise QasmError(f"gate {gname!r} acts on {len(qubits)} qubits (arity > 2)", lineno)

    parser.walk(handle)
    if parser.reg is None:
        raise QasmError("no qreg declaration found")
    return Circuit(n=parser.size, gates=tuple(gates), name=name)


def parse_mapped_qasm(text: str, name: str = "") -> MappedCircuit:
    """Parse mapper output: a layout header plus swap/cx/one-qubit ops."""
    parser = _SubsetParser(text)
    ops: list[MappedOp] = []

    def handle(lineno, gname, params, qubits):
        if gname == "swap":
            if len(qubits) != 2:
                raise QasmError(f"swap needs 2 operands, got {len(qubits)}", lineno)
            ops.append(SwapOp(qubits[0], qubits[1]))
        elif gname == "cx":
            if len(qubits) != 2:
                raise QasmError(f"cx needs 2 operands, got {len(qubits)}", lineno)
            ops.append(CxOp(qubits[0], qubits[1]))
        elif len(qubits) == 1:
            ops.append(SingleOp(gname, qubits[0], params))
        else:
            raise QasmError(f"unknown multi-qubit gate {gname!r}", lineno)

    parser.walk(handle)
    if parser.reg is None:
        raise QasmError("no qreg declaration found")
    if parser.layout_items is None:
        raise QasmError("mapped circuit is missing its '// layout:' header")
    by_logical = dict(parser.layout_items)
    layout = tuple(by_logical[q] for q in sorted(by_logical))
    if sorted(by_logical) != list(range(len(by_logical))):
        raise QasmError("layout header must cover logical qubits 0..n-1 exactly")
    return MappedCircuit(m=parser.size, initial_layout=layout, ops=tuple(ops), name=name)


def layout_comment(initial_layout: tuple[int, ...]) -> str:
    """Header line listing q->p assignments, ordered by physical index."""
    items = sorted(enumerate(initial_layout), key=lambda qp: qp[1])
    return "// layout: " + " ".join(f"q{q}->p{p}" for q, p in items)


def emit_qasm(mc: MappedCircuit, swap_mode: str = "native") -> str:
    """Serialize a mapped circuit to OpenQASM 2.0.

    ``native`` keeps SWAPs as ``swap`` statements (qelib1 defines the gate);
    ``three_cnot`` expands each SWAP into its standard 3-CNOT decomposition.
    """
    if swap_mode not in ("native", "three_cnot"):
        raise ValueError(f"unknown swap_mode {swap_mode!r}")
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        layout_comment(mc.initial_layout),
        f"qreg q[{mc.m}];",
    ]
    for op in mc.ops:
        if isinstance(op, SwapOp):
            if swap_mode == "native":
                lines.append(f"swap q[{op.a}],q[{op.b}];")
            else:
                lines.append(f"cx q[{op.a}],q[{op.b}];")
                lines.append(f"cx q[{op.b}],q[{op.a}];")
                lines.append(f"cx q[{op.a}],q[{op.b}];")
        elif isinstance(op, CxOp):
            lines.append(f"cx q[{op.control}],q[{op.target}];")
        else:
            params = f"({op.params})" if op.params else ""
            lines.append(f"{op.name}{params} q[{op.qubit}];")
    return "\n".join(lines) + "\n"
