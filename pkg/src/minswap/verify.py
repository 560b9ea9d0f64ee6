"""Independent validation of mapping results.

Verification never consults the mapper's tables: it replays the claimed SWAP
schedule from the initial layout using only the device's edge set, checking
that every SWAP sits on an edge, that every skeleton gate lands on an edge at
its turn, and that the replayed gates carry the original logical pairs. SWAP
insertion and relabeling are the only transformations the mapper performs, so
this structural replay is an exact equivalence check for them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .circuit import Circuit, CxOp, MappedCircuit, SwapOp, two_qubit_skeleton
from .coupling import CouplingGraph
from .mapper import Mapping, MappingResult

NON_EDGE_SWAP = "non-edge SWAP"
NON_EDGE_CNOT = "non-edge CNOT"
WRONG_LOGICAL_PAIR = "wrong logical pair"


@dataclass(frozen=True)
class Violation:
    step: int
    kind: str
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    violations: tuple[Violation, ...]
    final_layout: Mapping

    def to_text(self) -> str:
        if self.ok:
            return "ok: mapping replays cleanly"
        lines = [f"FAILED: {len(self.violations)} violation(s)"]
        lines += [f"  step {v.step}: {v.kind}: {v.detail}" for v in self.violations]
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "ok": self.ok,
                "violations": [
                    {"step": v.step, "kind": v.kind, "detail": v.detail}
                    for v in self.violations
                ],
                "final_layout": list(self.final_layout.phys_of_log),
            },
            indent=2,
        )


def _apply_swap(pos: list[int], a: int, b: int):
    for q in range(len(pos)):
        if pos[q] == a:
            pos[q] = b
        elif pos[q] == b:
            pos[q] = a


def verify_mapping(c: Circuit, r: MappingResult, g: CouplingGraph) -> VerifyReport:
    """Replay a MappingResult against the coupling constraints."""
    skeleton = two_qubit_skeleton(c)
    violations: list[Violation] = []
    pos = list(r.initial_layout.phys_of_log)
    if len(r.steps) != len(skeleton):
        violations.append(
            Violation(0, WRONG_LOGICAL_PAIR,
                      f"{len(r.steps)} step lists for {len(skeleton)} CNOTs")
        )
    for i, (qc, qt) in enumerate(skeleton):
        for a, b in r.steps[i] if i < len(r.steps) else ():
            if not g.has_edge(a, b):
                violations.append(
                    Violation(i, NON_EDGE_SWAP, f"SWAP({a},{b}) is not a device edge")
                )
            _apply_swap(pos, a, b)
        pi, pj = pos[qc], pos[qt]
        if not g.has_edge(pi, pj):
            violations.append(
                Violation(i, NON_EDGE_CNOT,
                          f"CNOT(q{qc},q{qt}) sits on non-edge ({pi},{pj})")
            )
    return VerifyReport(
        ok=not violations,
        violations=tuple(violations),
        final_layout=Mapping(m=g.m, phys_of_log=tuple(pos)),
    )


def verify_mapped_circuit(c: Circuit, mc: MappedCircuit, g: CouplingGraph) -> VerifyReport:
    """Replay an assembled MappedCircuit (e.g. parsed back from QASM).

    Beyond the edge checks this confirms that the mapped CNOT stream carries
    exactly the original circuit's logical pairs, in order.
    """
    skeleton = two_qubit_skeleton(c)
    violations: list[Violation] = []
    pos = list(mc.initial_layout)
    k = 0
    for op in mc.ops:
        if isinstance(op, SwapOp):
            if not g.has_edge(op.a, op.b):
                violations.append(
                    Violation(k, NON_EDGE_SWAP, f"SWAP({op.a},{op.b}) is not a device edge")
                )
            _apply_swap(pos, op.a, op.b)
        elif isinstance(op, CxOp):
            if not g.has_edge(op.control, op.target):
                violations.append(
                    Violation(k, NON_EDGE_CNOT,
                              f"CNOT on non-edge ({op.control},{op.target})")
                )
            if k >= len(skeleton):
                violations.append(
                    Violation(k, WRONG_LOGICAL_PAIR, "more CNOTs than the original circuit"))
            else:
                qc, qt = skeleton[k]
                if (pos[qc], pos[qt]) != (op.control, op.target):
                    violations.append(
                        Violation(
                            k, WRONG_LOGICAL_PAIR,
                            f"expected logical (q{qc},q{qt}) at ({pos[qc]},{pos[qt]}), "
                            f"found CNOT({op.control},{op.target})",
                        )
                    )
            k += 1
    if k < len(skeleton):
        violations.append(
            Violation(k, WRONG_LOGICAL_PAIR,
                      f"only {k} of {len(skeleton)} CNOTs present"))
    return VerifyReport(
        ok=not violations,
        violations=tuple(violations),
        final_layout=Mapping(m=g.m, phys_of_log=tuple(pos)),
    )
