"""Benchmark harness comparing full search against the limited strategies.

A manifest lists (circuit, architecture, strategy pair, limits) rows. For
each row both strategies are run; the harness records the optimal cost, the
statically counted candidate-permutation totals, and wall times, and checks
that both strategies agree on the cost. Timeouts are recorded per row and the
run continues. Output is a CSV with the fixed header

    name,n,gates,c,pi,t_ref,pi_prime,t_prop,speedup

where everything except the time-derived columns (t_ref, t_prop, speedup) is
stable across runs for fixed inputs.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Optional

from .circuit import parse_qasm, two_qubit_skeleton
from .coupling import resolve_architecture
from .mapper import MapTimeout, Strategy, count_search_space, solve
from .verify import verify_mapping

CSV_HEADER = "name,n,gates,c,pi,t_ref,pi_prime,t_prop,speedup"

TIME_FORMAT = "{:.3f}"


class ManifestError(ValueError):
    pass


@dataclass
class BenchRow:
    name: str
    n: int
    gates: int
    cost: Optional[int]
    pi_total: int
    t_ref: Optional[float]
    pi_prime_total: int
    t_prop: Optional[float]
    timeout_sentinel: str
    cost_mismatch: Optional[tuple[int, int]] = None
    verify_failed: bool = False

    @property
    def speedup(self) -> Optional[float]:
        if self.t_ref is None or self.t_prop is None or self.t_prop == 0:
            return None
        return self.t_ref / self.t_prop

    def csv_fields(self) -> list[str]:
        def t(v):
            return self.timeout_sentinel if v is None else TIME_FORMAT.format(v)

        return [
            self.name,
            str(self.n),
            str(self.gates),
            "-" if self.cost is None else str(self.cost),
            str(self.pi_total),
            t(self.t_ref),
            str(self.pi_prime_total),
            t(self.t_prop),
            "-" if self.speedup is None else "{:.2f}".format(self.speedup),
        ]


@dataclass(frozen=True)
class RowSpec:
    name: str
    circuit_path: str
    arch: str
    reference: Strategy
    proposed: Strategy
    timeout: Optional[float]
    expansion_budget: Optional[int]


def _parse_strategy(obj, relevance_filter: bool) -> Strategy:
    if isinstance(obj, str):
        return Strategy(variant=obj, relevance_filter=relevance_filter)
    raise ManifestError(f"strategy entries must be strings, got {obj!r}")


def load_manifest(path: str, *, timeout_override: Optional[float] = None) -> list[RowSpec]:
    """Read a manifest file; circuit and architecture paths resolve relative to it."""
    base = os.path.dirname(os.path.abspath(path))
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    rows = obj["rows"] if isinstance(obj, dict) and "rows" in obj else obj
    if not isinstance(rows, list):
        raise ManifestError("manifest must be a list of rows or {'rows': [...]}")
    specs = []
    for idx, row in enumerate(rows):
        if not isinstance(row, dict) or "circuit" not in row or "arch" not in row:
            raise ManifestError(f"row {idx}: need at least 'circuit' and 'arch'")
        strategies = row.get("strategies", ["full", "arch-limit"])
        if len(strategies) != 2:
            raise ManifestError(f"row {idx}: 'strategies' must name a [reference, proposed] pair")
        filt = bool(row.get("relevance_filter", False))
        circuit_path = row["circuit"]
        if not os.path.isabs(circuit_path):
            circuit_path = os.path.join(base, circuit_path)
        arch = row["arch"]
        if os.path.exists(os.path.join(base, arch)):
            arch = os.path.join(base, arch)
        timeout = row.get("timeout")
        if timeout_override is not None:
            timeout = timeout_override
        specs.append(
            RowSpec(
                name=row.get("name") or os.path.splitext(os.path.basename(row["circuit"]))[0],
                circuit_path=circuit_path,
                arch=arch,
                reference=_parse_strategy(strategies[0], filt),
                proposed=_parse_strategy(strategies[1], filt),
                timeout=timeout,
                expansion_budget=row.get("expansion_budget"),
            )
        )
    return specs


def run_row(spec: RowSpec) -> BenchRow:
    """Execute one benchmark row; timeouts become sentinel entries."""
    with open(spec.circuit_path, "r", encoding="utf-8") as fh:
        circ = parse_qasm(fh.read(), name=spec.name)
    graph = resolve_architecture(spec.arch)
    gates = len(two_qubit_skeleton(circ))
    pi_total = count_search_space(circ, graph, spec.reference).total
    pi_prime_total = count_search_space(circ, graph, spec.proposed).total
    sentinel = f">{spec.timeout:g}" if spec.timeout is not None else ">budget"

    def attempt(strategy: Strategy):
        try:
            result = solve(
                circ,
                graph,
                strategy,
                expansion_budget=spec.expansion_budget,
                time_limit=spec.timeout,
            )
        except MapTimeout:
            return None
        return result

    ref = attempt(spec.reference)
    prop = attempt(spec.proposed)

    cost = None
    mismatch = None
    verify_failed = False
    for result in (prop, ref):
        if result is not None:
            cost = result.cost
            if not verify_mapping(circ, result, graph).ok:
                verify_failed = True
    if ref is not None and prop is not None and ref.cost != prop.cost:
        mismatch = (ref.cost, prop.cost)
        cost = ref.cost
    return BenchRow(
        name=spec.name,
        n=circ.n,
        gates=gates,
        cost=cost,
        pi_total=pi_total,
        t_ref=None if ref is None else ref.stats.wall_time,
        pi_prime_total=pi_prime_total,
        t_prop=None if prop is None else prop.stats.wall_time,
        timeout_sentinel=sentinel,
        cost_mismatch=mismatch,
        verify_failed=verify_failed,
    )


def run_bench(specs: list[RowSpec], jobs: int = 1) -> list[BenchRow]:
    """Run all rows, in manifest order; rows may execute in parallel."""
    if jobs <= 1:
        return [run_row(s) for s in specs]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_row, specs))


def rows_to_csv(rows: list[BenchRow]) -> str:
    lines = [CSV_HEADER]
    lines += [",".join(r.csv_fields()) for r in rows]
    return "\n".join(lines) + "\n"
