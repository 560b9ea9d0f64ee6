"""SWAP-count-optimal circuit mapping via uniform-cost search.

The search state is (next pending gate, placement of the circuit's qubits on
the device). The initial placement is free: every placement that makes the
first CNOT executable enters the frontier at cost 0. A transition applies one
candidate permutation from the strategy's table at its minimal SWAP cost;
whenever the pending gate becomes executable the state advances past it (and
past any following gates that are executable as-is). Dijkstra over this graph
returns a minimum-SWAP schedule; with non-negative weights and a closed set
keyed on (gate, placement), the first settled goal is optimal.

Strategies differ only in the candidate table: ``full`` uses every
permutation of the device's qubits, ``arch-limit`` only those realizable
with at most K-1 SWAPs. The subgraph variants solve the same problem on
every connected device subgraph of the circuit's size and keep the cheapest
solution.

Placements track only the circuit's own qubits; unused device qubits behave
as interchangeable dummies, so placements differing only in dummy positions
collapse into one search state.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .circuit import Circuit, MappedCircuit, realize_mapping, two_qubit_skeleton
from .coupling import CouplingGraph, connected_subgraphs
from .permtools import PermutationTable, cayley_bfs, reduced_set, swap_sequence

FULL = "full"
ARCH_LIMIT = "arch-limit"
SUBGRAPH = "subgraph"
SUBGRAPH_LIMIT = "subgraph-limit"
VARIANTS = (FULL, ARCH_LIMIT, SUBGRAPH, SUBGRAPH_LIMIT)


class MapperError(ValueError):
    pass


class MapTimeout(RuntimeError):
    """Search exceeded its expansion budget or wall-clock cap."""

    def __init__(self, message: str, stats: "SearchStats"):
        self.stats = stats
        super().__init__(message)


@dataclass(frozen=True)
class Strategy:
    variant: str = FULL
    relevance_filter: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise MapperError(f"unknown strategy variant {self.variant!r}")

    @property
    def on_subgraphs(self) -> bool:
        return self.variant in (SUBGRAPH, SUBGRAPH_LIMIT)

    @property
    def limited(self) -> bool:
        return self.variant in (ARCH_LIMIT, SUBGRAPH_LIMIT)


@dataclass(frozen=True)
class Mapping:
    """Placement of logical qubits on an m-qubit device.

    ``phys_of_log[q]`` is the physical qubit holding logical ``q``; physical
    qubits holding no logical qubit show -1 in ``log_of_phys``.
    """

    m: int
    phys_of_log: tuple[int, ...]

    @property
    def log_of_phys(self) -> tuple[int, ...]:
        out = [-1] * self.m
        for q, p in enumerate(self.phys_of_log):
            out[p] = q
        return tuple(out)


@dataclass
class SearchStats:
    states_expanded: int = 0
    permutations_considered: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class MappingResult:
    cost: int
    initial_layout: Mapping
    steps: tuple[tuple[tuple[int, int], ...], ...]
    subgraph_used: Optional[tuple[int, ...]] = None
    stats: SearchStats = field(default_factory=SearchStats, compare=False)


@dataclass(frozen=True)
class SearchSpace:
    per_gate: int
    total: int


def mapped_circuit(c: Circuit, r: MappingResult) -> MappedCircuit:
    """Assemble the routed circuit realized by a mapping result."""
    return realize_mapping(c, r.initial_layout.m, r.initial_layout.phys_of_log, [list(s) for s in r.steps])


@lru_cache(maxsize=None)
def _table_for(g: CouplingGraph, limited: bool) -> PermutationTable:
    return reduced_set(g) if limited else cayley_bfs(g)


@dataclass
class _Budget:
    expansions: Optional[int] = None
    deadline: Optional[float] = None

    def check(self, stats: SearchStats, started: float):
        if self.expansions is not None and stats.states_expanded > self.expansions:
            stats.wall_time = time.perf_counter() - started
            raise MapTimeout("expansion budget exhausted", stats)
        if self.deadline is not None and time.perf_counter() > self.deadline:
            stats.wall_time = time.perf_counter() - started
            raise MapTimeout("wall-clock limit exceeded", stats)


def _initial_placements(gate0: tuple[int, int], g: CouplingGraph, n: int):
    """Every injective placement of n qubits that puts gate0 on an edge."""
    qc, qt = gate0
    others = [q for q in range(n) if q not in (qc, qt)]
    pairs = sorted(
        [(a, b) for a, b in g.sorted_edges()] + [(b, a) for a, b in g.sorted_edges()]
    )
    for x, y in pairs:
        rest = [p for p in range(g.m) if p not in (x, y)]
        for assignment in itertools.permutations(rest, len(others)):
            pos = [0] * n
            pos[qc] = x
            pos[qt] = y
            for q, p in zip(others, assignment):
                pos[q] = p
            yield tuple(pos)


def _search(
    skeleton: list[tuple[int, int]],
    g: CouplingGraph,
    table: PermutationTable,
    n: int,
    use_filter: bool,
    budget: _Budget,
) -> tuple[int, tuple[int, ...], list[tuple[int, int]], SearchStats]:
    """Core Dijkstra; returns (cost, initial placement, applied (slot, perm) list, stats)."""
    started = time.perf_counter()
    stats = SearchStats()
    m = g.m
    adj = [[False] * m for _ in range(m)]
    for a, b in g.edges:
        adj[a][b] = adj[b][a] = True
    perms = list(table.entries)
    perm_costs = [table.entries[p].cost for p in perms]
    L = len(skeleton)

    def advance(i: int, pos: tuple[int, ...]) -> int:
        while i < L:
            a, b = skeleton[i]
            if not adj[pos[a]][pos[b]]:
                break
            i += 1
        return i

    heap: list[tuple[int, int, tuple[int, ...]]] = []
    best: dict[tuple[int, tuple[int, ...]], int] = {}
    # parent: state -> (previous state, index of applied table perm); None for sources
    parent: dict[tuple[int, tuple[int, ...]], Optional[tuple[tuple[int, tuple[int, ...]], int]]] = {}
    for pos in _initial_placements(skeleton[0], g, n):
        i = advance(0, pos)
        state = (i, pos)
        if state not in best:
            best[state] = 0
            parent[state] = None
            heapq.heappush(heap, (0, -i, pos))
    closed: set[tuple[int, tuple[int, ...]]] = set()

    while heap:
        cost, neg_i, pos = heapq.heappop(heap)
        i = -neg_i
        state = (i, pos)
        if state in closed:
            continue
        closed.add(state)
        stats.states_expanded += 1
        budget.check(stats, started)
        if i == L:
            applied = []
            cur = state
            while parent[cur] is not None:
                prev, k = parent[cur]
                applied.append((prev[0], k))
                cur = prev
            applied.reverse()
            stats.wall_time = time.perf_counter() - started
            return cost, cur[1], applied, stats
        a, b = skeleton[i]
        pi, pj = pos[a], pos[b]
        for k, p in enumerate(perms):
            if use_filter and k != 0 and p[pi] == pi and p[pj] == pj:
                continue
            stats.permutations_considered += 1
            npos = tuple(p[x] for x in pos)
            ni = advance(i, npos)
            nstate = (ni, npos)
            if nstate in closed:
                continue
            ncost = cost + perm_costs[k]
            if ncost < best.get(nstate, m * m * (L + 1)):
                best[nstate] = ncost
                parent[nstate] = (state, k)
                heapq.heappush(heap, (ncost, -ni, npos))
    raise MapperError("search exhausted without reaching the goal (disconnected graph?)")


def map_optimal(
    c: Circuit,
    g: CouplingGraph,
    s: Strategy = Strategy(),
    *,
    expansion_budget: Optional[int] = None,
    time_limit: Optional[float] = None,
) -> MappingResult:
    """Minimum-total-SWAP mapping of a circuit onto the whole device."""
    if s.on_subgraphs:
        return solve_on_subgraphs(c, g, s, expansion_budget=expansion_budget, time_limit=time_limit)
    if c.n > g.m:
        raise MapperError(f"circuit has {c.n} qubits but device only {g.m}")
    skeleton = two_qubit_skeleton(c)
    if not skeleton:
        layout = Mapping(m=g.m, phys_of_log=tuple(range(c.n)))
        return MappingResult(cost=0, initial_layout=layout, steps=())
    table = _table_for(g, s.limited)
    budget = _Budget(
        expansions=expansion_budget,
        deadline=None if time_limit is None else time.perf_counter() + time_limit,
    )
    cost, pos0, applied, stats = _search(skeleton, g, table, c.n, s.relevance_filter, budget)
    perms = list(table.entries)
    steps: list[list[tuple[int, int]]] = [[] for _ in skeleton]
    for slot, k in applied:
        steps[slot].extend(swap_sequence(table, perms[k]))
    return MappingResult(
        cost=cost,
        initial_layout=Mapping(m=g.m, phys_of_log=pos0),
        steps=tuple(tuple(edges) for edges in steps),
        stats=stats,
    )


def solve_on_subgraphs(
    c: Circuit,
    g: CouplingGraph,
    s: Strategy,
    *,
    expansion_budget: Optional[int] = None,
    time_limit: Optional[float] = None,
) -> MappingResult:
    """Cheapest mapping over all connected device subgraphs of the circuit's size.

    Cost ties go to the lexicographically smallest vertex set. The returned
    layout and SWAP edges use global physical indices. Subgraph tables are
    cached by the re-indexed local graph, so the identically shaped windows
    of regular architectures share one computation.
    """
    if not s.on_subgraphs:
        raise MapperError(f"strategy {s.variant!r} does not run on subgraphs")
    if c.n > g.m:
        raise MapperError(f"circuit has {c.n} qubits but device only {g.m}")
    skeleton = two_qubit_skeleton(c)
    if not skeleton:
        layout = Mapping(m=g.m, phys_of_log=tuple(range(c.n)))
        return MappingResult(cost=0, initial_layout=layout, steps=())
    inner = Strategy(
        variant=ARCH_LIMIT if s.variant == SUBGRAPH_LIMIT else FULL,
        relevance_filter=s.relevance_filter,
    )
    deadline = None if time_limit is None else time.perf_counter() + time_limit
    remaining = expansion_budget
    totals = SearchStats()
    best_result: Optional[MappingResult] = None
    best_vertices: Optional[tuple[int, ...]] = None
    for sub in connected_subgraphs(g, c.n):
        left = None if deadline is None else max(0.0, deadline - time.perf_counter())
        local = map_optimal(
            c, sub.local, inner, expansion_budget=remaining, time_limit=left
        )
        totals.states_expanded += local.stats.states_expanded
        totals.permutations_considered += local.stats.permutations_considered
        totals.wall_time += local.stats.wall_time
        if remaining is not None:
            remaining -= local.stats.states_expanded
            if remaining <= 0:
                remaining = 0
        if best_result is None or local.cost < best_result.cost:
            emb = sub.embedding
            layout = Mapping(
                m=g.m,
                phys_of_log=tuple(emb[p] for p in local.initial_layout.phys_of_log),
            )
            lifted = tuple(
                tuple(
                    (min(emb[a], emb[b]), max(emb[a], emb[b]))
                    for a, b in edges
                )
                for edges in local.steps
            )
            best_result = MappingResult(
                cost=local.cost,
                initial_layout=layout,
                steps=lifted,
                subgraph_used=sub.vertices,
                stats=totals,
            )
            best_vertices = sub.vertices
    assert best_result is not None and best_vertices is not None
    return best_result


def solve(
    c: Circuit,
    g: CouplingGraph,
    s: Strategy,
    *,
    expansion_budget: Optional[int] = None,
    time_limit: Optional[float] = None,
) -> MappingResult:
    """Dispatch to whole-architecture or per-subgraph solving by strategy."""
    if s.on_subgraphs:
        return solve_on_subgraphs(c, g, s, expansion_budget=expansion_budget, time_limit=time_limit)
    return map_optimal(c, g, s, expansion_budget=expansion_budget, time_limit=time_limit)


def count_search_space(c: Circuit, g: CouplingGraph, s: Strategy) -> SearchSpace:
    """Static size of the per-gate candidate sets under a strategy.

    For the subgraph variants the per-gate figure is the largest candidate
    set over all subgraphs, and the total sums every subgraph's share.
    """
    gates = len(two_qubit_skeleton(c))
    if s.variant == FULL:
        per_gate = math.factorial(g.m)
        return SearchSpace(per_gate=per_gate, total=gates * per_gate)
    if s.variant == ARCH_LIMIT:
        per_gate = len(_table_for(g, True))
        return SearchSpace(per_gate=per_gate, total=gates * per_gate)
    subs = connected_subgraphs(g, c.n)
    sizes = []
    for sub in subs:
        if s.variant == SUBGRAPH:
            sizes.append(math.factorial(c.n))
        else:
            sizes.append(len(_table_for(sub.local, True)))
    return SearchSpace(per_gate=max(sizes), total=gates * sum(sizes))
