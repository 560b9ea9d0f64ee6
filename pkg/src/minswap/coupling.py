"""Device connectivity graphs.

A coupling graph is an undirected, connected graph over the physical qubits
of a device. A two-qubit gate is executable only on an edge. The graph is
treated as undirected because gate direction can always be fixed with
single-qubit gates, which are free as far as SWAP counting goes.

Alongside the edge set, every graph carries its all-pairs shortest-path
matrix and the diameter ``K`` (the longest of all pairwise shortest paths),
which bounds how many SWAPs are ever needed to bring two qubits together.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations, permutations


class CouplingError(ValueError):
    """Raised for malformed or disconnected coupling graphs."""


def all_pairs_shortest_paths(edges: set[tuple[int, int]], m: int) -> list[list[int]]:
    """Hop-count distance matrix via Floyd-Warshall.

    Raises :class:`CouplingError` if any pair is unreachable.
    """
    inf = m + 1
    dist = [[0 if i == j else inf for j in range(m)] for i in range(m)]
    for a, b in edges:
        dist[a][b] = 1
        dist[b][a] = 1
    for k in range(m):
        dk = dist[k]
        for i in range(m):
            di = dist[i]
            dik = di[k]
            if dik >= inf:
                continue
            for j in range(m):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    for i in range(m):
        for j in range(m):
            if dist[i][j] >= inf:
                raise CouplingError(f"graph is disconnected: no path from {i} to {j}")
    return dist


def diameter(dist: list[list[int]]) -> int:
    """Maximum entry of a finite distance matrix."""
    return max(max(row) for row in dist)


@dataclass(frozen=True)
class CouplingGraph:
    """Connectivity of an ``m``-qubit device.

    ``edges`` holds each undirected edge once as a sorted pair. ``dist`` and
    ``K`` are derived at construction and immutable afterwards, so instances
    can be shared freely across threads.
    """

    m: int
    edges: frozenset[tuple[int, int]]
    dist: tuple[tuple[int, ...], ...] = field(compare=False)
    K: int = field(compare=False)

    @classmethod
    def from_edges(cls, m: int, edges) -> CouplingGraph:
        if m < 1:
            raise CouplingError("need at least one qubit")
        norm: set[tuple[int, int]] = set()
        for a, b in edges:
            if a == b:
                raise CouplingError(f"self-loop on qubit {a}")
            if not (0 <= a < m and 0 <= b < m):
                raise CouplingError(f"edge ({a}, {b}) out of range for m={m}")
            norm.add((min(a, b), max(a, b)))
        dist = all_pairs_shortest_paths(norm, m)
        return cls(
            m=m,
            edges=frozenset(norm),
            dist=tuple(tuple(row) for row in dist),
            K=diameter(dist),
        )

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def neighbors(self, v: int) -> list[int]:
        out = [b for a, b in self.edges if a == v] + [a for a, b in self.edges if b == v]
        return sorted(out)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class Subgraph:
    """A connected induced subgraph, re-indexed to local vertices 0..n-1.

    ``embedding[i]`` is the global physical index of local vertex ``i``;
    ``vertices`` is the same list (sorted ascending).
    """

    vertices: tuple[int, ...]
    local: CouplingGraph
    embedding: tuple[int, ...]

    def to_global(self, local_index: int) -> int:
        return self.embedding[local_index]


def connected_subgraphs(g: CouplingGraph, n: int) -> list[Subgraph]:
    """All connected induced subgraphs on ``n`` vertices.

    Grows candidate sets from each seed vertex along edges instead of
    filtering all C(m, n) subsets; only sets whose minimum element equals the
    seed are kept, so every subgraph is produced exactly once. Results are
    ordered lexicographically by vertex set.
    """
    if not 1 <= n <= g.m:
        raise CouplingError(f"subgraph size {n} out of range for m={g.m}")
    adj = {v: set(g.neighbors(v)) for v in range(g.m)}
    found: set[frozenset[int]] = set()
    for seed in range(g.m):
        frontier = [frozenset([seed])]
        seen = {frozenset([seed])}
        while frontier:
            cur = frontier.pop()
            if len(cur) == n:
                found.add(cur)
                continue
            for u in cur:
                for v in adj[u]:
                    # canonical pruning: never grow below the seed
                    if v < seed or v in cur:
                        continue
                    nxt = cur | {v}
                    if nxt not in seen:
                        seen.add(nxt)
                        frontier.append(nxt)
    out = []
    for vs in sorted(found, key=sorted):
        verts = tuple(sorted(vs))
        index_of = {v: i for i, v in enumerate(verts)}
        local_edges = {
            (index_of[a], index_of[b]) for a, b in g.edges if a in vs and b in vs
        }
        out.append(
            Subgraph(
                vertices=verts,
                local=CouplingGraph.from_edges(n, local_edges),
                embedding=verts,
            )
        )
    return out


def canonical_edge_key(edges, n: int) -> tuple[tuple[int, int], ...]:
    """Isomorphism-canonical form of an edge set on vertices 0..n-1.

    Tries every relabeling and returns the lexicographically smallest sorted
    edge tuple. Intended for memoizing per-subgraph computations; n is small
    (the package caps exhaustive work at 8 qubits).
    """
    best = None
    for relab in permutations(range(n)):
        cand = tuple(
            sorted((min(relab[a], relab[b]), max(relab[a], relab[b])) for a, b in edges)
        )
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


def canonical_relabeling(edges, n: int) -> tuple[int, ...]:
    """A relabeling (old -> new) that maps ``edges`` onto their canonical key."""
    key = canonical_edge_key(edges, n)
    for relab in permutations(range(n)):
        cand = tuple(
            sorted((min(relab[a], relab[b]), max(relab[a], relab[b])) for a, b in edges)
        )
        if cand == key:
            return relab
    raise AssertionError("unreachable: some relabeling must realize the canonical key")


# -- parsing and named architectures -----------------------------------------

def load_coupling(text: str) -> CouplingGraph:
    """Parse the plain-text graph format: first line ``m``, then ``i j`` lines.

    Duplicate edges are tolerated. A JSON object ``{"m": ..., "edges": ...}``
    is also accepted.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return load_coupling_json(text)
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise CouplingError("empty coupling description")
    try:
        m = int(lines[0])
    except ValueError as exc:
        raise CouplingError(f"first line must be the qubit count, got {lines[0]!r}") from exc
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise CouplingError(f"expected 'i j' edge line, got {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return CouplingGraph.from_edges(m, edges)


def load_coupling_json(text: str) -> CouplingGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CouplingError(f"invalid JSON coupling description: {exc}") from exc
    if not isinstance(obj, dict) or "m" not in obj or "edges" not in obj:
        raise CouplingError('JSON coupling description needs keys "m" and "edges"')
    return CouplingGraph.from_edges(int(obj["m"]), [tuple(e) for e in obj["edges"]])


# IBMQ London: published 5-qubit T-shaped device topology. The device edge
# list is sourced from IBM's public backend data, not derived here.
_IBMQ_LONDON_EDGES = [(0, 1), (1, 2), (1, 3), (3, 4)]


def named_architecture(name: str) -> CouplingGraph | None:
    """Resolve built-in names: linear-<m>, ring-<m>, complete-<m>, ibmq-london."""
    if name == "ibmq-london":
        return CouplingGraph.from_edges(5, _IBMQ_LONDON_EDGES)
    match = re.fullmatch(r"(linear|ring|complete)-(\d+)", name)
    if match is None:
        return None
    kind, m = match.group(1), int(match.group(2))
    if kind == "linear":
        edges = [(i, i + 1) for i in range(m - 1)]
    elif kind == "ring":
        if m < 3:
            raise CouplingError("ring needs at least 3 qubits")
        edges = [(i, (i + 1) % m) for i in range(m)]
    else:
        edges = list(combinations(range(m), 2))
    return CouplingGraph.from_edges(m, edges)


def resolve_architecture(spec: str) -> CouplingGraph:
    """Accept a built-in name or a path to a text/JSON coupling file."""
    builtin = named_architecture(spec)
    if builtin is not None:
        return builtin
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            return load_coupling(fh.read())
    except OSError as exc:
        raise CouplingError(f"unknown architecture {spec!r}: {exc}") from exc
