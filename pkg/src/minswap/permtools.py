"""Permutation arithmetic and SWAP-cost tables.

Permutations are one-line arrays: ``p[i]`` is the image of position ``i``.
Composition is a left action, ``compose(a, b)[i] == a[b[i]]`` (apply ``b``
first, then ``a``). A SWAP on edge {i, j} acts as the transposition (ij)
composed on the left of the current placement, so a sequence of SWAPs
e1, e2, ..., ek applied in that temporal order realizes the permutation
(ek) . ... . (e1). Cycle notation follows the same convention: the string
"(012)" denotes 0 -> 1 -> 2 -> 0 and equals compose((01), (12)).

A :class:`PermutationTable` is the breadth-first closure of the identity
under left-composition with the transpositions of a coupling graph's edges.
BFS depth equals minimal SWAP count, and each entry records one predecessor
edge so a realizing SWAP sequence can be read back. Truncating the BFS at
depth K-1 (K = graph diameter) yields the reduced candidate set that still
suffices to make any qubit pair adjacent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .coupling import CouplingGraph

Perm = tuple[int, ...]

# Unlimited breadth-first enumeration is capped here: 8! = 40320 entries.
FULL_ENUMERATION_LIMIT = 8


class PermError(ValueError):
    pass


def identity(m: int) -> Perm:
    return tuple(range(m))


def compose(a: Perm, b: Perm) -> Perm:
    """a after b: position i goes to a[b[i]]."""
    if len(a) != len(b):
        raise PermError(f"size mismatch: {len(a)} vs {len(b)}")
    return tuple(a[b[i]] for i in range(len(a)))


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, img in enumerate(a):
        inv[img] = i
    return tuple(inv)


def apply(a: Perm, i: int) -> int:
    return a[i]


def transposition(m: int, a: int, b: int) -> Perm:
    p = list(range(m))
    p[a], p[b] = p[b], p[a]
    return tuple(p)


def is_perm(p: Perm) -> bool:
    return sorted(p) == list(range(len(p)))


# -- cycle notation -----------------------------------------------------------

def to_cycles(p: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its smallest element, sorted."""
    seen = set()
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = p[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        cycles.append(tuple(cyc))
    return cycles


def cycle_str(p: Perm) -> str:
    """Render in cycle notation, e.g. "(01)(23)"; identity renders as "()".

    Elements are concatenated without separators when all fit in one digit,
    otherwise space-separated.
    """
    cycles = to_cycles(p)
    if not cycles:
        return "()"
    sep = "" if len(p) <= 10 else " "
    return "".join("(" + sep.join(str(x) for x in cyc) + ")" for cyc in cycles)


def parse_cycles(text: str, m: int) -> Perm:
    """Parse cycle notation produced by :func:`cycle_str`.

    Accepts both packed single-digit form "(012)" and space/comma separated
    "(0 1 2)". "()" is the identity.
    """
    s = text.replace(",", " ").strip()
    if s in ("", "()"):
        return identity(m)
    p = list(range(m))
    depth = 0
    cyc: list[int] = []
    num = ""

    def flush_num():
        nonlocal num
        if num:
            cyc.append(int(num))
            num = ""

    for ch in s:
        if ch == "(":
            if depth:
                raise PermError(f"nested '(' in {text!r}")
            depth = 1
            cyc = []
        elif ch == ")":
            flush_num()
            if not depth:
                raise PermError(f"unbalanced ')' in {text!r}")
            depth = 0
            if len(cyc) > 1:
                # decode: element cyc[k] maps to cyc[k+1]
                if any(not 0 <= x < m for x in cyc):
                    raise PermError(f"cycle element out of range in {text!r}")
                if len(set(cyc)) != len(cyc):
                    raise PermError(f"repeated element within a cycle in {text!r}")
                for k, x in enumerate(cyc):
                    if p[x] != x:
                        raise PermError(f"element {x} appears in two cycles in {text!r}")
                for k, x in enumerate(cyc):
                    p[x] = cyc[(k + 1) % len(cyc)]
        elif ch.isdigit():
            if not depth:
                raise PermError(f"digit outside cycle in {text!r}")
            if m <= 10:
                cyc.append(int(ch))
            else:
                num += ch
        elif ch == " ":
            flush_num()
        else:
            raise PermError(f"unexpected {ch!r} in {text!r}")
    if depth:
        raise PermError(f"unbalanced '(' in {text!r}")
    return tuple(p)


# -- Lehmer ranking -----------------------------------------------------------

def lehmer_rank(p: Perm) -> int:
    """Index of p in lexicographic order of all len(p)! one-line forms."""
    n = len(p)
    rank = 0
    pool = list(range(n))
    for i, x in enumerate(p):
        k = pool.index(x)
        rank += k * math.factorial(n - 1 - i)
        pool.pop(k)
    return rank


def lehmer_unrank(rank: int, m: int) -> Perm:
    pool = list(range(m))
    out = []
    for i in range(m):
        f = math.factorial(m - 1 - i)
        k, rank = divmod(rank, f)
        out.append(pool.pop(k))
    return tuple(out)


# -- Cayley tables ------------------------------------------------------------

@dataclass(frozen=True)
class TableEntry:
    cost: int
    pred_edge: Optional[tuple[int, int]]
    pred_perm: Optional[Perm]


@dataclass(frozen=True)
class PermutationTable:
    """SWAP-reachable permutations of a coupling graph with minimal costs.

    ``entries`` preserves BFS discovery order (cost-sorted); iteration over
    the table is therefore deterministic. Immutable after construction.
    """

    m: int
    generators: tuple[tuple[int, int], ...]
    entries: dict[Perm, TableEntry]
    depth_limit: Optional[int]

    def __contains__(self, p: Perm) -> bool:
        return p in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.entries)

    def cost(self, p: Perm) -> int:
        return self.entries[p].cost

    def level_sizes(self) -> list[int]:
        """Number of entries at each SWAP cost, starting at cost 0."""
        depth = max(e.cost for e in self.entries.values())
        sizes = [0] * (depth + 1)
        for e in self.entries.values():
            sizes[e.cost] += 1
        return sizes


def cayley_bfs(g: CouplingGraph, depth_limit: Optional[int] = None) -> PermutationTable:
    """Breadth-first closure of {identity} under the graph's edge transpositions.

    Every reachable permutation (up to ``depth_limit`` applications, or all of
    them when unlimited) is recorded with its minimal SWAP count and one
    predecessor. Unlimited enumeration requires m <= 8.
    """
    if depth_limit is None and g.m > FULL_ENUMERATION_LIMIT:
        raise PermError(
            f"unlimited enumeration of {g.m}! permutations refused (m > "
            f"{FULL_ENUMERATION_LIMIT}); pass a depth limit"
        )
    gens = tuple(g.sorted_edges())
    gen_perms = [transposition(g.m, a, b) for a, b in gens]
    ident = identity(g.m)
    entries: dict[Perm, TableEntry] = {ident: TableEntry(0, None, None)}
    frontier = [ident]
    depth = 0
    while frontier and (depth_limit is None or depth < depth_limit):
        depth += 1
        nxt = []
        for cur in frontier:
            for edge, t in zip(gens, gen_perms):
                new = compose(t, cur)
                if new not in entries:
                    entries[new] = TableEntry(depth, edge, cur)
                    nxt.append(new)
        frontier = nxt
    return PermutationTable(m=g.m, generators=gens, entries=entries, depth_limit=depth_limit)


def reduced_set(g: CouplingGraph) -> PermutationTable:
    """Permutations realizable with at most K-1 SWAPs on this graph."""
    return cayley_bfs(g, depth_limit=g.K - 1)


def swap_sequence(t: PermutationTable, p: Perm) -> list[tuple[int, int]]:
    """Edges realizing ``p``, in application order (first SWAP first).

    Composing the transpositions right-to-left, i.e. last list element
    outermost, reproduces ``p``; the length equals the recorded cost.
    """
    if p not in t.entries:
        raise PermError(f"permutation {cycle_str(p)} not in table")
    seq = []
    cur = p
    while True:
        entry = t.entries[cur]
        if entry.pred_edge is None:
            break
        seq.append(entry.pred_edge)
        cur = entry.pred_perm
    seq.reverse()
    return seq


def relevance_filter(t: PermutationTable, current, gate: tuple[int, int]) -> Iterator[Perm]:
    """Table entries that can matter before the given gate.

    ``current`` maps logical qubits to positions (an indexable of positions);
    the gate's operands sit at p_i and p_j. Yields the identity first, then
    every permutation moving p_i or p_j. Permutations moving neither operand
    cannot change the gate's executability and are dropped.
    """
    qc, qt = gate
    pi = current[qc]
    pj = current[qt]
    ident = identity(t.m)
    for p in t.entries:
        if p == ident or p[pi] != pi or p[pj] != pj:
            yield p


def perm_bitset(t: PermutationTable, m: int) -> int:
    """Membership bitset over all m! permutations, as an int.

    Bit ``lehmer_rank(p)`` is set iff ``p`` is in the table. Requires m <= 8
    so the bitset stays at most 40320 bits.
    """
    if m > FULL_ENUMERATION_LIMIT:
        raise PermError(f"bitset of {m}! bits refused (m > {FULL_ENUMERATION_LIMIT})")
    bits = 0
    for p in t.entries:
        bits |= 1 << lehmer_rank(p)
    return bits
