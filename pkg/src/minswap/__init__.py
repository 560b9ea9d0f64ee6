"""Optimal SWAP-insertion mapping for connectivity-constrained devices."""

from .circuit import (
    Circuit,
    Cnot,
    CxOp,
    MappedCircuit,
    Single,
    SingleOp,
    SwapOp,
    emit_qasm,
    parse_mapped_qasm,
    parse_qasm,
    realize_mapping,
    two_qubit_skeleton,
)
from .coupling import (
    CouplingGraph,
    Subgraph,
    all_pairs_shortest_paths,
    connected_subgraphs,
    diameter,
    load_coupling,
    named_architecture,
    resolve_architecture,
)
from .mapper import (
    ARCH_LIMIT,
    FULL,
    SUBGRAPH,
    SUBGRAPH_LIMIT,
    Mapping,
    MappingResult,
    MapperError,
    MapTimeout,
    SearchSpace,
    Strategy,
    count_search_space,
    map_optimal,
    mapped_circuit,
    solve,
    solve_on_subgraphs,
)
from .permtools import (
    PermutationTable,
    cayley_bfs,
    compose,
    cycle_str,
    identity,
    inverse,
    lehmer_rank,
    lehmer_unrank,
    parse_cycles,
    perm_bitset,
    reduced_set,
    relevance_filter,
    swap_sequence,
)
from .verify import VerifyReport, verify_mapped_circuit, verify_mapping

__version__ = "0.1.0"
