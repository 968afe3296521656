"""Weighted hypergraph connectivity toolkit.

Core objects and the main entry points re-exported for convenience; see the
individual modules for the full API:

- core: Hypergraph values, cut/coverage functions, merge/reduce/h-ops
- flow: exact min-cuts, local connectivity, hyperarc-disjoint paths
- oracles: set-function maximization oracles and tight-set families
- cover: weak-to-strong cover transformation (merging algorithm)
- splitoff: complete h-splitting-off with replayable scripts
- apps: k-connected decomposition, orientation, partition connectivity
- cli: command-line front end (`hsplit`)
"""

from .apps import (
    OrientedHypergraph,
    PinchingScript,
    PinchOp,
    decompose_k_ec,
    is_k_hyperedge_connected,
    menger_paths,
    replay_pinching,
    steiner_rooted_orientation,
    weak_partition_connectivity,
)
from .core import (
    ContractViolation,
    Hypergraph,
    InputError,
    PreconditionError,
    ReplayError,
    format_hypergraph,
    parse_hypergraph,
)
from .cover import (
    CoverResult,
    CoverStep,
    preprocess,
    project_laminar,
    replay_trace,
    run_cover,
    verify_cover_result,
    weak_to_strong_cover,
)
from .flow import brute_force_min_cut, lambda_value, min_cut_constrained
from .oracles import (
    AdversarialOracle,
    RequirementFunction,
    RequirementOracle,
    SetFunctionOracle,
    contract_oracle,
    lambda_requirements,
    maximal_tight_sets,
    strong_oracle_for,
    weak_oracle_query,
)
from .splitoff import (
    SplitOffResult,
    SplitOffScript,
    complete_h_splitting_off,
    script_to_G_star,
    verify_local_connectivity,
)

__version__ = "0.1.0"
