"""Sparsity and tightness of rank 2 incidence geometries via pebble games."""

from .engine import (
    GameState,
    Status,
    Verdict,
    ViolationWitness,
    check_invariants,
    extract_violation_witness,
    init_state,
    run_extraction,
    run_recognition,
)
from .geometry import (
    IncidenceGeometry,
    PebbleMultigraph,
    SparsityParams,
    Support,
    build_multigraph,
    count_inequality,
    load_geometry,
    validate_and_normalize_params,
)
from .oracle import (
    brute_force_verdict,
    enumerate_blocks,
    max_sparse_subset,
    verify_block_closure,
    verify_matroid_exchange,
)
from .reductions import (
    Hypergraph,
    construct_tight_geometry,
    derive_params,
    hypergraph_sparsity,
    hypergraph_to_geometry,
    random_geometry,
)

__version__ = "0.1.0"
