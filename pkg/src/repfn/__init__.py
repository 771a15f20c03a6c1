"""Exact machinery for partitions of the naturals with matching weighted
representation counts on the set and its complement."""

from .bounds import (
    CASE_INTERVAL,
    CASE_SMALL_SHIFT,
    INCONCLUSIVE,
    SAT,
    UNSAT,
    Decomposition,
    SearchOutcome,
    WitnessRecord,
    admissible_j_values,
    bound_array,
    bound_scan,
    chain_threshold,
    decompose,
    extract_witness,
    flog,
    guaranteed_bound,
    nonexistence_search,
    validate_certificate,
    witness_list,
)
from .core import (
    COMPLEMENT,
    R1,
    R2,
    R3,
    SET,
    ChiTable,
    RepTable,
    ScanReport,
    WeightPair,
    classic_rep,
    rep_count_weighted,
    rep_table,
    rep_values,
    total_identity_check,
)
from .errors import (
    DomainError,
    EnumerationCapExceeded,
    InvalidSeed,
    NoWitness,
    PreconditionError,
    QueryBeyondPrefix,
)
from .partitions import (
    ENUMERATION_CAP,
    BlockParityReport,
    SeedAssignment,
    StructureReport,
    enumerate_seeds,
    extend_seed,
    solution_count,
    verify_block_parity,
    verify_equality,
    verify_structure,
    window_identity_holds,
)

__version__ = "0.1.0"
