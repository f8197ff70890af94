"""Minimal distinguishing column sets (diagnostic tests) of Boolean matrices.

A *test* of a 0/1 matrix is a set of columns whose projection keeps all
rows pairwise distinct; this package finds all minimal tests exactly via
mandatory-column detection, row-class decomposition, a multiplicative
length estimate and theorem-backed pruning, every step verifiable against
a built-in exhaustive oracle.
"""

from .matrix import (
    BooleanMatrix,
    ColumnSet,
    DuplicateColumnWarning,
    MatrixFormatError,
    MatrixView,
    distinguishing_columns,
    is_test,
    iter_row_pairs,
    load_matrix,
    pair_count,
    parse_matrix,
    project,
    row_popcounts,
    sort_rows_by_binary_value,
)
from .mandatory import (
    ClassSet,
    ClassView,
    MandatoryResult,
    Partition,
    PartitionClass,
    candidate_pairs,
    class_views,
    find_mandatory,
    load_class_set,
    parse_class_set,
    partition_by_mandatory,
    refine_mandatory,
)
from .heuristic import (
    ColumnPairStats,
    HeuristicEstimate,
    column_pair_stats,
    estimate_length,
    integral_length,
    union_pair_stats,
)
from .pruning import (
    CycleCost,
    IdenticalProjectionGroup,
    SweepResult,
    all_k_subsets_fail,
    bijective_column_pairs,
    cycle_costs,
    identical_projection_groups,
    is_local_test,
    iter_subsets_colex,
    multiplicity_seeds,
    paired_view_columns,
    residual_pairs_lower_bound,
)
from .search import (
    Correction,
    DeadendCheck,
    LocalReport,
    SearchCeilingError,
    SearchConfig,
    SearchStats,
    TestReport,
    TestVerdict,
    deadend_reduce,
    enumerate_local_minimal_tests,
    enumerate_minimal_tests,
    is_deadend,
    local_deadend,
    local_deadend_reduce,
    verify_test,
)
from .oracle import OracleCeilingError, OracleResult, oracle_deadend_tests, oracle_minimal_tests
from .generate import GenerationError, GeneratorConfig, SplitMix64, derive_seeds, generate_matrix
from .bench import (
    BenchResult,
    ExperimentRecord,
    StreamConfig,
    bench_matrix,
    csv_text,
    run_benchmark,
    summarize,
)
from .fixtures import fixture_text, list_fixtures, load_fixture_classes, load_fixture_matrix

__version__ = "0.1.0"
