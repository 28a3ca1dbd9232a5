"""Planted-matching laboratory: estimators, bounds, and reproducible experiments."""

from .assignment import lap_objective, solve_lap_brute, solve_lap_max, solve_lap_min
from .cycles import (
    GaugBoundReport,
    build_gaug,
    cycle_gap,
    is_augmenting,
    mistake_cycles,
    verify_gaug_bound,
)
from .estimators import EstimatorKind, estimate, hamming
from .experiments import (
    AggregateResult,
    ExperimentConfig,
    run_experiment,
    run_recovery_sweep,
    run_rgg_sweep,
)
from .geometry import LDParams, build_rgg, count_expected_edges, grid_pair_matching
from .graphs import Graph, Matching, read_edge_list, write_edge_list
from .matching import greedy_matching, max_matching, max_matching_brute
from .mc import McEstimate
from .model import (
    Instance,
    NoiseBase,
    NoiseFamily,
    NoiseSpec,
    NormKind,
    Permutation,
    PositionFamily,
    PositionSpec,
    derive_seed,
    evaluate_density,
    instance_from_json,
    instance_to_json,
    read_instance_binary,
    sample_instance,
    sample_noise_direction,
    sample_positions,
    write_instance_binary,
)
from .theory import (
    HDParams,
    HpBounds,
    LogRegime,
    StableRanks,
    TheoryReport,
    augmenting_2cycle_rate,
    ball_volume,
    gaussian_q,
    gaussian_tv_lower,
    hp_bounds,
    log_regime,
    lss_upper_bound,
    matching_size_lower_bound,
    minimax_lower_bound,
    snr_lss,
    snr_lssc,
    stable_ranks,
    tau_constant,
    tau_gaussian,
)

__version__ = "0.1.0"
