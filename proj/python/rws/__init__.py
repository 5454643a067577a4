"""Weighted random selection with exact probabilities.

The heavy lifting lives in the compiled extension; this package simply
re-exports it.
"""

from rws._core import (  # noqa: F401
    AllZeroFitnessError,
    FrequencyTable,
    GoodnessOfFit,
    InvalidFitnessError,
    InvalidTrialCountError,
    PairedExperiment,
    RoundStats,
    RoundTrace,
    SimulationReport,
    ZeroExpectationViolationError,
    __version__,
    analytic_probabilities,
    argmax_bid,
    bid,
    chi_square,
    contention_report,
    make_bids,
    reduce_tree_max,
    round_statistics,
    run_experiment,
    select_independent,
    select_log_bid,
    select_log_bid_parallel,
    select_prefix_sum,
    simulate_max_race,
    table1_experiment,
    table2_experiment,
    tv_distance,
)
