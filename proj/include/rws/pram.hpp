#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rws/fitness.hpp"
#include "rws/rng.hpp"
#include "rws/selection.hpp"

namespace rws {

/// One synchronous round of the write-race protocol: every processor whose
/// bid still exceeds the shared cell attempts a write, exactly one
/// attempter succeeds.
struct RoundTrace {
    std::uint64_t round_number = 0;  // 1-based
    std::size_t active_before = 0;   // processors with r_i > s at round start
    std::size_t winner = 0;          // index whose write succeeded
    double s_after = 0.0;
    std::size_t active_after = 0;    // processors with r_i > s_after
};

struct SimulationReport {
    SelectionResult result;
    std::uint64_t rounds = 0;
    std::vector<RoundTrace> trace;   // capped at trace_cap rounds
    std::size_t finite_bids = 0;     // k
};

struct SimulatorOptions {
    std::size_t trace_cap = 10000;
};

/// Synchronous CRCW write-race simulation of maximum identification.
/// Per round: all processors with r_i > s attempt to write, the chooser
/// picks the one whose write lands, s becomes that bid. Terminates when no
/// processor is active; the result is the lowest index holding the maximum
/// bid. The chooser receives the attempter count and returns a position
/// into the active set ordered by processor index.
/// Throws AllZeroFitnessError when no bid is finite.
SimulationReport simulate_max_race_with(const BidVector& bids,
                                        const std::function<std::size_t(std::size_t)>& choose,
                                        const SimulatorOptions& options = {});

/// Production form: the winner is drawn uniformly among attempters from a
/// dedicated conflict stream.
SimulationReport simulate_max_race(const BidVector& bids, UniformSource& conflict_rng,
                                   const SimulatorOptions& options = {});

struct RoundStats {
    double mean_rounds = 0.0;
    std::uint64_t max_rounds = 0;
    std::vector<std::uint64_t> histogram;  // histogram[r] = trials that took r rounds
    std::uint64_t trials = 0;
    std::size_t k = 0;
};

/// Stream ids at and above this value are reserved for conflict-resolution
/// randomness; bid streams use trial * n + index, far below it.
inline constexpr std::uint64_t kConflictStreamBase = std::uint64_t{1} << 62;

/// Runs simulate_max_race on freshly drawn log-bids, one bid vector per
/// trial. Trial t uses bid streams t*n + i and conflict stream
/// kConflictStreamBase + t.
RoundStats round_statistics(const FitnessVector& f, std::uint64_t trials, RngSeed seed);

struct TreeReduction {
    SelectionResult result;
    unsigned depth = 0;  // ceil(log2 n); the EREW baseline's step count
};

/// Pairwise max reduction over a binary tree with n leaves, carrying the
/// index. Same winner as argmax_bid, including the lowest-index tie-break.
TreeReduction reduce_tree_max(const BidVector& bids);

}  // namespace rws
