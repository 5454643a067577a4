#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rws/fitness.hpp"
#include "rws/rng.hpp"

namespace rws {

/// Transformed random values r_i competing for the maximum. A bid is a
/// finite negative number when f_i > 0 and -infinity exactly when f_i = 0,
/// so the vector always has one slot per index.
using BidVector = std::vector<double>;

/// Inclusive prefix sums p_i = f_0 + ... + f_i, with implicit p_{-1} = 0.
struct PrefixSums {
    std::vector<double> p;

    double total() const noexcept { return p.empty() ? 0.0 : p.back(); }
};

PrefixSums prefix_sums(const FitnessVector& f);

/// Outcome of one selection: the chosen index, plus the winning bid for
/// the bid-based selectors.
struct SelectionResult {
    std::size_t index = 0;
    std::optional<double> winning_bid;
};

/// Logarithmic random bid log(u) / f_i. Finite negative for f_i > 0,
/// -infinity for f_i = 0 (the f -> 0+ limit of the quotient). Requires
/// u strictly inside (0, 1).
/// Throws InvalidFitnessError when f_i is negative, NaN or infinite.
double bid(double fitness, double unit_uniform);

/// One bid per index; consumes exactly one draw from sources[i] for every
/// index, zero-fitness ones included. Requires sources.size() == f.size().
BidVector make_bids(const FitnessVector& f, std::span<UniformSource> sources);

/// Same, with per-index substreams: index i draws once from
/// rng.stream(stream_base + i).
BidVector make_bids(const FitnessVector& f, const SubstreamRng& rng,
                    std::uint64_t stream_base = 0);

/// Index of the maximum bid, ties broken by lowest index. -infinity
/// entries never win. Throws AllZeroFitnessError when every bid is
/// -infinity.
SelectionResult argmax_bid(const BidVector& bids);

/// Roulette wheel selection via logarithmic random bidding: index i is
/// selected with probability exactly F_i. Index i draws from
/// rng.stream(stream_base + i).
SelectionResult select_log_bid(const FitnessVector& f, const SubstreamRng& rng,
                               std::uint64_t stream_base = 0);

/// Prefix-sum reference selector: R = u * total, returns the unique i with
/// p_{i-1} <= R < p_i. Selects i with probability exactly F_i.
SelectionResult select_prefix_sum(const FitnessVector& f, double unit_uniform);

/// Binary-search form for repeated draws against a fixed distribution.
SelectionResult select_prefix_sum(const PrefixSums& sums, double unit_uniform);

/// The biased baseline: argmax of f_i * u_i. Kept deliberately faithful to
/// its usual formulation; its selection probabilities do NOT equal F_i in
/// general (e.g. f = [2,1] picks index 0 with probability 3/4, not 2/3).
SelectionResult select_independent(const FitnessVector& f, const SubstreamRng& rng,
                                   std::uint64_t stream_base = 0);

}  // namespace rws
