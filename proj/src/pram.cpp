#include "rws/pram.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <limits>

namespace rws {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

SimulationReport simulate_max_race_with(const BidVector& bids,
                                        const std::function<std::size_t(std::size_t)>& choose,
                                        const SimulatorOptions& options) {
    SimulationReport report;

    // The shared cell starts below every possible bid. All bids are
    // negative, so a literal zero would deactivate every processor before
    // the first write; "smaller than any bid" is the working equivalent of
    // an empty cell here.
    double s = kNegInf;

    std::vector<std::size_t> active;
    active.reserve(bids.size());
    for (std::size_t i = 0; i < bids.size(); ++i) {
        if (bids[i] > kNegInf) {
            active.push_back(i);
            ++report.finite_bids;
        }
    }
    if (active.empty()) throw AllZeroFitnessError("all bids are -infinity");

    while (!active.empty()) {
        const std::size_t active_before = active.size();
        const std::size_t pos = choose(active_before);
        assert(pos < active_before);
        const std::size_t winner = active[pos];
        s = bids[winner];  // winner was active, so s strictly increases
        ++report.rounds;

        // Processors with r_i <= s become inactive for good.
        std::size_t kept = 0;
        for (std::size_t idx : active) {
            if (bids[idx] > s) active[kept++] = idx;
        }
        active.resize(kept);

        if (report.trace.size() < options.trace_cap) {
            report.trace.push_back({report.rounds, active_before, winner, s, kept});
        }
    }

    // Every processor now observes s >= r_i; those with r_i = s write their
    // index, and the lowest one is kept as the conflict-free answer.
    std::size_t out_index = bids.size();
    for (std::size_t i = 0; i < bids.size(); ++i) {
        if (bids[i] == s) {
            out_index = i;
            break;
        }
    }
    report.result = {out_index, s};
    return report;
}

SimulationReport simulate_max_race(const BidVector& bids, UniformSource& conflict_rng,
                                   const SimulatorOptions& options) {
    return simulate_max_race_with(
        bids,
        [&conflict_rng](std::size_t count) {
            return static_cast<std::size_t>(conflict_rng.draw_below(count));
        },
        options);
}

RoundStats round_statistics(const FitnessVector& f, std::uint64_t trials, RngSeed seed) {
    if (trials == 0) throw InvalidTrialCountError();
    if (f.total() <= 0.0) throw AllZeroFitnessError();

    const SubstreamRng rng(seed);
    SimulatorOptions no_trace{.trace_cap = 0};  // statistics never truncate

    RoundStats stats;
    stats.trials = trials;
    stats.k = f.positive_count();

    std::uint64_t total_rounds = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const BidVector bids = make_bids(f, rng, t * f.size());
        UniformSource conflict = rng.stream(kConflictStreamBase + t);
        const SimulationReport report = simulate_max_race(bids, conflict, no_trace);

        total_rounds += report.rounds;
        stats.max_rounds = std::max(stats.max_rounds, report.rounds);
        if (stats.histogram.size() <= report.rounds) {
            stats.histogram.resize(report.rounds + 1, 0);
        }
        ++stats.histogram[report.rounds];
    }
    stats.mean_rounds = static_cast<double>(total_rounds) / static_cast<double>(trials);
    return stats;
}

TreeReduction reduce_tree_max(const BidVector& bids) {
    if (bids.empty()) throw AllZeroFitnessError("empty bid vector");

    struct Node {
        double bid;
        std::size_t index;
    };
    std::vector<Node> level(bids.size());
    for (std::size_t i = 0; i < bids.size(); ++i) level[i] = {bids[i], i};

    unsigned depth = 0;
    while (level.size() > 1) {
        std::vector<Node> next((level.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            const std::size_t l = 2 * i;
            const std::size_t r = 2 * i + 1;
            if (r < level.size()) {
                // >= keeps the left child on ties, which is the lower index.
                next[i] = (level[l].bid >= level[r].bid) ? level[l] : level[r];
            } else {
                next[i] = level[l];
            }
        }
        level = std::move(next);
        ++depth;
    }

    if (level[0].bid == kNegInf) throw AllZeroFitnessError("all bids are -infinity");
    return {{level[0].index, level[0].bid}, depth};
}

}  // namespace rws
