#pragma once

#include <cstdint>
#include <thread>

#include "rws/fitness.hpp"
#include "rws/rng.hpp"
#include "rws/selection.hpp"

namespace rws {

struct ExecConfig {
    unsigned worker_count = 0;     // 0 = hardware concurrency
    std::size_t chunk_size = 1024; // indices per work unit

    unsigned effective_workers() const {
        if (worker_count > 0) return worker_count;
        unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? hw : 1;
    }
};

/// Multi-threaded log-bid selection. Workers claim index chunks, compute
/// bids from per-index substreams and race a "replace if strictly greater,
/// lower index on ties" update on one shared cell — the hardware analogue
/// of the write-race loop. Because randomness is keyed by index, the
/// result is bit-identical to select_log_bid with the same seed and
/// stream_base, for any worker count or schedule.
SelectionResult select_log_bid_parallel(const FitnessVector& f, RngSeed seed,
                                        const ExecConfig& cfg = {},
                                        std::uint64_t stream_base = 0);

struct ContentionReport {
    double mean_shared_updates = 0.0;  // successful cell replacements per trial
    std::uint64_t trials = 0;
};

/// Measures shared-cell traffic: how many conditional-replace operations
/// actually land per selection, averaged over trials. Trial t uses stream
/// base t * n. Throws InvalidTrialCountError when trials == 0.
ContentionReport contention_report(const FitnessVector& f, std::uint64_t trials, RngSeed seed,
                                   const ExecConfig& cfg = {});

}  // namespace rws
