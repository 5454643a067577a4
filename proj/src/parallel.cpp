#include "rws/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <vector>

#include "rws/errors.hpp"

namespace rws {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct Cell {
    double bid = kNegInf;
    std::size_t index = kNoIndex;
};

// Total order on offers: higher bid wins, lower index wins ties. Matching
// the sequential tie-break is what makes the result schedule-independent
// on floating-point ties.
bool beats(const Cell& a, const Cell& b) {
    return a.bid > b.bid || (a.bid == b.bid && a.index < b.index);
}

struct RaceOutcome {
    Cell cell;
    std::uint64_t updates = 0;  // successful replacements
};

RaceOutcome race_bids(const FitnessVector& f, RngSeed seed, const ExecConfig& cfg,
                      std::uint64_t stream_base) {
    const SubstreamRng rng(seed);
    const std::size_t n = f.size();
    const std::size_t chunk = cfg.chunk_size > 0 ? cfg.chunk_size : 1;
    const unsigned workers = cfg.effective_workers();

    std::atomic<Cell> cell{Cell{}};
    std::atomic<std::uint64_t> updates{0};
    std::atomic<std::size_t> next_chunk{0};
    const std::size_t chunk_count = (n + chunk - 1) / chunk;

    auto worker = [&] {
        std::uint64_t local_updates = 0;
        for (;;) {
            const std::size_t c = next_chunk.fetch_add(1, std::memory_order_relaxed);
            if (c >= chunk_count) break;
            const std::size_t begin = c * chunk;
            const std::size_t end = std::min(begin + chunk, n);
            for (std::size_t i = begin; i < end; ++i) {
                if (f[i] == 0.0) continue;
                UniformSource src = rng.stream(stream_base + i);
                const Cell offer{bid(f[i], src.draw_open_unit()), i};
                // Hardware form of "while s < r_i do s <- r_i": re-read and
                // retry until the cell holds a value at least as good.
                Cell current = cell.load(std::memory_order_relaxed);
                while (beats(offer, current)) {
                    if (cell.compare_exchange_weak(current, offer, std::memory_order_acq_rel,
                                                   std::memory_order_relaxed)) {
                        ++local_updates;
                        break;
                    }
                }
            }
        }
        updates.fetch_add(local_updates, std::memory_order_relaxed);
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    return {cell.load(std::memory_order_acquire), updates.load(std::memory_order_relaxed)};
}

}  // namespace

SelectionResult select_log_bid_parallel(const FitnessVector& f, RngSeed seed,
                                        const ExecConfig& cfg, std::uint64_t stream_base) {
    if (f.total() <= 0.0) throw AllZeroFitnessError();
    const RaceOutcome outcome = race_bids(f, seed, cfg, stream_base);
    if (outcome.cell.index == kNoIndex) throw AllZeroFitnessError();
    return {outcome.cell.index, outcome.cell.bid};
}

ContentionReport contention_report(const FitnessVector& f, std::uint64_t trials, RngSeed seed,
                                   const ExecConfig& cfg) {
    if (trials == 0) throw InvalidTrialCountError();
    if (f.total() <= 0.0) throw AllZeroFitnessError();

    std::uint64_t total_updates = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        total_updates += race_bids(f, seed, cfg, t * f.size()).updates;
    }
    return {static_cast<double>(total_updates) / static_cast<double>(trials), trials};
}

}  // namespace rws
