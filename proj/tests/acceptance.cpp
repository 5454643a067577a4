// Acceptance suite: every release gate in one binary, one line per
// criterion. Statistical gates run at 10^7 trials with tolerances derived
// from binomial standard errors; exact gates demand zero mismatches.
//
//   ./acceptance           run everything
//   ./acceptance --only N  run a single criterion

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rws/fitness.hpp"
#include "rws/parallel.hpp"
#include "rws/pram.hpp"
#include "rws/rng.hpp"
#include "rws/selection.hpp"
#include "rws/stats.hpp"

using rws::Algorithm;
using rws::BidVector;
using rws::FitnessVector;
using rws::FrequencyTable;
using rws::SubstreamRng;
using rws::UniformSource;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kTableTrials = 10'000'000;
// chi-square upper critical value at alpha = 0.001 for 8 degrees of freedom
constexpr double kChiSquareCrit8 = 26.1245;

unsigned hardware_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

rws::ExperimentOptions sharded() { return {.workers = hardware_workers()}; }

FitnessVector ramp10() {
    std::vector<double> f(10);
    std::iota(f.begin(), f.end(), 0.0);
    return FitnessVector(f);
}

struct Check {
    bool ok = true;
    std::ostringstream failures;

    void require(bool condition, const char* label) {
        if (!condition) {
            ok = false;
            failures << " FAILED{" << label << "}";
        }
    }
};

// ---------------------------------------------------------------------------
// 1. Table 1 reproduction, log-bid column: every frequency within +-0.0015
//    of F_i = i/45, in under 60 s.
bool criterion_1(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const FrequencyTable t =
        rws::run_experiment(Algorithm::LogBid, ramp10(), kTableTrials, 1001, sharded());
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    Check c;
    double max_dev = 0.0;
    for (std::size_t i = 0; i < t.n; ++i) {
        max_dev = std::max(max_dev, std::abs(t.empirical[i] - t.expected[i]));
    }
    c.require(max_dev <= 0.0015, "max |empirical - F| <= 0.0015");
    c.require(elapsed.count() < 60.0, "runtime < 60 s");

    std::ostringstream out;
    out << "max |dev| = " << max_dev << ", " << elapsed.count() << " s" << c.failures.str();
    detail = out.str();
    return c.ok;
}

// ---------------------------------------------------------------------------
// 2. Table 1 reproduction, independent column: the documented bias.
bool criterion_2(std::string& detail) {
    const FrequencyTable t =
        rws::run_experiment(Algorithm::Independent, ramp10(), kTableTrials, 1002, sharded());

    Check c;
    c.require(std::abs(t.empirical[9] - 0.3935) <= 0.002, "empirical[9] = 0.3935 +- 0.002");
    c.require(t.empirical[1] < 1e-4, "empirical[1] < 1e-4");
    c.require(std::abs(t.empirical[5] - 0.0388) <= 0.002, "empirical[5] = 0.0388 +- 0.002");

    std::ostringstream out;
    out << "empirical[9] = " << t.empirical[9] << ", [5] = " << t.empirical[5]
        << ", [1] = " << t.empirical[1] << c.failures.str();
    detail = out.str();
    return c.ok;
}

// ---------------------------------------------------------------------------
// 3. Table 2 reproduction: f_0 = 1 among 99 twos. Independent roulette
//    starves index 0 completely; log-bid hits F_0 = 1/199.
bool criterion_3(std::string& detail) {
    const auto pe = rws::table2_experiment(kTableTrials, 1003, sharded());

    Check c;
    c.require(pe.independent.counts[0] == 0, "independent counts[0] == 0");
    c.require(std::abs(pe.log_bid.empirical[0] - 0.005025) <= 0.001,
              "log-bid empirical[0] = 0.005025 +- 0.001");

    std::ostringstream out;
    out << "independent counts[0] = " << pe.independent.counts[0]
        << ", log-bid empirical[0] = " << pe.log_bid.empirical[0] << c.failures.str();
    detail = out.str();
    return c.ok;
}

// ---------------------------------------------------------------------------
// 4. Closed-form bias check on f = [2, 1]: independent picks index 0 with
//    probability 3/4; the exact samplers with probability 2/3.
bool criterion_4(std::string& detail) {
    const FitnessVector f({2.0, 1.0});
    const auto independent =
        rws::run_experiment(Algorithm::Independent, f, kTableTrials, 1004, sharded());
    const auto log_bid =
        rws::run_experiment(Algorithm::LogBid, f, kTableTrials, 1005, sharded());
    const auto prefix =
        rws::run_experiment(Algorithm::PrefixSum, f, kTableTrials, 1006, sharded());

    Check c;
    c.require(std::abs(independent.empirical[0] - 0.750) <= 0.002,
              "independent = 0.750 +- 0.002");
    c.require(std::abs(log_bid.empirical[0] - 0.6667) <= 0.002, "log-bid = 0.6667 +- 0.002");
    c.require(std::abs(prefix.empirical[0] - 0.6667) <= 0.002, "prefix-sum = 0.6667 +- 0.002");

    std::ostringstream out;
    out << "independent = " << independent.empirical[0] << ", log-bid = "
        << log_bid.empirical[0] << ", prefix-sum = " << prefix.empirical[0]
        << c.failures.str();
    detail = out.str();
    return c.ok;
}

// ---------------------------------------------------------------------------
// 5. Prefix-sum exactness: 1000 random dyadic-rational vectors (n <= 8),
//    10^4-point u grid, checked against an exact interval scan.
bool criterion_5(std::string& detail) {
    UniformSource gen = SubstreamRng(1005).stream(0);
    std::uint64_t mismatches = 0;
    std::uint64_t points = 0;

    for (int vec = 0; vec < 1000; ++vec) {
        const std::size_t n = 1 + gen.draw_below(8);
        std::vector<double> values(n);
        bool any = false;
        for (auto& v : values) {
            v = double(gen.draw_below(33)) / 16.0;  // a/16 with a in 0..32: exact sums
            any = any || v > 0.0;
        }
        if (!any) values[gen.draw_below(n)] = 0.5;

        const FitnessVector f(values);
        const rws::PrefixSums sums = rws::prefix_sums(f);
        const double total = sums.total();

        for (int j = 0; j < 10'000; ++j) {
            const double u = (j + 0.5) / 10'000.0;
            const double point = u * total;

            // analytic interval: smallest i with point < p_i (positive
            // width comes free: equal neighbours can never straddle point)
            std::size_t expected = n;
            double prev = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (prev <= point && point < sums.p[i]) {
                    expected = i;
                    break;
                }
                prev = sums.p[i];
            }
            if (expected == n) {  // point rounded onto the total
                for (std::size_t i = n; i-- > 0;) {
                    if (values[i] > 0.0) {
                        expected = i;
                        break;
                    }
                }
            }

            ++points;
            if (rws::select_prefix_sum(sums, u).index != expected) ++mismatches;
        }
    }

    std::ostringstream out;
    out << mismatches << " mismatches over " << points << " grid points";
    detail = out.str();
    return mismatches == 0;
}

// ---------------------------------------------------------------------------
// 6. PRAM round bound: mean rounds <= 2*ceil(log2 k) for every k in
//    {2, ..., 1024}; and rounds depend on k, not n (5% band).
bool criterion_6(std::string& detail) {
    Check c;
    std::ostringstream out;
    out << "mean rounds:";
    for (std::size_t k = 2; k <= 1024; k *= 2) {
        const FitnessVector f(std::vector<double>(k, 1.0));
        const rws::RoundStats stats = rws::round_statistics(f, 10'000, 2000 + k);
        const double bound = 2.0 * std::ceil(std::log2(double(k)));
        out << " k=" << k << ":" << stats.mean_rounds;
        if (stats.mean_rounds > bound) {
            std::ostringstream label;
            label << "mean(k=" << k << ") <= " << bound;
            c.require(false, label.str().c_str());
        }
    }

    std::vector<double> padded(10'000, 0.0);
    std::fill_n(padded.begin(), 16, 1.0);
    const auto dense =
        rws::round_statistics(FitnessVector(std::vector<double>(16, 1.0)), 10'000, 3001);
    const auto sparse = rws::round_statistics(FitnessVector(padded), 10'000, 3002);
    const double rel = std::abs(sparse.mean_rounds - dense.mean_rounds) / dense.mean_rounds;
    c.require(rel < 0.05, "|mean(n=1e4,k=16) - mean(n=16,k=16)| / mean < 5%");
    out << "; n-independence rel dev = " << rel << c.failures.str();
    detail = out.str();
    return c.ok;
}

// ---------------------------------------------------------------------------
// 7. Simulator/oracle equivalence on 10^5 random bid vectors.
bool criterion_7(std::string& detail) {
    UniformSource gen = SubstreamRng(1007).stream(0);
    UniformSource conflict = SubstreamRng(1007).stream(1);
    std::uint64_t mismatches = 0;

    for (int i = 0; i < 100'000; ++i) {
        const std::size_t n = 1 + gen.draw_below(64);
        BidVector bids(n);
        bool any = false;
        for (auto& b : bids) {
            if (gen.draw_below(4) == 0) {
                b = -kInf;
            } else {
                b = -10.0 * gen.draw_open_unit();
                any = true;
            }
        }
        if (!any) bids[gen.draw_below(n)] = -1.0;

        const auto report = rws::simulate_max_race(bids, conflict, {.trace_cap = 0});
        if (report.result.index != rws::argmax_bid(bids).index) ++mismatches;
    }

    std::ostringstream out;
    out << mismatches << " mismatches over 100000 simulations";
    detail = out.str();
    return mismatches == 0;
}

// ---------------------------------------------------------------------------
// 8. Parallel determinism: worker counts 1, 2, 8 all reproduce the
//    sequential kernel on 10^4 seeded trials.
bool criterion_8(std::string& detail) {
    UniformSource gen = SubstreamRng(1008).stream(0);
    std::vector<double> values(256);
    for (auto& v : values) v = gen.draw_below(5) == 0 ? 0.0 : gen.draw_open_unit();
    const FitnessVector f(values);

    std::uint64_t mismatches = 0;
    for (std::uint64_t trial = 0; trial < 10'000; ++trial) {
        const auto sequential = rws::select_log_bid(f, SubstreamRng(trial));
        for (unsigned workers : {1u, 2u, 8u}) {
            const auto parallel = rws::select_log_bid_parallel(
                f, trial, {.worker_count = workers, .chunk_size = 32});
            if (parallel.index != sequential.index) ++mismatches;
        }
    }

    std::ostringstream out;
    out << mismatches << " mismatches over 10000 trials x {1,2,8} workers";
    detail = out.str();
    return mismatches == 0;
}

// ---------------------------------------------------------------------------
// 9. Scale invariance: scaling fitness by 1e-6 or 1e6 with identical
//    substreams flips the selection in < 0.1% of 10^5 trials.
bool criterion_9(std::string& detail) {
    UniformSource gen = SubstreamRng(1009).stream(0);
    std::vector<double> values(100);
    for (auto& v : values) v = 0.01 + gen.draw_open_unit();
    const FitnessVector f(values);

    Check c;
    std::ostringstream out;
    const SubstreamRng rng(0x5CA1E);
    for (const double scale : {1e-6, 1e6}) {
        std::vector<double> scaled = values;
        for (auto& v : scaled) v *= scale;
        const FitnessVector fc(scaled);

        std::uint64_t mismatches = 0;
        const std::uint64_t trials = 100'000;
        for (std::uint64_t t = 0; t < trials; ++t) {
            const std::uint64_t base = t * values.size();
            if (rws::select_log_bid(f, rng, base).index !=
                rws::select_log_bid(fc, rng, base).index) {
                ++mismatches;
            }
        }
        const double rate = double(mismatches) / double(trials);
        out << "c=" << scale << ": rate " << rate << "  ";
        c.require(rate < 0.001, "mismatch rate < 0.1%");
    }
    out << c.failures.str();
    detail = out.str();
    return c.ok;
}

// ---------------------------------------------------------------------------
// 10. Exact samplers agree: TV(log-bid, prefix-sum) < 0.003 at n = 100 and
//     10^7 trials each; log-bid chi-square (f_i = i, 10^7 trials) below the
//     dof=8 alpha=0.001 critical value in >= 95 of 100 seeded repetitions.
bool criterion_10(std::string& detail) {
    UniformSource gen = SubstreamRng(1010).stream(0);
    std::vector<double> values(100);
    for (auto& v : values) v = gen.draw_open_unit();
    const FitnessVector f(values);

    const auto log_bid =
        rws::run_experiment(Algorithm::LogBid, f, kTableTrials, 4001, sharded());
    const auto prefix =
        rws::run_experiment(Algorithm::PrefixSum, f, kTableTrials, 4002, sharded());

    double tv_between = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        tv_between += std::abs(log_bid.empirical[i] - prefix.empirical[i]);
    }
    tv_between *= 0.5;

    // 100 seeded chi-square repetitions, sharded over the hardware.
    const FitnessVector ramp = ramp10();
    std::atomic<int> next_rep{0};
    std::atomic<int> below_critical{0};
    const unsigned workers = hardware_workers();
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int rep = next_rep.fetch_add(1);
                if (rep >= 100) return;
                const auto table = rws::run_experiment(Algorithm::LogBid, ramp, kTableTrials,
                                                       5000 + std::uint64_t(rep));
                if (rws::chi_square(table).chi_square < kChiSquareCrit8) {
                    below_critical.fetch_add(1);
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    Check c;
    c.require(tv_between < 0.003, "TV(log-bid, prefix-sum) < 0.003");
    c.require(below_critical.load() >= 95, ">= 95 of 100 chi-squares below 26.1245");

    std::ostringstream out;
    out << "TV = " << tv_between << ", " << below_critical.load()
        << "/100 chi-squares below critical" << c.failures.str();
    detail = out.str();
    return c.ok;
}

// ---------------------------------------------------------------------------
// 11. Zero exclusion: no algorithm ever selects a zero-fitness index across
//     10^4 random vectors with planted zeros.
bool criterion_11(std::string& detail) {
    UniformSource gen = SubstreamRng(1011).stream(0);
    const SubstreamRng rng(0xE1EC7);
    std::uint64_t violations = 0;
    const int vectors = 10'000;

    for (int v = 0; v < vectors; ++v) {
        const std::size_t n = 2 + gen.draw_below(31);
        std::vector<double> values(n, 0.0);
        const std::size_t positives = 1 + gen.draw_below(n - 1);
        for (std::size_t j = 0; j < positives; ++j) {
            values[gen.draw_below(n)] = 0.1 + gen.draw_open_unit();
        }
        values[gen.draw_below(n)] = 0.0;  // at least one planted zero
        double total = 0.0;
        for (double x : values) total += x;
        if (total == 0.0) values[0] = 1.0;

        const FitnessVector f(values);
        const std::uint64_t base = std::uint64_t(v) * 64;

        const auto check = [&](std::size_t index) {
            if (f[index] <= 0.0) ++violations;
        };
        check(rws::select_log_bid(f, rng, base).index);
        check(rws::select_independent(f, rng, base).index);
        UniformSource u = rng.stream((1ull << 40) + std::uint64_t(v));
        check(rws::select_prefix_sum(f, u.draw_open_unit()).index);
        check(rws::select_log_bid_parallel(f, 900 + std::uint64_t(v),
                                           {.worker_count = 2, .chunk_size = 8})
                  .index);
        const BidVector bids = rws::make_bids(f, rng, base);
        UniformSource conflict = rng.stream(rws::kConflictStreamBase + std::uint64_t(v));
        check(rws::simulate_max_race(bids, conflict, {.trace_cap = 0}).result.index);
        check(rws::reduce_tree_max(bids).result.index);
    }

    std::ostringstream out;
    out << violations << " zero-fitness selections over " << vectors
        << " vectors x 6 algorithms";
    detail = out.str();
    return violations == 0;
}

struct Criterion {
    int id;
    const char* name;
    bool (*run)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "Table 1 log-bid reproduction (10^7 trials, +-0.0015, < 60 s)", criterion_1},
    {2, "Table 1 independent-roulette bias (0.3935 / <1e-4 / 0.0388)", criterion_2},
    {3, "Table 2 reproduction (index 0 starved vs F_0 = 1/199)", criterion_3},
    {4, "Closed-form bias on f = [2,1] (3/4 vs 2/3)", criterion_4},
    {5, "Prefix-sum exactness on dyadic grids (zero mismatches)", criterion_5},
    {6, "PRAM mean rounds <= 2*ceil(log2 k), k-not-n dependence", criterion_6},
    {7, "Simulator equals argmax oracle (10^5 races)", criterion_7},
    {8, "Parallel determinism across {1,2,8} workers", criterion_8},
    {9, "Scale invariance under c in {1e-6, 1e6}", criterion_9},
    {10, "Exact-sampler agreement (TV < 0.003, chi-square calibration)", criterion_10},
    {11, "Zero-fitness indices never selected (all algorithms)", criterion_11},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
        }
    }

    int failures = 0;
    for (const Criterion& criterion : kCriteria) {
        if (only != 0 && criterion.id != only) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %2d: %s - %s\n", ok ? "PASS" : "FAIL", criterion.id, criterion.name,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }

    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    }
    return failures;
}
