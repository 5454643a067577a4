#include "rws/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "rws/pram.hpp"

namespace rws {

Algorithm algorithm_from_name(const std::string& name) {
    std::string key = name;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "prefix-sum") return Algorithm::PrefixSum;
    if (key == "independent") return Algorithm::Independent;
    if (key == "log-bid") return Algorithm::LogBid;
    if (key == "log-bid-parallel") return Algorithm::LogBidParallel;
    if (key == "pram-sim") return Algorithm::PramSim;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::PrefixSum: return "prefix-sum";
        case Algorithm::Independent: return "independent";
        case Algorithm::LogBid: return "log-bid";
        case Algorithm::LogBidParallel: return "log-bid-parallel";
        case Algorithm::PramSim: return "pram-sim";
    }
    throw std::invalid_argument("unknown algorithm enum value");
}

namespace {

// Distinct algorithms draw from unrelated stream families even when the
// caller reuses one seed. The two log-bid realizations share a salt on
// purpose: the parallel executor must reproduce the sequential kernel
// trial for trial.
std::uint64_t algorithm_salt(Algorithm a) {
    switch (a) {
        case Algorithm::PrefixSum: return 0x9B97u;
        case Algorithm::Independent: return 0x41D1u;
        case Algorithm::LogBid:
        case Algorithm::LogBidParallel: return 0x10B1u;
        case Algorithm::PramSim: return 0x5137u;
    }
    return 0;
}

// One shard: trials [begin, end) accumulated into local counts. Outcomes
// are keyed by trial index alone, so any sharding merges to the same table.
void run_shard(Algorithm algorithm, const FitnessVector& f, const PrefixSums& sums,
               const SubstreamRng& rng, const ExecConfig& exec, std::uint64_t begin,
               std::uint64_t end, std::vector<std::uint64_t>& counts) {
    const std::size_t n = f.size();
    switch (algorithm) {
        case Algorithm::PrefixSum:
            for (std::uint64_t t = begin; t < end; ++t) {
                UniformSource src = rng.stream(t * n);
                ++counts[select_prefix_sum(sums, src.draw_open_unit()).index];
            }
            break;
        case Algorithm::Independent:
            for (std::uint64_t t = begin; t < end; ++t) {
                ++counts[select_independent(f, rng, t * n).index];
            }
            break;
        case Algorithm::LogBid:
            for (std::uint64_t t = begin; t < end; ++t) {
                ++counts[select_log_bid(f, rng, t * n).index];
            }
            break;
        case Algorithm::LogBidParallel:
            for (std::uint64_t t = begin; t < end; ++t) {
                ++counts[select_log_bid_parallel(f, rng.master_seed(), exec, t * n).index];
            }
            break;
        case Algorithm::PramSim:
            for (std::uint64_t t = begin; t < end; ++t) {
                const BidVector bids = make_bids(f, rng, t * n);
                UniformSource conflict = rng.stream(kConflictStreamBase + t);
                ++counts[simulate_max_race(bids, conflict, {.trace_cap = 0}).result.index];
            }
            break;
    }
}

}  // namespace

FrequencyTable run_experiment(Algorithm algorithm, const FitnessVector& f,
                              std::uint64_t trials, RngSeed seed,
                              const ExperimentOptions& options) {
    if (trials == 0) throw InvalidTrialCountError();

    FrequencyTable table;
    table.n = f.size();
    table.trials = trials;
    table.expected = analytic_probabilities(f);  // throws on all-zero fitness
    table.counts.assign(f.size(), 0);

    const SubstreamRng rng(detail::mix64(seed ^ algorithm_salt(algorithm)));
    const PrefixSums sums = prefix_sums(f);
    const unsigned workers = std::max(1u, options.workers);

    if (workers == 1 || trials < 2 * workers) {
        run_shard(algorithm, f, sums, rng, options.exec, 0, trials, table.counts);
    } else {
        std::vector<std::vector<std::uint64_t>> partial(
            workers, std::vector<std::uint64_t>(f.size(), 0));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint64_t per = trials / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = w * per;
            const std::uint64_t end = (w + 1 == workers) ? trials : begin + per;
            pool.emplace_back([&, w, begin, end] {
                run_shard(algorithm, f, sums, rng, options.exec, begin, end, partial[w]);
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& local : partial) {
            for (std::size_t i = 0; i < f.size(); ++i) table.counts[i] += local[i];
        }
    }

    table.empirical.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        table.empirical[i] =
            static_cast<double>(table.counts[i]) / static_cast<double>(trials);
    }
    return table;
}

double tv_distance(const FrequencyTable& table) {
    double sum = 0.0;
    for (std::size_t i = 0; i < table.n; ++i) {
        sum += std::abs(table.empirical[i] - table.expected[i]);
    }
    return 0.5 * sum;
}

GoodnessOfFit chi_square(const FrequencyTable& table) {
    GoodnessOfFit fit;
    fit.tv_distance = tv_distance(table);

    std::size_t included = 0;
    for (std::size_t i = 0; i < table.n; ++i) {
        if (table.expected[i] <= 0.0) {
            if (table.counts[i] != 0) {
                std::ostringstream msg;
                msg << "index " << i << " has zero expected probability but "
                    << table.counts[i] << " observed selections";
                throw ZeroExpectationViolationError(msg.str());
            }
            continue;
        }
        ++included;
        const double expected_count =
            static_cast<double>(table.trials) * table.expected[i];
        const double delta = static_cast<double>(table.counts[i]) - expected_count;
        fit.chi_square += delta * delta / expected_count;
    }
    fit.degrees_of_freedom = included > 0 ? included - 1 : 0;
    return fit;
}

namespace {

PairedExperiment paired_experiment(std::vector<double> fitness, std::uint64_t trials,
                                   RngSeed seed, const ExperimentOptions& options) {
    const FitnessVector f(fitness);
    PairedExperiment pe;
    pe.fitness = std::move(fitness);
    pe.independent = run_experiment(Algorithm::Independent, f, trials, seed, options);
    pe.log_bid = run_experiment(Algorithm::LogBid, f, trials, seed, options);
    return pe;
}

void write_fixed(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    out << buf;
}

}  // namespace

PairedExperiment table1_experiment(std::uint64_t trials, RngSeed seed,
                                   const ExperimentOptions& options) {
    std::vector<double> f(10);
    std::iota(f.begin(), f.end(), 0.0);
    return paired_experiment(std::move(f), trials, seed, options);
}

PairedExperiment table2_experiment(std::uint64_t trials, RngSeed seed,
                                   const ExperimentOptions& options) {
    std::vector<double> f(100, 2.0);
    f[0] = 1.0;
    return paired_experiment(std::move(f), trials, seed, options);
}

void write_paired_csv(std::ostream& out, const PairedExperiment& pe) {
    out << "i,f_i,F_i,independent,logarithmic\n";
    for (std::size_t i = 0; i < pe.fitness.size(); ++i) {
        out << i << ',' << pe.fitness[i] << ',';
        write_fixed(out, pe.log_bid.expected[i]);
        out << ',';
        write_fixed(out, pe.independent.empirical[i]);
        out << ',';
        write_fixed(out, pe.log_bid.empirical[i]);
        out << '\n';
    }
    out << "# algorithm,tv_distance,chi_square,dof\n";
    const GoodnessOfFit ind = chi_square(pe.independent);
    const GoodnessOfFit log = chi_square(pe.log_bid);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "# independent,%.6f,%.6f,%zu\n", ind.tv_distance,
                  ind.chi_square, ind.degrees_of_freedom);
    out << buf;
    std::snprintf(buf, sizeof(buf), "# logarithmic,%.6f,%.6f,%zu\n", log.tv_distance,
                  log.chi_square, log.degrees_of_freedom);
    out << buf;
}

}  // namespace rws
