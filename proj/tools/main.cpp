// rws: weighted random selection experiments from the command line.
//
// Exit codes: 0 success, 2 input error (flags, files, malformed numbers),
// 3 degenerate input (all-zero fitness), 4 output error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "rws/fitness.hpp"
#include "rws/parallel.hpp"
#include "rws/pram.hpp"
#include "rws/selection.hpp"
#include "rws/stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitOutput = 4;

std::uint64_t parse_seed(const std::string& text) {
    std::size_t consumed = 0;
    std::uint64_t value = 0;
    const bool hex = text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0;
    value = std::stoull(text, &consumed, hex ? 16 : 10);
    if (consumed != text.size()) {
        throw std::invalid_argument("seed must be decimal or 0x-prefixed hex: " + text);
    }
    return value;
}

// --seed beats RWS_SEED beats fresh entropy.
std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
    if (flag) return parse_seed(*flag);
    if (const char* env = std::getenv("RWS_SEED")) return parse_seed(env);
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Streams the writer's output to `path` (or stdout when empty); any write
// failure maps to the output-error exit code.
template <typename Writer>
int with_output(const std::string& path, Writer&& write) {
    if (path.empty()) {
        write(std::cout);
        std::cout.flush();
        return std::cout ? kExitOk : kExitOutput;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return kExitOutput;
    }
    write(out);
    out.flush();
    if (!out) {
        std::cerr << "error: failed while writing: " << path << "\n";
        return kExitOutput;
    }
    return kExitOk;
}

struct CommonOpts {
    std::optional<std::string> seed_text;
    unsigned workers = 0;  // 0 = hardware concurrency
    std::string out_path;

    unsigned effective_workers() const {
        return rws::ExecConfig{.worker_count = workers}.effective_workers();
    }
};

void add_seed_flag(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed_text,
                    "RNG seed, decimal or 0x-prefixed hex (falls back to RWS_SEED)");
}

int cmd_select(const std::string& fitness_path, const std::string& algorithm,
               const CommonOpts& opts, bool show_bid) {
    const rws::FitnessVector f = rws::FitnessVector::from_file(fitness_path);
    const std::uint64_t seed = resolve_seed(opts.seed_text);
    const rws::SubstreamRng rng(seed);

    rws::SelectionResult result;
    const rws::Algorithm alg = rws::algorithm_from_name(algorithm);
    switch (alg) {
        case rws::Algorithm::PrefixSum: {
            rws::UniformSource src = rng.stream(0);
            result = rws::select_prefix_sum(f, src.draw_open_unit());
            break;
        }
        case rws::Algorithm::Independent:
            result = rws::select_independent(f, rng);
            break;
        case rws::Algorithm::LogBid:
        case rws::Algorithm::LogBidParallel:
            if (alg == rws::Algorithm::LogBidParallel || opts.workers > 1) {
                result = rws::select_log_bid_parallel(
                    f, seed, {.worker_count = opts.effective_workers()});
            } else {
                result = rws::select_log_bid(f, rng);
            }
            break;
        case rws::Algorithm::PramSim: {
            const rws::BidVector bids = rws::make_bids(f, rng);
            rws::UniformSource conflict = rng.stream(rws::kConflictStreamBase);
            result = rws::simulate_max_race(bids, conflict).result;
            break;
        }
    }

    if (show_bid && result.winning_bid) {
        std::printf("%zu %.17g\n", result.index, *result.winning_bid);
    } else {
        std::printf("%zu\n", result.index);
    }
    return kExitOk;
}

int cmd_table(int which, std::uint64_t trials, const CommonOpts& opts) {
    const std::uint64_t seed = resolve_seed(opts.seed_text);
    const rws::ExperimentOptions exp{.workers = opts.effective_workers()};
    const rws::PairedExperiment pe = which == 1
                                         ? rws::table1_experiment(trials, seed, exp)
                                         : rws::table2_experiment(trials, seed, exp);
    return with_output(opts.out_path, [&](std::ostream& out) { rws::write_paired_csv(out, pe); });
}

int cmd_rounds(std::uint64_t trials, std::size_t k_max, std::size_t pad_n,
               const CommonOpts& opts) {
    const std::uint64_t seed = resolve_seed(opts.seed_text);
    return with_output(opts.out_path, [&](std::ostream& out) {
        out << "k,n,trials,mean_rounds,max_rounds,bound\n";
        for (std::size_t k = 1; k <= k_max; k *= 2) {
            const std::size_t n = std::max(k, pad_n);
            std::vector<double> values(n, 0.0);
            std::fill_n(values.begin(), k, 1.0);
            const rws::FitnessVector f(values);
            const rws::RoundStats stats = rws::round_statistics(f, trials, seed);
            const unsigned bound =
                k == 1 ? 1 : 2 * static_cast<unsigned>(std::ceil(std::log2(double(k))));
            char line[160];
            std::snprintf(line, sizeof(line), "%zu,%zu,%llu,%.6f,%llu,%u\n", k, n,
                          static_cast<unsigned long long>(trials), stats.mean_rounds,
                          static_cast<unsigned long long>(stats.max_rounds), bound);
            out << line;
        }
    });
}

int cmd_compare(const std::string& fitness_path, std::uint64_t trials, const CommonOpts& opts) {
    const rws::FitnessVector f = rws::FitnessVector::from_file(fitness_path);
    const std::uint64_t seed = resolve_seed(opts.seed_text);
    const rws::ExperimentOptions exp{.workers = opts.effective_workers()};

    const rws::FrequencyTable prefix =
        rws::run_experiment(rws::Algorithm::PrefixSum, f, trials, seed, exp);
    const rws::FrequencyTable independent =
        rws::run_experiment(rws::Algorithm::Independent, f, trials, seed, exp);
    const rws::FrequencyTable log_bid =
        rws::run_experiment(rws::Algorithm::LogBid, f, trials, seed, exp);

    return with_output(opts.out_path, [&](std::ostream& out) {
        out << "i,f_i,F_i,prefix_sum,independent,logarithmic\n";
        for (std::size_t i = 0; i < f.size(); ++i) {
            char line[200];
            std::snprintf(line, sizeof(line), "%zu,%g,%.6f,%.6f,%.6f,%.6f\n", i, f[i],
                          log_bid.expected[i], prefix.empirical[i], independent.empirical[i],
                          log_bid.empirical[i]);
            out << line;
        }
        out << "# algorithm,tv_distance,chi_square,dof\n";
        const auto summary = [&out](const char* name, const rws::FrequencyTable& t) {
            const rws::GoodnessOfFit fit = rws::chi_square(t);
            char line[200];
            std::snprintf(line, sizeof(line), "# %s,%.6f,%.6f,%zu\n", name, fit.tv_distance,
                          fit.chi_square, fit.degrees_of_freedom);
            out << line;
        };
        summary("prefix_sum", prefix);
        summary("independent", independent);
        summary("logarithmic", log_bid);
    });
}

int cmd_bench(const std::string& fitness_path, std::uint64_t trials, const CommonOpts& opts) {
    const rws::FitnessVector f = fitness_path.empty()
                                     ? rws::FitnessVector({0, 1, 2, 3, 4, 5, 6, 7, 8, 9})
                                     : rws::FitnessVector::from_file(fitness_path);
    const std::uint64_t seed = resolve_seed(opts.seed_text);
    const rws::ExperimentOptions exp{.workers = opts.effective_workers()};

    return with_output(opts.out_path, [&](std::ostream& out) {
        out << "algorithm,trials,seconds,selections_per_second,mean_shared_updates\n";
        const auto timed_row = [&](rws::Algorithm alg) {
            const auto start = std::chrono::steady_clock::now();
            rws::run_experiment(alg, f, trials, seed, exp);
            const std::chrono::duration<double> elapsed =
                std::chrono::steady_clock::now() - start;
            char line[200];
            std::snprintf(line, sizeof(line), "%s,%llu,%.6f,%.1f,\n",
                          rws::algorithm_name(alg).c_str(),
                          static_cast<unsigned long long>(trials), elapsed.count(),
                          static_cast<double>(trials) / elapsed.count());
            out << line;
        };
        timed_row(rws::Algorithm::PrefixSum);
        timed_row(rws::Algorithm::Independent);
        timed_row(rws::Algorithm::LogBid);

        const rws::ExecConfig cfg{.worker_count = opts.effective_workers()};
        const auto start = std::chrono::steady_clock::now();
        const rws::ContentionReport report = rws::contention_report(f, trials, seed, cfg);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        char line[200];
        std::snprintf(line, sizeof(line), "log-bid-parallel,%llu,%.6f,%.1f,%.4f\n",
                      static_cast<unsigned long long>(trials), elapsed.count(),
                      static_cast<double>(trials) / elapsed.count(),
                      report.mean_shared_updates);
        out << line;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted random selection: exact log-bid sampling, the biased "
                 "independent baseline, a prefix-sum reference, a CRCW write-race "
                 "simulator and reproduction of their selection-probability tables"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string fitness_path;
    std::string algorithm = "log-bid";
    std::uint64_t trials = 10'000'000;
    bool show_bid = false;

    auto* select = app.add_subcommand("select", "Draw one index from a fitness file");
    select->add_option("--fitness", fitness_path, "Fitness file, one value per line")
        ->required();
    select->add_option("--algorithm", algorithm,
                       "prefix-sum | independent | log-bid | log-bid-parallel | pram-sim")
        ->check(CLI::IsMember({"prefix-sum", "independent", "log-bid", "log-bid-parallel",
                               "pram-sim"}));
    select->add_flag("--show-bid", show_bid, "Also print the winning bid");
    select->add_option("--workers", opts.workers, "Worker threads (0 = hardware)");
    add_seed_flag(select, opts);

    auto* table1 = app.add_subcommand("table1", "Selection probabilities for f_i = i, i = 0..9");
    auto* table2 =
        app.add_subcommand("table2", "Selection probabilities for f_0 = 1, f_1..f_99 = 2");
    for (auto* cmd : {table1, table2}) {
        cmd->add_option("--trials", trials, "Monte Carlo trials (default 10^7)");
        cmd->add_option("--workers", opts.workers, "Worker threads (0 = hardware)");
        cmd->add_option("--out", opts.out_path, "Output CSV path (default stdout)");
        add_seed_flag(cmd, opts);
    }

    std::uint64_t round_trials = 10'000;
    std::size_t k_max = 1024;
    std::size_t pad_n = 0;
    auto* rounds = app.add_subcommand(
        "rounds", "Write-race round counts for k = 1, 2, 4, ..., with the 2*ceil(log2 k) bound");
    rounds->add_option("--trials", round_trials, "Simulations per k (default 10^4)");
    rounds->add_option("--k-max", k_max, "Largest k (rounded down to a power of two)");
    rounds->add_option("--n", pad_n, "Pad each vector with zeros up to n processors");
    rounds->add_option("--out", opts.out_path, "Output CSV path (default stdout)");
    add_seed_flag(rounds, opts);

    auto* compare =
        app.add_subcommand("compare", "Accuracy of every selector on a user fitness file");
    compare->add_option("--fitness", fitness_path, "Fitness file, one value per line")
        ->required();
    compare->add_option("--trials", trials, "Monte Carlo trials (default 10^7)");
    compare->add_option("--workers", opts.workers, "Worker threads (0 = hardware)");
    compare->add_option("--out", opts.out_path, "Output CSV path (default stdout)");
    add_seed_flag(compare, opts);

    std::uint64_t bench_trials = 100'000;
    auto* bench = app.add_subcommand("bench", "Selections per second for each algorithm");
    bench->add_option("--fitness", fitness_path, "Fitness file (default f_i = i, i = 0..9)");
    bench->add_option("--trials", bench_trials, "Selections per algorithm (default 10^5)");
    bench->add_option("--workers", opts.workers, "Worker threads (0 = hardware)");
    bench->add_option("--out", opts.out_path, "Output CSV path (default stdout)");
    add_seed_flag(bench, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (select->parsed()) return cmd_select(fitness_path, algorithm, opts, show_bid);
        if (table1->parsed()) return cmd_table(1, trials, opts);
        if (table2->parsed()) return cmd_table(2, trials, opts);
        if (rounds->parsed()) return cmd_rounds(round_trials, k_max, pad_n, opts);
        if (compare->parsed()) return cmd_compare(fitness_path, trials, opts);
        if (bench->parsed()) return cmd_bench(fitness_path, bench_trials, opts);
    } catch (const rws::AllZeroFitnessError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const rws::InvalidFitnessError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
