#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rws/fitness.hpp"
#include "rws/parallel.hpp"
#include "rws/rng.hpp"

namespace rws {

enum class Algorithm {
    PrefixSum,
    Independent,
    LogBid,
    LogBidParallel,
    PramSim,
};

/// Parses "prefix-sum" / "independent" / "log-bid" / "log-bid-parallel" /
/// "pram-sim" (also accepts '_' for '-'). Throws std::invalid_argument.
Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm a);

/// Empirical selection counts next to the analytic probabilities.
struct FrequencyTable {
    std::size_t n = 0;
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> counts;
    std::vector<double> empirical;  // counts / trials
    ProbabilityVector expected;     // F_i
};

struct GoodnessOfFit {
    double tv_distance = 0.0;
    double chi_square = 0.0;
    std::size_t degrees_of_freedom = 0;
};

struct ExperimentOptions {
    unsigned workers = 1;  // trial shards; counts merge deterministically
    ExecConfig exec;       // used by Algorithm::LogBidParallel
};

/// Runs the chosen selector `trials` times with independent randomness per
/// trial: trial t uses bid streams t*n + i (prefix-sum draws its single u
/// from stream t*n) and, for the PRAM simulation, conflict stream
/// kConflictStreamBase + t. The master seed is salted per algorithm so
/// different algorithms sample independently under one seed; LogBid and
/// LogBidParallel share a salt and produce identical tables. The result is
/// a pure function of (algorithm, f, trials, seed) regardless of worker
/// count. Throws InvalidTrialCountError when trials == 0 and
/// AllZeroFitnessError when sum(f) == 0.
FrequencyTable run_experiment(Algorithm algorithm, const FitnessVector& f,
                              std::uint64_t trials, RngSeed seed,
                              const ExperimentOptions& options = {});

/// Total-variation distance (1/2) * sum |empirical_i - expected_i|.
double tv_distance(const FrequencyTable& table);

/// Pearson chi-square of counts against trials * expected. Indices with
/// zero expected probability are excluded from the statistic and must have
/// zero counts (ZeroExpectationViolationError otherwise);
/// dof = included - 1. The returned record also carries the TV distance.
GoodnessOfFit chi_square(const FrequencyTable& table);

/// The two bid-racing algorithms run side by side on one fitness
/// configuration, matching the published table layout.
struct PairedExperiment {
    std::vector<double> fitness;
    FrequencyTable independent;
    FrequencyTable log_bid;
};

/// f_i = i for i = 0..9.
PairedExperiment table1_experiment(std::uint64_t trials, RngSeed seed,
                                   const ExperimentOptions& options = {});

/// f_0 = 1, f_1..f_99 = 2.
PairedExperiment table2_experiment(std::uint64_t trials, RngSeed seed,
                                   const ExperimentOptions& options = {});

/// CSV: header "i,f_i,F_i,independent,logarithmic", one row per index,
/// then "# algorithm,tv_distance,chi_square,dof" summary lines.
void write_paired_csv(std::ostream& out, const PairedExperiment& pe);

}  // namespace rws
