#pragma once

#include <stdexcept>
#include <string>

namespace rws {

/// Thrown when a selection is requested but every fitness value is zero.
/// Selection probabilities are undefined for a zero total, so this is an
/// error rather than a uniform fallback.
class AllZeroFitnessError : public std::domain_error {
  public:
    AllZeroFitnessError() : std::domain_error("all fitness values are zero") {}
    explicit AllZeroFitnessError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when a fitness value is negative, NaN or infinite.
class InvalidFitnessError : public std::invalid_argument {
  public:
    explicit InvalidFitnessError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when an experiment is requested with zero trials.
class InvalidTrialCountError : public std::invalid_argument {
  public:
    InvalidTrialCountError() : std::invalid_argument("trial count must be >= 1") {}
};

/// Thrown by the chi-square statistic when an index with zero expected
/// probability has a nonzero observed count.
class ZeroExpectationViolationError : public std::domain_error {
  public:
    explicit ZeroExpectationViolationError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace rws
