#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "rws/errors.hpp"

namespace rws {

/// Non-negative finite weights f_0..f_{n-1}. Validated on construction;
/// whether the total is positive is checked at selection time, because an
/// all-zero vector is a legal container but not a legal distribution.
class FitnessVector {
  public:
    explicit FitnessVector(std::vector<double> values);

    /// Parses one non-negative decimal per line. Blank lines and anything
    /// after '#' are ignored.
    static FitnessVector from_stream(std::istream& in);
    static FitnessVector from_file(const std::string& path);

    const std::vector<double>& values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Sum of all weights.
    double total() const noexcept { return total_; }

    /// Number of strictly positive weights (the "k" that governs the
    /// expected round count of the write-race protocol).
    std::size_t positive_count() const noexcept { return positive_; }

  private:
    std::vector<double> values_;
    double total_ = 0.0;
    std::size_t positive_ = 0;
};

/// Normalized selection probabilities F_i = f_i / sum(f).
using ProbabilityVector = std::vector<double>;

/// Throws AllZeroFitnessError when total fitness is zero.
ProbabilityVector analytic_probabilities(const FitnessVector& f);

}  // namespace rws
