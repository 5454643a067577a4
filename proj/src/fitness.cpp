#include "rws/fitness.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace rws {

FitnessVector::FitnessVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw InvalidFitnessError("fitness vector must have at least one entry");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!std::isfinite(v) || v < 0.0) {
            std::ostringstream msg;
            msg << "fitness[" << i << "] = " << v << " is not a finite non-negative number";
            throw InvalidFitnessError(msg.str());
        }
        total_ += v;
        if (v > 0.0) ++positive_;
    }
    if (!std::isfinite(total_)) {
        throw InvalidFitnessError("total fitness overflows double precision");
    }
}

FitnessVector FitnessVector::from_stream(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(begin, end - begin + 1);

        std::size_t consumed = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &consumed);
        } catch (const std::exception&) {
            consumed = 0;
        }
        if (consumed != token.size()) {
            std::ostringstream msg;
            msg << "line " << line_no << ": '" << token << "' is not a number";
            throw InvalidFitnessError(msg.str());
        }
        values.push_back(v);
    }
    return FitnessVector(std::move(values));
}

FitnessVector FitnessVector::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidFitnessError("cannot open fitness file: " + path);
    }
    return from_stream(in);
}

ProbabilityVector analytic_probabilities(const FitnessVector& f) {
    if (f.total() <= 0.0) throw AllZeroFitnessError();
    ProbabilityVector out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = f[i] / f.total();
    }
    return out;
}

}  // namespace rws
