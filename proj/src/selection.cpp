#include "rws/selection.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

namespace rws {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive_total(const FitnessVector& f) {
    if (f.total() <= 0.0) throw AllZeroFitnessError();
}

}  // namespace

PrefixSums prefix_sums(const FitnessVector& f) {
    PrefixSums out;
    out.p.resize(f.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        acc += f[i];
        out.p[i] = acc;
    }
    return out;
}

double bid(double fitness, double unit_uniform) {
    if (!std::isfinite(fitness) || fitness < 0.0) {
        std::ostringstream msg;
        msg << "fitness " << fitness << " is not a finite non-negative number";
        throw InvalidFitnessError(msg.str());
    }
    assert(unit_uniform > 0.0 && unit_uniform < 1.0);
    if (fitness == 0.0) return kNegInf;
    double r = std::log(unit_uniform) / fitness;
    // Keep bids of positive-fitness indices strictly inside (-inf, 0):
    // subnormal fitness can overflow the quotient and huge fitness can
    // underflow it to -0.
    if (std::isinf(r)) r = -std::numeric_limits<double>::max();
    if (r == 0.0) r = -std::numeric_limits<double>::denorm_min();
    return r;
}

BidVector make_bids(const FitnessVector& f, std::span<UniformSource> sources) {
    assert(sources.size() == f.size());
    BidVector bids(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        bids[i] = bid(f[i], sources[i].draw_open_unit());
    }
    return bids;
}

BidVector make_bids(const FitnessVector& f, const SubstreamRng& rng,
                    std::uint64_t stream_base) {
    BidVector bids(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        UniformSource src = rng.stream(stream_base + i);
        bids[i] = bid(f[i], src.draw_open_unit());
    }
    return bids;
}

SelectionResult argmax_bid(const BidVector& bids) {
    double best = kNegInf;
    std::size_t best_index = bids.size();
    for (std::size_t i = 0; i < bids.size(); ++i) {
        if (bids[i] > best) {  // strict: ties keep the lowest index
            best = bids[i];
            best_index = i;
        }
    }
    if (best_index == bids.size()) throw AllZeroFitnessError("all bids are -infinity");
    return {best_index, best};
}

SelectionResult select_log_bid(const FitnessVector& f, const SubstreamRng& rng,
                               std::uint64_t stream_base) {
    require_positive_total(f);
    double best = kNegInf;
    std::size_t best_index = f.size();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0.0) continue;  // bid would be -inf regardless of the draw
        UniformSource src = rng.stream(stream_base + i);
        const double r = bid(f[i], src.draw_open_unit());
        if (r > best) {
            best = r;
            best_index = i;
        }
    }
    return {best_index, best};
}

SelectionResult select_prefix_sum(const PrefixSums& sums, double unit_uniform) {
    assert(unit_uniform > 0.0 && unit_uniform < 1.0);
    const double total = sums.total();
    if (total <= 0.0) throw AllZeroFitnessError();
    const double point = unit_uniform * total;
    auto it = std::upper_bound(sums.p.begin(), sums.p.end(), point);
    if (it == sums.p.end()) {
        // point rounded up to the total; belongs to the last positive-width
        // interval.
        do { --it; } while (it != sums.p.begin() && *(it - 1) == *it);
    }
    return {static_cast<std::size_t>(it - sums.p.begin()), std::nullopt};
}

SelectionResult select_prefix_sum(const FitnessVector& f, double unit_uniform) {
    return select_prefix_sum(prefix_sums(f), unit_uniform);
}

SelectionResult select_independent(const FitnessVector& f, const SubstreamRng& rng,
                                   std::uint64_t stream_base) {
    require_positive_total(f);
    double best = kNegInf;
    std::size_t best_index = f.size();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0.0) continue;  // its product is 0, beaten by any positive bid
        UniformSource src = rng.stream(stream_base + i);
        const double r = f[i] * src.draw_open_unit();
        if (r > best) {
            best = r;
            best_index = i;
        }
    }
    return {best_index, best};
}

}  // namespace rws
