#pragma once

#include <cstdint>
#include <limits>

namespace rws {

/// Master seed for a family of random substreams.
using RngSeed = std::uint64_t;

namespace detail {

/// SplitMix64 finalizer (Vigna's public-domain constants). Bijective on
/// 64-bit words with full avalanche; the workhorse mix for stream keying
/// and output generation.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

}  // namespace detail

/// A single random substream: a counter-based generator whose output is a
/// pure function of (key, draw index). Single-owner; never share one
/// instance between concurrent workers.
class UniformSource {
  public:
    UniformSource() = default;

    /// Next raw 64-bit word.
    std::uint64_t draw_u64() noexcept {
        // Counter-mode: hash the (key, counter) pair. The key is re-injected
        // between the two mixing rounds so that streams with different keys
        // can never become shifted copies of one another.
        std::uint64_t z = detail::mix64(counter_++ * detail::kGolden + key_);
        return detail::mix64(z ^ key_);
    }

    /// Uniform double strictly inside (0, 1). Exact zeros (probability
    /// 2^-53 per draw) are rejected and redrawn; 1.0 cannot occur because
    /// the 53-bit mantissa scaling tops out at 1 - 2^-53.
    double draw_open_unit() noexcept {
        double u;
        do {
            u = static_cast<double>(draw_u64() >> 11) * 0x1.0p-53;
        } while (u == 0.0);
        return u;
    }

    /// Uniform integer in [0, n), n >= 1. Lemire's multiply-shift with
    /// rejection, so the result is exactly uniform.
    std::uint64_t draw_below(std::uint64_t n) noexcept {
        unsigned __int128 m = static_cast<unsigned __int128>(draw_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(draw_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    friend class SubstreamRng;
    explicit UniformSource(std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

/// Factory of independent substreams keyed by (master seed, stream id).
/// The k-th draw of stream(i) is a pure function of (seed, i, k), which is
/// what makes parallel and sequential runs of the same logical experiment
/// produce identical draws. Safe to call concurrently.
class SubstreamRng {
  public:
    explicit SubstreamRng(RngSeed master_seed) noexcept : master_(master_seed) {}

    UniformSource stream(std::uint64_t stream_id) const noexcept {
        return UniformSource(detail::mix64(master_ ^ detail::mix64(stream_id + detail::kGolden)));
    }

    RngSeed master_seed() const noexcept { return master_; }

  private:
    RngSeed master_;
};

}  // namespace rws
