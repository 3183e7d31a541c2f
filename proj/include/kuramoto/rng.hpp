#pragma once

#include <cstdint>

namespace kuramoto {

/// Deterministic counter-based generator (splitmix64 output function) with
/// independent substreams. std::mt19937 plus the standard distributions would
/// not do here: the distributions are implementation-defined, and sampled
/// systems must be bit-identical across platforms and standard libraries.
///
/// Stream assignment is part of the reproducibility contract: a consumer
/// drawing from stream 1 sees the same values no matter how many draws were
/// taken from stream 0.
class SplitMix64 {
  public:
    SplitMix64(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed + kGamma * (stream + 1))) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller on consecutive uniform pairs. The first
    /// uniform is reflected into (0, 1] so the logarithm never sees zero. The
    /// second variate of each pair is cached and returned by the next call.
    double next_normal();

    double next_normal(double mean, double stddev) { return mean + stddev * next_normal(); }

  private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    // Finalizer from splitmix64; also used to decorrelate the per-stream
    // initial states, otherwise stream s+1 would reproduce stream s shifted
    // by one draw.
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace kuramoto
