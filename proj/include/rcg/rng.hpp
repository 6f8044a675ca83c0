#pragma once

#include <array>
#include <cstdint>

namespace rcg {

/// One block of the Philox-4x32 keyed permutation, 10 rounds.
/// Exposed so known-answer tests can drive it directly.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based random stream: Philox-4x32-10 keyed by a 64-bit seed, with
/// a 64-bit stream index occupying the upper counter words. Streams with the
/// same seed and different indices are independent, so ensembles can hand one
/// stream to each sample and stay deterministic under any parallel schedule.
class Philox {
  public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01();

    /// Unbiased uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_below(std::uint64_t n);

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::array<std::uint32_t, 2> key_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int buffer_pos_ = 4;  // empty
};

/// Factory for per-sample streams derived from one master seed.
struct StreamFamily {
    std::uint64_t seed = 0;
    std::uint64_t base = 0;

    Philox stream(std::uint64_t index) const { return Philox(seed, base + index); }
};

}  // namespace rcg
