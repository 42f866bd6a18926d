#pragma once

#include <array>
#include <cstdint>

namespace usdqkd {

/// Philox4x32-10 counter-based generator. A (key, counter) pair maps to four
/// 32-bit words through ten rounds of multiply-hi/lo mixing; distinct
/// counters give independent outputs, so streams can be assigned to trials
/// without coordination.
class Philox4x32 {
  public:
    using Block = std::array<std::uint32_t, 4>;

    explicit Philox4x32(std::uint64_t key)
        : key0_(static_cast<std::uint32_t>(key)),
          key1_(static_cast<std::uint32_t>(key >> 32)) {}

    Block operator()(std::uint64_t ctr_lo, std::uint64_t ctr_hi) const;

  private:
    std::uint32_t key0_;
    std::uint32_t key1_;
};

/// Stream of uniform variates for one simulation trial, keyed on
/// (seed, trial index). Consecutive draws walk the Philox counter's high
/// word; the low word holds the trial index, so all trial streams are
/// disjoint regardless of how trials are partitioned over workers.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t trial)
        : philox_(seed), trial_(trial) {}

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Bernoulli(p) draw.
    bool next_bool(double p) { return next_double() < p; }

    /// Uniform in {0, ..., 3}.
    int next_quart() { return static_cast<int>(next_u64() & 3); }

    /// Uniform in {0, 1}.
    int next_bit() { return static_cast<int>(next_u64() & 1); }

  private:
    Philox4x32 philox_;
    std::uint64_t trial_;
    std::uint64_t block_ = 0;
    Philox4x32::Block buffer_{};
    int cursor_ = 2;  // buffered u64s consumed; 2 = empty
};

}  // namespace usdqkd
