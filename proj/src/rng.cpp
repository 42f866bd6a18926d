#include "usdqkd/rng.hpp"

namespace usdqkd {

namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline std::uint32_t mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t* lo) {
    std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    *lo = static_cast<std::uint32_t>(product);
    return static_cast<std::uint32_t>(product >> 32);
}

}  // namespace

Philox4x32::Block Philox4x32::operator()(std::uint64_t ctr_lo, std::uint64_t ctr_hi) const {
    std::uint32_t c0 = static_cast<std::uint32_t>(ctr_lo);
    std::uint32_t c1 = static_cast<std::uint32_t>(ctr_lo >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi);
    std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi >> 32);
    std::uint32_t k0 = key0_;
    std::uint32_t k1 = key1_;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t lo0;
        std::uint32_t lo1;
        std::uint32_t hi0 = mul_hi_lo(kPhiloxM4x32A, c0, &lo0);
        std::uint32_t hi1 = mul_hi_lo(kPhiloxM4x32B, c2, &lo1);
        std::uint32_t n0 = hi1 ^ c1 ^ k0;
        std::uint32_t n2 = hi0 ^ c3 ^ k1;
        c0 = n0;
        c1 = lo1;
        c2 = n2;
        c3 = lo0;
        k0 += kPhiloxW32A;
        k1 += kPhiloxW32B;
    }
    return Block{c0, c1, c2, c3};
}

std::uint64_t TrialRng::next_u64() {
    if (cursor_ >= 2) {
        buffer_ = philox_(trial_, block_++);
        cursor_ = 0;
    }
    std::uint64_t lo = buffer_[2 * cursor_];
    std::uint64_t hi = buffer_[2 * cursor_ + 1];
    ++cursor_;
    return lo | (hi << 32);
}

}  // namespace usdqkd
