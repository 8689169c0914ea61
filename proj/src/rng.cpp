#include "ospr/rng.hpp"

#include <numbers>

namespace ospr {

namespace {

// splitmix64, used only to spread seed/stream bits into the Philox key.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = std::uint64_t(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(kPhiloxM1) * ctr[2];
    ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
           std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
}

} // namespace

RngSpec RngSpec::substream(std::uint64_t index) const {
    return RngSpec{master_seed, mix64(stream_id ^ mix64(index + 1))};
}

Philox::Philox(const RngSpec& spec) {
    const std::uint64_t k = mix64(spec.master_seed) ^ mix64(mix64(spec.stream_id));
    key_ = {std::uint32_t(k), std::uint32_t(k >> 32)};
    counter_ = {0, 0, 0, 0};
}

void Philox::refill() {
    std::array<std::uint32_t, 4> ctr = counter_;
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round)
        philox_round(ctr, key);
    block_ = ctr;
    avail_ = 2;
    // 128-bit counter increment
    for (int i = 0; i < 4; ++i) {
        if (++counter_[i] != 0)
            break;
    }
}

std::uint64_t Philox::next_u64() {
    if (avail_ == 0)
        refill();
    --avail_;
    const int idx = 2 * avail_; // avail_==1 -> words 2,3; avail_==0 -> words 0,1
    return (std::uint64_t(block_[idx + 1]) << 32) | block_[idx];
}

double Philox::next_double() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double Philox::next_phase() {
    return next_double() * (2.0 * std::numbers::pi);
}

} // namespace ospr
