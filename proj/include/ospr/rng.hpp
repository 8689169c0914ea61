#pragma once

#include <array>
#include <cstdint>

namespace ospr {

// Identifies one reproducible random stream. Equal (master_seed, stream_id)
// pairs yield bit-identical draws on every platform and thread schedule.
struct RngSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;

    // Derive a sub-stream, e.g. one per (run, subframe) task.
    RngSpec substream(std::uint64_t index) const;
};

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// The key is fixed by the RngSpec; the position is a plain 128-bit counter,
// so any draw can be reproduced without sequencing through its predecessors.
class Philox {
public:
    explicit Philox(const RngSpec& spec);

    // Next 64 random bits.
    std::uint64_t next_u64();

    // Uniform double in [0, 1) with 53-bit resolution.
    double next_double();

    // Uniform double in [0, two_pi).
    double next_phase();

private:
    void refill();

    std::array<std::uint32_t, 4> counter_{};
    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> block_{};
    int avail_ = 0;
};

} // namespace ospr
