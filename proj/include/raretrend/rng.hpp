#pragma once

// Counter-based random number generation for reproducible parallel
// simulation. The generator output is a pure function of (seed, stream,
// position), so replicate i always sees the same draws no matter how the
// replicates are scheduled across threads.

#include <array>
#include <cstdint>

namespace raretrend {

// One Philox4x32-10 block: encrypts the 128-bit counter under the 64-bit
// key (Salmon et al. construction, 10 rounds).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    // Uniform on the open interval (0, 1); never returns an endpoint.
    double next_unit();

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_ = 0;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;  // empty buffer
};

// ln(k!) by table lookup below 1024 and a Stirling series above.
// Thread-safe, unlike lgamma's signgam side channel.
double log_factorial(long long k);

// Exact Poisson draw with the given mean. Sequential-search inversion below
// the cutoff; Hormann's PTRS transformed rejection above it (exact
// acceptance test, no normal approximation anywhere).
long long poisson_sample(CounterRng& rng, double mean);

inline constexpr double kPoissonInversionCutoff = 30.0;

}  // namespace raretrend
