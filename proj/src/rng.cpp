#include "raretrend/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace raretrend {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> round_once(
    const std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 2>& k) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, x[0], hi0, lo0);
    mulhilo(kMul1, x[2], hi1, lo1);
    return {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        counter = round_once(counter, key);
        if (r != 9) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
    }
    return counter;
}

void CounterRng::refill() {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32)};
    buf_ = philox4x32(ctr, key_);
    ++block_;
    pos_ = 0;
}

std::uint32_t CounterRng::next_u32() {
    if (pos_ >= 4) refill();
    return buf_[pos_++];
}

std::uint64_t CounterRng::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double CounterRng::next_unit() {
    // 52 random bits plus a half-ulp offset keeps the value off 0 and 1.
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1p-52;
}

double log_factorial(long long k) {
    if (k < 0) throw std::domain_error("log_factorial: negative argument");
    static const std::vector<double> table = [] {
        std::vector<double> t(1024);
        t[0] = 0.0;
        for (std::size_t i = 1; i < t.size(); ++i)
            t[i] = t[i - 1] + std::log(static_cast<double>(i));
        return t;
    }();
    if (static_cast<std::size_t>(k) < table.size())
        return table[static_cast<std::size_t>(k)];
    // Stirling series; for k >= 1024 the truncation error is ~1e-22.
    const double x = static_cast<double>(k) + 1.0;
    static const double half_log_2pi = 0.5 * std::log(8.0 * std::atan(1.0));
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    return half_log_2pi + (x - 0.5) * std::log(x) - x +
           inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

namespace {

long long poisson_inversion(CounterRng& rng, double mean) {
    const double u = rng.next_unit();
    double p = std::exp(-mean);
    double cdf = p;
    long long k = 0;
    const long long cap =
        static_cast<long long>(mean + 40.0 * std::sqrt(mean) + 20.0);
    while (u > cdf && k < cap) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

long long poisson_ptrs(CounterRng& rng, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.next_unit() - 0.5;
        const double v = rng.next_unit();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<long long>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
            kf * loglam - mean - log_factorial(static_cast<long long>(kf)))
            return static_cast<long long>(kf);
    }
}

}  // namespace

long long poisson_sample(CounterRng& rng, double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw std::domain_error("poisson_sample: mean must be finite and >= 0");
    if (mean == 0.0) return 0;
    if (mean < kPoissonInversionCutoff) return poisson_inversion(rng, mean);
    return poisson_ptrs(rng, mean);
}

}  // namespace raretrend
