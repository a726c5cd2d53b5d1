#include "relab/random.hpp"

#include <cmath>
#include <numbers>

namespace relab {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += kSeedMix;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(master ^ splitmix64(index + 1));
}

double uniform01(Rng& rng) noexcept {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) noexcept {
    // Lemire's multiply-shift with rejection of the biased low zone.
    __uint128_t m = static_cast<__uint128_t>(rng()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<__uint128_t>(rng()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double exponential1(Rng& rng) noexcept { return -std::log(uniform01(rng)); }

double standard_normal(Rng& rng) noexcept {
    const double r = std::sqrt(-2.0 * std::log(uniform01(rng)));
    return r * std::cos(2.0 * std::numbers::pi * uniform01(rng));
}

std::int64_t poisson(Rng& rng, double mean) noexcept {
    if (!(mean > 0.0)) return 0;
    if (mean < 10.0) {
        double p = std::exp(-mean);
        double cdf = p;
        const double u = uniform01(rng);
        std::int64_t k = 0;
        while (u > cdf && k < 1000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }
    // PTRS transformed rejection (Hormann 1993).
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double U = uniform01(rng) - 0.5;
        const double V = uniform01(rng);
        const double us = 0.5 - std::fabs(U);
        const double kd = std::floor((2.0 * a / us + b) * U + mean + 0.43);
        if (us >= 0.07 && V <= vr) return static_cast<std::int64_t>(kd);
        if (kd < 0.0 || (us < 0.013 && V > us)) continue;
        if (std::log(V) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -mean + kd * loglam - std::lgamma(kd + 1.0))
            return static_cast<std::int64_t>(kd);
    }
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h) noexcept {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace relab
