#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace relab {

// The engine is fully specified by the standard; the distribution helpers
// below are written out by hand because std:: distributions are not
// reproducible across standard library implementations.
using Rng = std::mt19937_64;

inline constexpr std::uint64_t kSeedMix = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

// Uniform on the open interval (0, 1).
double uniform01(Rng& rng) noexcept;
// Uniform integer in [0, n), unbiased; n must be positive.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n) noexcept;
double exponential1(Rng& rng) noexcept;
double standard_normal(Rng& rng) noexcept;
std::int64_t poisson(Rng& rng, double mean) noexcept;

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) noexcept;

}  // namespace relab
