#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cgb {

// Error taxonomy: config errors are user-fixable, resource errors mean a
// configured cap was hit, domain errors mean an operation was called outside
// its stated domain (e.g. a regime mismatch).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Desk-scale budgets. Every potentially unbounded computation checks one of
// these and fails loudly instead of truncating silently.
struct Caps {
    std::int64_t enum_cap = std::int64_t(1) << 20;    // max rectangles per level (b^n)
    std::int64_t pair_cap = std::int64_t(1) << 30;    // max pair tests per counting call
    std::int64_t raster_cap = std::int64_t(1) << 26;  // max touched cells per raster call
    double wall_clock_sec = 0;                        // sweep budget, 0 = unlimited
};

// base^exp with overflow detection.
std::int64_t checked_ipow(std::int64_t base, int exp, const char* what);

// --- seeded, language-independent pseudo randomness ---------------------
// splitmix64: the standard constants.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// FNV-1a over a byte string.
inline std::uint64_t fnv1a(const unsigned char* data, std::size_t len) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::size_t k = 0; k < len; ++k) {
        h ^= data[k];
        h *= 0x100000001B3ull;
    }
    return h;
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2));
    return splitmix64(s);
}

// Uniform double in [-1,1] from a splitmix stream.
inline double unit_symmetric(std::uint64_t& state) {
    return (double(splitmix64(state) >> 11) / double(std::uint64_t(1) << 53)) * 2.0 - 1.0;
}

}  // namespace cgb
