#include "cgb/digit_system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cgb {

std::int64_t checked_ipow(std::int64_t base, int exp, const char* what) {
    std::int64_t r = 1;
    for (int k = 0; k < exp; ++k) {
        if (r > (std::int64_t(1) << 62) / base)
            throw resource_error(std::string(what) + ": integer lattice overflow at " +
                                 std::to_string(base) + "^" + std::to_string(exp));
        r *= base;
    }
    return r;
}

DigitSystem DigitSystem::self_similar(int a, int b, std::vector<int> digits,
                                      std::vector<int> sigma) {
    DigitSystem sys;
    sys.a = a;
    sys.b = b;
    sys.mode = SystemMode::SelfSimilar;
    std::sort(digits.begin(), digits.end());
    sys.base_digits = std::move(digits);
    if (sigma.empty()) {
        sigma.resize(b);
        std::iota(sigma.begin(), sigma.end(), 0);
    }
    sys.base_sigma = std::move(sigma);
    sys.validate();
    return sys;
}

DigitSystem DigitSystem::staircase(int a, int b) {
    std::vector<int> digits(b);
    for (int k = 0; k < b; ++k)
        digits[k] = b == 1 ? 0 : int(std::lround(double(k) * (a - 1) / (b - 1)));
    return self_similar(a, b, std::move(digits));
}

DigitSystem DigitSystem::seeded(int a, int b, std::uint64_t seed) {
    DigitSystem sys;
    sys.a = a;
    sys.b = b;
    sys.mode = SystemMode::SeededRandom;
    sys.seed = seed;
    sys.validate();
    return sys;
}

double DigitSystem::s() const { return std::log(double(b)) / std::log(double(a)); }

void DigitSystem::validate() const {
    if (a < 3) throw config_error("DigitSystem: base a must be >= 3");
    if (b < 2 || b >= a) throw config_error("DigitSystem: branch count b must satisfy 2 <= b < a");
    if (mode == SystemMode::SelfSimilar) {
        if (int(base_digits.size()) != b)
            throw config_error("DigitSystem: digit set must have exactly b elements");
        for (std::size_t k = 0; k < base_digits.size(); ++k) {
            if (base_digits[k] < 0 || base_digits[k] >= a)
                throw config_error("DigitSystem: digit out of range [0, a)");
            if (k > 0 && base_digits[k] == base_digits[k - 1])
                throw config_error("DigitSystem: repeated digit in digit set");
        }
        if (int(base_sigma.size()) != b)
            throw config_error("DigitSystem: sigma must have exactly b entries");
        std::vector<bool> seen(b, false);
        for (int v : base_sigma) {
            if (v < 0 || v >= b || seen[v])
                throw config_error("DigitSystem: sigma is not a bijection onto {0,...,b-1}");
            seen[v] = true;
        }
    }
}

namespace {

// Canonical word key: length-prefixed digit bytes hashed with FNV-1a, then
// mixed with the seed and a stream tag (0 = digit set, 1 = sigma).
std::uint64_t word_key(std::uint64_t seed, const Word& w, std::uint64_t tag) {
    std::vector<unsigned char> bytes;
    bytes.reserve(w.size() + 1);
    bytes.push_back(static_cast<unsigned char>(w.size()));
    bytes.insert(bytes.end(), w.begin(), w.end());
    std::uint64_t h = fnv1a(bytes.data(), bytes.size());
    return hash_combine(hash_combine(seed, tag), h);
}

// First `take` values of a seeded Fisher-Yates shuffle of {0,...,size-1}.
std::vector<int> shuffled_prefix(std::uint64_t key, int size, int take) {
    std::vector<int> pool(size);
    std::iota(pool.begin(), pool.end(), 0);
    std::uint64_t state = key;
    for (int k = size - 1; k > 0; --k) {
        int j = int(splitmix64(state) % std::uint64_t(k + 1));
        std::swap(pool[k], pool[j]);
    }
    pool.resize(take);
    return pool;
}

}  // namespace

std::vector<int> DigitSystem::digit_set(const Word& prefix) const {
    if (mode == SystemMode::SelfSimilar) return base_digits;
    std::vector<int> digits = shuffled_prefix(word_key(seed, prefix, 0), a, b);
    std::sort(digits.begin(), digits.end());
    return digits;
}

std::vector<int> DigitSystem::sigma_of_rank(const Word& prefix) const {
    if (mode == SystemMode::SelfSimilar) return base_sigma;
    return shuffled_prefix(word_key(seed, prefix, 1), b, b);
}

std::string DigitSystem::mode_name() const {
    return mode == SystemMode::SelfSimilar ? "self_similar" : "seeded_random";
}

}  // namespace cgb
