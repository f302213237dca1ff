#pragma once

#include <cstdint>
#include <vector>

#include "cgb/common.hpp"

namespace cgb {

// A word is an admissible digit sequence (x_1 ... x_k): each digit belongs to
// the digit set of its prefix. Digits fit in a byte (bases are small).
using Word = std::vector<std::uint8_t>;

enum class SystemMode { SelfSimilar, SeededRandom };

// Parameters of the Cantor set C and the graph built on it. The digit oracle
// assigns to every word a b-element subset of {0,...,a-1}; the sigma oracle a
// bijection from that subset onto {0,...,b-1}. Both oracles are pure
// functions of (mode, seed, word), so two runs with equal parameters see the
// same system.
struct DigitSystem {
    int a = 3;
    int b = 2;
    SystemMode mode = SystemMode::SelfSimilar;
    std::uint64_t seed = 0;

    // Self-similar mode: the same digit set and bijection at every node.
    // base_digits is sorted; base_sigma[r] is the image of the r-th smallest
    // digit. base_sigma = identity gives the devil's-staircase ordering.
    std::vector<int> base_digits;
    std::vector<int> base_sigma;

    static DigitSystem self_similar(int a, int b, std::vector<int> digits,
                                    std::vector<int> sigma = {});
    // Evenly spread digits (e.g. {0,2} for a=3,b=2) with order-preserving sigma.
    static DigitSystem staircase(int a, int b);
    static DigitSystem seeded(int a, int b, std::uint64_t seed);

    double s() const;  // log b / log a
    void validate() const;

    // Digit set of the given prefix word, sorted ascending; size b.
    std::vector<int> digit_set(const Word& prefix) const;
    // sigma values by rank: result[r] is the image of the r-th smallest digit
    // of digit_set(prefix). Always a permutation of {0,...,b-1}.
    std::vector<int> sigma_of_rank(const Word& prefix) const;

    std::string mode_name() const;
};

}  // namespace cgb
