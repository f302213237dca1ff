#include "cgb/lattice.hpp"

#include <algorithm>

namespace cgb {

namespace {

void check_level(const DigitSystem& sys, int n, const Caps& caps) {
    if (n < 0) throw domain_error("level n must be nonnegative");
    std::int64_t count = checked_ipow(sys.b, n, "enumeration");
    if (count > caps.enum_cap)
        throw resource_error("enumeration cap exceeded: b^n = " + std::to_string(count) +
                             " > enum_cap = " + std::to_string(caps.enum_cap));
    checked_ipow(sys.a, n, "lattice denominator");
}

struct Enumerator {
    const DigitSystem& sys;
    int n;
    std::vector<GridRect>* rects;        // indexed by y numerator
    std::vector<std::int64_t>* x_left;   // in DFS (ascending-x) order
    Word word;

    void walk(int depth, std::int64_t x_num, std::int64_t y_num) {
        if (depth == n) {
            if (rects) (*rects)[std::size_t(y_num)] = GridRect{x_num - 1, y_num - 1, y_num + 1};
            if (x_left) x_left->push_back(x_num);
            return;
        }
        std::vector<int> digits = sys.digit_set(word);
        std::vector<int> sigma = sys.sigma_of_rank(word);
        for (int r = 0; r < sys.b; ++r) {
            word.push_back(std::uint8_t(digits[std::size_t(r)]));
            walk(depth + 1, x_num * sys.a + digits[std::size_t(r)],
                 y_num * sys.b + sigma[std::size_t(r)]);
            word.pop_back();
        }
    }
};

}  // namespace

LevelSet build_level(const DigitSystem& sys, int n, const Caps& caps) {
    sys.validate();
    check_level(sys, n, caps);
    LevelSet level;
    level.sys = sys;
    level.n = n;
    level.a_pow = checked_ipow(sys.a, n, "lattice denominator");
    level.b_pow = checked_ipow(sys.b, n, "enumeration");
    level.rects.resize(std::size_t(level.b_pow));
    Enumerator en{sys, n, &level.rects, nullptr, {}};
    en.walk(0, 0, 0);
    return level;
}

std::vector<Interval1D> cantor_intervals(const DigitSystem& sys, int n, const Caps& caps) {
    sys.validate();
    check_level(sys, n, caps);
    std::vector<std::int64_t> lefts;
    lefts.reserve(std::size_t(checked_ipow(sys.b, n, "enumeration")));
    Enumerator en{sys, n, nullptr, &lefts, {}};
    en.walk(0, 0, 0);
    std::vector<Interval1D> out(lefts.size());
    for (std::size_t k = 0; k < lefts.size(); ++k) out[k] = Interval1D{lefts[k]};
    return out;
}

std::vector<LatticePoint> graph_anchors(const DigitSystem& sys, int n, const Caps& caps) {
    if (n < 1) throw domain_error("graph_anchors: level n must be >= 1");
    LevelSet level = build_level(sys, n, caps);
    std::vector<LatticePoint> anchors(level.rects.size());
    for (std::size_t k = 0; k < level.rects.size(); ++k)
        anchors[k] = LatticePoint{level.rects[k].px + 1, level.rects[k].py + 1};
    return anchors;
}

LevelSet rect_approx(const DigitSystem& sys, int n, const Caps& caps) {
    if (n < 1) throw domain_error("rect_approx: level n must be >= 1");
    return build_level(sys, n, caps);
}

Decomposition decompose(const LevelSet& level, std::int64_t rect_index, int m) {
    if (m < 0 || m > level.n) throw domain_error("decompose: split level m out of range [0, n]");
    if (rect_index < 1 || rect_index > level.b_pow)
        throw domain_error("decompose: rectangle index out of range");
    const GridRect& r = level.rects[std::size_t(rect_index - 1)];
    std::int64_t x_core = r.px + 1;  // anchor numerators
    std::int64_t y_core = r.py + 1;
    std::int64_t ad = checked_ipow(level.sys.a, level.n - m, "decompose");
    std::int64_t bd = checked_ipow(level.sys.b, level.n - m, "decompose");
    Decomposition d;
    d.m = m;
    d.n = level.n;
    d.coarse_x = x_core / ad;
    d.coarse_y = y_core / bd;
    d.fine_x = x_core % ad - 1;
    d.fine_y = y_core % bd - 1;
    return d;
}

std::int64_t parent_index(std::int64_t i, int n, int m, int b) {
    if (m > n) throw domain_error("parent_index: require m <= n");
    std::int64_t bd = checked_ipow(b, n - m, "parent_index");
    return (i - 1) / bd + 1;
}

}  // namespace cgb
