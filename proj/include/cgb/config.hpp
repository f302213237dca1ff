#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cgb/digit_system.hpp"
#include "cgb/ensemble.hpp"

namespace cgb {

// One experiment configuration: system block, sweep block, output block,
// budget block. Flags override fields; the effective config is echoed into
// every artifact so results stay auditable.
struct RunConfig {
    // system
    int a = 3;
    int b = 2;
    std::string mode = "self_similar";  // or "seeded_random"
    std::uint64_t seed = 1;
    std::vector<int> J;      // empty -> staircase digits
    std::vector<int> sigma;  // empty -> order-preserving

    // sweep
    int n_min = 1;
    int n_max = 4;
    std::string theta_grid = "grid:64";  // "grid:K" or "list:v1,v2,..."
    std::string omega = "zero";          // "zero" or "random:R"
    int omega_count = 5;                 // random translations per cell

    // output
    std::string out_dir = "out";
    bool timing = false;  // write measured elapsed_ms instead of 0

    // budget
    Caps caps;
    int jobs = 0;  // 0 = library default

    DigitSystem system() const;
    std::vector<double> thetas() const;
    OmegaPolicy omega_policy() const;
    bool omega_zero() const;
    double omega_radius() const;

    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    static RunConfig load(const std::string& path);
};

// Shortest round-trip decimal representation.
std::string fmt_double(double v);

// {a, b, mode, seed?, J?, sigma?}
nlohmann::json digit_system_to_json(const DigitSystem& sys);
DigitSystem digit_system_from_json(const nlohmann::json& j);

}  // namespace cgb
