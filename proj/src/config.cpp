#include "cgb/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace cgb {

std::string fmt_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

nlohmann::json digit_system_to_json(const DigitSystem& sys) {
    nlohmann::json j = {{"a", sys.a}, {"b", sys.b}, {"mode", sys.mode_name()}};
    if (sys.mode == SystemMode::SeededRandom) j["seed"] = sys.seed;
    if (sys.mode == SystemMode::SelfSimilar) {
        j["J"] = sys.base_digits;
        j["sigma"] = sys.base_sigma;
    }
    return j;
}

DigitSystem digit_system_from_json(const nlohmann::json& j) {
    int a = j.at("a").get<int>();
    int b = j.at("b").get<int>();
    std::string mode = j.value("mode", std::string("self_similar"));
    if (mode == "seeded_random") return DigitSystem::seeded(a, b, j.value("seed", 0ull));
    if (mode != "self_similar")
        throw config_error("digit system mode must be self_similar or seeded_random");
    if (!j.contains("J")) return DigitSystem::staircase(a, b);
    return DigitSystem::self_similar(a, b, j.at("J").get<std::vector<int>>(),
                                     j.value("sigma", std::vector<int>{}));
}

DigitSystem RunConfig::system() const {
    if (mode == "seeded_random") return DigitSystem::seeded(a, b, seed);
    if (mode != "self_similar")
        throw config_error("system.mode must be self_similar or seeded_random, got '" + mode + "'");
    if (J.empty()) {
        DigitSystem sys = DigitSystem::staircase(a, b);
        if (!sigma.empty()) sys = DigitSystem::self_similar(a, b, sys.base_digits, sigma);
        return sys;
    }
    return DigitSystem::self_similar(a, b, J, sigma);
}

std::vector<double> RunConfig::thetas() const {
    if (theta_grid.rfind("grid:", 0) == 0) {
        int points = 0;
        std::string arg = theta_grid.substr(5);
        auto res = std::from_chars(arg.data(), arg.data() + arg.size(), points);
        if (res.ec != std::errc{} || points < 1)
            throw config_error("sweep.theta_grid: bad grid size in '" + theta_grid + "'");
        std::vector<double> out(static_cast<std::size_t>(points));
        if (points == 1) return {0.0};
        for (int k = 0; k < points; ++k) out[std::size_t(k)] = M_PI * double(k) / double(points - 1);
        return out;
    }
    if (theta_grid.rfind("list:", 0) == 0) {
        std::vector<double> out;
        std::string rest = theta_grid.substr(5);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            std::string tok = rest.substr(pos, comma - pos);
            if (!tok.empty()) {
                try {
                    out.push_back(std::stod(tok));
                } catch (const std::exception&) {
                    throw config_error("sweep.theta_grid: bad angle '" + tok + "'");
                }
            }
            pos = comma + 1;
        }
        return out;
    }
    throw config_error("sweep.theta_grid must be grid:K or list:..., got '" + theta_grid + "'");
}

bool RunConfig::omega_zero() const { return omega == "zero"; }

double RunConfig::omega_radius() const {
    if (omega_zero()) return 0.0;
    if (omega.rfind("random:", 0) == 0) {
        try {
            return std::stod(omega.substr(7));
        } catch (const std::exception&) {
            throw config_error("sweep.omega: bad radius in '" + omega + "'");
        }
    }
    throw config_error("sweep.omega must be zero or random:R, got '" + omega + "'");
}

OmegaPolicy RunConfig::omega_policy() const {
    OmegaPolicy p;
    if (omega_zero()) {
        p.kind = OmegaPolicy::Kind::Zero;
    } else {
        p.kind = OmegaPolicy::Kind::Random;
        p.radius = omega_radius();
        p.seed = seed;
    }
    return p;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    auto get = [](const nlohmann::json& obj, const char* key, auto& out) {
        if (obj.contains(key)) out = obj.at(key).get<std::decay_t<decltype(out)>>();
    };
    if (j.contains("system")) {
        const auto& s = j.at("system");
        get(s, "a", c.a);
        get(s, "b", c.b);
        get(s, "mode", c.mode);
        get(s, "seed", c.seed);
        get(s, "J", c.J);
        get(s, "sigma", c.sigma);
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        get(s, "n_min", c.n_min);
        get(s, "n_max", c.n_max);
        get(s, "theta_grid", c.theta_grid);
        get(s, "omega", c.omega);
        get(s, "omega_count", c.omega_count);
    }
    if (j.contains("output")) {
        const auto& s = j.at("output");
        get(s, "dir", c.out_dir);
        get(s, "timing", c.timing);
    }
    if (j.contains("budget")) {
        const auto& s = j.at("budget");
        get(s, "pair_cap", c.caps.pair_cap);
        get(s, "raster_cap", c.caps.raster_cap);
        get(s, "enum_cap", c.caps.enum_cap);
        get(s, "wall_clock_sec", c.caps.wall_clock_sec);
        get(s, "jobs", c.jobs);
    }
    // validate early with field-level messages
    if (c.n_min < 0 || c.n_max < c.n_min)
        throw config_error("sweep: need 0 <= n_min <= n_max");
    c.system();
    c.thetas();
    c.omega_policy();
    return c;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["system"] = {{"a", a}, {"b", b}, {"mode", mode}, {"seed", seed}};
    if (!J.empty()) j["system"]["J"] = J;
    if (!sigma.empty()) j["system"]["sigma"] = sigma;
    j["sweep"] = {{"n_min", n_min},
                  {"n_max", n_max},
                  {"theta_grid", theta_grid},
                  {"omega", omega},
                  {"omega_count", omega_count}};
    j["output"] = {{"dir", out_dir}, {"timing", timing}};
    j["budget"] = {{"pair_cap", caps.pair_cap},
                   {"raster_cap", caps.raster_cap},
                   {"enum_cap", caps.enum_cap},
                   {"wall_clock_sec", caps.wall_clock_sec},
                   {"jobs", jobs}};
    return j;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error("config parse error in '" + path + "': " + e.what());
    }
    return from_json(j);
}

}  // namespace cgb
