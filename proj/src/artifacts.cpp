#include "cgb/artifacts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace cgb {

namespace fs = std::filesystem;

void write_file_atomic(const std::string& path, const std::string& content) {
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw config_error("cannot write '" + tmp.string() + "'");
        out << content;
    }
    fs::rename(tmp, target);
}

namespace {

std::string config_echo(const RunConfig& cfg) {
    return "# config " + cfg.to_json().dump() + "\n";
}

}  // namespace

std::string render_intervals_csv(const RunConfig& cfg, const std::vector<LevelSet>& levels) {
    std::ostringstream out;
    out << config_echo(cfg);
    out << "n,lo_num,hi_num,a_pow,lo,hi\n";
    for (const LevelSet& level : levels) {
        std::vector<Interval1D> intervals = cantor_intervals(level.sys, level.n, {});
        for (const Interval1D& iv : intervals)
            out << level.n << ',' << iv.lo << ',' << iv.lo + 1 << ',' << level.a_pow << ','
                << fmt_double(double(iv.lo) / double(level.a_pow)) << ','
                << fmt_double(double(iv.lo + 1) / double(level.a_pow)) << '\n';
    }
    return out.str();
}

std::string render_anchors_csv(const RunConfig& cfg, const std::vector<LevelSet>& levels) {
    std::ostringstream out;
    out << config_echo(cfg);
    out << "n,i,x_num,y_num,a_pow,b_pow,x,y\n";
    for (const LevelSet& level : levels)
        for (std::int64_t i = 1; i <= level.b_pow; ++i) {
            LatticePoint p = level.anchor(i);
            out << level.n << ',' << i << ',' << p.x_num << ',' << p.y_num << ',' << level.a_pow
                << ',' << level.b_pow << ',' << fmt_double(double(p.x_num) / double(level.a_pow))
                << ',' << fmt_double(double(p.y_num) / double(level.b_pow)) << '\n';
        }
    return out.str();
}

std::string render_rects_csv(const RunConfig& cfg, const std::vector<LevelSet>& levels) {
    std::ostringstream out;
    out << config_echo(cfg);
    out << "n,i,px,py,a_pow,b_pow\n";
    for (const LevelSet& level : levels)
        for (const GridRect& r : level.rects)
            out << level.n << ',' << r.i << ',' << r.px << ',' << r.py << ',' << level.a_pow << ','
                << level.b_pow << '\n';
    return out.str();
}

std::string render_counts_csv(const RunConfig& cfg, const std::vector<PairCountRecord>& rows) {
    std::ostringstream out;
    out << config_echo(cfg);
    out << "a,b,mode,seed,n,delta,theta,omega_x,omega_y,L,max_per_i,method,elapsed_ms\n";
    for (const PairCountRecord& r : rows) {
        out << cfg.a << ',' << cfg.b << ',' << cfg.mode << ',' << cfg.seed << ',' << r.n << ','
            << fmt_double(r.delta) << ',' << fmt_double(r.theta) << ',' << fmt_double(r.omega.x)
            << ',' << fmt_double(r.omega.y) << ',' << r.L << ',' << r.max_per_i << ',' << r.method
            << ',' << (cfg.timing ? fmt_double(r.elapsed_ms) : std::string("0")) << '\n';
    }
    return out.str();
}

std::string render_areas_csv(const RunConfig& cfg, int n, double delta, double cell,
                             const std::vector<ProfileEntry>& profile) {
    std::ostringstream out;
    out << config_echo(cfg);
    out << "n,delta,phi,pair_sum_upper,union_inner,union_outer,resolution,phi_k\n";
    for (const ProfileEntry& e : profile)
        out << n << ',' << fmt_double(delta) << ',' << fmt_double(e.phi) << ','
            << fmt_double(e.pair_sum_upper) << ',' << fmt_double(e.overlap.inner()) << ','
            << fmt_double(e.overlap.outer()) << ',' << fmt_double(cell) << ',' << e.k << '\n';
    return out.str();
}

std::string render_polygons_csv(std::span<const ConvexPoly> polys) {
    std::ostringstream out;
    out << "poly,vertex,x,y\n";
    for (std::size_t p = 0; p < polys.size(); ++p)
        for (int v = 0; v < polys[p].n; ++v)
            out << p << ',' << v << ',' << fmt_double(polys[p].pts[std::size_t(v)].x) << ','
                << fmt_double(polys[p].pts[std::size_t(v)].y) << '\n';
    return out.str();
}

nlohmann::json bound_to_json(const BoundReport& rep) {
    return {{"check", rep.name},            {"instances", rep.instances},
            {"measured_max", rep.measured_max}, {"bound", rep.bound},
            {"constant", rep.constant},         {"exact", rep.exact},
            {"pass", rep.pass},                 {"note", rep.note}};
}

nlohmann::json report_to_json(const RunConfig& cfg, const SweepReports& reports) {
    nlohmann::json j;
    j["config"] = cfg.to_json();
    j["instances"] = reports.instances;
    j["oracle_instances"] = reports.oracle_instances;
    j["oracle_mismatches"] = reports.oracle_mismatches;
    j["theta_above_one_skipped"] = reports.theta_above_one;
    j["ladder_invariants_ok"] = reports.ladder_ok;
    j["all_exact_pass"] = reports.all_exact_pass();
    nlohmann::json checks = nlohmann::json::array();
    for (const BoundReport* b : reports.all()) checks.push_back(bound_to_json(*b));
    j["checks"] = checks;
    j["failures"] = reports.failures;
    return j;
}

nlohmann::json chain_to_json(const RunConfig& cfg, int n, double delta, const ChainReport& chain) {
    nlohmann::json j;
    j["config"] = cfg.to_json();
    j["n"] = n;
    j["delta"] = delta;
    j["lhs"] = {{"inner", chain.lhs_inner}, {"center", chain.lhs_center},
                {"outer", chain.lhs_outer}};
    j["mid_bracket"] = {{"inner", chain.mid.inner()}, {"center", chain.mid.center()},
                        {"outer", chain.mid.outer()}};
    j["rhs_bracket"] = {{"inner", chain.rhs.inner}, {"outer", chain.rhs.outer},
                        {"diagonal_outer", chain.rhs.diagonal_outer}};
    j["cauchy_schwarz_holds"] = chain.holds;
    j["gamma_contained_in_R"] = chain.contained;
    j["implied_leb_lower"] = chain.implied_leb_lower;
    j["implied_dim_stat"] = chain.dim_stat;
    j["dim_measured"] = chain.dim_measured;
    return j;
}

namespace {

bool render_report_table(const fs::path& file, std::ostringstream& out) {
    std::ifstream in(file);
    if (!in) return false;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception&) {
        return false;
    }
    out << "## Verification checks (" << file.filename().string() << ")\n\n";
    out << "| check | instances | measured max | bound | constant | pass |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const auto& chk : j.value("checks", nlohmann::json::array())) {
        out << "| " << chk.value("check", std::string("?")) << " | "
            << chk.value("instances", 0) << " | " << chk.value("measured_max", 0.0) << " | "
            << chk.value("bound", 0.0) << " | " << chk.value("constant", 0.0) << " | "
            << (chk.value("pass", false) ? "yes" : "NO") << " |\n";
    }
    out << "\nall exact-constant checks pass: "
        << (j.value("all_exact_pass", false) ? "yes" : "NO") << "\n\n";
    return true;
}

bool render_json_block(const fs::path& file, const char* title, std::ostringstream& out) {
    std::ifstream in(file);
    if (!in) return false;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception&) {
        return false;
    }
    out << "## " << title << " (" << file.filename().string() << ")\n\n```json\n"
        << j.dump(2) << "\n```\n\n";
    return true;
}

}  // namespace

std::string render_summary_markdown(const std::string& dir) {
    std::ostringstream out;
    out << "# Run summary\n\n";
    bool any = false;
    fs::path root(dir);
    if (fs::exists(root / "report.json")) {
        any |= render_report_table(root / "report.json", out);
    } else {
        out << "- report.json: absent\n";
    }
    if (fs::exists(root / "slopes.json")) {
        any |= render_json_block(root / "slopes.json", "Scaling exponents", out);
    } else {
        out << "- slopes.json: absent\n";
    }
    if (fs::exists(root / "chain.json")) {
        any |= render_json_block(root / "chain.json", "Cauchy-Schwarz chain", out);
    } else {
        out << "- chain.json: absent\n";
    }
    for (const char* name : {"counts.csv", "areas.csv", "rects.csv", "anchors.csv",
                             "intervals.csv"}) {
        if (fs::exists(root / name)) {
            std::ifstream in(root / name);
            std::string line;
            std::int64_t rows = -2;  // skip config echo + header
            while (std::getline(in, line)) ++rows;
            out << "- " << name << ": " << std::max<std::int64_t>(rows, 0) << " rows\n";
            any = true;
        } else {
            out << "- " << name << ": absent\n";
        }
    }
    if (!any) return "no artifacts in '" + dir + "'\n";
    return out.str();
}

}  // namespace cgb
