#include <doctest.h>
#include <map>
#include <algorithm>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cgb/artifacts.hpp"

using namespace cgb;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

#ifdef CGB_CLI_PATH
int run_cli(const std::string& args) {
    std::string cmd = std::string(CGB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}
#endif

fs::path fresh_dir(const char* name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("RunConfig: json round trip and validation") {
    RunConfig cfg;
    cfg.a = 4;
    cfg.b = 3;
    cfg.mode = "seeded_random";
    cfg.seed = 99;
    cfg.n_min = 2;
    cfg.n_max = 5;
    cfg.theta_grid = "list:0,0.25,0.5";
    cfg.omega = "random:0.5";
    RunConfig back = RunConfig::from_json(cfg.to_json());
    CHECK(back.a == 4);
    CHECK(back.b == 3);
    CHECK(back.seed == 99);
    CHECK(back.thetas() == std::vector<double>{0.0, 0.25, 0.5});
    CHECK(back.omega_radius() == 0.5);
    CHECK_FALSE(back.omega_zero());

    nlohmann::json bad = cfg.to_json();
    bad["system"]["b"] = 7;  // b >= a
    CHECK_THROWS_AS(RunConfig::from_json(bad), config_error);
    bad = cfg.to_json();
    bad["sweep"]["theta_grid"] = "grid:zero";
    CHECK_THROWS_AS(RunConfig::from_json(bad), config_error);
    bad = cfg.to_json();
    bad["sweep"]["n_min"] = 9;
    CHECK_THROWS_AS(RunConfig::from_json(bad), config_error);
}

TEST_CASE("theta grids: uniform grid endpoints and empty lists") {
    RunConfig cfg;
    cfg.theta_grid = "grid:256";
    auto t = cfg.thetas();
    REQUIRE(t.size() == 256);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == doctest::Approx(M_PI));
    cfg.theta_grid = "grid:1";
    CHECK(cfg.thetas() == std::vector<double>{0.0});
    cfg.theta_grid = "list:";
    CHECK(cfg.thetas().empty());
}

TEST_CASE("fmt_double: shortest round-trip decimals") {
    CHECK(fmt_double(0.1) == "0.1");
    CHECK(fmt_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(std::stod(fmt_double(M_PI)) == M_PI);
    CHECK(fmt_double(0.0) == "0");
}

TEST_CASE("artifact rendering is deterministic and echoes the config") {
    RunConfig cfg;
    LevelSet lv = build_level(cfg.system(), 2);
    std::string a = render_rects_csv(cfg, {lv});
    std::string b = render_rects_csv(cfg, {lv});
    CHECK(a == b);
    CHECK(a.rfind("# config ", 0) == 0);
    CHECK(a.find("n,i,px,py,a_pow,b_pow") != std::string::npos);

    // timing column stays 0 unless explicitly enabled
    RotatedFamily A = rotate_level(lv, 0, {0, 0});
    PairCountRecord rec = count_pairs_fast(A, A);
    rec.elapsed_ms = 12.5;
    std::string counts = render_counts_csv(cfg, {rec});
    CHECK(counts.find(",fast,0\n") != std::string::npos);
    cfg.timing = true;
    counts = render_counts_csv(cfg, {rec});
    CHECK(counts.find(",fast,12.5\n") != std::string::npos);
}

TEST_CASE("digit system json: round trip for both modes") {
    DigitSystem s1 = DigitSystem::self_similar(4, 3, {0, 2, 3}, {2, 0, 1});
    DigitSystem s2 = digit_system_from_json(digit_system_to_json(s1));
    CHECK(s2.base_digits == s1.base_digits);
    CHECK(s2.base_sigma == s1.base_sigma);
    CHECK(digit_system_to_json(s1)["mode"] == "self_similar");

    DigitSystem r1 = DigitSystem::seeded(5, 2, 321);
    DigitSystem r2 = digit_system_from_json(digit_system_to_json(r1));
    CHECK(r2.seed == 321);
    CHECK(r2.mode == SystemMode::SeededRandom);
    Word w{2};
    CHECK(r1.digit_set(w) == r2.digit_set(w));
}

TEST_CASE("polygon debug dump and empty counts") {
    ConvexPoly tri;
    tri.n = 3;
    tri.pts[0] = {0, 0};
    tri.pts[1] = {1, 0};
    tri.pts[2] = {0, 0.5};
    std::string csv = render_polygons_csv(std::span<const ConvexPoly>(&tri, 1));
    CHECK(csv == "poly,vertex,x,y\n0,0,0,0\n0,1,1,0\n0,2,0,0.5\n");

    RunConfig cfg;
    std::string counts = render_counts_csv(cfg, {});
    CHECK(counts.find("a,b,mode,seed,n,delta") != std::string::npos);
    CHECK(std::count(counts.begin(), counts.end(), '\n') == 2);  // echo + header only
}

TEST_CASE("summary rendering: empty and partial directories") {
    fs::path dir = fresh_dir("cgb_empty_dir");
    CHECK(render_summary_markdown(dir.string()).rfind("no artifacts", 0) == 0);

    RunConfig cfg;
    cfg.out_dir = dir.string();
    LevelSet lv = build_level(cfg.system(), 1);
    write_file_atomic((dir / "rects.csv").string(), render_rects_csv(cfg, {lv}));
    std::string md = render_summary_markdown(dir.string());
    CHECK(md.find("rects.csv: 2 rows") != std::string::npos);
    CHECK(md.find("report.json: absent") != std::string::npos);
}

#ifdef CGB_CLI_PATH

TEST_CASE("cli: gen/count/verify/scan/report round trip") {
    fs::path dir = fresh_dir("cgb_cli_run");
    std::string base = "--a 3 --b 2 --out " + dir.string();

    CHECK(run_cli("gen " + base + " --n-range 0:2") == 0);
    CHECK(fs::exists(dir / "intervals.csv"));
    CHECK(fs::exists(dir / "anchors.csv"));
    CHECK(fs::exists(dir / "rects.csv"));

    CHECK(run_cli("count " + base + " --n-range 1:3 --theta-grid grid:8 --oracle") == 0);
    CHECK(fs::exists(dir / "counts.csv"));

    CHECK(run_cli("verify " + base + " --n-range 1:3 --theta-grid grid:16 --omega random:1") == 0);
    CHECK(fs::exists(dir / "report.json"));

    CHECK(run_cli("scan " + base + " --n-range 1:3 --theta-grid list:0.5 --chain-max 2") == 0);
    CHECK(fs::exists(dir / "slopes.json"));
    CHECK(fs::exists(dir / "areas.csv"));
    CHECK(fs::exists(dir / "chain.json"));

    CHECK(run_cli("report " + base) == 0);
    CHECK(fs::exists(dir / "summary.md"));
}

TEST_CASE("cli: exit codes for config errors and injected counting bugs") {
    fs::path dir = fresh_dir("cgb_cli_codes");
    std::string base = " --out " + dir.string();
    // invalid b >= a is a config error
    CHECK(run_cli("gen --a 3 --b 5 --n 1" + base) == 2);
    // fault injection must flip the verify exit code
    CHECK(run_cli("verify --a 3 --b 2 --n-range 1:2 --theta-grid grid:8 --corrupt-counter" +
                  base) == 1);
    // slope fitting refuses fewer than 3 levels
    CHECK(run_cli("scan --a 3 --b 2 --n-range 2:3 --theta-grid list:0.5" + base) == 2);
    // an exhausted wall-clock budget is a resource error
    CHECK(run_cli("verify --a 3 --b 2 --n-range 1:5 --theta-grid grid:64 --wall-clock 1e-9" +
                  base) == 3);
    // angles above 1 rad skip ladder checks and the report says so
    CHECK(run_cli("verify --a 3 --b 2 --n-range 2:2 --theta-grid list:2.0 --out " +
                  (dir / "big").string()) == 0);
    {
        std::ifstream in(dir / "big" / "report.json");
        nlohmann::json rep;
        in >> rep;
        CHECK(rep.at("theta_above_one_skipped").get<std::int64_t>() == 1);
        CHECK(rep.at("all_exact_pass").get<bool>());
    }
    // config file + flag override
    fs::path cfg_path = dir / "cfg.json";
    {
        std::ofstream out(cfg_path);
        out << R"({"system":{"a":4,"b":2},"sweep":{"n_min":1,"n_max":1,"theta_grid":"grid:4"}})";
    }
    CHECK(run_cli("gen --config " + cfg_path.string() + " --out " + (dir / "sub").string()) == 0);
    CHECK(fs::exists(dir / "sub" / "rects.csv"));
}

TEST_CASE("cli: byte-identical artifacts for equal configs") {
    fs::path dir = fresh_dir("cgb_det");
    std::string args = "--a 3 --b 2 --mode seeded_random --seed 7 --n-range 1:3 "
                       "--theta-grid grid:12 --omega random:1 --jobs 2 --out " + dir.string();
    const char* names[] = {"rects.csv", "anchors.csv", "intervals.csv", "counts.csv",
                           "report.json"};
    std::map<std::string, std::string> first;
    for (int pass = 0; pass < 2; ++pass) {
        CHECK(run_cli("gen " + args) == 0);
        CHECK(run_cli("count " + args) == 0);
        CHECK(run_cli("verify " + args) == 0);
        if (pass == 0) {
            for (const char* name : names) {
                first[name] = slurp(dir / name);
                CHECK_FALSE(first[name].empty());
                fs::remove(dir / name);
            }
        } else {
            for (const char* name : names) CHECK(first[name] == slurp(dir / name));
        }
    }
}

#endif  // CGB_CLI_PATH
