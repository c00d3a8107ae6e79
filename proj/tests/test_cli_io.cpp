#include <catch2/catch_amalgamated.hpp>

#include "zetapfrac/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace zetapfrac;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct temp_dir {
    fs::path path;
    temp_dir()
    {
        path = fs::temp_directory_path() / "zpf_cli_test";
        fs::create_directories(path);
    }
};

cli::run_config base_config(const temp_dir& dir)
{
    cli::run_config cfg;
    cfg.n = 12;
    cfg.cache_path = (dir.path / "cache.csv").string();
    return cfg;
}

} // namespace

TEST_CASE("zeros then coeffs pipeline fills the cache")
{
    temp_dir dir;
    cli::run_config cfg = base_config(dir);
    std::ostringstream log;

    cfg.out_path = (dir.path / "zeros.json").string();
    CHECK(cli::run("zeros", cfg, log) == cli::ok);
    auto zeros_report = nlohmann::json::parse(slurp(cfg.out_path));
    CHECK(zeros_report["count"] == 12);
    CHECK(fs::exists(dir.path / "cache.csv"));
    CHECK(fs::exists(sidecar_path((dir.path / "cache.csv").string())));

    cfg.out_path = (dir.path / "coeffs.json").string();
    CHECK(cli::run("coeffs", cfg, log) == cli::ok);
    auto coeffs_report = nlohmann::json::parse(slurp(cfg.out_path));
    CHECK(coeffs_report["filled"] == 12);

    zero_cache cache = load_cache(cfg.cache_path, cfg.context());
    REQUIRE(cache.count() == 12);
    for (std::size_t k = 1; k <= 12; ++k)
        CHECK(cache.at(k).has_c);
}

TEST_CASE("reports are byte-deterministic across runs")
{
    temp_dir dir;
    cli::run_config cfg = base_config(dir);
    std::ostringstream log;

    cfg.out_path = (dir.path / "z1.json").string();
    cli::run("zeros", cfg, log);
    cfg.out_path = (dir.path / "z2.json").string();
    cli::run("zeros", cfg, log);
    CHECK(slurp(dir.path / "z1.json") == slurp(dir.path / "z2.json"));
    std::string cache_bytes_1 = slurp(dir.path / "cache.csv");

    cfg.out_path = (dir.path / "c1.json").string();
    cli::run("coeffs", cfg, log);
    std::string cache_bytes_2 = slurp(dir.path / "cache.csv");
    cfg.out_path = (dir.path / "c2.json").string();
    cli::run("coeffs", cfg, log);
    CHECK(slurp(dir.path / "c1.json") == slurp(dir.path / "c2.json"));
    CHECK(cache_bytes_2 == slurp(dir.path / "cache.csv")); // idempotent column fill
    CHECK(cache_bytes_1 != cache_bytes_2);                 // c_imag column now present

    cfg.out_path = (dir.path / "v1.csv").string();
    cfg.format = "csv";
    cfg.s_points = {{2, 0}, {1, 3}};
    cfg.w_cut = 20;
    cli::run("verify-expansion", cfg, log);
    cfg.out_path = (dir.path / "v2.csv").string();
    cli::run("verify-expansion", cfg, log);
    CHECK(slurp(dir.path / "v1.csv") == slurp(dir.path / "v2.csv"));
}

TEST_CASE("verify-expansion emits the specified CSV schema and passes")
{
    temp_dir dir;
    cli::run_config cfg = base_config(dir);
    std::ostringstream log;
    cli::run("zeros", cfg, log);
    cli::run("coeffs", cfg, log);

    cfg.format = "csv";
    cfg.w_cut = 20;
    cfg.s_points = {{2, 0}};
    cfg.out_path = (dir.path / "verify.csv").string();
    CHECK(cli::run("verify-expansion", cfg, log) == cli::ok);
    std::string csv = slurp(cfg.out_path);
    CHECK(csv.rfind("s_re,s_im,region,f,p,delta_abs,tail_budget\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("laplace and monotone subcommands succeed on a small table")
{
    temp_dir dir;
    cli::run_config cfg = base_config(dir);
    std::ostringstream log;
    cli::run("zeros", cfg, log);
    cli::run("coeffs", cfg, log);

    cfg.y_min = -15;
    cfg.s_points = {{2, 0}, {1.5, 1.0}};
    cfg.out_path = (dir.path / "laplace.json").string();
    CHECK(cli::run("laplace-check", cfg, log) == cli::ok);
    auto rep = nlohmann::json::parse(slurp(cfg.out_path));
    CHECK(rep["all_within_budget"].get<bool>());
    CHECK(rep["points"].size() == 2);

    cfg.out_path = (dir.path / "monotone.json").string();
    CHECK(cli::run("monotone-check", cfg, log) == cli::ok);
    auto mono = nlohmann::json::parse(slurp(cfg.out_path));
    CHECK(mono["all_ok"].get<bool>());
}

TEST_CASE("exit codes: informational warnings and config errors")
{
    temp_dir dir;
    cli::run_config cfg = base_config(dir);
    std::ostringstream log;
    cli::run("zeros", cfg, log); // cache stored at 30 digits

    cli::run_config wants_more = cfg;
    wants_more.digits = 40; // stored precision below request -> PrecisionWarning
    wants_more.out_path = (dir.path / "warn.json").string();
    CHECK(cli::run("coeffs", wants_more, log) == cli::informational);
    CHECK(log.str().find("PrecisionWarning") != std::string::npos);

    cli::run_config bad = cfg;
    bad.alpha = 0.9;
    CHECK_THROWS_AS(cli::run("zeros", bad, log), config_error);
    CHECK_THROWS_AS(cli::run("nonsense", cfg, log), config_error);

    cli::run_config no_cache = cfg;
    no_cache.cache_path = (dir.path / "missing.csv").string();
    CHECK_THROWS_AS(cli::run("coeffs", no_cache, log), missing_cache_error);
}

TEST_CASE("ZETAPFRAC_CACHE overrides the default path only")
{
    temp_dir dir;
    std::ostringstream log;
    fs::path env_cache = dir.path / "env_cache.csv";
    setenv("ZETAPFRAC_CACHE", env_cache.string().c_str(), 1);

    cli::run_config cfg; // default cache path: the env var takes over
    cfg.n = 3;
    cfg.out_path = (dir.path / "envz.json").string();
    CHECK(cli::run("zeros", cfg, log) == cli::ok);
    CHECK(fs::exists(env_cache));

    // an explicit --cache beats the environment
    fs::path explicit_cache = dir.path / "explicit.csv";
    cfg.cache_path = explicit_cache.string();
    CHECK(cli::run("zeros", cfg, log) == cli::ok);
    CHECK(fs::exists(explicit_cache));
    unsetenv("ZETAPFRAC_CACHE");
}
