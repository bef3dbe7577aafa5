#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "frontfix/errors.hpp"
#include "frontfix/io.hpp"

using namespace frontfix;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / ("frontfix_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("format_float17 round-trips doubles exactly") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> ue(-30, 30);
    for (int i = 0; i < 5000; ++i) {
        double v = u(rng) * std::pow(10.0, ue(rng));
        std::string s = format_float17(v);
        double back = std::strtod(s.c_str(), nullptr);
        CHECK(back == v);
        CHECK(format_float17(back) == s);
    }
    CHECK(format_float17(0.0) == "0");
    CHECK(format_float17(1.0) == "1");
}

TEST_CASE("atomic_write_file creates parents and leaves no temp files") {
    fs::path dir = temp_dir();
    fs::path target = dir / "a" / "b" / "out.csv";
    atomic_write_file(target, "x,y\n1,2\n");
    CHECK(read_file(target) == "x,y\n1,2\n");
    atomic_write_file(target, "x,y\n3,4\n");
    CHECK(read_file(target) == "x,y\n3,4\n");
    int entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(target.parent_path())) ++entries;
    CHECK(entries == 1);
    fs::remove_all(dir);
}

TEST_CASE("config file merges flat keys and rejects unknown ones") {
    fs::path dir = temp_dir();
    fs::path cfg_path = dir / "run.json";
    atomic_write_file(cfg_path,
                      R"({"r": 0.08, "sigma": 0.25, "T": 2.0, "E": 50.0,
                          "x_inf": 1.5, "J": 64, "mu": 10.0, "scheme": "explicit"})");
    RunConfig cfg;
    apply_config_file(cfg, cfg_path);
    CHECK(cfg.params.r == 0.08);
    CHECK(cfg.params.sigma == 0.25);
    CHECK(cfg.params.T == 2.0);
    CHECK(cfg.params.E == 50.0);
    CHECK(cfg.x_inf == 1.5);
    CHECK(cfg.J == 64);
    CHECK(cfg.mu == 10.0);
    CHECK(cfg.scheme == Scheme::Explicit);

    atomic_write_file(cfg_path, R"({"volatility": 0.2})");
    RunConfig cfg2;
    CHECK_THROWS_AS(apply_config_file(cfg2, cfg_path), InvalidArgument);

    atomic_write_file(cfg_path, "{not json");
    CHECK_THROWS_AS(apply_config_file(cfg2, cfg_path), InvalidArgument);
    fs::remove_all(dir);
}

TEST_CASE("scheme names parse strictly") {
    CHECK(parse_scheme("implicit") == Scheme::Implicit);
    CHECK(parse_scheme("explicit") == Scheme::Explicit);
    CHECK_THROWS_AS(parse_scheme("midpoint"), InvalidArgument);
}
