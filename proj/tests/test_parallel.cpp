// The OpenMP kernels must be bitwise-identical to their serial references:
// every element is computed independently, so no floating-point reordering
// is involved.

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "frontfix/explicit_scheme.hpp"
#include "frontfix/implicit.hpp"
#include "frontfix/model.hpp"
#include "frontfix/stability.hpp"

using namespace frontfix;

namespace {
const ModelParams kParams{0.1, 0.2, 1.0, 1.0};

FrontFixedState big_state(const GridSpec& g, double sf) {
    FrontFixedState s = initial_state(g);
    s.S_f = sf;
    for (int j = 0; j <= g.J; ++j)
        s.p[static_cast<std::size_t>(j)] = (1.0 - sf) * std::exp(-6.0 * g.x(j));
    s.p[0] = 1.0 - sf;
    return s;
}
} // namespace

TEST_CASE("stability_scan serial and parallel outputs are identical") {
    StabilityReport a =
        stability_scan(Scheme::Implicit, kParams, 20.0, 0.0125, {-2.0}, 100001, Exec::Serial);
    StabilityReport b =
        stability_scan(Scheme::Implicit, kParams, 20.0, 0.0125, {-2.0}, 100001, Exec::Parallel);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].phase == b.samples[i].phase);
        CHECK(a.samples[i].modulus == b.samples[i].modulus);
    }
    CHECK(a.max_modulus == b.max_modulus);
}

TEST_CASE("assemble_residual serial and parallel outputs are identical") {
    GridSpec g = build_grid(1.0, 20000, 20.0, 1.0);
    FrontFixedState s = big_state(g, 0.95);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::vector<double> cand(static_cast<std::size_t>(g.J) - 1);
    for (auto& v : cand) v = u(rng);
    auto a = assemble_residual(s, cand, 0.93, g, kParams, Exec::Serial);
    auto b = assemble_residual(s, cand, 0.93, g, kParams, Exec::Parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("explicit_step serial and parallel outputs are identical") {
    GridSpec g = build_grid(1.0, 20000, 5.0, 1.0);
    FrontFixedState s = big_state(g, 0.95);
    FrontFixedState a = explicit_step(s, g, kParams, Exec::Serial);
    FrontFixedState b = explicit_step(s, g, kParams, Exec::Parallel);
    CHECK(a.S_f == b.S_f);
    REQUIRE(a.p.size() == b.p.size());
    for (std::size_t i = 0; i < a.p.size(); ++i) CHECK(a.p[i] == b.p[i]);
}

TEST_CASE("spline_prices serial and parallel outputs are identical") {
    GridSpec g = build_grid(1.0, 400, 20.0, 1.0);
    ModelParams m{0.08, 0.2, 3.0, 100.0};
    FrontFixedState s = big_state(g, 0.82);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(m.E * s.S_f * 0.5, m.E * s.S_f * std::exp(1.0));
    std::vector<double> assets(50000);
    for (auto& a : assets) a = u(rng);
    auto pa = spline_prices(s, g, m, assets, Exec::Serial);
    auto pb = spline_prices(s, g, m, assets, Exec::Parallel);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) CHECK(pa[i] == pb[i]);
}
