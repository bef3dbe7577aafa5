#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "frontfix/errors.hpp"
#include "frontfix/richardson.hpp"

using namespace frontfix;

namespace {
const ModelParams kPaperParams{0.1, 0.2, 1.0, 1.0};

// Published free-boundary sequence and its repeated extrapolates.
const std::array<double, 6> kRawColumn{0.884069, 0.866100, 0.863100,
                                       0.862719, 0.862717, 0.862738};
} // namespace

TEST_CASE("extrapolate_once matches the published first-column entries") {
    CHECK(std::abs(extrapolate_once(0.866100, 0.863100, 4.0, 1.0) - 0.862100) <= 1e-6);
    CHECK(extrapolate_once(0.5, 0.5, 8.0, 2.0) == 0.5);
    CHECK(std::abs(extrapolate_once(0.860111, 0.862100, 4.0, 2.0) - 0.862233) <= 1e-6);
    CHECK_THROWS_AS(extrapolate_once(1.0, 2.0, 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(extrapolate_once(1.0, 2.0, 4.0, 0.0), InvalidArgument);
}

TEST_CASE("tableau built on the published raw column reproduces every entry") {
    ExtrapolationTableau t = build_tableau(kRawColumn, 4.0, 1.0, 1.0);
    REQUIRE(t.levels() == 6);
    struct Entry {
        int g, k;
        double value;
    };
    const Entry published[] = {
        {1, 1, 0.860111}, {2, 1, 0.862100}, {2, 2, 0.862232}, {3, 1, 0.862592},
        {3, 2, 0.862625}, {3, 3, 0.862631}, {4, 1, 0.862716}, {4, 2, 0.862724},
        {4, 3, 0.862726}, {4, 4, 0.862726}, {5, 1, 0.862746}, {5, 2, 0.862748},
        {5, 3, 0.862748}, {5, 4, 0.862748}, {5, 5, 0.862748},
    };
    for (const auto& e : published) CHECK(std::abs(t.at(e.g, e.k) - e.value) <= 2e-6);
    CHECK(std::abs(t.final_extrapolate() - 0.862748) <= 2e-6);
}

TEST_CASE("tableau recurrence reconstructs exactly as stored") {
    ExtrapolationTableau t = build_tableau(kRawColumn, 4.0, 1.0, 1.0);
    for (int k = 1; k < t.levels(); ++k) {
        for (int g = k; g < t.levels(); ++g) {
            double rebuilt = extrapolate_once(t.at(g - 1, k - 1), t.at(g, k - 1), t.s,
                                              t.orders[static_cast<std::size_t>(k) - 1]);
            CHECK(rebuilt == t.at(g, k));
        }
    }
    CHECK(t.orders[0] == 1.0);
    CHECK(t.orders[3] == 4.0);
}

TEST_CASE("one-term error expansions are annihilated by the first column") {
    const double u = 0.75;
    const double C = 0.3;
    std::vector<double> vals;
    for (int g = 0; g < 5; ++g) vals.push_back(u + C * std::pow(4.0, -g));
    ExtrapolationTableau t = build_tableau(vals, 4.0, 1.0, 1.0);
    for (int g = 1; g < 5; ++g) CHECK(t.at(g, 1) == doctest::Approx(u).epsilon(1e-14));

    CHECK_THROWS_AS(build_tableau(std::vector<double>{1.0}, 4.0, 1.0, 1.0), InvalidArgument);
    std::vector<double> two{0.5, 0.5};
    CHECK(build_tableau(two, 4.0, 1.0, 1.0).final_extrapolate() == 0.5);
}

TEST_CASE("error estimators and their algebraic relation") {
    CHECK(estimate_error_r(0.866100, 0.863100, 4.0, 1.0) == doctest::Approx(-0.001).epsilon(1e-10));
    CHECK(estimate_error_s(0.5, 0.5) == 0.0);
    CHECK(estimate_error_r(0.5, 0.5, 4.0, 1.0) == 0.0);
    // |e_s| = 3 |e_r| when s^q0 = 4
    for (double uc : {0.1, 0.9, 1.7}) {
        double es = estimate_error_s(uc, 0.4);
        double er = estimate_error_r(uc, 0.4, 4.0, 1.0);
        CHECK(std::abs(es) == doctest::Approx(3.0 * std::abs(er)).epsilon(1e-14));
    }
    std::vector<double> a{1.0, 2.0}, b{1.3, 2.3};
    auto v = estimate_error_r(a, b, 4.0, 1.0);
    CHECK(v[0] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("observed_order recovers synthetic and published rates") {
    const double u = 1.4, C = -0.2, q = 1.7, s = 4.0;
    double uc = u + C * std::pow(s, -0.0 * q);
    double uf = u + C * std::pow(s, -1.0 * q);
    CHECK(observed_order(uc, uf, u, s) == doctest::Approx(q).epsilon(1e-12));

    CHECK(std::abs(observed_order(0.866100, 0.863100, 0.862748, 4.0) - 1.626) <= 0.01);
    CHECK_THROWS_AS(observed_order(0.9, 0.862748, 0.862748, 4.0), DegenerateOrderError);
}

TEST_CASE("a loose tolerance accepts the first refinement pair") {
    RefinementReport rpt = refine_until(kPaperParams, 1.0, 20.0, 5, 1.0, Scheme::Implicit, 4);
    CHECK(rpt.accepted);
    CHECK(rpt.accepted_level == 0);
    REQUIRE(rpt.levels.size() == 1);
    CHECK(rpt.levels[0].J_fine == 10);
}

TEST_CASE("an impossible tolerance exhausts the level budget") {
    bool threw = false;
    try {
        refine_until(kPaperParams, 1.0, 20.0, 5, 1e-12, Scheme::Implicit, 3);
    } catch (const ToleranceNotMetError& e) {
        threw = true;
        CHECK(e.report.levels.size() == 3);
        CHECK_FALSE(e.report.accepted);
        for (const auto& lev : e.report.levels) CHECK_FALSE(lev.accepted);
    }
    CHECK(threw);
}

TEST_CASE("level difference of the final front shrinks under refinement") {
    // First-order global error with s = 4 predicts a factor near 4; the
    // preasymptotic sequence runs hotter (the published values give ~7.9),
    // so the accepted window is wide.
    std::vector<double> finals;
    for (int J : {20, 40, 80}) {
        GridSpec g = build_grid(1.0, J, 20.0, kPaperParams.T);
        finals.push_back(solve(kPaperParams, g).final_state().S_f);
    }
    double e1 = std::abs(estimate_error_s(finals[0], finals[1]));
    double e2 = std::abs(estimate_error_s(finals[1], finals[2]));
    double factor = e1 / e2;
    CHECK(factor >= 2.5);
    CHECK(factor <= 9.0);
}

TEST_CASE("refine_until validates input") {
    CHECK_THROWS_AS(refine_until(kPaperParams, 1.0, 20.0, 5, 0.0, Scheme::Implicit, 3),
                    InvalidArgument);
    CHECK_THROWS_AS(refine_until(kPaperParams, 1.0, 20.0, 2, 0.1, Scheme::Implicit, 3),
                    InvalidArgument);
    CHECK_THROWS_AS(refine_until(kPaperParams, 1.0, 20.0, 5, 0.1, Scheme::Implicit, 0),
                    InvalidArgument);
}
