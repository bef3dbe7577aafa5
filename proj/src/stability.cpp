#include "frontfix/stability.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>

#include "frontfix/errors.hpp"

namespace frontfix {

std::string to_string(Scheme s) {
    return s == Scheme::Implicit ? "implicit" : "explicit";
}

namespace {

struct Parts {
    double A;
    double B;
};

inline Parts ab_parts(double phase, const ModelParams& params, double mu, double dx, double g) {
    const double sig2 = params.sigma * params.sigma;
    const double dtau = mu * dx * dx;
    const double s = std::sin(0.5 * phase);
    Parts p{};
    p.A = params.r * dtau + 2.0 * mu * sig2 * s * s;
    p.B = mu * dx * ((params.r - 0.5 * sig2) + g) * std::sin(phase);
    return p;
}

} // namespace

double amplification_implicit(double phase, const ModelParams& params, double mu, double dx,
                              FrozenFrontTerm front) {
    if (!(dx > 0.0) || !(mu > 0.0))
        throw InvalidArgument("amplification_implicit: dx and mu must be positive");
    Parts p = ab_parts(phase, params, mu, dx, front.g);
    return 1.0 / std::hypot(1.0 + p.A, p.B);
}

double amplification_explicit(double phase, const ModelParams& params, double mu, double dx,
                              FrozenFrontTerm front) {
    if (!(dx > 0.0) || !(mu > 0.0))
        throw InvalidArgument("amplification_explicit: dx and mu must be positive");
    Parts p = ab_parts(phase, params, mu, dx, front.g);
    return std::hypot(1.0 - p.A, p.B);
}

StabilityReport stability_scan(Scheme scheme, const ModelParams& params, double mu, double dx,
                               FrozenFrontTerm front, int n_samples, Exec exec) {
    if (n_samples < 64) throw InvalidArgument("stability_scan: need at least 64 samples");
    StabilityReport rep;
    rep.scheme = scheme;
    rep.mu = mu;
    rep.dx = dx;
    rep.dtau = mu * dx * dx;
    rep.samples.resize(static_cast<std::size_t>(n_samples));
    const auto n = static_cast<std::ptrdiff_t>(n_samples);
    auto modulus_at = [&](std::ptrdiff_t i) {
        // Uniform on [0, pi]; the last sample lands exactly on pi.
        double phase = (i + 1 == n) ? std::numbers::pi
                                    : std::numbers::pi * static_cast<double>(i) /
                                          static_cast<double>(n - 1);
        double m = scheme == Scheme::Implicit
                       ? amplification_implicit(phase, params, mu, dx, front)
                       : amplification_explicit(phase, params, mu, dx, front);
        rep.samples[static_cast<std::size_t>(i)] = {phase, m};
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) if (n > 4096)
        for (std::ptrdiff_t i = 0; i < n; ++i) modulus_at(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) modulus_at(i);
    }
    double mx = 0.0;
    for (const auto& s : rep.samples) mx = std::max(mx, s.modulus);
    rep.max_modulus = mx;
    rep.stable = mx <= 1.0 + 1e-12;
    return rep;
}

std::vector<FrozenFrontTerm> front_term_series(const FrontFixedSolution& solution,
                                               Scheme normalization) {
    if (solution.states.size() < 2)
        throw InvalidArgument("front_term_series: need at least 2 time levels");
    std::vector<FrozenFrontTerm> out(solution.states.size() - 1);
    const double dtau = solution.grid.dtau;
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (n > 8192)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double prev = solution.states[i].S_f;
        const double next = solution.states[i + 1].S_f;
        const double den = normalization == Scheme::Implicit ? next : prev;
        out[static_cast<std::size_t>(i)].g = (next - prev) / (den * dtau);
    }
    return out;
}

} // namespace frontfix
