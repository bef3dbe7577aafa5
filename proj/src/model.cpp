#include "frontfix/model.hpp"
#include "frontfix/errors.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace frontfix {

double transform_asset(double S, double S_f, double E) {
    if (!(S > 0.0)) throw InvalidArgument("transform_asset: S must be positive");
    if (!(S_f > 0.0 && S_f <= 1.0)) throw InvalidArgument("transform_asset: S_f must lie in (0, 1]");
    if (!(E > 0.0)) throw InvalidArgument("transform_asset: E must be positive");
    return std::log(S / (E * S_f));
}

double asset_from_x(double x, double S_f, double E) {
    return E * S_f * std::exp(x);
}

CubicSpline physical_spline(const FrontFixedState& state, const GridSpec& grid,
                            const ModelParams& params) {
    const std::size_t np = state.p.size();
    std::vector<double> S(np), P(np);
    for (std::size_t j = 0; j < np; ++j) {
        S[j] = asset_from_x(grid.x(static_cast<int>(j)), state.S_f, params.E);
        P[j] = params.E * state.p[j];
    }
    return CubicSpline(S, P);
}

namespace {

double price_one(const CubicSpline& spl, const FrontFixedState& state, const GridSpec& grid,
                 const ModelParams& params, double S) {
    if (!(S > 0.0)) throw InvalidArgument("price: S must be positive");
    if (S < params.E * state.S_f) return params.E - S; // exercised region, exact payoff
    double x = transform_asset(S, state.S_f, params.E);
    if (x > grid.x_inf * (1.0 + 1e-12))
        throw OutOfDomainError("price: asset maps beyond x_inf = " + std::to_string(grid.x_inf) +
                                   "; enlarge the truncated boundary",
                               S, x);
    return spl(S);
}

} // namespace

double to_physical(const FrontFixedState& state, const GridSpec& grid,
                   const ModelParams& params, double S) {
    if (S < params.E * state.S_f) return params.E - S;
    return price_one(physical_spline(state, grid, params), state, grid, params, S);
}

std::vector<double> spline_prices(const FrontFixedState& state, const GridSpec& grid,
                                  const ModelParams& params, std::span<const double> assets,
                                  Exec exec) {
    CubicSpline spl = physical_spline(state, grid, params);
    std::vector<double> out(assets.size());
    const auto n = static_cast<std::ptrdiff_t>(assets.size());
    // Domain check up front so the parallel loop below cannot throw.
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        if (!(assets[k] > 0.0)) throw InvalidArgument("spline_prices: assets must be positive");
        if (assets[k] >= params.E * state.S_f) {
            double x = transform_asset(assets[k], state.S_f, params.E);
            if (x > grid.x_inf * (1.0 + 1e-12))
                throw OutOfDomainError("spline_prices: asset maps beyond x_inf", assets[k], x);
        }
    }
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) if (n > 2048)
        for (std::ptrdiff_t k = 0; k < n; ++k)
            out[k] = assets[k] < params.E * state.S_f ? params.E - assets[k] : spl(assets[k]);
    } else {
        for (std::ptrdiff_t k = 0; k < n; ++k)
            out[k] = assets[k] < params.E * state.S_f ? params.E - assets[k] : spl(assets[k]);
    }
    return out;
}

} // namespace frontfix
