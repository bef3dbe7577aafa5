#pragma once

#include <span>
#include <vector>

#include "frontfix/spline.hpp"
#include "frontfix/types.hpp"

namespace frontfix {

/// x = ln(S / (E * S_f)). Negative values signal the exercised region.
double transform_asset(double S, double S_f, double E);

/// Inverse of transform_asset.
double asset_from_x(double x, double S_f, double E);

/// Physical option price at asset price S read off one solved time level.
/// Below the front the payoff E - S is exact; elsewhere the nodal surface
/// (S_j, E p_j) is interpolated with a not-a-knot cubic spline.
double to_physical(const FrontFixedState& state, const GridSpec& grid,
                   const ModelParams& params, double S);

/// Batch version of to_physical sharing a single spline fit.
std::vector<double> spline_prices(const FrontFixedState& state, const GridSpec& grid,
                                  const ModelParams& params, std::span<const double> assets,
                                  Exec exec = Exec::Parallel);

/// Spline through the physical nodes (E S_f e^{x_j}, E p_j) of a state.
CubicSpline physical_spline(const FrontFixedState& state, const GridSpec& grid,
                            const ModelParams& params);

} // namespace frontfix
