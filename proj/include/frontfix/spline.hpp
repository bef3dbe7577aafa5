#pragma once

#include <span>
#include <vector>

#include "frontfix/types.hpp"

namespace frontfix {

/// Piecewise cubic interpolant through (x_i, y_i) with not-a-knot end
/// conditions (third derivative continuous across the first and last
/// interior knots). Knots must be strictly increasing; at least 4 are
/// required. Evaluation outside [x_front, x_back] extends the boundary
/// cubics.
class CubicSpline {
public:
    CubicSpline(std::span<const double> x, std::span<const double> y);

    double operator()(double xq) const;

    void evaluate(std::span<const double> xq, std::span<double> out,
                  Exec exec = Exec::Parallel) const;

    std::size_t size() const { return x_.size(); }

private:
    std::vector<double> x_, y_, m_; // knots, values, second derivatives
};

} // namespace frontfix
