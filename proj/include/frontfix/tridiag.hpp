#pragma once

#include <span>
#include <vector>

namespace frontfix {

/// Solves the constant-coefficient tridiagonal system
///
///   b x_0 + c x_1                 = d_0
///   a x_{i-1} + b x_i + c x_{i+1} = d_i      (0 < i < n-1)
///   a x_{n-2} + b x_{n-1}         = d_{n-1}
///
/// by the Thomas algorithm without pivoting. Diagonal dominance
/// (|b| >= |a| + |c|) is checked up front; when it fails the solve falls
/// back to dense Gaussian elimination with partial pivoting so the result
/// stays reliable for front-heavy coefficient regimes.
class ConstTridiagonal {
public:
    ConstTridiagonal(double sub, double diag, double super);

    void solve(std::span<const double> rhs, std::vector<double>& x) const;

    bool diagonally_dominant() const { return dominant_; }

private:
    void solve_thomas(std::span<const double> rhs, std::vector<double>& x) const;
    void solve_dense(std::span<const double> rhs, std::vector<double>& x) const;

    double a_, b_, c_;
    bool dominant_;
};

} // namespace frontfix
