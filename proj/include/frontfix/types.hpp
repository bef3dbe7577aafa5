#pragma once

#include <vector>

namespace frontfix {

// Execution policy for the data-parallel kernels. Parallel uses OpenMP when
// the build enables it and the problem is large enough to pay for the fork.
enum class Exec { Serial, Parallel };

/// Market and contract constants of the Black-Scholes put.
struct ModelParams {
    double r;     // interest rate per unit time
    double sigma; // volatility per sqrt(unit time)
    double T;     // maturity
    double E;     // exercise price

    void validate() const;
};

/// Uniform grid on [0, x_inf] x [0, N*dtau] with dtau tied to dx by the
/// grid-ratio mu = dtau/dx^2.
struct GridSpec {
    double x_inf;
    int J;
    double mu;
    double dx;   // x_inf / J
    double dtau; // mu * dx^2
    int N;       // minimal N with N*dtau >= T

    double x(int j) const { return static_cast<double>(j) * dx; }
    double tau(int n) const { return static_cast<double>(n) * dtau; }
};

GridSpec build_grid(double x_inf, int J, double mu, double T);

/// One time level of the front-fixed problem: dimensionless prices p_0..p_J
/// and the front value S_f = S*/E.
struct FrontFixedState {
    std::vector<double> p;
    double S_f = 1.0;
    int n = 0;
};

FrontFixedState initial_state(const GridSpec& grid);

/// Full surface p_j^n and front path S_f^n, n = 0..N.
struct FrontFixedSolution {
    std::vector<FrontFixedState> states;
    GridSpec grid;
    ModelParams params;

    const FrontFixedState& final_state() const { return states.back(); }
    std::vector<double> front_path() const;
};

} // namespace frontfix
