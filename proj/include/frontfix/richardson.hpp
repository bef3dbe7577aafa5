#pragma once

#include <span>
#include <vector>

#include "frontfix/errors.hpp"
#include "frontfix/implicit.hpp"
#include "frontfix/stability.hpp"
#include "frontfix/types.hpp"

namespace frontfix {

/// Triangular array of repeated Richardson extrapolates. Column k holds
/// G+1-k entries; entry (g, k+1) is formed from entries (g, k) and
/// (g-1, k) with order q_k = q0 + k (q1 - q0).
struct ExtrapolationTableau {
    std::vector<std::vector<double>> columns; // columns[k][i] = U_{i+k, k}
    double s = 4.0;
    std::vector<double> orders; // q_k

    int levels() const { return static_cast<int>(columns.empty() ? 0 : columns[0].size()); }
    double at(int g, int k) const { return columns[static_cast<std::size_t>(k)][static_cast<std::size_t>(g - k)]; }
    double final_extrapolate() const;
};

/// u_fine + (u_fine - u_coarse)/(s^q0 - 1).
double extrapolate_once(double u_coarse, double u_fine, double s, double q0);

ExtrapolationTableau build_tableau(std::span<const double> values, double s, double q0,
                                   double q1_minus_q0);

/// A posteriori error estimators: e_r scales the level difference by the
/// extrapolation denominator, e_s is the plain difference.
double estimate_error_r(double u_coarse, double u_fine, double s, double q0);
double estimate_error_s(double u_coarse, double u_fine);
std::vector<double> estimate_error_r(std::span<const double> u_coarse,
                                     std::span<const double> u_fine, double s, double q0);

/// Convergence order estimated from two approximations and a reference.
double observed_order(double u_coarse, double u_fine, double u_ref, double s);

struct RefinementLevel {
    int J_coarse = 0;
    int J_fine = 0;
    int N_coarse = 0;
    int N_fine = 0;
    std::vector<double> tau;       // comparable coarse times
    std::vector<double> err_p_inf; // max-norm of e_r(p^n) over shared nodes
    std::vector<double> err_sf;    // |e_r(S_f^n)|
    double max_err_p = 0.0;
    double max_err_sf = 0.0;
    double argmax_err_sf_tau = 0.0;
    bool accepted = false;
};

struct RefinementReport {
    double eps = 0.0;
    double mu = 0.0;
    int J_start = 0;
    Scheme scheme = Scheme::Implicit;
    std::vector<RefinementLevel> levels;
    int accepted_level = -1;
    bool accepted = false;
};

class ToleranceNotMetError : public Error {
public:
    ToleranceNotMetError(const std::string& what, RefinementReport rpt)
        : Error(what), report(std::move(rpt)) {}
    RefinementReport report;
};

/// Tolerance-driven grid refinement: solve on (J, 2J) with the same
/// grid-ratio, estimate e_r on the shared space-time nodes, accept the fine
/// grid when every comparable level passes both tests, otherwise double J.
/// The two solves of a level run concurrently.
RefinementReport refine_until(const ModelParams& params, double x_inf, double mu, int J_start,
                              double eps, Scheme solver, int max_levels, double q0 = 1.0,
                              const StepSolverConfig& cfg = {});

} // namespace frontfix
