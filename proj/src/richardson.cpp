#include "frontfix/richardson.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "frontfix/explicit_scheme.hpp"

namespace frontfix {

double ExtrapolationTableau::final_extrapolate() const {
    return columns.back().back();
}

double extrapolate_once(double u_coarse, double u_fine, double s, double q0) {
    if (!(s > 1.0)) throw InvalidArgument("extrapolate_once: refinement ratio must exceed 1");
    if (!(q0 > 0.0)) throw InvalidArgument("extrapolate_once: order must be positive");
    return u_fine + (u_fine - u_coarse) / (std::pow(s, q0) - 1.0);
}

ExtrapolationTableau build_tableau(std::span<const double> values, double s, double q0,
                                   double q1_minus_q0) {
    if (values.size() < 2) throw InvalidArgument("build_tableau: need at least two values");
    if (!(s > 1.0)) throw InvalidArgument("build_tableau: refinement ratio must exceed 1");
    ExtrapolationTableau t;
    t.s = s;
    const std::size_t G = values.size() - 1;
    t.columns.resize(G + 1);
    t.orders.resize(G + 1);
    t.columns[0].assign(values.begin(), values.end());
    for (std::size_t k = 0; k <= G; ++k)
        t.orders[k] = q0 + static_cast<double>(k) * q1_minus_q0;
    for (std::size_t k = 1; k <= G; ++k) {
        t.columns[k].resize(G + 1 - k);
        for (std::size_t i = 0; i < G + 1 - k; ++i) {
            // entry (g, k) from (g-1, k-1) and (g, k-1) with order q_{k-1}
            t.columns[k][i] =
                extrapolate_once(t.columns[k - 1][i], t.columns[k - 1][i + 1], s, t.orders[k - 1]);
        }
    }
    return t;
}

double estimate_error_r(double u_coarse, double u_fine, double s, double q0) {
    if (!(s > 1.0)) throw InvalidArgument("estimate_error_r: refinement ratio must exceed 1");
    return (u_fine - u_coarse) / (std::pow(s, q0) - 1.0);
}

double estimate_error_s(double u_coarse, double u_fine) {
    return u_fine - u_coarse;
}

std::vector<double> estimate_error_r(std::span<const double> u_coarse,
                                     std::span<const double> u_fine, double s, double q0) {
    if (u_coarse.size() != u_fine.size())
        throw InvalidArgument("estimate_error_r: size mismatch");
    if (!(s > 1.0)) throw InvalidArgument("estimate_error_r: refinement ratio must exceed 1");
    const double den = std::pow(s, q0) - 1.0;
    std::vector<double> out(u_coarse.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (u_fine[i] - u_coarse[i]) / den;
    return out;
}

double observed_order(double u_coarse, double u_fine, double u_ref, double s) {
    if (!(s > 1.0)) throw InvalidArgument("observed_order: refinement ratio must exceed 1");
    const double ec = std::abs(u_coarse - u_ref);
    const double ef = std::abs(u_fine - u_ref);
    if (ec == 0.0 || ef == 0.0)
        throw DegenerateOrderError("observed_order: approximation coincides with the reference");
    return (std::log(ec) - std::log(ef)) / std::log(s);
}

namespace {

FrontFixedSolution run_solver(Scheme scheme, const ModelParams& params, const GridSpec& grid,
                              const StepSolverConfig& cfg) {
    return scheme == Scheme::Implicit ? solve(params, grid, cfg) : explicit_solve(params, grid);
}

RefinementLevel compare_pair(const FrontFixedSolution& coarse, const FrontFixedSolution& fine,
                             double eps, double q0) {
    const double den = std::pow(4.0, q0) - 1.0;
    RefinementLevel lev;
    lev.J_coarse = coarse.grid.J;
    lev.J_fine = fine.grid.J;
    lev.N_coarse = coarse.grid.N;
    lev.N_fine = fine.grid.N;
    const int Nc = coarse.grid.N;
    const int Nf = fine.grid.N;
    const int n_cmp = std::min(Nc, Nf / 4);

    auto push = [&](int nc, int nf) {
        const auto& pc = coarse.states[static_cast<std::size_t>(nc)].p;
        const auto& pf = fine.states[static_cast<std::size_t>(nf)].p;
        double ep = 0.0;
        for (std::size_t j = 0; j < pc.size(); ++j)
            ep = std::max(ep, std::abs(pf[2 * j] - pc[j]) / den);
        double es = std::abs(fine.states[static_cast<std::size_t>(nf)].S_f -
                             coarse.states[static_cast<std::size_t>(nc)].S_f) /
                    den;
        lev.tau.push_back(coarse.grid.tau(nc));
        lev.err_p_inf.push_back(ep);
        lev.err_sf.push_back(es);
    };
    for (int n = 1; n <= n_cmp; ++n) push(n, 4 * n);
    // When ceil() breaks the 4:1 alignment the final-time levels are still
    // compared against each other.
    if (n_cmp < Nc) push(Nc, Nf);

    lev.max_err_p = *std::max_element(lev.err_p_inf.begin(), lev.err_p_inf.end());
    std::size_t arg = 0;
    for (std::size_t i = 0; i < lev.err_sf.size(); ++i)
        if (lev.err_sf[i] > lev.err_sf[arg]) arg = i;
    lev.max_err_sf = lev.err_sf[arg];
    lev.argmax_err_sf_tau = lev.tau[arg];
    lev.accepted = lev.max_err_p <= eps && lev.max_err_sf <= eps;
    return lev;
}

} // namespace

RefinementReport refine_until(const ModelParams& params, double x_inf, double mu, int J_start,
                              double eps, Scheme solver, int max_levels, double q0,
                              const StepSolverConfig& cfg) {
    if (!(eps > 0.0)) throw InvalidArgument("refine_until: eps must be positive");
    if (J_start < 3) throw InvalidArgument("refine_until: J_start must be at least 3");
    if (max_levels < 1) throw InvalidArgument("refine_until: max_levels must be at least 1");
    params.validate();

    RefinementReport rpt;
    rpt.eps = eps;
    rpt.mu = mu;
    rpt.J_start = J_start;
    rpt.scheme = solver;

    int J = J_start;
    for (int level = 0; level < max_levels; ++level) {
        GridSpec gc = build_grid(x_inf, J, mu, params.T);
        GridSpec gf = build_grid(x_inf, 2 * J, mu, params.T);
        FrontFixedSolution coarse, fine;
        std::exception_ptr err;
#pragma omp parallel sections
        {
#pragma omp section
            {
                try {
                    coarse = run_solver(solver, params, gc, cfg);
                } catch (...) {
#pragma omp critical
                    err = std::current_exception();
                }
            }
#pragma omp section
            {
                try {
                    fine = run_solver(solver, params, gf, cfg);
                } catch (...) {
#pragma omp critical
                    err = std::current_exception();
                }
            }
        }
        if (err) std::rethrow_exception(err);

        rpt.levels.push_back(compare_pair(coarse, fine, eps, q0));
        if (rpt.levels.back().accepted) {
            rpt.accepted = true;
            rpt.accepted_level = level;
            return rpt;
        }
        J *= 2;
    }
    throw ToleranceNotMetError("refine_until: tolerance " + std::to_string(eps) + " not met after " +
                                   std::to_string(max_levels) + " levels",
                               rpt);
}

} // namespace frontfix
