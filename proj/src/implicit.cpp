#include "frontfix/implicit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "frontfix/errors.hpp"
#include "frontfix/tridiag.hpp"

namespace frontfix {

SchemeCoefficients coefficients(const ModelParams& params, const GridSpec& grid,
                                double sf_prev, double sf_next) {
    if (!(sf_next > 0.0))
        throw SingularFront("coefficients: nonpositive trial front value " + std::to_string(sf_next));
    const double sig2 = params.sigma * params.sigma;
    const double drift = params.r - 0.5 * sig2;
    const double front = (sf_next - sf_prev) / (sf_next * 2.0 * grid.dx);
    SchemeCoefficients k;
    k.a_bar = 0.5 * grid.mu * (-sig2 + drift * grid.dx) + front;
    k.b_bar = 1.0 + grid.mu * sig2 + params.r * grid.dtau;
    k.c_bar = 0.5 * grid.mu * (-sig2 - drift * grid.dx) - front;
    return k;
}

BoundaryPair boundary_pair(double sf_next, const GridSpec& grid, const ModelParams& params) {
    const double sig2 = params.sigma * params.sigma;
    const double dx = grid.dx;
    BoundaryPair b;
    b.p0 = 1.0 - sf_next;
    b.p1 = 1.0 + params.r * dx * dx / sig2 - (1.0 + dx + 0.5 * dx * dx) * sf_next;
    return b;
}

namespace {

// Right-hand side of the tridiagonal block (rows j = 2..J) for a trial front.
void interior_rhs(const FrontFixedState& state_n, double a_bar, double p1_next,
                  int J, std::vector<double>& rhs) {
    const std::size_t m = static_cast<std::size_t>(J) - 1;
    rhs.resize(m);
    rhs[0] = state_n.p[2] - a_bar * p1_next;
    for (std::size_t i = 1; i < m; ++i) rhs[i] = state_n.p[i + 2];
}

struct TrialSolve {
    SchemeCoefficients k;
    double p1_next;
    double residual; // row-1 residual at the solved interior vector
    bool lu_fallback;
};

TrialSolve solve_trial(const FrontFixedState& state_n, double sf_next, const GridSpec& grid,
                       const ModelParams& params, std::vector<double>& rhs,
                       std::vector<double>& q) {
    TrialSolve t;
    t.k = coefficients(params, grid, state_n.S_f, sf_next);
    t.p1_next = boundary_pair(sf_next, grid, params).p1;
    interior_rhs(state_n, t.k.a_bar, t.p1_next, grid.J, rhs);
    ConstTridiagonal sys(t.k.a_bar, t.k.b_bar, t.k.c_bar);
    t.lu_fallback = !sys.diagonally_dominant();
    sys.solve(rhs, q);
    const double p1_level_n = boundary_pair(state_n.S_f, grid, params).p1;
    t.residual = t.k.c_bar * q[0] -
                 (p1_level_n - t.k.a_bar * (1.0 - sf_next) - t.k.b_bar * t.p1_next);
    return t;
}

} // namespace

std::vector<double> assemble_residual(const FrontFixedState& state_n,
                                      std::span<const double> candidate_p,
                                      double candidate_sf, const GridSpec& grid,
                                      const ModelParams& params, Exec exec) {
    const int J = grid.J;
    if (candidate_p.size() != static_cast<std::size_t>(J) - 1)
        throw InvalidArgument("assemble_residual: candidate vector must have length J-1");
    if (state_n.p.size() != static_cast<std::size_t>(J) + 1)
        throw InvalidArgument("assemble_residual: state vector must have length J+1");
    if (!(candidate_sf > 0.0 && candidate_sf <= 1.0))
        throw InvalidArgument("assemble_residual: candidate_sf must lie in (0, 1]");

    const SchemeCoefficients k = coefficients(params, grid, state_n.S_f, candidate_sf);
    const double p1_next = boundary_pair(candidate_sf, grid, params).p1;
    const double p1_level_n = boundary_pair(state_n.S_f, grid, params).p1;

    std::vector<double> F(static_cast<std::size_t>(J));
    const auto rows = static_cast<std::ptrdiff_t>(J);
    auto row_value = [&](std::ptrdiff_t r) -> double {
        const int j = static_cast<int>(r) + 1; // rows correspond to j = 1..J
        if (j == 1)
            return k.c_bar * candidate_p[0] -
                   (p1_level_n - k.a_bar * (1.0 - candidate_sf) - k.b_bar * p1_next);
        if (j == 2) {
            double upper = (J > 2) ? k.c_bar * candidate_p[1] : 0.0;
            return k.b_bar * candidate_p[0] + upper - (state_n.p[2] - k.a_bar * p1_next);
        }
        if (j == J)
            return k.a_bar * candidate_p[J - 3] + k.b_bar * candidate_p[J - 2] - state_n.p[J];
        return k.a_bar * candidate_p[j - 3] + k.b_bar * candidate_p[j - 2] +
               k.c_bar * candidate_p[j - 1] - state_n.p[j];
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) if (rows > 4096)
        for (std::ptrdiff_t r = 0; r < rows; ++r) F[static_cast<std::size_t>(r)] = row_value(r);
    } else {
        for (std::ptrdiff_t r = 0; r < rows; ++r) F[static_cast<std::size_t>(r)] = row_value(r);
    }
    return F;
}

FrontFixedState step(const FrontFixedState& state_n, const GridSpec& grid,
                     const ModelParams& params, const StepSolverConfig& cfg, StepStats* stats) {
    if (state_n.p.size() != static_cast<std::size_t>(grid.J) + 1)
        throw InvalidArgument("step: state vector must have length J+1");
    if (!(state_n.S_f > 0.0 && state_n.S_f <= 1.0))
        throw InvalidArgument("step: state front value must lie in (0, 1]");

    std::vector<double> rhs, q;
    int evals = 0;
    bool lu_fallback = false;
    double last_f = std::numeric_limits<double>::quiet_NaN();
    auto eval = [&](double sf) -> double {
        if (++evals > cfg.max_iters)
            throw NonconvergenceError("step: residual evaluation cap exceeded", sf,
                                      std::abs(last_f), evals, state_n.n + 1);
        TrialSolve t = solve_trial(state_n, sf, grid, params, rhs, q);
        lu_fallback = lu_fallback || t.lu_fallback;
        last_f = t.residual;
        return t.residual;
    };

    const double hi = state_n.S_f;
    double root;
    double f_root;
    double f_hi = eval(hi);
    if (std::abs(f_hi) <= cfg.residual_tol) {
        root = hi;
        f_root = f_hi;
    } else {
        // Walk down from S_f^n with expanding strides until the residual
        // changes sign; the nonlinear step's root is the nearest one below.
        double delta = std::max(cfg.bracket_floor, 0.02 * (1.0 - hi));
        double a = hi, fa = f_hi;
        double b = 0.0, fb = 0.0;
        bool bracketed = false;
        while (a > cfg.bracket_floor) {
            b = std::max(cfg.bracket_floor, a - delta);
            fb = eval(b);
            if ((fa <= 0.0 && fb >= 0.0) || (fa >= 0.0 && fb <= 0.0)) {
                bracketed = true;
                break;
            }
            a = b;
            fa = fb;
            delta *= 1.7;
        }
        if (!bracketed)
            throw BracketingError("step: no sign change of the front residual in [" +
                                      std::to_string(cfg.bracket_floor) + ", " +
                                      std::to_string(hi) + "]",
                                  fb, f_hi, state_n.n + 1);

        // Illinois-damped false position inside [b, a].
        double x = b, fx = fb;
        int side = 0;
        while (std::abs(fx) > cfg.residual_tol) {
            x = a - fa * (b - a) / (fb - fa);
            if (!(x > std::min(a, b) && x < std::max(a, b))) x = 0.5 * (a + b);
            fx = eval(x);
            if ((fx > 0.0) == (fb > 0.0)) {
                b = x;
                fb = fx;
                if (side == -1) fa *= 0.5;
                side = -1;
            } else {
                a = x;
                fa = fx;
                if (side == 1) fb *= 0.5;
                side = 1;
            }
            if (std::abs(b - a) <= cfg.sf_tol && std::abs(fx) > cfg.residual_tol)
                throw NonconvergenceError(
                    "step: bracket collapsed before reaching the residual tolerance", x,
                    std::abs(fx), evals, state_n.n + 1);
        }
        root = x;
        f_root = fx;
    }

    TrialSolve final_t = solve_trial(state_n, root, grid, params, rhs, q);
    FrontFixedState next;
    next.p.resize(state_n.p.size());
    BoundaryPair bp = boundary_pair(root, grid, params);
    next.p[0] = bp.p0;
    next.p[1] = bp.p1;
    std::copy(q.begin(), q.end(), next.p.begin() + 2);
    next.S_f = root;
    next.n = state_n.n + 1;

    if (stats) {
        stats->residual_evaluations = evals;
        stats->residual_norm = std::abs(f_root);
        stats->lu_fallback = lu_fallback || final_t.lu_fallback;
    }
    return next;
}

FrontFixedSolution solve(const ModelParams& params, const GridSpec& grid,
                         const StepSolverConfig& cfg, SolveStats* stats) {
    params.validate();
    auto t0 = std::chrono::steady_clock::now();
    FrontFixedSolution sol;
    sol.grid = grid;
    sol.params = params;
    sol.states.reserve(static_cast<std::size_t>(grid.N) + 1);
    sol.states.push_back(initial_state(grid));
    SolveStats acc;
    for (int n = 0; n < grid.N; ++n) {
        StepStats st;
        try {
            sol.states.push_back(step(sol.states.back(), grid, params, cfg, &st));
        } catch (NonconvergenceError& e) {
            e.time_index = n + 1;
            throw;
        } catch (BracketingError& e) {
            e.time_index = n + 1;
            throw;
        }
        acc.residual_evaluations += st.residual_evaluations;
        acc.max_step_iterations = std::max(acc.max_step_iterations, st.residual_evaluations);
        if (st.lu_fallback) ++acc.lu_fallback_steps;
    }
    acc.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (stats) *stats = acc;
    return sol;
}

} // namespace frontfix
