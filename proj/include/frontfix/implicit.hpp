#pragma once

#include <span>
#include <vector>

#include "frontfix/types.hpp"

namespace frontfix {

/// Tridiagonal stencil weights of the implicit scheme at one time step.
/// The sub/super entries carry the front-motion contribution, so they
/// depend on both the previous and the trial front value.
struct SchemeCoefficients {
    double a_bar; // sub-diagonal
    double b_bar; // diagonal
    double c_bar; // super-diagonal
};

SchemeCoefficients coefficients(const ModelParams& params, const GridSpec& grid,
                                double sf_prev, double sf_next);

struct BoundaryPair {
    double p0;
    double p1;
};

/// Discrete boundary closure: p_0 = 1 - S_f and the p_1 value obtained by
/// eliminating the ghost node with the smooth-pasting conditions.
BoundaryPair boundary_pair(double sf_next, const GridSpec& grid, const ModelParams& params);

struct StepSolverConfig {
    double residual_tol = 1e-12; // absolute tolerance on the scalar front residual
    double sf_tol = 1e-14;      // absolute tolerance on successive S_f iterates
    int max_iters = 100;        // cap on residual evaluations per step
    double bracket_floor = 1e-6; // smallest admissible S_f during the root search
};

/// Residual of the per-step nonlinear system, rows j = 1..J, evaluated at a
/// candidate interior vector (p_2..p_J) and front value. Row 1 couples only
/// p_2 and S_f through the boundary closure; row J carries an implicit zero
/// ghost value beyond x_inf.
///
/// The level-n value of p_1 entering row 1 is taken as the boundary closure
/// at the level-n front (identical to the stored value for every state the
/// solver produces, and the convention that reproduces the published
/// free-boundary sequences from the all-zero initial data).
std::vector<double> assemble_residual(const FrontFixedState& state_n,
                                      std::span<const double> candidate_p,
                                      double candidate_sf, const GridSpec& grid,
                                      const ModelParams& params,
                                      Exec exec = Exec::Parallel);

struct StepStats {
    int residual_evaluations = 0;
    double residual_norm = 0.0;
    bool lu_fallback = false;
};

/// Advance one time level: for a trial front value the rows j = 2..J form a
/// tridiagonal system solved by the Thomas algorithm, and row 1 becomes a
/// scalar residual whose root in [bracket_floor, S_f^n] is found by a
/// safeguarded bracketed secant with bisection fallback.
FrontFixedState step(const FrontFixedState& state_n, const GridSpec& grid,
                     const ModelParams& params, const StepSolverConfig& cfg = {},
                     StepStats* stats = nullptr);

struct SolveStats {
    long long residual_evaluations = 0;
    int max_step_iterations = 0;
    int lu_fallback_steps = 0;
    double wall_seconds = 0.0;
};

/// March the implicit scheme from the initial state over all N levels.
FrontFixedSolution solve(const ModelParams& params, const GridSpec& grid,
                         const StepSolverConfig& cfg = {}, SolveStats* stats = nullptr);

} // namespace frontfix
