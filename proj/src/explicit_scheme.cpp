#include "frontfix/explicit_scheme.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "frontfix/errors.hpp"
#include "frontfix/implicit.hpp"

namespace frontfix {

FrontFixedState explicit_step(const FrontFixedState& state_n, const GridSpec& grid,
                              const ModelParams& params, Exec exec) {
    const int J = grid.J;
    if (state_n.p.size() != static_cast<std::size_t>(J) + 1)
        throw InvalidArgument("explicit_step: state vector must have length J+1");
    if (!(state_n.S_f > 0.0 && state_n.S_f <= 1.0))
        throw InvalidArgument("explicit_step: state front value must lie in (0, 1]");

    const double sig2 = params.sigma * params.sigma;
    const double dx = grid.dx;
    const double dtau = grid.dtau;
    const double mu = grid.mu;
    const double drift = params.r - 0.5 * sig2;
    const double sf = state_n.S_f;
    const double diff_w = 0.5 * mu * sig2;
    const double drift_w = 0.5 * mu * dx * drift;
    const double decay = 1.0 - params.r * dtau;

    const double p0 = 1.0 - sf;
    const double p1 = boundary_pair(sf, grid, params).p1;
    const double p2 = state_n.p[2];

    // j = 1 update equated with the closure at S_f^{n+1} pins the front.
    const double base1 = p1 * decay + diff_w * (p0 - 2.0 * p1 + p2) + drift_w * (p2 - p0);
    const double k1 = (p2 - p0) / (2.0 * dx * sf);
    const double closure_slope = 1.0 + dx + 0.5 * dx * dx;
    const double denom = closure_slope + k1;
    if (std::abs(denom) < 1e-300)
        throw InstabilityError("explicit_step: degenerate front equation", state_n.n + 1);
    const double sf_next =
        (1.0 + params.r * dx * dx / sig2 - base1 + k1 * sf) / denom;
    if (!std::isfinite(sf_next) || !(sf_next > 0.0 && sf_next <= sf + 1e-12))
        throw InstabilityError("explicit_step: front value " + std::to_string(sf_next) +
                                   " left (0, S_f^n] at step " + std::to_string(state_n.n + 1),
                               state_n.n + 1);

    FrontFixedState next;
    next.p.assign(state_n.p.size(), 0.0);
    const double conv_w = (sf_next - sf) / (sf * 2.0 * dx);
    const auto upper = static_cast<std::ptrdiff_t>(J);
    auto update = [&](std::ptrdiff_t j) -> double {
        const double pl = (j == 2) ? p1 : state_n.p[j - 1];
        const double pc = state_n.p[j];
        const double pr = (j < J) ? state_n.p[j + 1] : 0.0; // zero ghost beyond x_inf
        return pc * decay + diff_w * (pl - 2.0 * pc + pr) + (drift_w + conv_w) * (pr - pl);
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) if (upper > 4096)
        for (std::ptrdiff_t j = 2; j <= upper; ++j) next.p[j] = update(j);
    } else {
        for (std::ptrdiff_t j = 2; j <= upper; ++j) next.p[j] = update(j);
    }
    BoundaryPair bp = boundary_pair(sf_next, grid, params);
    next.p[0] = bp.p0;
    next.p[1] = bp.p1;
    next.S_f = sf_next;
    next.n = state_n.n + 1;

    for (double v : next.p) {
        if (!std::isfinite(v) || std::abs(v) > 10.0)
            throw OverflowError("explicit_step: solution magnitude exceeded 10 at step " +
                                    std::to_string(next.n),
                                next.n);
    }
    return next;
}

FrontFixedSolution explicit_solve(const ModelParams& params, const GridSpec& grid, Exec exec) {
    params.validate();
    FrontFixedSolution sol;
    sol.grid = grid;
    sol.params = params;
    sol.states.reserve(static_cast<std::size_t>(grid.N) + 1);
    sol.states.push_back(initial_state(grid));
    for (int n = 0; n < grid.N; ++n)
        sol.states.push_back(explicit_step(sol.states.back(), grid, params, exec));
    return sol;
}

} // namespace frontfix
