#include "frontfix/types.hpp"
#include "frontfix/errors.hpp"

#include <cmath>
#include <string>

namespace frontfix {

void ModelParams::validate() const {
    if (!(r > 0.0)) throw InvalidArgument("ModelParams: r must be positive, got " + std::to_string(r));
    if (!(sigma > 0.0)) throw InvalidArgument("ModelParams: sigma must be positive, got " + std::to_string(sigma));
    if (!(T > 0.0)) throw InvalidArgument("ModelParams: T must be positive, got " + std::to_string(T));
    if (!(E > 0.0)) throw InvalidArgument("ModelParams: E must be positive, got " + std::to_string(E));
}

GridSpec build_grid(double x_inf, int J, double mu, double T) {
    if (!(x_inf > 0.0)) throw InvalidArgument("build_grid: x_inf must be positive");
    if (J < 3) throw InvalidArgument("build_grid: J must be at least 3, got " + std::to_string(J));
    if (!(mu > 0.0)) throw InvalidArgument("build_grid: mu must be positive");
    if (!(T > 0.0)) throw InvalidArgument("build_grid: T must be positive");

    GridSpec g;
    g.x_inf = x_inf;
    g.J = J;
    g.mu = mu;
    g.dx = x_inf / static_cast<double>(J);
    g.dtau = mu * g.dx * g.dx;

    // Minimal N with N*dtau >= T, robust to T/dtau landing on an integer.
    double q = T / g.dtau;
    auto n = static_cast<long long>(std::floor(q));
    while (static_cast<double>(n) * g.dtau < T) ++n;
    while (n > 1 && static_cast<double>(n - 1) * g.dtau >= T) --n;
    g.N = static_cast<int>(n);
    return g;
}

FrontFixedState initial_state(const GridSpec& grid) {
    FrontFixedState s;
    s.p.assign(static_cast<std::size_t>(grid.J) + 1, 0.0);
    s.S_f = 1.0;
    s.n = 0;
    return s;
}

std::vector<double> FrontFixedSolution::front_path() const {
    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(s.S_f);
    return out;
}

} // namespace frontfix
