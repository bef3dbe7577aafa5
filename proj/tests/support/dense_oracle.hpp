#pragma once

// Test-only reference solver: the per-step nonlinear system solved by damped
// Newton on all J unknowns (p_2..p_J, S_f) with a finite-difference Jacobian
// and partial-pivot elimination. Written straight from the scheme formulas,
// independent of the production tridiagonal-plus-bracket path.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "frontfix/types.hpp"

namespace oracle {

struct Result {
    std::vector<double> p; // full vector p_0..p_J
    double S_f;
};

inline std::vector<double> residual(const frontfix::FrontFixedState& state,
                                    const std::vector<double>& z, const frontfix::GridSpec& g,
                                    const frontfix::ModelParams& m) {
    const int J = g.J;
    const double sig2 = m.sigma * m.sigma;
    const double sf = z[static_cast<std::size_t>(J) - 1];
    const double sf_n = state.S_f;
    const double ft = (sf - sf_n) / (sf * 2.0 * g.dx);
    const double a = 0.5 * g.mu * (-sig2 + (m.r - 0.5 * sig2) * g.dx) + ft;
    const double b = 1.0 + g.mu * sig2 + m.r * g.dtau;
    const double c = 0.5 * g.mu * (-sig2 - (m.r - 0.5 * sig2) * g.dx) - ft;
    auto closure = [&](double s) {
        return 1.0 + m.r * g.dx * g.dx / sig2 - (1.0 + g.dx + 0.5 * g.dx * g.dx) * s;
    };
    const double p1_next = closure(sf);
    const double p1_level_n = closure(sf_n);

    std::vector<double> F(static_cast<std::size_t>(J));
    F[0] = c * z[0] - (p1_level_n - a * (1.0 - sf) - b * p1_next);
    F[1] = b * z[0] + c * z[1] - (state.p[2] - a * p1_next);
    for (int j = 3; j <= J - 1; ++j)
        F[static_cast<std::size_t>(j) - 1] =
            a * z[static_cast<std::size_t>(j) - 3] + b * z[static_cast<std::size_t>(j) - 2] +
            c * z[static_cast<std::size_t>(j) - 1] - state.p[static_cast<std::size_t>(j)];
    F[static_cast<std::size_t>(J) - 1] = a * z[static_cast<std::size_t>(J) - 3] +
                                         b * z[static_cast<std::size_t>(J) - 2] -
                                         state.p[static_cast<std::size_t>(J)];
    return F;
}

inline double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline std::vector<double> lu_solve(std::vector<double> A, std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A[i * n + k]) > std::abs(A[piv * n + k])) piv = i;
        if (A[piv * n + k] == 0.0) throw std::runtime_error("oracle: singular Jacobian");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A[k * n + j], A[piv * n + j]);
            std::swap(rhs[k], rhs[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = A[i * n + k] / A[k * n + k];
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) A[i * n + j] -= f * A[k * n + j];
            rhs[i] -= f * rhs[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A[i * n + j] * rhs[j];
        rhs[i] = s / A[i * n + i];
    }
    return rhs;
}

inline Result newton_step(const frontfix::FrontFixedState& state, const frontfix::GridSpec& g,
                          const frontfix::ModelParams& m, double tol = 1e-14,
                          int max_iters = 200) {
    const std::size_t n = static_cast<std::size_t>(g.J);
    std::vector<double> z(n);
    for (std::size_t i = 0; i + 1 < n; ++i) z[i] = state.p[i + 2];
    z[n - 1] = state.S_f;

    std::vector<double> F = residual(state, z, g, m);
    for (int it = 0; it < max_iters; ++it) {
        if (max_norm(F) <= tol) break;
        std::vector<double> Jac(n * n);
        for (std::size_t col = 0; col < n; ++col) {
            double h = 1e-7 * std::max(1.0, std::abs(z[col]));
            std::vector<double> zp = z;
            zp[col] += h;
            std::vector<double> Fp = residual(state, zp, g, m);
            for (std::size_t row = 0; row < n; ++row) Jac[row * n + col] = (Fp[row] - F[row]) / h;
        }
        std::vector<double> dz = lu_solve(Jac, F);
        double lambda = 1.0;
        std::vector<double> z_new(n), F_new;
        double f0 = max_norm(F);
        for (int half = 0; half < 60; ++half) {
            for (std::size_t i = 0; i < n; ++i) z_new[i] = z[i] - lambda * dz[i];
            if (z_new[n - 1] > 0.0) {
                F_new = residual(state, z_new, g, m);
                if (max_norm(F_new) < f0) break;
            }
            lambda *= 0.5;
        }
        z = z_new;
        F = F_new.empty() ? residual(state, z, g, m) : F_new;
    }
    if (max_norm(F) > tol) throw std::runtime_error("oracle: Newton did not converge");

    Result r;
    r.S_f = z[n - 1];
    r.p.assign(state.p.size(), 0.0);
    const double sig2 = m.sigma * m.sigma;
    r.p[0] = 1.0 - r.S_f;
    r.p[1] = 1.0 + m.r * g.dx * g.dx / sig2 - (1.0 + g.dx + 0.5 * g.dx * g.dx) * r.S_f;
    for (std::size_t i = 0; i + 1 < n; ++i) r.p[i + 2] = z[i];
    return r;
}

} // namespace oracle
