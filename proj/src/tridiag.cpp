#include "frontfix/tridiag.hpp"
#include "frontfix/errors.hpp"

#include <cmath>
#include <cstddef>

namespace frontfix {

ConstTridiagonal::ConstTridiagonal(double sub, double diag, double super)
    : a_(sub), b_(diag), c_(super) {
    dominant_ = std::abs(b_) >= std::abs(a_) + std::abs(c_);
}

void ConstTridiagonal::solve(std::span<const double> rhs, std::vector<double>& x) const {
    if (rhs.size() < 2) throw InvalidArgument("ConstTridiagonal: need at least 2 rows");
    if (dominant_) {
        solve_thomas(rhs, x);
    } else {
        solve_dense(rhs, x);
    }
}

void ConstTridiagonal::solve_thomas(std::span<const double> rhs, std::vector<double>& x) const {
    const std::size_t n = rhs.size();
    x.resize(n);
    std::vector<double> cp(n);
    double beta = b_;
    cp[0] = c_ / beta;
    x[0] = rhs[0] / beta;
    for (std::size_t i = 1; i < n; ++i) {
        beta = b_ - a_ * cp[i - 1];
        cp[i] = (i + 1 < n) ? c_ / beta : 0.0;
        x[i] = (rhs[i] - a_ * x[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
}

void ConstTridiagonal::solve_dense(std::span<const double> rhs, std::vector<double>& x) const {
    const std::size_t n = rhs.size();
    std::vector<double> m(n * n, 0.0);
    x.assign(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) m[i * n + i - 1] = a_;
        m[i * n + i] = b_;
        if (i + 1 < n) m[i * n + i + 1] = c_;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i * n + k]) > std::abs(m[piv * n + k])) piv = i;
        if (m[piv * n + k] == 0.0) throw Error("ConstTridiagonal: singular matrix");
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
            std::swap(x[k], x[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = m[i * n + k] / m[k * n + k];
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
            x[i] -= f * x[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m[i * n + j] * x[j];
        x[i] = s / m[i * n + i];
    }
}

} // namespace frontfix
