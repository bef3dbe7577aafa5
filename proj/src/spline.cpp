#include "frontfix/spline.hpp"
#include "frontfix/errors.hpp"

#include <algorithm>
#include <cstddef>

namespace {

// General Thomas solve, coefficients given per row. No pivoting; the
// not-a-knot moment system is dominant for the mildly graded knot
// sequences this library produces.
void tridiag_solve(std::vector<double>& sub, std::vector<double>& diag,
                   std::vector<double>& super, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        double w = sub[i] / diag[i - 1];
        diag[i] -= w * super[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - super[i] * rhs[i + 1]) / diag[i];
}

} // namespace

namespace frontfix {

CubicSpline::CubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
    const std::size_t np = x_.size();
    if (np != y_.size()) throw InvalidArgument("CubicSpline: x/y size mismatch");
    if (np < 4) throw InvalidArgument("CubicSpline: not-a-knot needs at least 4 knots");
    for (std::size_t i = 1; i < np; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw InvalidArgument("CubicSpline: knots must be strictly increasing");

    const std::size_t n = np - 1; // intervals
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = x_[i + 1] - x_[i];

    // Moment system in M_1..M_{n-1}; the not-a-knot conditions eliminate
    // M_0 and M_n from the first and last rows.
    const std::size_t m = n - 1;
    std::vector<double> sub(m, 0.0), diag(m, 0.0), super(m, 0.0), rhs(m, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        rhs[i - 1] = (y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1];
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
        sub[i - 1] = h[i - 1] / 6.0;
        diag[i - 1] = (h[i - 1] + h[i]) / 3.0;
        super[i - 1] = h[i] / 6.0;
    }
    diag[0] = (h[0] / 6.0) * (1.0 + h[0] / h[1]) + (h[0] + h[1]) / 3.0;
    if (m > 1) super[0] = h[1] / 6.0 - h[0] * h[0] / (6.0 * h[1]);
    diag[m - 1] = (h[n - 1] / 6.0) * (1.0 + h[n - 1] / h[n - 2]) + (h[n - 2] + h[n - 1]) / 3.0;
    if (m > 1) sub[m - 1] = h[n - 2] / 6.0 - h[n - 1] * h[n - 1] / (6.0 * h[n - 2]);

    tridiag_solve(sub, diag, super, rhs);

    m_.assign(np, 0.0);
    for (std::size_t i = 1; i < n; ++i) m_[i] = rhs[i - 1];
    m_[0] = m_[1] * (1.0 + h[0] / h[1]) - m_[2] * (h[0] / h[1]);
    m_[n] = m_[n - 1] * (1.0 + h[n - 1] / h[n - 2]) - m_[n - 2] * (h[n - 1] / h[n - 2]);
}

double CubicSpline::operator()(double xq) const {
    const std::size_t np = x_.size();
    std::size_t i;
    if (xq <= x_[1]) {
        i = 0;
    } else if (xq >= x_[np - 2]) {
        i = np - 2;
    } else {
        i = static_cast<std::size_t>(
                std::upper_bound(x_.begin() + 1, x_.end() - 1, xq) - x_.begin()) - 1;
    }
    double h = x_[i + 1] - x_[i];
    double u = x_[i + 1] - xq;
    double v = xq - x_[i];
    return m_[i] * u * u * u / (6.0 * h) + m_[i + 1] * v * v * v / (6.0 * h) +
           (y_[i] / h - m_[i] * h / 6.0) * u + (y_[i + 1] / h - m_[i + 1] * h / 6.0) * v;
}

void CubicSpline::evaluate(std::span<const double> xq, std::span<double> out, Exec exec) const {
    if (xq.size() != out.size()) throw InvalidArgument("CubicSpline::evaluate: size mismatch");
    const auto n = static_cast<std::ptrdiff_t>(xq.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static) if (n > 2048)
        for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = (*this)(xq[k]);
    } else {
        for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = (*this)(xq[k]);
    }
}

} // namespace frontfix
