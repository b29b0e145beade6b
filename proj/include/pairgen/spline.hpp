#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "pairgen/errors.hpp"

namespace pairgen::numeric {

/// Natural cubic spline on a strictly increasing abscissa.
class CubicSpline {
public:
    CubicSpline() = default;

    CubicSpline(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const size_t n = x_.size();
        if (n < 3 || y_.size() != n) throw NumericalError("spline: need >= 3 nodes");
        for (size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1])) throw NumericalError("spline: abscissa not increasing");

        // Solve tridiagonal system for second derivatives (natural BCs).
        std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
        b[0] = b[n - 1] = 1.0;
        for (size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1];
            const double h1 = x_[i + 1] - x_[i];
            a[i] = h0 / 6.0;
            b[i] = (h0 + h1) / 3.0;
            c[i] = h1 / 6.0;
            r[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
        }
        m_.assign(n, 0.0);
        std::vector<double> cp(n, 0.0), rp(n, 0.0);
        cp[0] = c[0] / b[0];
        rp[0] = r[0] / b[0];
        for (size_t i = 1; i < n; ++i) {
            const double den = b[i] - a[i] * cp[i - 1];
            cp[i] = c[i] / den;
            rp[i] = (r[i] - a[i] * rp[i - 1]) / den;
        }
        m_[n - 1] = rp[n - 1];
        for (size_t i = n - 1; i-- > 0;) m_[i] = rp[i] - cp[i] * m_[i + 1];
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

    double operator()(double x) const {
        const size_t i = locate(x);
        const double h = x_[i + 1] - x_[i];
        const double A = (x_[i + 1] - x) / h;
        const double B = (x - x_[i]) / h;
        return A * y_[i] + B * y_[i + 1] +
               ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
    }

    double derivative(double x) const {
        const size_t i = locate(x);
        const double h = x_[i + 1] - x_[i];
        const double A = (x_[i + 1] - x) / h;
        const double B = (x - x_[i]) / h;
        return (y_[i + 1] - y_[i]) / h +
               ((3.0 * B * B - 1.0) * m_[i + 1] - (3.0 * A * A - 1.0) * m_[i]) * h / 6.0;
    }

private:
    size_t locate(double x) const {
        if (!(x >= x_.front() && x <= x_.back()))
            throw DomainError("spline: abscissa outside table range");
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        size_t i = static_cast<size_t>(it - x_.begin());
        if (i > 0) --i;
        if (i + 1 >= x_.size()) i = x_.size() - 2;
        return i;
    }

    std::vector<double> x_, y_, m_;
};

} // namespace pairgen::numeric
