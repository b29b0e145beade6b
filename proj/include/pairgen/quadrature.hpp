#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "pairgen/constants.hpp"

namespace pairgen::numeric {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline QuadRule gauss_legendre(size_t n) {
    QuadRule q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const size_t m = (n + 1) / 2;
    for (size_t i = 0; i < m; ++i) {
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            pp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    return q;
}

/// Same rule mapped onto [a, b].
inline QuadRule gauss_legendre(size_t n, double a, double b) {
    QuadRule q = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (size_t i = 0; i < n; ++i) {
        q.nodes[i] = mid + half * q.nodes[i];
        q.weights[i] *= half;
    }
    return q;
}

/// Composite Gauss-Legendre integral of f over [a, b] split into nseg segments.
template <typename F>
double integrate_gl(F&& f, double a, double b, size_t pts_per_seg = 32, size_t nseg = 1) {
    const QuadRule base = gauss_legendre(pts_per_seg);
    double total = 0.0;
    for (size_t s = 0; s < nseg; ++s) {
        const double x0 = a + (b - a) * static_cast<double>(s) / static_cast<double>(nseg);
        const double x1 = a + (b - a) * static_cast<double>(s + 1) / static_cast<double>(nseg);
        const double mid = 0.5 * (x0 + x1), half = 0.5 * (x1 - x0);
        double seg = 0.0;
        for (size_t i = 0; i < pts_per_seg; ++i)
            seg += base.weights[i] * f(mid + half * base.nodes[i]);
        total += seg * half;
    }
    return total;
}

/// Trapezoid weights for a uniform grid of n points with spacing h.
inline std::vector<double> trapezoid_weights(size_t n, double h) {
    std::vector<double> w(n, h);
    if (n >= 2) {
        w.front() = 0.5 * h;
        w.back() = 0.5 * h;
    }
    return w;
}

inline double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

} // namespace pairgen::numeric
