#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pairgen/quadrature.hpp"
#include "pairgen/roots.hpp"
#include "pairgen/spline.hpp"

using namespace pairgen;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const auto q = numeric::gauss_legendre(8);
    double s = 0.0;
    for (size_t i = 0; i < 8; ++i) s += q.weights[i];
    CHECK(s == Catch::Approx(2.0).epsilon(1e-14));

    // degree-15 polynomial is exact for an 8-point rule
    double p = 0.0;
    for (size_t i = 0; i < 8; ++i) p += q.weights[i] * std::pow(q.nodes[i], 14);
    CHECK(p == Catch::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("gauss-legendre on a mapped interval") {
    const double val = numeric::integrate_gl([](double x) { return std::sin(x); }, 0.0, pi, 32, 2);
    CHECK(val == Catch::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("gauss-legendre nodes are deterministic") {
    const auto a = numeric::gauss_legendre(64);
    const auto b = numeric::gauss_legendre(64);
    for (size_t i = 0; i < 64; ++i) {
        CHECK(a.nodes[i] == b.nodes[i]);
        CHECK(a.weights[i] == b.weights[i]);
    }
}

TEST_CASE("cubic spline reproduces a smooth function and its derivative") {
    std::vector<double> x, y;
    for (int i = 0; i <= 40; ++i) {
        const double t = i / 40.0 * 2.0;
        x.push_back(t);
        y.push_back(std::exp(-t) * std::cos(3.0 * t));
    }
    numeric::CubicSpline s(x, y);
    for (double t = 0.05; t < 2.0; t += 0.083) {
        const double exact = std::exp(-t) * std::cos(3.0 * t);
        const double dexact = -std::exp(-t) * (std::cos(3.0 * t) + 3.0 * std::sin(3.0 * t));
        CHECK(std::abs(s(t) - exact) < 2e-5);
        CHECK(std::abs(s.derivative(t) - dexact) < 3e-3);
    }
    CHECK_THROWS_AS(s(2.5), DomainError);
}

TEST_CASE("brent finds a simple root") {
    auto f = [](double x) { return std::cos(x) - x; };
    const double r = numeric::brent(f, 0.0, 1.5, f(0.0), f(1.5));
    CHECK(std::abs(f(r)) < 1e-14);
}

TEST_CASE("sinc limits") {
    CHECK(numeric::sinc(0.0) == 1.0);
    CHECK(numeric::sinc(pi) == Catch::Approx(0.0).margin(1e-15));
    CHECK(numeric::sinc(1.3) == Catch::Approx(std::sin(1.3) / 1.3).epsilon(1e-15));
}

TEST_CASE("trapezoid weights") {
    const auto w = numeric::trapezoid_weights(5, 0.5);
    CHECK(w[0] == 0.25);
    CHECK(w[2] == 0.5);
    CHECK(w[4] == 0.25);
}
