#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pairgen/constants.hpp"
#include "pairgen/sellmeier.hpp"

using namespace pairgen;
using namespace pairgen::material;

namespace {

// Independent 5-point central-difference oracle for the omega derivatives.
struct FdDerivs {
    double d1, d2;
};
FdDerivs fd_oracle(const SellmeierModel& m, double omega, double rel_h = 1e-6) {
    const double h = rel_h * omega;
    const double nm2 = refractive_index_omega(m, omega - 2 * h);
    const double nm1 = refractive_index_omega(m, omega - h);
    const double n0 = refractive_index_omega(m, omega);
    const double np1 = refractive_index_omega(m, omega + h);
    const double np2 = refractive_index_omega(m, omega + 2 * h);
    return {(nm2 - 8 * nm1 + 8 * np1 - np2) / (12 * h),
            (-nm2 + 16 * nm1 - 30 * n0 + 16 * np1 - np2) / (12 * h * h)};
}

} // namespace

TEST_CASE("fused silica index at the two working wavelengths") {
    const auto silica = fused_silica_malitson();
    // frozen from a high-precision evaluation of the same Sellmeier sum
    CHECK(refractive_index(silica, 532e-9) == Catch::Approx(1.46070634489).epsilon(1e-9));
    CHECK(refractive_index(silica, 1596e-9) == Catch::Approx(1.44346778898).epsilon(1e-9));
    CHECK(std::abs(refractive_index(silica, 532e-9) - 1.4607) < 5e-4);
    CHECK(std::abs(refractive_index(silica, 1596e-9) - 1.4438) < 5e-4);
}

TEST_CASE("empty oscillator sum gives vacuum index") {
    SellmeierModel m;
    m.lambda_min_um = 0.1;
    m.lambda_max_um = 10.0;
    CHECK(refractive_index(m, 1e-6) == 1.0);
    SellmeierModel zero_strength;
    zero_strength.terms = {{0.0, 0.5}};
    zero_strength.lambda_min_um = 0.1;
    zero_strength.lambda_max_um = 10.0;
    CHECK(refractive_index(zero_strength, 1e-6) == 1.0);
}

TEST_CASE("index evaluation is pure and deterministic") {
    const auto silica = fused_silica_malitson();
    const double a = refractive_index(silica, 1.234e-6);
    const double b = refractive_index(silica, 1.234e-6);
    CHECK(a == b);
}

TEST_CASE("index is monotonically decreasing over the normal-dispersion window") {
    const auto silica = fused_silica_malitson();
    double prev = refractive_index(silica, 0.4e-6);
    for (int i = 1; i <= 100; ++i) {
        const double lam = 0.4e-6 + (1.8e-6 - 0.4e-6) * i / 100;
        const double n = refractive_index(silica, lam);
        CHECK(n < prev);
        CHECK(n > 1.0);
        prev = n;
    }
}

TEST_CASE("domain errors") {
    const auto silica = fused_silica_malitson();
    CHECK_THROWS_AS(refractive_index(silica, 0.1e-6), DomainError);
    CHECK_THROWS_AS(refractive_index(silica, 5e-6), DomainError);
    SellmeierModel pole;
    pole.terms = {{1.0, 0.5}};
    pole.lambda_min_um = 0.3;
    pole.lambda_max_um = 0.8;
    CHECK_THROWS_AS(refractive_index(pole, 0.5e-6), DomainError);
}

TEST_CASE("analytic derivatives: dispersionless model") {
    const auto vac = constant_index(1.0);
    const auto d = index_derivatives(vac, omega_of_lambda(1e-6));
    CHECK(d.n == 1.0);
    CHECK(d.dn_domega == 0.0);
    CHECK(d.d2n_domega2 == 0.0);
}

TEST_CASE("analytic derivatives match the finite-difference oracle") {
    const auto silica = fused_silica_malitson();
    {
        const double w = omega_of_lambda(1596e-9);
        const auto an = index_derivatives(silica, w);
        const auto fd = fd_oracle(silica, w);
        CHECK(std::abs(an.dn_domega - fd.d1) / std::abs(fd.d1) < 1e-6);
        CHECK(std::abs(an.d2n_domega2 - fd.d2) / std::abs(fd.d2) < 1e-5);
    }
    {
        const double w = omega_of_lambda(532e-9);
        const auto an = index_derivatives(silica, w);
        const auto fd = fd_oracle(silica, w);
        CHECK(std::abs(an.dn_domega - fd.d1) / std::abs(fd.d1) < 1e-6);
        CHECK(std::abs(an.d2n_domega2 - fd.d2) / std::abs(fd.d2) < 1e-5);
    }
}

TEST_CASE("derivative sweep across the working window") {
    const auto silica = fused_silica_malitson();
    for (int i = 0; i <= 100; ++i) {
        const double lam = 0.45e-6 + (1.7e-6 - 0.45e-6) * i / 100;
        const double w = omega_of_lambda(lam);
        const auto an = index_derivatives(silica, w);
        const auto fd = fd_oracle(silica, w);
        REQUIRE(std::abs(an.dn_domega - fd.d1) / std::abs(fd.d1) < 1e-5);
        REQUIRE(std::abs(an.d2n_domega2 - fd.d2) / std::abs(fd.d2) < 1e-5);
    }
}

TEST_CASE("frozen derivative values at the band centres") {
    const auto silica = fused_silica_malitson();
    const auto d_seed = index_derivatives(silica, omega_of_lambda(1596e-9));
    CHECK(d_seed.dn_domega == Catch::Approx(1.648072968e-17).epsilon(1e-6));
    CHECK(d_seed.d2n_domega2 == Catch::Approx(-3.645487178e-32).epsilon(1e-5));
    const auto d_pump = index_derivatives(silica, omega_of_lambda(532e-9));
    CHECK(d_pump.dn_domega == Catch::Approx(6.95798608e-18).epsilon(1e-6));
    CHECK(d_pump.d2n_domega2 == Catch::Approx(1.639420115e-33).epsilon(1e-5));
}
