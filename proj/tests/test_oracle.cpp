#include <doctest.h>

#include <cmath>
#include <vector>

#include "horoflow/caps.hpp"
#include "horoflow/grid.hpp"
#include "horoflow/oracle.hpp"

using namespace horoflow;

TEST_CASE("convergence_order on exact geometric sequences") {
    const auto o = convergence_order(4.0e-3, 1.0e-3, 0.25e-3);
    CHECK(o.conclusive);
    CHECK(o.value() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(o.p_cm == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("convergence_order flags stagnation and non-monotone sequences") {
    CHECK_FALSE(convergence_order(1e-3, 1e-3, 1e-3).conclusive);
    CHECK_FALSE(convergence_order(1e-3, 2e-3, 0.5e-3).conclusive);
    // Disagreeing ratios (order 2 then order 1) are inconclusive too.
    CHECK_FALSE(convergence_order(4e-3, 1e-3, 0.5e-3).conclusive);
    CHECK_THROWS(convergence_order(0.0, 1e-3, 1e-4));
}

TEST_CASE("adaptive quadrature on elementary integrals") {
    const double a = integrate_adaptive([](double b) { return std::sin(b); }, 0.0, kHalfPi);
    CHECK(a == doctest::Approx(1.0).epsilon(1e-12));

    // Antiderivative 1/(1+cos b): value 1 - 1/2 at the endpoints.
    const double b = integrate_adaptive(
        [](double t) {
            const double c = 1.0 + std::cos(t);
            return std::sin(t) / (c * c);
        },
        0.0, kHalfPi);
    CHECK(b == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature error control on a peaked integrand") {
    // Steep but integrable: int_0^1 1/sqrt(x) dx = 2, endpoint singularity.
    const double v = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x + 1e-12); },
                                        0.0, 1.0, 1e-10);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("gauss_legendre integrates high-degree monomials exactly") {
    const auto [x, w] = gauss_legendre(16);
    double sum = 0.0;
    for (int i = 0; i < 16; ++i) sum += w[i] * std::pow(x[i], 30);
    CHECK(sum == doctest::Approx(2.0 / 31.0).epsilon(1e-13));
    double total = 0.0;
    for (double wi : w) total += wi;
    CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("volume_inner_integral matches the closed-form antiderivative, n = 2") {
    // int_0^r s^2/(1+sc)^3 ds = (1/c^3) [ln w + 2/w - 1/(2 w^2)] over [1, 1+rc].
    auto exact = [](double r, double c) {
        const double w = 1.0 + r * c;
        const double at = [](double t) { return std::log(t) + 2.0 / t - 0.5 / (t * t); }(w);
        const double a0 = 2.0 - 0.5;
        return (at - a0) / (c * c * c);
    };
    for (double c : {0.3, 0.7, 1.0})
        for (double r : {0.5, 1.0, 2.0})
            CHECK(volume_inner_integral(r, c, 2) == doctest::Approx(exact(r, c)).epsilon(1e-12));
    // c -> 0 limit: r^3/3.
    CHECK(volume_inner_integral(1.5, 0.0, 2) == doctest::Approx(1.5 * 1.5 * 1.5 / 3.0).epsilon(1e-13));
}

TEST_CASE("fd_curvature_oracle: free-boundary cap has H = n/r everywhere") {
    const GridSpec grid = build_grid(2, GridMode::axisymmetric, 64);
    std::vector<double> rho(grid.n_beta, 1.0);
    const auto H = fd_curvature_oracle(grid, rho);
    for (double h : H) CHECK(h == doctest::Approx(2.0).epsilon(5e-3));
}

TEST_CASE("fd_curvature_oracle converges to the cap curvature") {
    const CapSpec spec{0.5, 1.0, 2};
    double err[3];
    int k = 0;
    for (int nb : {64, 128, 256}) {
        const GridSpec grid = build_grid(2, GridMode::axisymmetric, nb);
        std::vector<double> rho(grid.n_beta);
        for (int i = 0; i < grid.n_beta; ++i) rho[i] = profile_rho(spec, grid.beta(i));
        const auto H = fd_curvature_oracle(grid, rho);
        double e = 0.0;
        for (double h : H) e = std::max(e, std::abs(h - 1.0));
        err[k++] = e;
    }
    const auto o = convergence_order(err[0], err[1], err[2]);
    CHECK(o.conclusive);
    CHECK(o.value() >= 1.9);
    CHECK(err[2] <= 1e-3);
}

TEST_CASE("static residual order sits in the expected window") {
    double err[3];
    int k = 0;
    for (int nb : {64, 128, 256})
        err[k++] = static_residual({0.5, 1.0, 2}, build_grid(2, GridMode::axisymmetric, nb)).sup_G;
    const auto o = convergence_order(err[0], err[1], err[2]);
    CHECK(o.conclusive);
    CHECK(o.value() >= 1.9);
    CHECK(o.value() <= 2.3);
}
