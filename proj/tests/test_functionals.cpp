#include <doctest.h>

#include <cmath>

#include "horoflow/caps.hpp"
#include "horoflow/functionals.hpp"
#include "horoflow/oracle.hpp"

using namespace horoflow;

namespace {

FlowState perturbed_cap(const CapSpec& spec, int n_beta, double eps) {
    const GridSpec g = build_grid(spec.n, GridMode::axisymmetric, n_beta);
    FlowState st;
    st.u = cap_field(spec, g);
    st.cos_theta = spec.cos_theta;
    for (int i = 0; i < g.n_beta; ++i) {
        const double b = g.beta(i);
        st.u.at(i) += std::log(1.0 + eps * std::cos(2 * b) + 0.4 * eps * std::cos(4 * b));
    }
    return st;
}

FlowState cap_state(const CapSpec& spec, int n_beta) { return perturbed_cap(spec, n_beta, 0.0); }

}  // namespace

TEST_CASE("area of free-boundary caps: closed form 2 pi r^2 / (1 + r)") {
    double err1[3], err2[3];
    int k = 0;
    for (int nb : {65, 129, 257}) {
        err1[k] = std::abs(area(cap_state({0.0, 1.0, 2}, nb)) - kPi);
        err2[k] = std::abs(area(cap_state({0.0, 2.0, 2}, nb)) - 8.0 * kPi / 3.0);
        ++k;
    }
    CHECK(err1[2] <= 1e-4);
    CHECK(err2[2] <= 1e-3);
    for (auto* e : {&err1, &err2}) {
        const auto o = convergence_order((*e)[0], (*e)[1], (*e)[2]);
        CHECK(o.conclusive);
        CHECK(o.value() >= 1.9);
    }
}

TEST_CASE("wetted area of caps is the flat disk area pi r^2 sin^2 theta") {
    for (double c : {-0.5, 0.0, 0.6}) {
        for (double r : {0.5, 1.0, 2.0}) {
            const FlowState st = cap_state({c, r, 2}, 64);
            const double expected = kPi * r * r * (1.0 - c * c);
            CHECK(wetted_area(st) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    // Degenerate boundary radius.
    const GridSpec g = build_grid(2, GridMode::axisymmetric, 16);
    FlowState tiny;
    tiny.u = Field(g, std::log(1e-8));
    tiny.cos_theta = 0.0;
    CHECK(wetted_area(tiny) <= 1e-15);
}

TEST_CASE("energy is exactly area minus cos(theta) times wetted area") {
    const FlowState st = perturbed_cap({0.5, 1.0, 2}, 64, 0.05);
    const DiagnosticsRecord rec = diagnostics_row(st, 0, 0.0, 0.0);
    CHECK(rec.energy == rec.area - st.cos_theta * rec.wet);
    CHECK(energy(st) == doctest::Approx(rec.energy).epsilon(1e-15));
}

TEST_CASE("enclosed volume: small-cap asymptotics and monotonicity") {
    const double r = 1e-3;
    const FlowState tiny = cap_state({0.0, r, 2}, 64);
    CHECK(enclosed_volume(tiny) ==
          doctest::Approx(2.0 * kPi / 3.0 * r * r * r).epsilon(3 * r));

    double prev = 0.0;
    for (double rr : {0.5, 1.0, 1.5, 2.0}) {
        const double v = enclosed_volume(cap_state({0.3, rr, 2}, 64));
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("enclosed volume agrees with the adaptive cap volume on fine grids") {
    const CapSpec spec{0.0, 1.0, 2};
    const double fine = enclosed_volume(cap_state(spec, 16385));
    CHECK(std::abs(fine - cap_volume(spec)) <= 1e-8);
}

TEST_CASE("weighted balance residual: free boundary constant graphs cancel exactly") {
    const GridSpec g = build_grid(2, GridMode::axisymmetric, 64);
    FlowState st;
    st.u = Field(g, std::log(1.7));
    st.cos_theta = 0.0;
    CHECK(std::abs(minkowski_residual(st)) <= 1e-14);
}

TEST_CASE("weighted balance residual vanishes pointwise on analytic caps") {
    for (double c : {-0.5, 0.5}) {
        const CapSpec spec{c, 1.0, 2};
        const GridSpec g = build_grid(2, GridMode::axisymmetric, 256);
        CHECK(std::abs(minkowski_residual(cap_geometry(spec, g))) <= 1e-12);
        CHECK(std::abs(sigma2_residual(cap_geometry(spec, g))) <= 1e-12);
    }
}

TEST_CASE("weighted balance and sigma2 residuals are second order on graphs") {
    double em[3], es[3];
    int k = 0;
    for (int nb : {64, 128, 256}) {
        const FlowState st = perturbed_cap({0.5, 1.0, 2}, nb, 0.05);
        em[k] = std::abs(minkowski_residual(st));
        es[k] = std::abs(sigma2_residual(st));
        ++k;
    }
    for (auto* e : {&em, &es}) {
        const auto o = convergence_order((*e)[0], (*e)[1], (*e)[2]);
        CHECK(o.conclusive);
        CHECK(o.value() >= 1.9);
    }
}

TEST_CASE("sigma2 and deficit refuse full2d geometry") {
    const GridSpec g = build_grid(2, GridMode::full2d, 16, 16);
    FlowState st;
    st.u = Field(g, 0.0);
    st.cos_theta = 0.0;
    CHECK_THROWS(sigma2_residual(compute_geometry(st)));
    CHECK_THROWS(umbilicity_deficit(compute_geometry(st)));
    // diagnostics_row falls back to the xi-averaged profile instead.
    const DiagnosticsRecord rec = diagnostics_row(st, 0, 0.0, 0.0);
    CHECK(std::isfinite(rec.sigma2_residual));
    CHECK(std::isfinite(rec.umbilicity_deficit));
}

TEST_CASE("umbilicity deficit: fourth-order small on caps, positive off-family") {
    const double d64 = umbilicity_deficit(cap_state({0.5, 1.0, 2}, 64));
    const double d128 = umbilicity_deficit(cap_state({0.5, 1.0, 2}, 128));
    const double h64 = kHalfPi / 63;
    CHECK(d64 <= 100.0 * h64 * h64 * h64 * h64);
    CHECK(d64 / d128 >= 12.0);  // ~16 for a clean h^4 quantity

    CHECK(umbilicity_deficit(perturbed_cap({0.5, 1.0, 2}, 64, 0.05)) > 1e-4);
}

TEST_CASE("diagnostics record carries the cap-radius extremes") {
    const FlowState st = perturbed_cap({0.5, 1.0, 2}, 64, 0.05);
    const DiagnosticsRecord rec = diagnostics_row(st, 3, 0.5, 1e-3);
    CHECK(rec.step == 3);
    CHECK(rec.r_node_max > 1.0);
    CHECK(rec.r_node_min < 1.0);
    CHECK(rec.r_node_max <= 1.08);
    CHECK(rec.r_node_min >= 0.92);
    CHECK(rec.min_gXnu > 0.0);
}

TEST_CASE("identity residuals vanish on analytic caps in higher dimension") {
    const GridSpec g = build_grid(3, GridMode::axisymmetric, 128);
    const SurfaceGeometry geo = cap_geometry({0.4, 1.3, 3}, g);
    CHECK(std::abs(minkowski_residual(geo)) <= 1e-12);
    CHECK(std::abs(sigma2_residual(geo)) <= 1e-12);
    CHECK(umbilicity_deficit(geo) <= 1e-24);
}
