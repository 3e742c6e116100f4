#include "horoflow/caps.hpp"

#include <cmath>
#include <stdexcept>

#include "horoflow/flow.hpp"
#include "horoflow/functionals.hpp"
#include "horoflow/oracle.hpp"

namespace horoflow {

namespace {

void validate(const CapSpec& spec) {
    if (!(spec.cos_theta > -1.0 && spec.cos_theta < 1.0))
        throw std::invalid_argument("cap: contact angle must lie in (0, pi)");
    if (!(spec.r > 0.0))
        throw std::invalid_argument("cap: radius must be positive");
    if (spec.n < 2)
        throw std::invalid_argument("cap: dimension must be >= 2");
}

double root_term(const CapSpec& spec, double beta) {
    const double cs = spec.cos_theta * std::sin(beta);
    return std::sqrt(1.0 - cs * cs);
}

}  // namespace

double profile_rho(const CapSpec& spec, double beta) {
    validate(spec);
    return spec.r * (root_term(spec, beta) - spec.cos_theta * std::cos(beta));
}

double profile_slope(const CapSpec& spec, double beta) {
    return spec.cos_theta * std::sin(beta) / root_term(spec, beta);
}

double profile_slope_rate(const CapSpec& spec, double beta) {
    const double s = root_term(spec, beta);
    return spec.cos_theta * std::cos(beta) / (s * s * s);
}

double cap_curvature(const CapSpec& spec) {
    validate(spec);
    return 1.0 / spec.r - spec.cos_theta;
}

Field cap_field(const CapSpec& spec, const GridSpec& grid) {
    Field u(grid);
    for (int i = 0; i < grid.n_beta; ++i) {
        const double val = std::log(profile_rho(spec, grid.beta(i)));
        for (int j = 0; j < grid.ring_size(); ++j) u.at(i, j) = val;
    }
    return u;
}

SurfacePointData cap_point_data(const CapSpec& spec, double beta) {
    validate(spec);
    const int n = spec.n;
    const double rho = profile_rho(spec, beta);
    const double ub = profile_slope(spec, beta);
    SurfacePointData p = pointwise_frame(n, beta, 0.0, rho, ub, 0.0, ub * ub);
    p.has_hessian = true;
    p.hess_bb = profile_slope_rate(spec, beta);
    if (beta == 0.0) {
        p.trace = n * p.hess_bb;
    } else {
        p.trace = p.hess_bb + (n - 1) * (std::cos(beta) / std::sin(beta)) * ub;
    }
    return p;
}

SurfaceGeometry cap_geometry(const CapSpec& spec, const GridSpec& grid) {
    if (grid.mode != GridMode::axisymmetric)
        throw std::invalid_argument("cap_geometry: axisymmetric grids only");
    if (grid.n != spec.n)
        throw std::invalid_argument("cap_geometry: grid and cap dimensions differ");
    const int nb = grid.n_beta;
    SurfaceGeometry geo;
    geo.grid = grid;
    geo.cos_theta = spec.cos_theta;
    geo.rho.resize(nb);
    geo.v.resize(nb);
    geo.x_height.resize(nb);
    geo.gXnu.resize(nb);
    geo.gEnu.resize(nb);
    geo.gxnu.resize(nb);
    geo.H.resize(nb);
    geo.kappa_b.resize(nb);
    geo.kappa_x.resize(nb);
    geo.area_element.resize(nb);
    for (int i = 0; i < nb; ++i) {
        const SurfacePointData p = cap_point_data(spec, grid.beta(i));
        const SupportTriple s = support_functions(p);
        geo.rho[i] = p.rho;
        geo.v[i] = p.v;
        geo.x_height[i] = p.x_height;
        geo.gXnu[i] = s.gXnu;
        geo.gEnu[i] = s.gEnu;
        geo.gxnu[i] = s.gxnu;
        geo.H[i] = mean_curvature(p);
        const PrincipalCurvatures k = principal_curvatures_axisym(p);
        geo.kappa_b[i] = k.meridian;
        geo.kappa_x[i] = k.rotational;
        geo.area_element[i] = std::pow(p.rho / p.x_height, p.n) * p.v;
    }
    return geo;
}

double cap_volume(const CapSpec& spec, double tol, int inner_points) {
    validate(spec);
    const double shell = sphere_area(spec.n - 1);
    auto integrand = [&](double beta) {
        const double rho = profile_rho(spec, beta);
        return std::pow(std::sin(beta), spec.n - 1) *
               volume_inner_integral(rho, std::cos(beta), spec.n, inner_points);
    };
    return shell * integrate_adaptive(integrand, 0.0, kHalfPi, tol);
}

double radius_from_volume(double cos_theta, double v0, int n, double rel_tol) {
    if (!(v0 > 0.0))
        throw std::invalid_argument("radius_from_volume: volume must be positive");
    auto vol = [&](double r) { return cap_volume({cos_theta, r, n}); };

    double lo = 1.0, hi = 1.0;
    int guard = 0;
    while (vol(lo) > v0) {
        lo *= 0.5;
        if (++guard > 200)
            throw std::runtime_error("radius_from_volume: bracket collapse");
    }
    while (vol(hi) < v0) {
        hi *= 2.0;
        if (++guard > 200)
            throw std::runtime_error("radius_from_volume: bracket blow-up");
    }
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (vol(mid) < v0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

StaticResidual static_residual(const CapSpec& spec, const GridSpec& grid) {
    FlowState state;
    state.u = cap_field(spec, grid);
    state.cos_theta = spec.cos_theta;
    const Field g = flow_rhs(state);
    double sup_g = 0.0;
    for (double x : g.values) sup_g = std::max(sup_g, std::abs(x));

    // Static identity with analytic derivatives: residual is pure round-off.
    const double kappa = cap_curvature(spec);
    double sup_id = 0.0;
    for (int i = 0; i < grid.n_beta; ++i) {
        const SurfacePointData p = cap_point_data(spec, grid.beta(i));
        const SupportTriple s = support_functions(p);
        const double res = (p.conf - spec.cos_theta * s.gxnu) - kappa * s.gXnu;
        sup_id = std::max(sup_id, std::abs(res));
    }
    return {sup_g, sup_id};
}

CapFit fit_cap(const Field& u, double cos_theta) {
    const GridSpec& g = u.grid;
    Field rho_avg;
    GridSpec ax = g;
    if (g.mode == GridMode::full2d) {
        ax = build_grid(g.n, GridMode::axisymmetric, g.n_beta);
        rho_avg = Field(ax);
        for (int i = 0; i < g.n_beta; ++i) {
            double mean = 0.0;
            for (int j = 0; j < g.n_xi; ++j) mean += std::exp(u.at(i, j));
            rho_avg.at(i) = mean / g.n_xi;
        }
    } else {
        rho_avg = Field(ax);
        for (int i = 0; i < g.n_beta; ++i) rho_avg.at(i) = std::exp(u.at(i));
    }

    // rho_cap(beta; r) = r * phi(beta), so the L2(d sigma) minimizer is the
    // ratio of weighted inner products.
    const CapSpec unit{cos_theta, 1.0, ax.n};
    const std::vector<double> w = quadrature_weights(ax);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < ax.n_beta; ++i) {
        const double phi = profile_rho(unit, ax.beta(i));
        num += w[i] * rho_avg.at(i) * phi;
        den += w[i] * phi * phi;
    }
    const double r_fit = num / den;

    double dist_sq = 0.0;
    for (int i = 0; i < ax.n_beta; ++i) {
        const double diff = rho_avg.at(i) - r_fit * profile_rho(unit, ax.beta(i));
        dist_sq += w[i] * diff * diff;
    }

    FlowState avg_state;
    avg_state.u = Field(ax);
    for (int i = 0; i < ax.n_beta; ++i) avg_state.u.at(i) = std::log(rho_avg.at(i));
    avg_state.cos_theta = cos_theta;
    const double deficit = umbilicity_deficit(avg_state);

    return {r_fit, std::sqrt(dist_sq), deficit};
}

}  // namespace horoflow
