#pragma once

#include "horoflow/geometry.hpp"
#include "horoflow/grid.hpp"

namespace horoflow {

/// Spherical cap |x - (1 - r*cos_theta) E_{n+1}| = r truncated by the
/// horosphere: the umbilical model hypersurface with contact angle theta.
/// Every member is a static solution of the flow, with all principal
/// curvatures equal to 1/r - cos_theta.
struct CapSpec {
    double cos_theta = 0.0;
    double r = 1.0;
    int n = 2;
};

/// Radial profile rho(beta) = r (sqrt(1 - cos^2(theta) sin^2(beta))
///                               - cos(theta) cos(beta)), positive on [0, pi/2].
double profile_rho(const CapSpec& spec, double beta);

/// d(log rho)/d(beta) = cos(theta) sin(beta) / sqrt(1 - cos^2(theta) sin^2(beta)).
double profile_slope(const CapSpec& spec, double beta);

/// d^2(log rho)/d(beta)^2 = cos(theta) cos(beta) / (1 - cos^2 sin^2)^{3/2}.
double profile_slope_rate(const CapSpec& spec, double beta);

/// Common principal curvature 1/r - cos(theta); mean curvature is n times it.
double cap_curvature(const CapSpec& spec);

/// Cap profile sampled on a grid as a log-radius field.
Field cap_field(const CapSpec& spec, const GridSpec& grid);

/// Pointwise geometry of the cap with analytic derivatives substituted
/// (no finite differencing).
SurfacePointData cap_point_data(const CapSpec& spec, double beta);

/// Per-node analytic geometry bundle over an axisymmetric grid; quadrature is
/// then the only numerical step left in integral identities.
SurfaceGeometry cap_geometry(const CapSpec& spec, const GridSpec& grid);

/// Hyperbolic volume enclosed between the cap and the horosphere, by adaptive
/// quadrature of the analytic profile.
double cap_volume(const CapSpec& spec, double tol = 1e-12, int inner_points = 24);

/// Radius of the cap with contact angle theta enclosing volume v0, by
/// bisection on cap_volume to the requested relative tolerance.  The bracket
/// is grown geometrically from r = 1.
double radius_from_volume(double cos_theta, double v0, int n, double rel_tol = 1e-10);

/// sup |G| of the discretized cap (finite differences; measures the spatial
/// truncation error of the scheme on a static solution) together with the
/// sup of the pointwise static identity evaluated with analytic derivatives
/// (measures round-off only).
struct StaticResidual {
    double sup_G;
    double sup_identity;
};
StaticResidual static_residual(const CapSpec& spec, const GridSpec& grid);

/// Least-squares fit of a log-radius field to the cap family at fixed angle:
/// r_fit minimizes the L2(d sigma) distance between rho and the cap profile
/// (the family is linear in r, so the minimizer is exact).  full2d fields are
/// xi-averaged first.  deficit is the umbilicity deficit of the fitted state.
struct CapFit {
    double r_fit;
    double distance;
    double deficit;
};
CapFit fit_cap(const Field& u, double cos_theta);

}  // namespace horoflow
