#pragma once

#include <vector>

#include "horoflow/grid.hpp"

namespace horoflow {

/// Pointwise data of a radial graph rho = e^u over the half-sphere, seen as a
/// hypersurface of the upper half-space model.  Heights refer to the vertical
/// coordinate x_{n+1} = rho*cos(beta) + 1; conf = 1/x_{n+1} is the conformal
/// factor of the hyperbolic metric along the surface.
struct SurfacePointData {
    int n = 2;
    double beta = 0.0, xi = 0.0;
    double rho = 0.0, u = 0.0;
    double grad_b = 0.0, grad_x = 0.0;     // coordinate derivatives of u
    double grad_sq = 0.0;                  // |grad u|^2 in the round metric
    double v = 1.0;                        // sqrt(1 + grad_sq)
    double x_height = 0.0;                 // x_{n+1}
    double conf = 0.0;                     // e^omega = 1/x_{n+1}
    bool has_hessian = false;
    double hess_bb = 0.0, hess_xx = 0.0, hess_bx = 0.0;  // covariant components
    double trace = 0.0;                    // pole-regularized Laplacian of u
};

/// First-order frame at a point: v, height, conformal factor.  Throws on
/// rho <= 0 (the radial graph representation is lost there).
SurfacePointData pointwise_frame(int n, double beta, double xi, double rho,
                                 double grad_b, double grad_x, double grad_sq);

/// Coefficients (radial, angular) of the Euclidean outward unit normal
/// (d_rho - grad(u)/rho) / v.
struct NormalCoefficients {
    double radial;      // 1/v
    double angular;     // -1/(rho v), multiplies grad u
};
NormalCoefficients euclidean_normal(const SurfacePointData& p);

/// Inner products of the outward hyperbolic normal with the three fields used
/// by the flow: the vertical translate X = x - E_{n+1}, the vertical direction
/// E_{n+1}, and the position x.  gxnu = gXnu + gEnu identically; the graph is
/// star-shaped iff gXnu > 0.
struct SupportTriple {
    double gXnu;
    double gEnu;
    double gxnu;
};
SupportTriple support_functions(const SurfacePointData& p);

/// (sigma^{ij} - u^i u^j / v^2) u_{ij} with the covariant Hessian.  At the
/// pole the quadratic correction uses the isotropic-Hessian reduction
/// trace * (1 - grad_sq / (n v^2)); the coordinate split is singular there.
double reduced_hessian_form(const SurfacePointData& p);

/// Hyperbolic mean curvature with respect to the outward normal.
double mean_curvature(const SurfacePointData& p);

/// Hyperbolic principal curvatures of an axisymmetric profile: the meridian
/// curvature and the rotational one with multiplicity n - 1.  Euclidean
/// curvatures of the graph are converted per direction by the conformal
/// relation kappa = x_{n+1} * kappa_euc - (cos b + sin b u_b)/v.  The
/// degenerate rotational circle at the pole takes the meridian limit.
struct PrincipalCurvatures {
    double meridian;
    double rotational;
};
PrincipalCurvatures principal_curvatures_axisym(const SurfacePointData& p);

/// Per-node geometric bundle of a whole state; the batch form used by the
/// functionals.  kappa_b/kappa_x are filled in axisymmetric mode only.
struct SurfaceGeometry {
    GridSpec grid;
    double cos_theta = 0.0;
    std::vector<double> rho, v, x_height;
    std::vector<double> gXnu, gEnu, gxnu;
    std::vector<double> H;
    std::vector<double> kappa_b, kappa_x;
    std::vector<double> area_element;      // rho^n v / x_{n+1}^n
};

}  // namespace horoflow
