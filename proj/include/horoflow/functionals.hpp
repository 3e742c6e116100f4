#pragma once

#include "horoflow/geometry.hpp"
#include "horoflow/state.hpp"

namespace horoflow {

/// One time-series row.  energy = area - cos(theta) * wet by construction.
struct DiagnosticsRecord {
    long step = 0;
    double t = 0.0;
    double dt = 0.0;
    double volume = 0.0;
    double area = 0.0;
    double wet = 0.0;
    double energy = 0.0;
    double minkowski_residual = 0.0;
    double sigma2_residual = 0.0;
    double umbilicity_deficit = 0.0;
    double rho_min = 0.0;
    double rho_max = 0.0;
    double r_fit = 0.0;
    double min_gXnu = 0.0;
    double sup_G = 0.0;
    // Radii of the extremal caps through the surface; tracked for the barrier
    // diagnostics but not part of the CSV schema.
    double r_node_max = 0.0;
    double r_node_min = 0.0;
};

/// Per-node geometry of a state from ghosted second-order differences.
SurfaceGeometry compute_geometry(const FlowState& state);

/// Hyperbolic area int rho^n v / x_{n+1}^n d sigma.
double area(const FlowState& state);
double area(const SurfaceGeometry& geo);

/// Flat area of the region the boundary trace encloses on the horosphere:
/// (1/n) * closed integral of rho(pi/2, .)^n over the unit (n-1)-sphere.
double wetted_area(const FlowState& state);

/// Capillary energy area - cos(theta) * wetted_area.
double energy(const FlowState& state);

/// Hyperbolic volume enclosed between the graph and the horosphere; the
/// radial integral per node is fixed-order Gauss, the angular one trapezoid.
double enclosed_volume(const FlowState& state, int inner_points = 16);

/// Signed residual of the weighted balance between the conformal terms and
/// the curvature term: int (n/x_{n+1} - n cos(theta) gxnu - H gXnu) dA.
/// Vanishes analytically on every capillary graph; equals the integral of
/// the normal speed.
double minkowski_residual(const FlowState& state);
double minkowski_residual(const SurfaceGeometry& geo);

/// Signed residual of the second-order analogue, with sigma_2 built from the
/// principal curvatures:
/// int (1/x - cos(theta) gxnu) H dA - 2/(n-1) int sigma_2 gXnu dA.
/// Axisymmetric geometry only.
double sigma2_residual(const FlowState& state);
double sigma2_residual(const SurfaceGeometry& geo);

/// int sum_{i<j} (kappa_i - kappa_j)^2 gXnu dA >= 0, zero exactly on the cap
/// family.  Axisymmetric geometry only.
double umbilicity_deficit(const FlowState& state);
double umbilicity_deficit(const SurfaceGeometry& geo);

/// Full diagnostics row for one state.  In full2d mode the curvature-based
/// columns (sigma2, deficit, r_fit) are evaluated on the xi-averaged profile.
DiagnosticsRecord diagnostics_row(const FlowState& state, long step, double dt, double sup_G);

}  // namespace horoflow
