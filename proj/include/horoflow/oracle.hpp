#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "horoflow/grid.hpp"

namespace horoflow {

/// Richardson order estimate from errors on three grids with spacing h, h/2,
/// h/4.  The estimate is trusted only when the two successive ratios agree
/// within 0.3 and the error sequence is positive and decreasing.
struct OrderEstimate {
    double e_coarse = 0.0, e_medium = 0.0, e_fine = 0.0;
    double p_cm = 0.0;      // log2(e_coarse / e_medium)
    double p_mf = 0.0;      // log2(e_medium / e_fine)
    bool conclusive = false;
    double value() const { return 0.5 * (p_cm + p_mf); }
};

OrderEstimate convergence_order(double e_coarse, double e_medium, double e_fine);

/// Adaptive Gauss(7)/Kronrod(15) quadrature on [a, b] by interval bisection.
/// Throws if the local error estimates have not met target_tol within
/// max_depth levels of refinement.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double target_tol = 1e-12, int max_depth = 48);

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int points);

/// Fixed-order Gauss value of the radial hyperbolic volume integral
/// int_0^rho s^n / (1 + s*cos_beta)^{n+1} ds.
double volume_inner_integral(double rho, double cos_beta, int n, int points = 16);

/// Finite-difference mean-curvature oracle for axisymmetric profiles.
/// Deliberately avoids the radial-graph formulas: it embeds the meridian
/// (R, Z) = (rho sin b, 1 + rho cos b) in the Euclidean upper half-plane,
/// differentiates the embedding (one-sided second-order stencils at the
/// ends), applies the classical surface-of-revolution curvature formulas,
/// and converts with H = Z * H_euc - n * nu_Z.
std::vector<double> fd_curvature_oracle(const GridSpec& grid, const std::vector<double>& rho);

}  // namespace horoflow
