#pragma once

#include <vector>

namespace horoflow {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = 1.57079632679489661923;

enum class GridMode { axisymmetric, full2d };

/// Uniform latitude grid on the half-sphere, beta in [0, pi/2] from the pole
/// to the equator.  In full2d mode (n == 2 only) a periodic longitude
/// coordinate xi in [0, 2*pi) is added; the beta = 0 ring collapses to a
/// single geometric point.
struct GridSpec {
    int n = 2;                      // hypersurface dimension
    GridMode mode = GridMode::axisymmetric;
    int n_beta = 0;
    int n_xi = 0;                   // 0 in axisymmetric mode
    double h_beta = 0.0;
    double h_xi = 0.0;

    int ring_size() const { return mode == GridMode::full2d ? n_xi : 1; }
    int node_count() const { return n_beta * ring_size(); }
    int index(int i, int j = 0) const { return i * ring_size() + j; }

    double beta(int i) const { return i == n_beta - 1 ? kHalfPi : i * h_beta; }
    double xi(int j) const { return j * h_xi; }

    bool operator==(const GridSpec&) const = default;
};

GridSpec build_grid(int n, GridMode mode, int n_beta, int n_xi = 0);

/// One real value per grid node.
struct Field {
    GridSpec grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(const GridSpec& g, double fill = 0.0)
        : grid(g), values(static_cast<size_t>(g.node_count()), fill) {}

    double& at(int i, int j = 0) { return values[grid.index(i, j)]; }
    double at(int i, int j = 0) const { return values[grid.index(i, j)]; }
};

/// Field padded with one ghost ring past each end of the beta range, so that
/// centered stencils are valid at the pole and at the equator.  Ring r of the
/// padded storage holds beta index r - 1.
struct GhostField {
    GridSpec grid;
    std::vector<double> values;     // (n_beta + 2) * ring_size

    double at(int i, int j = 0) const {
        return values[static_cast<size_t>(i + 1) * grid.ring_size() + j];
    }
    double& at(int i, int j = 0) {
        return values[static_cast<size_t>(i + 1) * grid.ring_size() + j];
    }
};

/// Closed-form solution g of the oblique equator condition
/// g = cos_theta * sqrt(1 + g^2 + grad_xi_sq).  grad_xi_sq is the squared
/// xi-derivative at the equator (sin(beta) = 1 there); it is zero in
/// axisymmetric mode, giving g = cos(theta)/sin(theta).
double equator_slope(double cos_theta, double grad_xi_sq = 0.0);

/// Populates the ghost rings: even reflection through the pole (with the
/// antipodal xi shift in full2d) and the contact-angle slope at the equator,
/// so that the centered difference at beta = pi/2 equals equator_slope.
GhostField apply_capillary_ghost(const Field& u, double cos_theta);

/// Second-order centered derivatives of a padded field.  Second derivatives
/// are covariant with respect to the round metric d(beta)^2 +
/// sin(beta)^2 d(xi)^2.  trace is the Laplace-Beltrami trace with the pole
/// singularity replaced by its smooth limit n * u_bb(0).  In axisymmetric
/// mode the xi-arrays are left empty.
struct FieldDerivatives {
    Field grad_b;
    Field grad_x;
    Field hess_bb;
    Field hess_xx;      // covariant: u_xx + sin(b)cos(b) u_b
    Field hess_bx;      // covariant: u_bx - cot(b) u_x
    Field trace;
    Field grad_sq;      // |grad u|^2 = u_b^2 + u_x^2 / sin(b)^2
};

FieldDerivatives differentiate(const GhostField& f);

/// Integral of f over the half-sphere against sin(beta)^{n-1} d(beta) d(xi),
/// composite trapezoid in beta, rectangle rule in periodic xi.  Axisymmetric
/// mode multiplies by the area of the unit (n-1)-sphere.
double integrate(const Field& f);

/// Surface area of the unit m-sphere, 2*pi^{(m+1)/2}/Gamma((m+1)/2).
double sphere_area(int m);

/// Trapezoid weights along beta including the sin^{n-1} factor (and the
/// |S^{n-1}| factor in axisymmetric mode); integrate(f) is the weighted sum.
std::vector<double> quadrature_weights(const GridSpec& g);

}  // namespace horoflow
