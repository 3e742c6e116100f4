#include "horoflow/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace horoflow {

GridSpec build_grid(int n, GridMode mode, int n_beta, int n_xi) {
    if (n < 2)
        throw std::invalid_argument("build_grid: hypersurface dimension n must be >= 2");
    if (n_beta < 8)
        throw std::invalid_argument("build_grid: n_beta must be >= 8, got " + std::to_string(n_beta));

    GridSpec g;
    g.n = n;
    g.mode = mode;
    g.n_beta = n_beta;
    g.h_beta = kHalfPi / (n_beta - 1);
    if (mode == GridMode::full2d) {
        if (n != 2)
            throw std::invalid_argument("build_grid: full2d mode requires n == 2");
        if (n_xi < 8)
            throw std::invalid_argument("build_grid: n_xi must be >= 8, got " + std::to_string(n_xi));
        if (n_xi % 4 != 0)
            throw std::invalid_argument(
                "build_grid: n_xi must be a multiple of 4 (pole stencils pair antipodal "
                "and orthogonal directions)");
        g.n_xi = n_xi;
        g.h_xi = 2.0 * kPi / n_xi;
    }
    return g;
}

double equator_slope(double cos_theta, double grad_xi_sq) {
    if (!(cos_theta > -1.0 && cos_theta < 1.0))
        throw std::invalid_argument("equator_slope: contact angle must lie in (0, pi)");
    const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
    return cos_theta * std::sqrt(1.0 + grad_xi_sq) / sin_theta;
}

GhostField apply_capillary_ghost(const Field& u, double cos_theta) {
    if (!(cos_theta > -1.0 && cos_theta < 1.0))
        throw std::invalid_argument("apply_capillary_ghost: contact angle must lie in (0, pi)");

    const GridSpec& g = u.grid;
    const int nb = g.n_beta;
    const int m = g.ring_size();

    GhostField out;
    out.grid = g;
    out.values.assign(static_cast<size_t>(nb + 2) * m, 0.0);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < m; ++j)
            out.at(i, j) = u.at(i, j);

    const double h = g.h_beta;
    if (g.mode == GridMode::axisymmetric) {
        out.at(-1, 0) = out.at(1, 0);
        out.at(nb, 0) = out.at(nb - 2, 0) + 2.0 * h * equator_slope(cos_theta);
    } else {
        const int half = g.n_xi / 2;
        for (int j = 0; j < m; ++j)
            out.at(-1, j) = out.at(1, (j + half) % m);
        // Equator slope depends on the xi-derivative of the boundary trace.
        for (int j = 0; j < m; ++j) {
            const int jp = (j + 1) % m;
            const int jm = (j + m - 1) % m;
            const double ux = (out.at(nb - 1, jp) - out.at(nb - 1, jm)) / (2.0 * g.h_xi);
            out.at(nb, j) = out.at(nb - 2, j) + 2.0 * h * equator_slope(cos_theta, ux * ux);
        }
    }
    return out;
}

FieldDerivatives differentiate(const GhostField& f) {
    const GridSpec& g = f.grid;
    for (double x : f.values)
        if (!std::isfinite(x))
            throw std::invalid_argument("differentiate: non-finite input value");

    const int nb = g.n_beta;
    const int n = g.n;
    const double h = g.h_beta;
    const double inv2h = 1.0 / (2.0 * h);
    const double invh2 = 1.0 / (h * h);

    FieldDerivatives d;
    d.grad_b = Field(g);
    d.hess_bb = Field(g);
    d.trace = Field(g);
    d.grad_sq = Field(g);

    if (g.mode == GridMode::axisymmetric) {
        for (int i = 0; i < nb; ++i) {
            const double um = f.at(i - 1), u0 = f.at(i), up = f.at(i + 1);
            const double gb = (up - um) * inv2h;
            double hbb = (up - 2.0 * u0 + um) * invh2;
            if (i == nb - 1) {
                // The equator ghost reproduces the oblique slope exactly but
                // deviates from the smooth extension at O(h^3); this biased
                // stencil cancels that defect, keeping u_bb second order.
                hbb = (1.5 * (up - u0) - 2.0 * (u0 - um) + 0.5 * (um - f.at(i - 2))) * invh2;
            }
            d.grad_b.at(i) = gb;
            d.hess_bb.at(i) = hbb;
            d.grad_sq.at(i) = gb * gb;
            if (i == 0) {
                d.trace.at(i) = n * hbb;
            } else {
                const double b = g.beta(i);
                d.trace.at(i) = hbb + (n - 1) * (std::cos(b) / std::sin(b)) * gb;
            }
        }
        return d;
    }

    // full2d (n == 2)
    const int m = g.n_xi;
    const int half = m / 2;
    const int quarter = m / 4;
    const double hx = g.h_xi;
    const double inv2hx = 1.0 / (2.0 * hx);
    const double invhx2 = 1.0 / (hx * hx);
    d.grad_x = Field(g);
    d.hess_xx = Field(g);
    d.hess_bx = Field(g);

    // Ring averages for the pole trace; the pole gradient norm uses one fixed
    // pair of orthogonal diameters so that it is a single per-point value.
    double ring1_mean = 0.0;
    for (int j = 0; j < m; ++j) ring1_mean += f.at(1, j);
    ring1_mean /= m;
    const double pole_hbb_mean = 2.0 * (ring1_mean - f.at(0, 0)) * invh2;
    const double pole_g0 = (f.at(1, 0) - f.at(1, half)) * inv2h;
    const double pole_g1 = (f.at(1, quarter) - f.at(1, quarter + half)) * inv2h;
    const double pole_grad_sq = pole_g0 * pole_g0 + pole_g1 * pole_g1;

    for (int i = 0; i < nb; ++i) {
        const double b = g.beta(i);
        const double sb = std::sin(b), cb = std::cos(b);
        const double isin2 = i == 0 ? 0.0 : 1.0 / (sb * sb);
        const double cot = i == 0 ? 0.0 : cb / sb;
        for (int j = 0; j < m; ++j) {
            const int jp = (j + 1) % m;
            const int jm = (j + m - 1) % m;
            const double gb = (f.at(i + 1, j) - f.at(i - 1, j)) * inv2h;
            double hbb = (f.at(i + 1, j) - 2.0 * f.at(i, j) + f.at(i - 1, j)) * invh2;
            if (i == nb - 1)
                hbb = (1.5 * (f.at(i + 1, j) - f.at(i, j)) - 2.0 * (f.at(i, j) - f.at(i - 1, j)) +
                       0.5 * (f.at(i - 1, j) - f.at(i - 2, j))) *
                      invh2;
            const double gx = (f.at(i, jp) - f.at(i, jm)) * inv2hx;
            const double hxx = (f.at(i, jp) - 2.0 * f.at(i, j) + f.at(i, jm)) * invhx2;
            const double hbx = (f.at(i + 1, jp) - f.at(i + 1, jm) - f.at(i - 1, jp) + f.at(i - 1, jm)) *
                               inv2h * inv2hx;
            d.grad_b.at(i, j) = gb;
            d.grad_x.at(i, j) = gx;
            d.hess_bb.at(i, j) = hbb;
            if (i == 0) {
                // The pole is a single point: grad_b holds the directional
                // derivative along xi_j, while grad_sq and the trace are the
                // per-point values shared by the whole ring.
                d.hess_xx.at(i, j) = 0.0;
                d.hess_bx.at(i, j) = 0.0;
                d.grad_sq.at(i, j) = pole_grad_sq;
                d.trace.at(i, j) = n * pole_hbb_mean;
            } else {
                const double cxx = hxx + sb * cb * gb;
                d.hess_xx.at(i, j) = cxx;
                d.hess_bx.at(i, j) = hbx - cot * gx;
                d.grad_sq.at(i, j) = gb * gb + gx * gx * isin2;
                d.trace.at(i, j) = hbb + cxx * isin2;
            }
        }
    }
    return d;
}

double sphere_area(int m) {
    return 2.0 * std::pow(kPi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

std::vector<double> quadrature_weights(const GridSpec& g) {
    std::vector<double> w(g.n_beta);
    const double h = g.h_beta;
    for (int i = 0; i < g.n_beta; ++i) {
        const double trap = (i == 0 || i == g.n_beta - 1) ? 0.5 * h : h;
        w[i] = trap * std::pow(std::sin(g.beta(i)), g.n - 1);
    }
    if (g.mode == GridMode::axisymmetric) {
        const double s = sphere_area(g.n - 1);
        for (double& x : w) x *= s;
    } else {
        for (double& x : w) x *= g.h_xi;
    }
    return w;
}

double integrate(const Field& f) {
    for (double x : f.values)
        if (!std::isfinite(x))
            throw std::invalid_argument("integrate: non-finite input value");
    const GridSpec& g = f.grid;
    const std::vector<double> w = quadrature_weights(g);
    double sum = 0.0;
    for (int i = 0; i < g.n_beta; ++i) {
        double ring = 0.0;
        for (int j = 0; j < g.ring_size(); ++j) ring += f.at(i, j);
        sum += w[i] * ring;
    }
    return sum;
}

}  // namespace horoflow
