#include "horoflow/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace horoflow {

SurfacePointData pointwise_frame(int n, double beta, double xi, double rho,
                                 double grad_b, double grad_x, double grad_sq) {
    if (!(rho > 0.0))
        throw std::domain_error("pointwise_frame: rho <= 0, star-shaped graph representation lost");
    SurfacePointData p;
    p.n = n;
    p.beta = beta;
    p.xi = xi;
    p.rho = rho;
    p.u = std::log(rho);
    p.grad_b = grad_b;
    p.grad_x = grad_x;
    p.grad_sq = grad_sq;
    p.v = std::sqrt(1.0 + grad_sq);
    p.x_height = rho * std::cos(beta) + 1.0;
    p.conf = 1.0 / p.x_height;
    return p;
}

NormalCoefficients euclidean_normal(const SurfacePointData& p) {
    return {1.0 / p.v, -1.0 / (p.rho * p.v)};
}

SupportTriple support_functions(const SurfacePointData& p) {
    const double sb = std::sin(p.beta), cb = std::cos(p.beta);
    SupportTriple s;
    s.gXnu = p.rho * p.conf / p.v;
    s.gEnu = p.conf * (cb + sb * p.grad_b) / p.v;
    s.gxnu = p.conf * (p.rho + cb + sb * p.grad_b) / p.v;
    return s;
}

double reduced_hessian_form(const SurfacePointData& p) {
    const double v2 = 1.0 + p.grad_sq;
    if (p.beta == 0.0)
        return p.trace * (1.0 - p.grad_sq / (p.n * v2));
    double quad = p.grad_b * p.grad_b * p.hess_bb;
    if (p.grad_x != 0.0) {
        const double sb = std::sin(p.beta);
        const double ux = p.grad_x / (sb * sb);    // contravariant xi component
        quad += 2.0 * p.grad_b * ux * p.hess_bx + ux * ux * p.hess_xx;
    }
    return p.trace - quad / v2;
}

double mean_curvature(const SurfacePointData& p) {
    const double q = reduced_hessian_form(p);
    const double sb = std::sin(p.beta);
    return -p.x_height * q / (p.rho * p.v) + p.n / (p.rho * p.v) - p.n * sb * p.grad_b / p.v;
}

PrincipalCurvatures principal_curvatures_axisym(const SurfacePointData& p) {
    const double sb = std::sin(p.beta), cb = std::cos(p.beta);
    const double v2 = p.v * p.v;
    const double shift = (cb + sb * p.grad_b) / p.v;
    const double mer_euc = (v2 - p.hess_bb) / (p.rho * p.v * v2);
    double rot_euc;
    if (p.beta == 0.0) {
        rot_euc = mer_euc;
    } else {
        rot_euc = (sb - p.grad_b * cb) / (p.rho * p.v * sb);
    }
    return {p.x_height * mer_euc - shift, p.x_height * rot_euc - shift};
}

}  // namespace horoflow
