#include "horoflow/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace horoflow {

OrderEstimate convergence_order(double e_coarse, double e_medium, double e_fine) {
    if (!(e_coarse > 0.0 && e_medium > 0.0 && e_fine > 0.0))
        throw std::invalid_argument("convergence_order: errors must be positive");
    OrderEstimate est;
    est.e_coarse = e_coarse;
    est.e_medium = e_medium;
    est.e_fine = e_fine;
    est.p_cm = std::log2(e_coarse / e_medium);
    est.p_mf = std::log2(e_medium / e_fine);
    const bool decreasing = e_coarse > e_medium && e_medium > e_fine;
    est.conclusive = decreasing && std::abs(est.p_cm - est.p_mf) <= 0.3;
    return est;
}

namespace {

// Gauss(7)/Kronrod(15) abscissas and weights on [-1, 1]; the Gauss weights
// are zero at pure Kronrod points.
constexpr double kGK[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double rad = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = kGK[0][1] * f0;
    double k15 = kGK[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = rad * kGK[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        g7 += kGK[i][1] * fi;
        k15 += kGK[i][2] * fi;
    }
    g7 *= rad;
    k15 *= rad;
    const double diff = 200.0 * std::abs(g7 - k15);
    return {k15, diff * std::sqrt(diff)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             double noise_floor, int depth, int max_depth) {
    const PanelResult r = gk15(f, a, b);
    if (r.error <= tol || r.error <= noise_floor)
        return r.value;
    if (depth >= max_depth)
        throw std::runtime_error("integrate_adaptive: refinement depth cap reached");
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * tol, noise_floor, depth + 1, max_depth) +
           adapt(f, mid, b, 0.5 * tol, noise_floor, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double target_tol, int max_depth) {
    if (a == b) return 0.0;
    // Panels whose error estimate sits at the rounding level of the global
    // value are accepted regardless of the per-panel budget; otherwise noisy
    // integrands recurse to the depth cap.
    const PanelResult whole = gk15(f, a, b);
    const double noise_floor = 1e-15 * (1.0 + std::abs(whole.value));
    return adapt(f, a, b, target_tol, noise_floor, 0, max_depth);
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int points) {
    if (points < 1)
        throw std::invalid_argument("gauss_legendre: need at least one point");
    std::vector<double> x(points), w(points);
    for (int i = 0; i < points; ++i) {
        // Newton iteration from the Chebyshev-based initial guess.
        double t = std::cos(kPi * (i + 0.75) / (points + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= points; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = points * (t * p1 - p0) / (t * t - 1.0);
            const double step = p1 / dp;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= points; ++k) {
            const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = points * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return {x, w};
}

double volume_inner_integral(double rho, double cos_beta, int n, int points) {
    static thread_local int cached_points = 0;
    static thread_local std::vector<double> gx, gw;
    if (points != cached_points) {
        auto [xs, ws] = gauss_legendre(points);
        gx = xs;
        gw = ws;
        cached_points = points;
    }
    const double half = 0.5 * rho;
    double sum = 0.0;
    for (int i = 0; i < points; ++i) {
        const double s = half * (gx[i] + 1.0);
        double sn = 1.0;
        for (int k = 0; k < n; ++k) sn *= s;
        double den = 1.0 + s * cos_beta;
        double denp = den;
        for (int k = 0; k < n; ++k) denp *= den;
        sum += gw[i] * sn / denp;
    }
    return half * sum;
}

std::vector<double> fd_curvature_oracle(const GridSpec& grid, const std::vector<double>& rho) {
    if (grid.mode != GridMode::axisymmetric)
        throw std::invalid_argument("fd_curvature_oracle: axisymmetric profiles only");
    const int nb = grid.n_beta;
    if (static_cast<int>(rho.size()) != nb)
        throw std::invalid_argument("fd_curvature_oracle: profile size mismatch");
    const int n = grid.n;
    const double h = grid.h_beta;

    std::vector<double> R(nb), Z(nb);
    for (int i = 0; i < nb; ++i) {
        const double b = grid.beta(i);
        R[i] = rho[i] * std::sin(b);
        Z[i] = 1.0 + rho[i] * std::cos(b);
    }

    auto d1 = [&](const std::vector<double>& f, int i) {
        if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        if (i == nb - 1) return (3.0 * f[nb - 1] - 4.0 * f[nb - 2] + f[nb - 3]) / (2.0 * h);
        return (f[i + 1] - f[i - 1]) / (2.0 * h);
    };
    auto d2 = [&](const std::vector<double>& f, int i) {
        if (i == 0) return (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
        if (i == nb - 1)
            return (2.0 * f[nb - 1] - 5.0 * f[nb - 2] + 4.0 * f[nb - 3] - f[nb - 4]) / (h * h);
        return (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
    };

    std::vector<double> H(nb);
    for (int i = 0; i < nb; ++i) {
        const double Rp = d1(R, i), Zp = d1(Z, i);
        const double Rpp = d2(R, i), Zpp = d2(Z, i);
        const double speed = std::hypot(Rp, Zp);
        // Unit normal, sign fixed so the component along the ray from the
        // pole of the graph is positive: <nu, (R, Z-1)> > 0.
        double nR = -Zp / speed, nZ = Rp / speed;
        if (nR * R[i] + nZ * (Z[i] - 1.0) < 0.0) {
            nR = -nR;
            nZ = -nZ;
        }
        const double mer = -(Rpp * nR + Zpp * nZ) / (speed * speed);
        const double rot = i == 0 ? mer : nR / R[i];
        H[i] = Z[i] * (mer + (n - 1) * rot) - n * nZ;
    }
    return H;
}

}  // namespace horoflow
