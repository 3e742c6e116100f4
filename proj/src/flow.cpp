#include "horoflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "horoflow/caps.hpp"
#include "horoflow/geometry.hpp"

namespace horoflow {

namespace {

double ipow(double x, int n) {
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= x;
    return r;
}

// Preallocated stencil tables and buffers for repeated right-hand-side
// evaluations on one grid.
struct Workspace {
    GridSpec grid;
    double cos_theta = 0.0;
    int n = 2;
    int nb = 0;
    int m = 1;          // ring size
    int half = 0, quarter = 0;
    double inv2h = 0.0, invh2 = 0.0, inv2hx = 0.0, invhx2 = 0.0;
    double h_eff = 0.0;  // CFL length scale
    double wet_factor = 0.0;

    std::vector<double> sb, cb, cot, wq, inv_phi;

    // Pole-region longitude filter (full2d): rings whose resolvable mode
    // count 2 sin(beta)/h_beta falls below the Nyquist limit are projected
    // onto their leading Fourier modes after each step.  This is what makes
    // the explicit step stable at the latitude-grid pole with
    // h = min(h_beta, sin(beta) h_xi) taken over the unfiltered rings.
    std::vector<int> kernel_of_ring;                // -1 = unfiltered
    std::vector<std::vector<double>> kernels;

    std::vector<double> gh;                         // ghost buffer
    std::vector<double> g0, g1, u_tmp, row, psi;
};

struct StageStats {
    double sup_G = 0.0;
    double coef_max = 0.0;
    double area = 0.0;
    double wet = 0.0;
    double rho_min = std::numeric_limits<double>::infinity();
    double gXnu_min = std::numeric_limits<double>::infinity();
    double r_min = std::numeric_limits<double>::infinity();
    double r_max = 0.0;
    bool finite = true;
};

void init_workspace(Workspace& ws, const GridSpec& g, double cos_theta) {
    if (!(cos_theta > -1.0 && cos_theta < 1.0))
        throw std::invalid_argument("flow: contact angle must lie in (0, pi)");
    ws.grid = g;
    ws.cos_theta = cos_theta;
    ws.n = g.n;
    ws.nb = g.n_beta;
    ws.m = g.ring_size();
    ws.half = ws.m / 2;
    ws.quarter = ws.m / 4;
    ws.inv2h = 1.0 / (2.0 * g.h_beta);
    ws.invh2 = 1.0 / (g.h_beta * g.h_beta);
    if (g.mode == GridMode::full2d) {
        ws.inv2hx = 1.0 / (2.0 * g.h_xi);
        ws.invhx2 = 1.0 / (g.h_xi * g.h_xi);
    }

    ws.sb.resize(ws.nb);
    ws.cb.resize(ws.nb);
    ws.cot.assign(ws.nb, 0.0);
    ws.inv_phi.resize(ws.nb);
    const CapSpec unit{cos_theta, 1.0, g.n};
    for (int i = 0; i < ws.nb; ++i) {
        const double b = g.beta(i);
        ws.sb[i] = std::sin(b);
        ws.cb[i] = std::cos(b);
        if (i > 0) ws.cot[i] = ws.cb[i] / ws.sb[i];
        ws.inv_phi[i] = 1.0 / profile_rho(unit, b);
    }
    ws.wq = quadrature_weights(g);
    ws.wet_factor =
        g.mode == GridMode::axisymmetric ? sphere_area(g.n - 1) / g.n : g.h_xi / g.n;

    ws.kernel_of_ring.assign(ws.nb, -1);
    double s_min_unfiltered = std::numeric_limits<double>::infinity();
    if (g.mode == GridMode::full2d) {
        std::vector<int> cutoff_of_kernel;
        for (int i = 1; i < ws.nb; ++i) {
            const int cutoff = static_cast<int>(2.0 * ws.sb[i] / g.h_beta + 1e-12);
            if (cutoff >= ws.m / 2) {
                s_min_unfiltered = std::min(s_min_unfiltered, ws.sb[i]);
                continue;
            }
            int idx = -1;
            for (size_t k = 0; k < cutoff_of_kernel.size(); ++k)
                if (cutoff_of_kernel[k] == cutoff) idx = static_cast<int>(k);
            if (idx < 0) {
                std::vector<double> ker(ws.m);
                for (int l = 0; l < ws.m; ++l) {
                    double s = 1.0;
                    for (int mm = 1; mm <= cutoff; ++mm)
                        s += 2.0 * std::cos(mm * l * g.h_xi);
                    ker[l] = s / ws.m;
                }
                ws.kernels.push_back(std::move(ker));
                cutoff_of_kernel.push_back(cutoff);
                idx = static_cast<int>(ws.kernels.size()) - 1;
            }
            ws.kernel_of_ring[i] = idx;
        }
        ws.h_eff = g.h_beta;
        if (std::isfinite(s_min_unfiltered))
            ws.h_eff = std::min(g.h_beta, s_min_unfiltered * g.h_xi);
    } else {
        ws.h_eff = g.h_beta;
    }

    const size_t count = static_cast<size_t>(g.node_count());
    ws.gh.assign(static_cast<size_t>(ws.nb + 2) * ws.m, 0.0);
    ws.g0.assign(count, 0.0);
    ws.g1.assign(count, 0.0);
    ws.u_tmp.assign(count, 0.0);
    ws.row.assign(ws.m, 0.0);
    ws.psi.assign(count, 0.0);
}

void fill_ghost(Workspace& ws, const std::vector<double>& u) {
    const int nb = ws.nb, m = ws.m;
    std::copy(u.begin(), u.end(), ws.gh.begin() + m);
    if (ws.grid.mode == GridMode::axisymmetric) {
        ws.gh[0] = ws.gh[2];
        ws.gh[nb + 1] = ws.gh[nb - 1] + 2.0 * ws.grid.h_beta * equator_slope(ws.cos_theta);
    } else {
        double* gh = ws.gh.data();
        for (int j = 0; j < m; ++j) gh[j] = gh[2 * m + (j + ws.half) % m];
        const double* eq = gh + static_cast<size_t>(nb) * m;  // beta index nb-1
        double* top = gh + static_cast<size_t>(nb + 1) * m;
        for (int j = 0; j < m; ++j) {
            const int jp = j + 1 == m ? 0 : j + 1;
            const int jm = j == 0 ? m - 1 : j - 1;
            const double ux = (eq[jp] - eq[jm]) * ws.inv2hx;
            top[j] = gh[static_cast<size_t>(nb - 1) * m + j] +
                     2.0 * ws.grid.h_beta * equator_slope(ws.cos_theta, ux * ux);
        }
    }
}

// G, the per-node speed coefficient, and the per-stage monitors, all from the
// ghost buffer in one pass.  G carries the conservative projection: the
// area-mean of the normal speed is subtracted so that the discrete enclosed
// volume is a first integral of the semi-discrete system (the unprojected
// speed leaks volume at the level of the discrete weighted-balance residual,
// which would slide the state along the cap family instead of settling).
StageStats eval_rhs(Workspace& ws, std::vector<double>& G) {
    const int nb = ws.nb, m = ws.m, n = ws.n;
    const double ncth = n * ws.cos_theta;
    const double* gh = ws.gh.data();
    StageStats st;
    double leak = 0.0;  // d(volume)/dt of the unprojected speed

    auto track = [&](int ring, double rho, double v, double x) {
        st.coef_max = std::max(st.coef_max, x / (rho * v));
        st.rho_min = std::min(st.rho_min, rho);
        st.gXnu_min = std::min(st.gXnu_min, rho / (v * x));
        const double r = rho * ws.inv_phi[ring];
        st.r_min = std::min(st.r_min, r);
        st.r_max = std::max(st.r_max, r);
    };

    if (ws.grid.mode == GridMode::axisymmetric) {
        for (int i = 0; i < nb; ++i) {
            const double um = gh[i], u0 = gh[i + 1], up = gh[i + 2];
            const double gb = (up - um) * ws.inv2h;
            // Biased second difference at the equator node: cancels the O(h^3)
            // extension defect of the oblique-condition ghost.
            const double hbb = i == nb - 1
                                   ? (1.5 * (up - u0) - 2.0 * (u0 - um) + 0.5 * (um - gh[i - 1])) * ws.invh2
                                   : (up - 2.0 * u0 + um) * ws.invh2;
            const double trace = i == 0 ? n * hbb : hbb + (n - 1) * ws.cot[i] * gb;
            const double g2 = gb * gb;
            const double v = std::sqrt(1.0 + g2);
            const double rho = std::exp(u0);
            const double x = rho * ws.cb[i] + 1.0;
            const double q = trace - g2 * hbb / (1.0 + g2);
            const double vr = 1.0 / (rho * v);
            const double g = x * q * vr + n * g2 * vr + n * ws.sb[i] * gb / v -
                             ncth * (rho + ws.cb[i] + ws.sb[i] * gb) / rho;
            G[i] = g;
            ws.psi[i] = v * x / rho;
            track(i, rho, v, x);
            const double shell = ipow(rho / x, n);
            st.area += ws.wq[i] * shell * v;
            leak += ws.wq[i] * shell * (rho / x) * g;
            if (i == nb - 1) st.wet = ws.wet_factor * ipow(rho, n);
        }
    } else {
        // Pole ring: one point, evolved once.  Trace from the xi-averaged
        // second difference; gradient from two orthogonal diameters.
        {
            const double* r1 = gh + 2 * m;
            double mean1 = 0.0;
            for (int j = 0; j < m; ++j) mean1 += r1[j];
            mean1 /= m;
            const double u0 = gh[m];
            const double hbb = 2.0 * (mean1 - u0) * ws.invh2;
            const double trace = n * hbb;
            const double gb0 = (r1[0] - r1[ws.half]) * ws.inv2h;
            const double gb1 = (r1[ws.quarter] - r1[ws.quarter + ws.half]) * ws.inv2h;
            const double g2 = gb0 * gb0 + gb1 * gb1;
            const double v = std::sqrt(1.0 + g2);
            const double rho = std::exp(u0);
            const double x = rho + 1.0;
            const double q = trace * (1.0 - g2 / (n * (1.0 + g2)));
            const double vr = 1.0 / (rho * v);
            const double g = x * q * vr + n * g2 * vr - ncth * (rho + 1.0) / rho;
            const double psi = v * x / rho;
            const double shell = ipow(rho / x, n);
            for (int j = 0; j < m; ++j) {
                G[j] = g;
                ws.psi[j] = psi;
            }
            track(0, rho, v, x);
            st.area += ws.wq[0] * m * shell * v;
            leak += ws.wq[0] * m * shell * (rho / x) * g;
        }
        for (int i = 1; i < nb; ++i) {
            const double sbi = ws.sb[i], cbi = ws.cb[i], coti = ws.cot[i];
            const double isin2 = 1.0 / (sbi * sbi);
            const bool equator = i == nb - 1;
            const double* rmm = gh + static_cast<size_t>(i - 1) * m;
            const double* rm = rmm + m;
            const double* r0 = rm + m;
            const double* rp = r0 + m;
            double* gi = G.data() + static_cast<size_t>(i) * m;
            double ring_area = 0.0;
            double ring_wet = 0.0;
            for (int j = 0; j < m; ++j) {
                const int jp = j + 1 == m ? 0 : j + 1;
                const int jm = j == 0 ? m - 1 : j - 1;
                const double gb = (rp[j] - rm[j]) * ws.inv2h;
                const double hbb =
                    equator ? (1.5 * (rp[j] - r0[j]) - 2.0 * (r0[j] - rm[j]) + 0.5 * (rm[j] - rmm[j])) * ws.invh2
                            : (rp[j] - 2.0 * r0[j] + rm[j]) * ws.invh2;
                const double gx = (r0[jp] - r0[jm]) * ws.inv2hx;
                const double hxx = (r0[jp] - 2.0 * r0[j] + r0[jm]) * ws.invhx2;
                const double hbx = (rp[jp] - rp[jm] - rm[jp] + rm[jm]) * ws.inv2h * ws.inv2hx;
                const double cxx = hxx + sbi * cbi * gb;
                const double cbx = hbx - coti * gx;
                const double trace = hbb + cxx * isin2;
                const double uxc = gx * isin2;
                const double g2 = gb * gb + gx * uxc;
                const double quad = gb * gb * hbb + 2.0 * gb * uxc * cbx + uxc * uxc * cxx;
                const double v = std::sqrt(1.0 + g2);
                const double rho = std::exp(r0[j]);
                const double x = rho * cbi + 1.0;
                const double q = trace - quad / (1.0 + g2);
                const double vr = 1.0 / (rho * v);
                const double g = x * q * vr + n * g2 * vr + n * sbi * gb / v -
                                 ncth * (rho + cbi + sbi * gb) / rho;
                gi[j] = g;
                ws.psi[static_cast<size_t>(i) * m + j] = v * x / rho;
                track(i, rho, v, x);
                const double shell = ipow(rho / x, n);
                ring_area += shell * v;
                leak += ws.wq[i] * shell * (rho / x) * g;
                if (i == nb - 1) ring_wet += ipow(rho, n);
            }
            st.area += ws.wq[i] * ring_area;
            if (i == nb - 1) st.wet = ws.wet_factor * ring_wet;
        }
    }

    const double lambda = leak / st.area;
    const size_t count = G.size();
    for (size_t k = 0; k < count; ++k) {
        G[k] -= lambda * ws.psi[k];
        st.sup_G = std::max(st.sup_G, std::abs(G[k]));
    }
    st.finite = std::isfinite(st.sup_G) && std::isfinite(st.area) && std::isfinite(st.coef_max);
    return st;
}

void polar_filter(Workspace& ws, std::vector<double>& u) {
    if (ws.grid.mode != GridMode::full2d) return;
    const int m = ws.m;
    // The pole ring is a single point; keep it exactly constant.
    {
        double mean = 0.0;
        for (int j = 0; j < m; ++j) mean += u[j];
        mean /= m;
        for (int j = 0; j < m; ++j) u[j] = mean;
    }
    for (int i = 1; i < ws.nb; ++i) {
        const int k = ws.kernel_of_ring[i];
        if (k < 0) continue;
        const std::vector<double>& ker = ws.kernels[k];
        double* ring = u.data() + static_cast<size_t>(i) * m;
        for (int j = 0; j < m; ++j) {
            double s = 0.0;
            int idx = j;
            for (int l = 0; l < m; ++l) {
                s += ker[idx] * ring[l];
                idx = idx == 0 ? m - 1 : idx - 1;
            }
            ws.row[j] = s;
        }
        std::copy(ws.row.begin(), ws.row.end(), ring);
    }
}

// Heun step in place; stage-1 G and dt are already available.
void advance(Workspace& ws, std::vector<double>& u, double dt) {
    const size_t count = u.size();
    for (size_t k = 0; k < count; ++k) ws.u_tmp[k] = u[k] + dt * ws.g0[k];
    fill_ghost(ws, ws.u_tmp);
    eval_rhs(ws, ws.g1);
    const double hdt = 0.5 * dt;
    for (size_t k = 0; k < count; ++k) u[k] += hdt * (ws.g0[k] + ws.g1[k]);
    polar_filter(ws, u);
}

double stable_dt(const Workspace& ws, double c_cfl, double coef_max) {
    return c_cfl * ws.h_eff * ws.h_eff / coef_max;
}

}  // namespace

Field flow_rhs(const FlowState& state) {
    Workspace ws;
    init_workspace(ws, state.grid(), state.cos_theta);
    fill_ghost(ws, state.u.values);
    const StageStats st = eval_rhs(ws, ws.g0);
    if (!st.finite || !(st.rho_min > 0.0))
        throw std::domain_error("flow_rhs: star-shaped graph representation lost");
    Field g(state.grid());
    g.values = ws.g0;
    return g;
}

Field normal_speed(const FlowState& state) {
    const SurfaceGeometry geo = compute_geometry(state);
    const GridSpec& g = state.grid();
    const std::vector<double> w = quadrature_weights(g);
    Field f(g);
    double mean = 0.0, total = 0.0;
    for (int i = 0; i < g.n_beta; ++i)
        for (int j = 0; j < g.ring_size(); ++j) {
            const int k = g.index(i, j);
            f.values[k] = g.n / geo.x_height[k] - g.n * state.cos_theta * geo.gxnu[k] -
                          geo.H[k] * geo.gXnu[k];
            mean += w[i] * geo.area_element[k] * f.values[k];
            total += w[i] * geo.area_element[k];
        }
    mean /= total;
    for (double& x : f.values) x -= mean;
    return f;
}

double cfl_dt(const FlowState& state, double c_cfl) {
    Workspace ws;
    init_workspace(ws, state.grid(), state.cos_theta);
    fill_ghost(ws, state.u.values);
    const StageStats st = eval_rhs(ws, ws.g0);
    return stable_dt(ws, c_cfl, st.coef_max);
}

FlowState step(const FlowState& state, double dt, StepReport* report) {
    Workspace ws;
    init_workspace(ws, state.grid(), state.cos_theta);
    FlowState out = state;
    fill_ghost(ws, out.u.values);
    const StageStats st = eval_rhs(ws, ws.g0);
    if (!st.finite || !(st.rho_min > 0.0))
        throw std::domain_error("step: star-shaped graph representation lost");
    if (report) {
        report->dt = dt;
        report->sup_G = st.sup_G;
        report->rho_min = st.rho_min;
        report->min_gXnu = st.gXnu_min;
        report->r_node_min = st.r_min;
        report->r_node_max = st.r_max;
    }
    advance(ws, out.u.values, dt);
    out.t += dt;
    return out;
}

BarrierReport barrier_monitor(const FlowState& state, double r_inner, double r_outer) {
    if (!(r_outer > r_inner && r_inner > 0.0))
        throw std::invalid_argument("barrier_monitor: need r_outer > r_inner > 0");
    const GridSpec& g = state.grid();
    const CapSpec unit{state.cos_theta, 1.0, g.n};
    BarrierReport rep;
    rep.r_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.n_beta; ++i) {
        const double phi = profile_rho(unit, g.beta(i));
        for (int j = 0; j < g.ring_size(); ++j) {
            const double r = std::exp(state.u.at(i, j)) / phi;
            rep.r_min = std::min(rep.r_min, r);
            rep.r_max = std::max(rep.r_max, r);
            if (r < r_inner || r > r_outer) ++rep.outside_count;
        }
    }
    rep.all_inside = rep.outside_count == 0;
    return rep;
}

RunResult run_to_steady(const FlowState& initial, const FlowConfig& config) {
    if (!(config.c_cfl > 0.0 && config.c_cfl < 1.0))
        throw std::invalid_argument("run_to_steady: c_cfl must lie in (0, 1)");
    if (!(config.tol_steady > 0.0))
        throw std::invalid_argument("run_to_steady: tol_steady must be positive");
    if (config.record_every < 1)
        throw std::invalid_argument("run_to_steady: record_every must be >= 1");

    Workspace ws;
    init_workspace(ws, initial.grid(), initial.cos_theta);

    RunResult res;
    res.final_state = initial;
    std::vector<double>& u = res.final_state.u.values;
    double& t = res.final_state.t;

    fill_ghost(ws, u);
    StageStats st = eval_rhs(ws, ws.g0);

    double energy_prev = st.area - initial.cos_theta * st.wet;
    res.max_energy_uptick = -std::numeric_limits<double>::infinity();
    res.energy_slack_violation = -std::numeric_limits<double>::infinity();
    res.min_gXnu_overall = st.gXnu_min;
    res.r_node_max_overall = st.r_max;
    res.r_node_min_overall = st.r_min;

    double dt_last = 0.0;
    long last_recorded = -1;
    auto valid = [](const StageStats& s) { return s.finite && s.rho_min > 0.0; };
    auto record = [&](double sup_g) {
        res.records.push_back(
            diagnostics_row(res.final_state, res.steps, dt_last, sup_g));
        last_recorded = res.steps;
    };
    if (valid(st)) record(st.sup_G);

    while (true) {
        if (!valid(st)) {
            res.status = RunStatus::star_shape_lost;
            break;
        }
        if (st.sup_G < config.tol_steady) {
            res.status = RunStatus::converged;
            break;
        }
        if (t >= config.t_max) {
            res.status = RunStatus::budget_exhausted;
            break;
        }

        const double dt = std::min(stable_dt(ws, config.c_cfl, st.coef_max), config.t_max - t);
        advance(ws, u, dt);
        t += dt;
        dt_last = dt;
        ++res.steps;

        fill_ghost(ws, u);
        st = eval_rhs(ws, ws.g0);

        if (st.finite) {
            const double energy_now = st.area - initial.cos_theta * st.wet;
            const double uptick = energy_now - energy_prev;
            res.max_energy_uptick = std::max(res.max_energy_uptick, uptick);
            res.energy_slack_violation =
                std::max(res.energy_slack_violation,
                         uptick - 1e-10 * (1.0 + std::abs(energy_prev)));
            energy_prev = energy_now;
            res.min_gXnu_overall = std::min(res.min_gXnu_overall, st.gXnu_min);
            res.r_node_max_overall = std::max(res.r_node_max_overall, st.r_max);
            res.r_node_min_overall = std::min(res.r_node_min_overall, st.r_min);
        }
        if (res.steps % config.record_every == 0 && valid(st)) record(st.sup_G);
    }

    res.sup_G_final = st.sup_G;
    if (last_recorded != res.steps && valid(st)) record(st.sup_G);
    return res;
}

}  // namespace horoflow
