#include "horoflow/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <random>
#include <stdexcept>

#include "horoflow/caps.hpp"
#include "horoflow/functionals.hpp"
#include "horoflow/oracle.hpp"

namespace horoflow {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_for_write(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    return f;
}

}  // namespace

FlowState generate_initial(const ExperimentConfig& cfg) {
    const GridSpec grid = build_grid(cfg.n, cfg.mode, cfg.n_beta, cfg.n_xi);
    const CapSpec cap{cfg.cos_theta, cfg.r0, cfg.n};

    FlowState state;
    state.cos_theta = cfg.cos_theta;
    state.u = cap_field(cap, grid);
    if (cfg.epsilon == 0.0 || cfg.perturbation == PerturbationKind::none) return state;

    switch (cfg.perturbation) {
        case PerturbationKind::cos2beta: {
            for (int i = 0; i < grid.n_beta; ++i) {
                const double factor = 1.0 + cfg.epsilon * std::cos(2.0 * grid.beta(i));
                if (!(factor > 0.0))
                    throw std::invalid_argument("generate_initial: epsilon too large, rho0 <= 0");
                const double bump = std::log(factor);
                for (int j = 0; j < grid.ring_size(); ++j) state.u.at(i, j) += bump;
            }
            break;
        }
        case PerturbationKind::cos2xi: {
            for (int i = 0; i < grid.n_beta; ++i) {
                const double s = std::sin(grid.beta(i));
                for (int j = 0; j < grid.n_xi; ++j)
                    state.u.at(i, j) += cfg.epsilon * s * s * std::cos(2.0 * grid.xi(j));
            }
            break;
        }
        case PerturbationKind::fourier: {
            std::mt19937 rng(static_cast<std::mt19937::result_type>(cfg.seed));
            std::uniform_real_distribution<double> coeff(-1.0, 1.0);
            constexpr int kModes = 6;
            double a[kModes];
            for (int k = 0; k < kModes; ++k) a[k] = coeff(rng) / ((k + 1.0) * (k + 1.0));
            for (int i = 0; i < grid.n_beta; ++i) {
                double series = 0.0;
                for (int k = 0; k < kModes; ++k)
                    series += a[k] * std::cos(2.0 * (k + 1) * grid.beta(i));
                const double factor = 1.0 + cfg.epsilon * series;
                if (!(factor > 0.0))
                    throw std::invalid_argument("generate_initial: epsilon too large, rho0 <= 0");
                state.u.at(i) += std::log(factor);
            }
            break;
        }
        case PerturbationKind::none:
            break;
    }
    return state;
}

double initial_bc_violation(const FlowState& state) {
    const GridSpec& g = state.grid();
    const int nb = g.n_beta;
    const double h = g.h_beta;
    double worst = 0.0;
    for (int j = 0; j < g.ring_size(); ++j) {
        const double one_sided =
            (3.0 * state.u.at(nb - 1, j) - 4.0 * state.u.at(nb - 2, j) + state.u.at(nb - 3, j)) /
            (2.0 * h);
        double gx_sq = 0.0;
        if (g.mode == GridMode::full2d) {
            const int jp = (j + 1) % g.n_xi, jm = (j + g.n_xi - 1) % g.n_xi;
            const double gx = (state.u.at(nb - 1, jp) - state.u.at(nb - 1, jm)) / (2.0 * g.h_xi);
            gx_sq = gx * gx;
        }
        worst = std::max(worst, std::abs(one_sided - equator_slope(state.cos_theta, gx_sq)));
    }
    return worst;
}

EnergyComparison energy_compare(const RunResult& run, double cos_theta) {
    if (run.records.empty())
        throw std::invalid_argument("energy_compare: run has no records");
    EnergyComparison cmp;
    const double vol0 = run.records.front().volume;
    cmp.energy_initial = run.records.front().energy;
    cmp.energy_final = run.records.back().energy;
    cmp.r_star = radius_from_volume(cos_theta, vol0, run.final_state.n());

    FlowState cap_state;
    cap_state.cos_theta = cos_theta;
    cap_state.u = cap_field({cos_theta, cmp.r_star, run.final_state.n()}, run.final_state.grid());
    cmp.energy_cap = energy(cap_state);
    cmp.rel_gap = std::abs(cmp.energy_final - cmp.energy_cap) / std::abs(cmp.energy_cap);
    cmp.initial_ge_final = cmp.energy_initial >= cmp.energy_final;
    return cmp;
}

void write_timeseries_csv(const std::string& path, const std::vector<DiagnosticsRecord>& recs) {
    FilePtr f = open_for_write(path);
    std::fputs("# horoflow v1\n", f.get());
    std::fputs(
        "step,t,dt,volume,area,wet,energy,minkowski_residual,sigma2_residual,"
        "umbilicity_deficit,rho_min,rho_max,r_fit,min_gXnu,sup_G\n",
        f.get());
    for (const DiagnosticsRecord& r : recs) {
        std::fprintf(f.get(),
                     "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                     "%.17g,%.17g,%.17g\n",
                     r.step, r.t, r.dt, r.volume, r.area, r.wet, r.energy, r.minkowski_residual,
                     r.sigma2_residual, r.umbilicity_deficit, r.rho_min, r.rho_max, r.r_fit,
                     r.min_gXnu, r.sup_G);
    }
}

void write_snapshot(const std::string& path, const FlowState& state) {
    FilePtr f = open_for_write(path);
    std::fputs("# horoflow v1\n", f.get());
    const GridSpec& g = state.grid();
    if (g.mode == GridMode::axisymmetric) {
        std::fputs("beta,rho,u\n", f.get());
        for (int i = 0; i < g.n_beta; ++i) {
            const double u = state.u.at(i);
            std::fprintf(f.get(), "%.17g,%.17g,%.17g\n", g.beta(i), std::exp(u), u);
        }
    } else {
        std::fputs("beta,xi,rho,u\n", f.get());
        for (int i = 0; i < g.n_beta; ++i)
            for (int j = 0; j < g.n_xi; ++j) {
                const double u = state.u.at(i, j);
                std::fprintf(f.get(), "%.17g,%.17g,%.17g,%.17g\n", g.beta(i), g.xi(j),
                             std::exp(u), u);
            }
    }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult result;
    result.out_dir = cfg.out_dir;
    std::filesystem::create_directories(cfg.out_dir);

    const FlowState initial = generate_initial(cfg);
    result.bc_violation = initial_bc_violation(initial);
    write_snapshot(cfg.out_dir + "/snapshot_initial.csv", initial);

    result.run = run_to_steady(initial, cfg.flow);
    const RunResult& run = result.run;
    result.exit_code = static_cast<int>(run.status);

    write_timeseries_csv(cfg.out_dir + "/time_series.csv", run.records);
    write_snapshot(cfg.out_dir + "/snapshot_final.csv", run.final_state);

    const bool has_records = !run.records.empty();
    const double vol0 = has_records ? run.records.front().volume : 0.0;
    double drift = 0.0;
    for (const DiagnosticsRecord& r : run.records)
        drift = std::max(drift, std::abs(r.volume - vol0) / vol0);
    result.volume_drift_rel = drift;

    if (run.status != RunStatus::star_shape_lost && has_records)
        result.energy = energy_compare(run, cfg.cos_theta);

    // Mesh order of the static residual on the volume-matched cap, the
    // grid-convergence summary quoted in the report.
    OrderEstimate order{};
    bool have_order = false;
    if (run.status == RunStatus::converged && cfg.mode == GridMode::axisymmetric &&
        cfg.n_beta % 4 == 0 && cfg.n_beta >= 32) {
        const CapSpec cap{cfg.cos_theta, result.energy.r_star, cfg.n};
        const double e0 =
            static_residual(cap, build_grid(cfg.n, cfg.mode, cfg.n_beta / 4 + 1)).sup_G;
        const double e1 =
            static_residual(cap, build_grid(cfg.n, cfg.mode, cfg.n_beta / 2 + 1)).sup_G;
        const double e2 = static_residual(cap, build_grid(cfg.n, cfg.mode, cfg.n_beta + 1)).sup_G;
        if (e0 > 0.0 && e1 > 0.0 && e2 > 0.0) {
            order = convergence_order(e0, e1, e2);
            have_order = true;
        }
    }

    FilePtr f = open_for_write(cfg.out_dir + "/report.txt");
    auto kv = [&](const char* key, const std::string& val) {
        std::fprintf(f.get(), "%s = %s\n", key, val.c_str());
    };
    auto kvf = [&](const char* key, double val) {
        std::fprintf(f.get(), "%s = %.17g\n", key, val);
    };
    const char* status_name = run.status == RunStatus::converged ? "converged"
                              : run.status == RunStatus::budget_exhausted ? "budget_exhausted"
                                                                          : "star_shape_lost";
    kv("status", status_name);
    std::fprintf(f.get(), "steps = %ld\n", run.steps);
    kvf("t_final", run.final_state.t);
    kvf("sup_G_final", run.sup_G_final);
    kvf("initial_bc_violation", result.bc_violation);
    if (has_records) {
        kvf("volume_initial", vol0);
        kvf("volume_final", run.records.back().volume);
        kvf("volume_drift_rel", drift);
        kvf("energy_initial", run.records.front().energy);
        kvf("energy_final", run.records.back().energy);
        kvf("energy_drop", run.records.front().energy - run.records.back().energy);
        kvf("energy_slack_violation", run.energy_slack_violation);
        kvf("min_gXnu", run.min_gXnu_overall);
        kvf("r_node_max", run.r_node_max_overall);
        kvf("r_node_min", run.r_node_min_overall);
        kvf("r_fit_final", run.records.back().r_fit);
        kvf("minkowski_residual_initial", run.records.front().minkowski_residual);
        kvf("minkowski_residual_final", run.records.back().minkowski_residual);
        kvf("sigma2_residual_initial", run.records.front().sigma2_residual);
        kvf("sigma2_residual_final", run.records.back().sigma2_residual);
        kvf("umbilicity_deficit_final", run.records.back().umbilicity_deficit);
    }
    if (run.status != RunStatus::star_shape_lost && has_records) {
        kvf("r_star", result.energy.r_star);
        kvf("energy_cap_r_star", result.energy.energy_cap);
        kvf("energy_rel_gap", result.energy.rel_gap);
    }
    if (have_order) {
        kvf("static_residual_order", order.value());
        kv("static_residual_order_conclusive", order.conclusive ? "yes" : "no");
    }
    for (const std::string& w : cfg.warnings) kv("warning", w);
    return result;
}

}  // namespace horoflow
