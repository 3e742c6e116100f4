#pragma once

#include <string>

#include "horoflow/config.hpp"
#include "horoflow/flow.hpp"

namespace horoflow {

/// Initial graph: the base cap perturbed per config.
///  - cos2beta: rho0 = rho_cap * (1 + eps cos 2 beta).  The multiplicative
///    form keeps the equator slope of log rho unchanged, so the contact-angle
///    condition holds exactly at t = 0.
///  - cos2xi (full2d): u0 = u_cap + eps sin^2(beta) cos(2 xi), pole-smooth
///    with vanishing beta-derivative at the equator.
///  - fourier: multiplicative seeded random even-cosine series (every term
///    has zero beta-derivative at the equator).
/// Rejects amplitudes that drive rho0 <= 0.
FlowState generate_initial(const ExperimentConfig& config);

/// Largest violation of the oblique equator condition by the initial data,
/// measured with one-sided differences (no ghost assistance).
double initial_bc_violation(const FlowState& state);

struct EnergyComparison {
    double r_star = 0.0;         // volume-matched cap radius
    double energy_initial = 0.0;
    double energy_final = 0.0;
    double energy_cap = 0.0;     // energy of the r_star cap on the same grid
    double rel_gap = 0.0;        // |E_final - E_cap| / |E_cap|
    bool initial_ge_final = false;
};

/// Compares the run's energies with the volume-matched cap's.
EnergyComparison energy_compare(const RunResult& run, double cos_theta);

struct ExperimentResult {
    RunResult run;
    EnergyComparison energy;
    double bc_violation = 0.0;
    double volume_drift_rel = 0.0;
    int exit_code = 0;           // 0 converged, 2 budget exhausted, 3 star-shape lost
    std::string out_dir;
};

/// Full pipeline: grid, initial data, run_to_steady, time series + snapshots
/// + report on disk.  Artifacts: time_series.csv, snapshot_initial.csv,
/// snapshot_final.csv, report.txt.
ExperimentResult run_experiment(const ExperimentConfig& config);

void write_timeseries_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records);
void write_snapshot(const std::string& path, const FlowState& state);

}  // namespace horoflow
