#pragma once

#include <vector>

#include "horoflow/functionals.hpp"
#include "horoflow/state.hpp"

namespace horoflow {

struct FlowConfig {
    double c_cfl = 0.2;        // explicit-step safety factor, in (0, 1)
    double tol_steady = 1e-8;  // sup|G| declaring steady state
    double t_max = 50.0;       // flow-time budget
    int record_every = 100;    // diagnostics cadence in steps
};

enum class RunStatus {
    converged = 0,
    budget_exhausted = 2,
    star_shape_lost = 3,
};

/// Per-step monitors, taken at the state the step departs from.
struct StepReport {
    double dt = 0.0;
    double sup_G = 0.0;
    double rho_min = 0.0;
    double min_gXnu = 0.0;
    double r_node_min = 0.0;   // extremal cap radii through the nodes; the
    double r_node_max = 0.0;   // barrier monitor turns these into flags
};

/// Scalar flow right-hand side du/dt = G at every node (ghosts applied
/// internally).  The area-mean of the normal speed is projected out, making
/// the discrete enclosed volume a first integral of the semi-discrete system;
/// without it the scheme's weighted-balance residual acts as a persistent
/// volume leak and the state slides along the cap family instead of settling.
/// Throws if the state has left the star-shaped graph regime.
Field flow_rhs(const FlowState& state);

/// Normal speed f of the hypersurface, projected consistently with flow_rhs:
/// rho e^omega G = v f pointwise and int f dA = 0 to round-off.  The
/// unprojected balance integral remains available as minkowski_residual.
Field normal_speed(const FlowState& state);

/// Stability-limited explicit time step c_cfl * h^2 / max(x_{n+1}/(rho v)).
/// In full2d mode h is min(h_beta, sin(beta)*h_xi) with the minimum restricted
/// to the rings outside the filtered pole region.
double cfl_dt(const FlowState& state, double c_cfl);

/// One explicit two-stage Runge-Kutta (Heun) step; ghosts are refreshed at
/// each stage.  In full2d the pole ring is re-unified and the pole filter
/// applied after the update.  report, when given, receives the departing
/// state's monitors.
FlowState step(const FlowState& state, double dt, StepReport* report = nullptr);

/// Cap-annulus membership and the radii of the extremal caps through the
/// surface: r(node) inverts the cap profile at fixed angle (it is linear in
/// r), r_max/r_min are the node extremes.
struct BarrierReport {
    bool all_inside = true;
    long outside_count = 0;
    double r_max = 0.0;
    double r_min = 0.0;
};
BarrierReport barrier_monitor(const FlowState& state, double r_inner, double r_outer);

struct RunResult {
    FlowState final_state;
    RunStatus status = RunStatus::converged;
    long steps = 0;
    std::vector<DiagnosticsRecord> records;
    // Per-step bookkeeping over the whole run:
    double max_energy_uptick = 0.0;      // max of E_{k+1} - E_k (negative when monotone)
    double energy_slack_violation = 0.0; // max of E_{k+1} - E_k - 1e-10 (1 + |E_k|)
    double min_gXnu_overall = 0.0;
    double r_node_max_overall = 0.0;
    double r_node_min_overall = 0.0;
    double sup_G_final = 0.0;
};

/// Steps until sup|G| < tol_steady or the time budget runs out, recording
/// diagnostics every record_every steps (plus the initial and final states).
RunResult run_to_steady(const FlowState& initial, const FlowConfig& config);

}  // namespace horoflow
