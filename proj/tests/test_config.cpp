#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "horoflow/caps.hpp"
#include "horoflow/config.hpp"
#include "horoflow/experiment.hpp"

using namespace horoflow;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("parse_config round trip preserves every effective value") {
    const std::string text =
        "# reference setup\n"
        "n = 2\n"
        "mode = axisymmetric\n"
        "n_beta = 96\n"
        "cos_theta = 0.5\n"
        "r0 = 1.25\n"
        "perturbation = fourier\n"
        "epsilon = 0.03\n"
        "seed = 42\n"
        "c_cfl = 0.15\n"
        "tol_steady = 1e-7\n"
        "t_max = 12.5\n"
        "record_every = 20\n"
        "out_dir = /tmp/horoflow_cfg_test\n";
    const ExperimentConfig cfg = parse_config(text);
    CHECK(cfg.n_beta == 96);
    CHECK(cfg.cos_theta == 0.5);
    CHECK(cfg.perturbation == PerturbationKind::fourier);
    CHECK(cfg.seed == 42);
    CHECK(cfg.flow.record_every == 20);
    CHECK(emit_config(parse_config(emit_config(cfg))) == emit_config(cfg));
}

TEST_CASE("parse_config rejects malformed input with line numbers") {
    CHECK_THROWS_AS(parse_config("n = 2\nbogus_key = 1\n"), ConfigError);
    try {
        parse_config("n = 2\nbogus_key = 1\n");
    } catch (const ConfigError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("cos_theta = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("n_beta\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("cos_theta = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("epsilon = -0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = full2d\nn_xi = 6\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("perturbation = cos2xi\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("c_cfl = 1.0\n"), ConfigError);
}

TEST_CASE("contact angle warning at the gradient-estimate boundary") {
    // (3n+1)/(5n-1) = 7/9 = 0.7777... for n = 2.
    ExperimentConfig warned = parse_config("cos_theta = 0.7778\n");
    CHECK(warned.warnings.size() == 1);
    ExperimentConfig fine = parse_config("cos_theta = 0.7777\n");
    CHECK(fine.warnings.empty());
    ExperimentConfig neg = parse_config("cos_theta = -0.9\n");
    CHECK(neg.warnings.size() == 1);
}

TEST_CASE("generate_initial: unperturbed configs reproduce the cap exactly") {
    ExperimentConfig cfg;
    cfg.n_beta = 32;
    cfg.cos_theta = 0.4;
    cfg.r0 = 1.2;
    cfg.epsilon = 0.0;
    validate_config(cfg);
    const FlowState st = generate_initial(cfg);
    const Field expect = cap_field({0.4, 1.2, 2}, st.grid());
    for (int i = 0; i < 32; ++i) CHECK(st.u.at(i) == expect.at(i));
}

TEST_CASE("generate_initial: multiplicative perturbation keeps the contact angle") {
    ExperimentConfig cfg;
    cfg.n_beta = 128;
    cfg.cos_theta = 0.5;
    cfg.epsilon = 0.05;
    validate_config(cfg);
    const FlowState st = generate_initial(cfg);
    // One-sided measurement, no ghost assistance: O(h^2) residual only.
    CHECK(initial_bc_violation(st) <= 1e-3);

    // Same check for the seeded even-cosine series.
    cfg.perturbation = PerturbationKind::fourier;
    cfg.seed = 3;
    const FlowState st2 = generate_initial(cfg);
    CHECK(initial_bc_violation(st2) <= 1e-3);
}

TEST_CASE("generate_initial: full2d free-boundary perturbation is compatible") {
    ExperimentConfig cfg;
    cfg.mode = GridMode::full2d;
    cfg.n_beta = 64;
    cfg.n_xi = 64;
    cfg.cos_theta = 0.0;
    cfg.perturbation = PerturbationKind::cos2xi;
    cfg.epsilon = 0.05;
    validate_config(cfg);
    const FlowState st = generate_initial(cfg);
    CHECK(initial_bc_violation(st) <= 1e-5);
    // Pole ring stays a single value.
    for (int j = 1; j < cfg.n_xi; ++j) CHECK(st.u.at(0, j) == st.u.at(0, 0));
}

TEST_CASE("generate_initial rejects amplitudes that pinch the graph") {
    ExperimentConfig cfg;
    cfg.n_beta = 32;
    cfg.epsilon = 1.2;  // 1 + eps cos(2 beta) < 0 at the equator
    validate_config(cfg);
    CHECK_THROWS(generate_initial(cfg));
}

TEST_CASE("run_experiment: budget exhaustion exit code and artifacts") {
    ExperimentConfig cfg;
    cfg.n_beta = 32;
    cfg.cos_theta = 0.5;
    cfg.epsilon = 0.05;
    cfg.flow.t_max = 1e-4;
    cfg.flow.record_every = 5;
    cfg.out_dir = "/tmp/horoflow_budget_test";
    validate_config(cfg);
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.exit_code == 2);
    CHECK(std::filesystem::exists(cfg.out_dir + "/time_series.csv"));
    CHECK(std::filesystem::exists(cfg.out_dir + "/snapshot_initial.csv"));
    CHECK(std::filesystem::exists(cfg.out_dir + "/snapshot_final.csv"));
    CHECK(std::filesystem::exists(cfg.out_dir + "/report.txt"));
    const std::string report = slurp(cfg.out_dir + "/report.txt");
    CHECK(report.find("status = budget_exhausted") != std::string::npos);
}

TEST_CASE("run_experiment: identical config and seed give identical bytes") {
    ExperimentConfig cfg;
    cfg.n_beta = 48;
    cfg.cos_theta = 0.3;
    cfg.perturbation = PerturbationKind::fourier;
    cfg.epsilon = 0.04;
    cfg.seed = 11;
    cfg.flow.tol_steady = 1e-5;
    cfg.flow.record_every = 40;
    cfg.out_dir = "/tmp/horoflow_det_a";
    validate_config(cfg);
    run_experiment(cfg);
    cfg.out_dir = "/tmp/horoflow_det_b";
    run_experiment(cfg);
    CHECK(slurp("/tmp/horoflow_det_a/time_series.csv") ==
          slurp("/tmp/horoflow_det_b/time_series.csv"));
    CHECK(slurp("/tmp/horoflow_det_a/snapshot_final.csv") ==
          slurp("/tmp/horoflow_det_b/snapshot_final.csv"));
}

TEST_CASE("time series format: version header and column schema") {
    ExperimentConfig cfg;
    cfg.n_beta = 32;
    cfg.flow.t_max = 0.0;
    cfg.out_dir = "/tmp/horoflow_format_test";
    validate_config(cfg);
    run_experiment(cfg);
    std::ifstream in(cfg.out_dir + "/time_series.csv");
    std::string line1, line2;
    std::getline(in, line1);
    std::getline(in, line2);
    CHECK(line1 == "# horoflow v1");
    CHECK(line2 ==
          "step,t,dt,volume,area,wet,energy,minkowski_residual,sigma2_residual,"
          "umbilicity_deficit,rho_min,rho_max,r_fit,min_gXnu,sup_G");
}

TEST_CASE("energy_compare: umbilical starts sit at the cap energy already") {
    ExperimentConfig cfg;
    cfg.n_beta = 96;
    cfg.cos_theta = 0.5;
    cfg.epsilon = 0.0;
    cfg.flow.tol_steady = 1e-2;  // static residual is below this, converges at t = 0
    validate_config(cfg);
    const RunResult run = run_to_steady(generate_initial(cfg), cfg.flow);
    REQUIRE(run.status == RunStatus::converged);
    const EnergyComparison cmp = energy_compare(run, cfg.cos_theta);
    CHECK(cmp.r_star == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(cmp.rel_gap <= 1e-3);  // discrete V0 carries the O(h^2) quadrature level
    CHECK(cmp.initial_ge_final);
}
