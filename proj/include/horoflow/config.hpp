#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "horoflow/flow.hpp"

namespace horoflow {

enum class PerturbationKind { none, cos2beta, cos2xi, fourier };

/// Flat key/value experiment description.  Keys: n, mode, n_beta, n_xi,
/// cos_theta, r0, perturbation, epsilon, seed, c_cfl, tol_steady, t_max,
/// record_every, out_dir.
struct ExperimentConfig {
    int n = 2;
    GridMode mode = GridMode::axisymmetric;
    int n_beta = 128;
    int n_xi = 0;
    double cos_theta = 0.0;
    double r0 = 1.0;
    PerturbationKind perturbation = PerturbationKind::cos2beta;
    double epsilon = 0.0;
    unsigned long seed = 0;
    FlowConfig flow;
    std::string out_dir = "out";

    std::vector<std::string> warnings;  // filled by validation, not parsed
};

struct ConfigError : std::runtime_error {
    int line;  // 0 when not tied to a specific line
    ConfigError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

/// Parses `key = value` lines ('#' comments, blank lines allowed).  Unknown
/// keys and malformed values are rejected with their line number; range
/// violations are rejected after parsing.  A warning is recorded when
/// |cos_theta| >= (3n+1)/(5n-1), the boundary of the regime covered by the
/// gradient estimate (runs beyond it are allowed for exploration).
ExperimentConfig parse_config(const std::string& text);

/// Canonical text form; parse_config(emit_config(c)) reproduces all
/// effective values.
std::string emit_config(const ExperimentConfig& config);

/// Range checks plus the contact-angle warning; throws ConfigError.
void validate_config(ExperimentConfig& config);

const char* to_string(PerturbationKind kind);
const char* to_string(GridMode mode);

}  // namespace horoflow
