#include "horoflow/config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace horoflow {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, int line) {
    size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'", line);
    }
    if (pos != v.size()) throw ConfigError("trailing characters in number '" + v + "'", line);
    return x;
}

long parse_long(const std::string& v, int line) {
    size_t pos = 0;
    long x;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("expected an integer, got '" + v + "'", line);
    }
    if (pos != v.size()) throw ConfigError("trailing characters in integer '" + v + "'", line);
    return x;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

const char* to_string(PerturbationKind kind) {
    switch (kind) {
        case PerturbationKind::none: return "none";
        case PerturbationKind::cos2beta: return "cos2beta";
        case PerturbationKind::cos2xi: return "cos2xi";
        case PerturbationKind::fourier: return "fourier";
    }
    return "?";
}

const char* to_string(GridMode mode) {
    return mode == GridMode::axisymmetric ? "axisymmetric" : "full2d";
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("expected 'key = value'", line_no);

        if (key == "n") {
            cfg.n = static_cast<int>(parse_long(val, line_no));
        } else if (key == "mode") {
            if (val == "axisymmetric")
                cfg.mode = GridMode::axisymmetric;
            else if (val == "full2d")
                cfg.mode = GridMode::full2d;
            else
                throw ConfigError("mode must be 'axisymmetric' or 'full2d'", line_no);
        } else if (key == "n_beta") {
            cfg.n_beta = static_cast<int>(parse_long(val, line_no));
        } else if (key == "n_xi") {
            cfg.n_xi = static_cast<int>(parse_long(val, line_no));
        } else if (key == "cos_theta") {
            cfg.cos_theta = parse_double(val, line_no);
        } else if (key == "r0") {
            cfg.r0 = parse_double(val, line_no);
        } else if (key == "perturbation") {
            if (val == "none")
                cfg.perturbation = PerturbationKind::none;
            else if (val == "cos2beta")
                cfg.perturbation = PerturbationKind::cos2beta;
            else if (val == "cos2xi")
                cfg.perturbation = PerturbationKind::cos2xi;
            else if (val == "fourier")
                cfg.perturbation = PerturbationKind::fourier;
            else
                throw ConfigError("unknown perturbation '" + val + "'", line_no);
        } else if (key == "epsilon") {
            cfg.epsilon = parse_double(val, line_no);
        } else if (key == "seed") {
            cfg.seed = static_cast<unsigned long>(parse_long(val, line_no));
        } else if (key == "c_cfl") {
            cfg.flow.c_cfl = parse_double(val, line_no);
        } else if (key == "tol_steady") {
            cfg.flow.tol_steady = parse_double(val, line_no);
        } else if (key == "t_max") {
            cfg.flow.t_max = parse_double(val, line_no);
        } else if (key == "record_every") {
            cfg.flow.record_every = static_cast<int>(parse_long(val, line_no));
        } else if (key == "out_dir") {
            cfg.out_dir = val;
        } else {
            throw ConfigError("unknown key '" + key + "'", line_no);
        }
    }
    validate_config(cfg);
    return cfg;
}

void validate_config(ExperimentConfig& cfg) {
    if (cfg.n < 2) throw ConfigError("n must be >= 2");
    if (!(cfg.cos_theta > -1.0 && cfg.cos_theta < 1.0))
        throw ConfigError("cos_theta must lie in (-1, 1)");
    if (cfg.n_beta < 8) throw ConfigError("n_beta must be >= 8");
    if (cfg.mode == GridMode::full2d) {
        if (cfg.n != 2) throw ConfigError("full2d mode requires n = 2");
        if (cfg.n_xi < 8 || cfg.n_xi % 4 != 0)
            throw ConfigError("full2d mode requires n_xi >= 8 and divisible by 4");
        if (cfg.perturbation == PerturbationKind::fourier)
            throw ConfigError("fourier perturbations are axisymmetric only");
    } else if (cfg.perturbation == PerturbationKind::cos2xi) {
        throw ConfigError("cos2xi perturbation requires full2d mode");
    }
    if (!(cfg.r0 > 0.0)) throw ConfigError("r0 must be positive");
    if (cfg.epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
    if (!(cfg.flow.c_cfl > 0.0 && cfg.flow.c_cfl < 1.0))
        throw ConfigError("c_cfl must lie in (0, 1)");
    if (!(cfg.flow.tol_steady > 0.0)) throw ConfigError("tol_steady must be positive");
    if (cfg.flow.t_max < 0.0) throw ConfigError("t_max must be >= 0");
    if (cfg.flow.record_every < 1) throw ConfigError("record_every must be >= 1");

    cfg.warnings.clear();
    const double bound = (3.0 * cfg.n + 1.0) / (5.0 * cfg.n - 1.0);
    if (std::abs(cfg.cos_theta) >= bound) {
        std::ostringstream w;
        w << "|cos_theta| = " << std::abs(cfg.cos_theta)
          << " is outside the proven-convergence range |cos_theta| < (3n+1)/(5n-1) = " << bound
          << "; the run proceeds as a numerical exploration";
        cfg.warnings.push_back(w.str());
    }
}

std::string emit_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "n = " << cfg.n << "\n";
    out << "mode = " << to_string(cfg.mode) << "\n";
    out << "n_beta = " << cfg.n_beta << "\n";
    out << "n_xi = " << cfg.n_xi << "\n";
    out << "cos_theta = " << fmt(cfg.cos_theta) << "\n";
    out << "r0 = " << fmt(cfg.r0) << "\n";
    out << "perturbation = " << to_string(cfg.perturbation) << "\n";
    out << "epsilon = " << fmt(cfg.epsilon) << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "c_cfl = " << fmt(cfg.flow.c_cfl) << "\n";
    out << "tol_steady = " << fmt(cfg.flow.tol_steady) << "\n";
    out << "t_max = " << fmt(cfg.flow.t_max) << "\n";
    out << "record_every = " << cfg.flow.record_every << "\n";
    out << "out_dir = " << cfg.out_dir << "\n";
    return out.str();
}

}  // namespace horoflow
