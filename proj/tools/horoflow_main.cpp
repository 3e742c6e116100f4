// Command line front end: run experiments from flat config files and expose
// the cap-family / convergence utilities as one-line subcommands.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "horoflow/caps.hpp"
#include "horoflow/config.hpp"
#include "horoflow/experiment.hpp"
#include "horoflow/oracle.hpp"

namespace {

constexpr int kConfigErrorExit = 4;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw horoflow::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int cmd_run(const std::string& config_path, const std::string& out_dir_override) {
    horoflow::ExperimentConfig cfg = horoflow::parse_config(slurp(config_path));
    if (!out_dir_override.empty()) cfg.out_dir = out_dir_override;
    for (const std::string& w : cfg.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

    const horoflow::ExperimentResult res = horoflow::run_experiment(cfg);
    const auto& last = res.run.records.back();
    std::printf(
        "run status=%d steps=%ld t=%.6g sup_G=%.3e volume_drift=%.3e energy=%.*g r_fit=%.*g "
        "out=%s\n",
        res.exit_code, res.run.steps, res.run.final_state.t, res.run.sup_G_final,
        res.volume_drift_rel, 10, last.energy, 10, last.r_fit, res.out_dir.c_str());
    return res.exit_code;
}

int cmd_static_check(double cos_theta, double r, int n, const std::string& grids_csv) {
    const std::vector<int> grids = parse_int_list(grids_csv);
    std::vector<double> sup_g, sup_id;
    for (int nb : grids) {
        const auto res = horoflow::static_residual(
            {cos_theta, r, n}, horoflow::build_grid(n, horoflow::GridMode::axisymmetric, nb));
        sup_g.push_back(res.sup_G);
        sup_id.push_back(res.sup_identity);
    }
    std::printf("static_check cos_theta=%.17g r=%.17g n=%d", cos_theta, r, n);
    for (size_t k = 0; k < grids.size(); ++k)
        std::printf(" sup_G[%d]=%.6e", grids[k], sup_g[k]);
    double max_id = 0.0;
    for (double x : sup_id) max_id = std::max(max_id, x);
    std::printf(" sup_identity=%.3e", max_id);
    if (grids.size() == 3 && sup_g[0] > 0.0 && sup_g[1] > 0.0 && sup_g[2] > 0.0) {
        const auto order = horoflow::convergence_order(sup_g[0], sup_g[1], sup_g[2]);
        std::printf(" order=%.3f conclusive=%d", order.value(), order.conclusive ? 1 : 0);
    }
    std::printf("\n");
    return 0;
}

int cmd_convergence_order(const std::string& errors_csv) {
    const std::vector<double> e = parse_double_list(errors_csv);
    if (e.size() != 3) throw horoflow::ConfigError("convergence-order needs exactly 3 errors");
    const auto order = horoflow::convergence_order(e[0], e[1], e[2]);
    std::printf("convergence_order p=%.6f p_cm=%.6f p_mf=%.6f conclusive=%d\n", order.value(),
                order.p_cm, order.p_mf, order.conclusive ? 1 : 0);
    return 0;
}

int cmd_radius_from_volume(double cos_theta, double volume, int n) {
    const double r = horoflow::radius_from_volume(cos_theta, volume, n);
    std::printf("radius_from_volume cos_theta=%.17g volume=%.17g n=%d r=%.12e\n", cos_theta,
                volume, n, r);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"horoflow: volume-preserving capillary curvature flow in a horoball"};
    app.require_subcommand(1);

    std::string config_path, out_dir_override;
    CLI::App* run = app.add_subcommand("run", "Run an experiment from a config file");
    run->add_option("config", config_path, "flat key = value config file")->required();
    run->add_option("--out-dir", out_dir_override, "override the configured output directory");

    double sc_cos = 0.5, sc_r = 1.0;
    int sc_n = 2;
    std::string sc_grids = "64,128,256";
    CLI::App* sc = app.add_subcommand("static-check",
                                      "Static residual of the cap family under refinement");
    sc->add_option("--cos-theta", sc_cos, "cosine of the contact angle");
    sc->add_option("--r", sc_r, "cap radius");
    sc->add_option("--n", sc_n, "hypersurface dimension");
    sc->add_option("--n-beta", sc_grids, "comma list of beta node counts");

    std::string co_errors;
    CLI::App* co = app.add_subcommand("convergence-order", "Richardson order from three errors");
    co->add_option("--errors", co_errors, "comma list e_coarse,e_medium,e_fine")->required();

    double rv_cos = 0.0, rv_vol = 1.0;
    int rv_n = 2;
    CLI::App* rv = app.add_subcommand("radius-from-volume",
                                      "Invert the cap volume at fixed contact angle");
    rv->add_option("--cos-theta", rv_cos, "cosine of the contact angle");
    rv->add_option("--volume", rv_vol, "target enclosed volume")->required();
    rv->add_option("--n", rv_n, "hypersurface dimension");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(config_path, out_dir_override);
        if (sc->parsed()) return cmd_static_check(sc_cos, sc_r, sc_n, sc_grids);
        if (co->parsed()) return cmd_convergence_order(co_errors);
        if (rv->parsed()) return cmd_radius_from_volume(rv_cos, rv_vol, rv_n);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kConfigErrorExit;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kConfigErrorExit;
    }
    return 0;
}
