#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "horoflow/caps.hpp"
#include "horoflow/config.hpp"
#include "horoflow/experiment.hpp"
#include "horoflow/flow.hpp"
#include "horoflow/functionals.hpp"
#include "horoflow/oracle.hpp"

namespace py = pybind11;
using namespace horoflow;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Volume-preserving capillary curvature flow on radial graphs in a horoball";

    py::enum_<GridMode>(m, "GridMode")
        .value("axisymmetric", GridMode::axisymmetric)
        .value("full2d", GridMode::full2d);

    py::class_<GridSpec>(m, "GridSpec")
        .def_readonly("n", &GridSpec::n)
        .def_readonly("mode", &GridSpec::mode)
        .def_readonly("n_beta", &GridSpec::n_beta)
        .def_readonly("n_xi", &GridSpec::n_xi)
        .def_readonly("h_beta", &GridSpec::h_beta)
        .def_readonly("h_xi", &GridSpec::h_xi)
        .def("node_count", &GridSpec::node_count)
        .def("beta", &GridSpec::beta)
        .def("xi", &GridSpec::xi);

    m.def("build_grid", &build_grid, py::arg("n"), py::arg("mode"), py::arg("n_beta"),
          py::arg("n_xi") = 0);

    py::class_<Field>(m, "Field")
        .def(py::init<const GridSpec&, double>(), py::arg("grid"), py::arg("fill") = 0.0)
        .def_readonly("grid", &Field::grid)
        .def_readwrite("values", &Field::values);

    py::class_<FlowState>(m, "FlowState")
        .def(py::init([](const Field& u, double t, double cos_theta) {
                 FlowState s;
                 s.u = u;
                 s.t = t;
                 s.cos_theta = cos_theta;
                 return s;
             }),
             py::arg("u"), py::arg("t") = 0.0, py::arg("cos_theta") = 0.0)
        .def_readwrite("u", &FlowState::u)
        .def_readwrite("t", &FlowState::t)
        .def_readwrite("cos_theta", &FlowState::cos_theta);

    py::class_<CapSpec>(m, "CapSpec")
        .def(py::init([](double cos_theta, double r, int n) {
                 return CapSpec{cos_theta, r, n};
             }),
             py::arg("cos_theta"), py::arg("r"), py::arg("n") = 2)
        .def_readwrite("cos_theta", &CapSpec::cos_theta)
        .def_readwrite("r", &CapSpec::r)
        .def_readwrite("n", &CapSpec::n);

    m.def("profile_rho", &profile_rho);
    m.def("cap_curvature", &cap_curvature);
    m.def("cap_field", &cap_field);
    m.def("cap_volume", &cap_volume, py::arg("spec"), py::arg("tol") = 1e-12,
          py::arg("inner_points") = 24);
    m.def("radius_from_volume", &radius_from_volume, py::arg("cos_theta"), py::arg("v0"),
          py::arg("n") = 2, py::arg("rel_tol") = 1e-10);
    m.def("static_residual", [](const CapSpec& spec, const GridSpec& grid) {
        const StaticResidual r = static_residual(spec, grid);
        return py::make_tuple(r.sup_G, r.sup_identity);
    });
    m.def("fit_cap", [](const Field& u, double cos_theta) {
        const CapFit f = fit_cap(u, cos_theta);
        return py::make_tuple(f.r_fit, f.distance, f.deficit);
    });

    m.def("flow_rhs", &flow_rhs);
    m.def("normal_speed", &normal_speed);
    m.def("cfl_dt", &cfl_dt);
    m.def("step", &step);
    m.def("area", py::overload_cast<const FlowState&>(&area));
    m.def("wetted_area", &wetted_area);
    m.def("energy", &energy);
    m.def("enclosed_volume", &enclosed_volume, py::arg("state"), py::arg("inner_points") = 16);
    m.def("minkowski_residual", py::overload_cast<const FlowState&>(&minkowski_residual));
    m.def("sigma2_residual", py::overload_cast<const FlowState&>(&sigma2_residual));
    m.def("umbilicity_deficit", py::overload_cast<const FlowState&>(&umbilicity_deficit));

    py::class_<FlowConfig>(m, "FlowConfig")
        .def(py::init<>())
        .def_readwrite("c_cfl", &FlowConfig::c_cfl)
        .def_readwrite("tol_steady", &FlowConfig::tol_steady)
        .def_readwrite("t_max", &FlowConfig::t_max)
        .def_readwrite("record_every", &FlowConfig::record_every);

    py::class_<DiagnosticsRecord>(m, "DiagnosticsRecord")
        .def_readonly("step", &DiagnosticsRecord::step)
        .def_readonly("t", &DiagnosticsRecord::t)
        .def_readonly("dt", &DiagnosticsRecord::dt)
        .def_readonly("volume", &DiagnosticsRecord::volume)
        .def_readonly("area", &DiagnosticsRecord::area)
        .def_readonly("wet", &DiagnosticsRecord::wet)
        .def_readonly("energy", &DiagnosticsRecord::energy)
        .def_readonly("minkowski_residual", &DiagnosticsRecord::minkowski_residual)
        .def_readonly("sigma2_residual", &DiagnosticsRecord::sigma2_residual)
        .def_readonly("umbilicity_deficit", &DiagnosticsRecord::umbilicity_deficit)
        .def_readonly("rho_min", &DiagnosticsRecord::rho_min)
        .def_readonly("rho_max", &DiagnosticsRecord::rho_max)
        .def_readonly("r_fit", &DiagnosticsRecord::r_fit)
        .def_readonly("min_gXnu", &DiagnosticsRecord::min_gXnu)
        .def_readonly("sup_G", &DiagnosticsRecord::sup_G);

    py::enum_<RunStatus>(m, "RunStatus")
        .value("converged", RunStatus::converged)
        .value("budget_exhausted", RunStatus::budget_exhausted)
        .value("star_shape_lost", RunStatus::star_shape_lost);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("final_state", &RunResult::final_state)
        .def_readonly("status", &RunResult::status)
        .def_readonly("steps", &RunResult::steps)
        .def_readonly("records", &RunResult::records)
        .def_readonly("max_energy_uptick", &RunResult::max_energy_uptick)
        .def_readonly("energy_slack_violation", &RunResult::energy_slack_violation)
        .def_readonly("min_gXnu_overall", &RunResult::min_gXnu_overall)
        .def_readonly("r_node_max_overall", &RunResult::r_node_max_overall)
        .def_readonly("r_node_min_overall", &RunResult::r_node_min_overall)
        .def_readonly("sup_G_final", &RunResult::sup_G_final);

    m.def("run_to_steady", &run_to_steady);

    m.def("convergence_order", [](double ec, double em, double ef) {
        const OrderEstimate o = convergence_order(ec, em, ef);
        return py::make_tuple(o.value(), o.conclusive);
    });
    m.def("fd_curvature_oracle", &fd_curvature_oracle);

    py::enum_<PerturbationKind>(m, "PerturbationKind")
        .value("none", PerturbationKind::none)
        .value("cos2beta", PerturbationKind::cos2beta)
        .value("cos2xi", PerturbationKind::cos2xi)
        .value("fourier", PerturbationKind::fourier);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("n", &ExperimentConfig::n)
        .def_readwrite("mode", &ExperimentConfig::mode)
        .def_readwrite("n_beta", &ExperimentConfig::n_beta)
        .def_readwrite("n_xi", &ExperimentConfig::n_xi)
        .def_readwrite("cos_theta", &ExperimentConfig::cos_theta)
        .def_readwrite("r0", &ExperimentConfig::r0)
        .def_readwrite("perturbation", &ExperimentConfig::perturbation)
        .def_readwrite("epsilon", &ExperimentConfig::epsilon)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("flow", &ExperimentConfig::flow)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir)
        .def_readonly("warnings", &ExperimentConfig::warnings);

    m.def("parse_config", &parse_config);
    m.def("emit_config", &emit_config);
    m.def("generate_initial", &generate_initial);
    m.def("run_experiment", [](const ExperimentConfig& cfg) {
        const ExperimentResult res = run_experiment(cfg);
        py::dict d;
        d["exit_code"] = res.exit_code;
        d["steps"] = res.run.steps;
        d["sup_G_final"] = res.run.sup_G_final;
        d["volume_drift_rel"] = res.volume_drift_rel;
        d["bc_violation"] = res.bc_violation;
        d["out_dir"] = res.out_dir;
        return d;
    });
}
