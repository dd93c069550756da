#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "eqm/asymptotics.hpp"
#include "eqm/cli.hpp"
#include "eqm/errors.hpp"
#include "eqm/format.hpp"
#include "eqm/oracle.hpp"
#include "eqm/pipeline.hpp"
#include "eqm/problem.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

eqm::FieldSpec field_of(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw eqm::ParseError(std::string("malformed JSON: ") + e.what());
    }
    return eqm::field_from_json(j.contains("field") ? j.at("field") : j);
}

std::string solve_json(const std::string& field, const std::string& ansatz, double tol) {
    eqm::SolverOptions opts;
    opts.tol = tol;
    const auto f = field_of(field);
    const auto r = eqm::pipeline::solve(f, eqm::pipeline::parse_ansatz(ansatz), opts);
    auto j = eqm::pipeline::report_json(r);
    json xi = json::array(), psi = json::array();
    for (const auto& b : r.density.bands)
        for (std::size_t i = 0; i < b.x.size(); ++i) {
            xi.push_back(r.density.origin + b.x[i]);
            psi.push_back(b.psi[i]);
        }
    j["density"] = {{"xi", xi}, {"psi", psi}};
    return j.dump();
}

std::string predict_json(const std::string& field, int sign) {
    const auto p = eqm::asymptotics::predict(field_of(field), sign);
    return json{{"regime", eqm::asymptotics::regime_name(p.regime)},
                {"scaling_exponent", p.scaling_exponent},
                {"limit_constant", p.limit_constant},
                {"well_location", p.well_location},
                {"side", p.side}}
        .dump();
}

std::string sweep_csv(const std::string& problem, double t_from, double t_to, int steps, bool log, int threads) {
    const auto r = eqm::cli::cmd_sweep(eqm::parse_problem(problem), t_from, t_to, steps, log, threads);
    if (r.exit_code == eqm::cli::exit_code::parse_error) throw eqm::ParseError(r.err);
    return r.out;
}

std::string oracle_json(const std::string& field, double a, double b, int n, int iters) {
    const eqm::oracle::DiscreteProblem p(field_of(field), a, b, n);
    const auto m = eqm::oracle::direct_minimize(p, iters);
    return json{{"grid", p.grid()}, {"psi", m.psi}, {"converged", m.converged}, {"iterations", m.iterations},
                {"residual", m.residual}}
        .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Equilibrium measures in an external field";

    static PyObject* base = py::exception<eqm::Error>(m, "EqmError").release().ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const eqm::Error& e) {
            py::object err = py::reinterpret_borrow<py::object>(base)(e.what());
            err.attr("code") = e.code();
            PyErr_SetObject(base, err.ptr());
        }
    });

    m.def("solve_json", &solve_json, py::arg("field"), py::arg("ansatz") = "auto", py::arg("tol") = 1e-10);
    m.def("predict_json", &predict_json, py::arg("field"), py::arg("sign"));
    m.def("sweep_csv", &sweep_csv, py::arg("problem"), py::arg("t_from"), py::arg("t_to"), py::arg("steps"),
          py::arg("log") = false, py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("oracle_json", &oracle_json, py::arg("field"), py::arg("a"), py::arg("b"), py::arg("n"), py::arg("iters"),
          py::call_guard<py::gil_scoped_release>());
    m.def("format_number", &eqm::format_number);
}
