#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slet/engine.hpp"
#include "slet/error.hpp"
#include "slet/fixtures.hpp"
#include "slet/oracle.hpp"

namespace py = pybind11;
using namespace slet;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Shifted-l expansion solver for the reduced semi-relativistic two-body equation";

    static py::exception<Error> solver_error(m, "SolverError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = solver_error;
            py::object instance = err(e.what());
            instance.attr("kind") = to_string(e.kind());
            PyErr_SetObject(solver_error.ptr(), instance.ptr());
        }
    });

    py::class_<Potential>(m, "Potential")
        .def_static("parse", &Potential::parse, py::arg("spec"))
        .def_static("coulomb", &Potential::coulomb, py::arg("alpha"))
        .def_static("oscillator", &Potential::oscillator, py::arg("k"))
        .def_static("linear", &Potential::linear, py::arg("b"))
        .def_static("cornell", &Potential::cornell, py::arg("alpha"), py::arg("b"))
        .def("value", &Potential::value, py::arg("r"))
        .def("derivative", &Potential::derivative, py::arg("r"), py::arg("order"))
        .def("spec", &Potential::spec)
        .def("__repr__", [](const Potential& p) { return "<Potential " + p.spec() + ">"; });

    py::class_<ParticlePair>(m, "ParticlePair")
        .def(py::init<double, double, bool>(), py::arg("m1"), py::arg("m2"), py::arg("nonrelativistic") = false)
        .def_property_readonly("mu", &ParticlePair::mu)
        .def_property_readonly("nu", &ParticlePair::nu)
        .def_property_readonly("eta", &ParticlePair::eta);

    py::class_<SletSolution>(m, "SletSolution")
        .def_property_readonly("n", [](const SletSolution& s) { return s.qn.n; })
        .def_property_readonly("l", [](const SletSolution& s) { return s.qn.l; })
        .def_readonly("r0", &SletSolution::r0)
        .def_readonly("omega", &SletSolution::omega)
        .def_readonly("Q", &SletSolution::Q)
        .def_readonly("beta", &SletSolution::beta)
        .def_readonly("lbar", &SletSolution::lbar)
        .def_readonly("E0", &SletSolution::E0)
        .def_readonly("alpha1", &SletSolution::alpha1)
        .def_readonly("alpha2", &SletSolution::alpha2)
        .def_readonly("E2_term", &SletSolution::E2_term)
        .def_readonly("E3_term", &SletSolution::E3_term)
        .def_readonly("binding_energy", &SletSolution::binding_energy)
        .def_readonly("mass", &SletSolution::mass);

    py::class_<OracleSolution>(m, "OracleSolution")
        .def_readonly("binding_energy", &OracleSolution::binding_energy)
        .def_readonly("mass", &OracleSolution::mass)
        .def_readonly("node_count", &OracleSolution::node_count)
        .def_readonly("residual", &OracleSolution::residual)
        .def_readonly("outer_iterations", &OracleSolution::outer_iterations)
        .def_readonly("wavefunction", &OracleSolution::wavefunction);

    m.def(
        "solve",
        [](const Potential& p, const ParticlePair& pair, int n, int l) { return solve(p, pair, {n, l}); },
        py::arg("potential"), py::arg("pair"), py::arg("n"), py::arg("l"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "solve_oracle",
        [](const Potential& p, const ParticlePair& pair, int n, int l, int points, std::optional<double> r_max) {
            OracleSettings s;
            s.point_count = points;
            s.r_max = r_max;
            return solve_selfconsistent(p, pair, {n, l}, s);
        },
        py::arg("potential"), py::arg("pair"), py::arg("n"), py::arg("l"), py::arg("point_count") = 4000,
        py::arg("r_max") = py::none(), py::call_guard<py::gil_scoped_release>());

    m.def(
        "coulomb_closed_form",
        [](double mass, double alpha, int n) {
            const auto c = coulomb_closed_form(mass, alpha, n);
            return py::dict(py::arg("Q") = c.Q, py::arg("r0") = c.r0, py::arg("E0") = c.E0, py::arg("M") = c.M);
        },
        py::arg("m"), py::arg("alpha"), py::arg("n"));

    m.def(
        "fixture",
        [](int table, const std::string& column) {
            py::dict out;
            for (const auto& cell : published_table(table).cells)
                if (to_string(cell.column) == column) out[py::make_tuple(cell.n, cell.l)] = cell.value();
            return out;
        },
        py::arg("table"), py::arg("column") = "slet");
}
