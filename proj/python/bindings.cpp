#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "distgeo/catalog.hpp"
#include "distgeo/einstein.hpp"
#include "distgeo/jet.hpp"
#include "distgeo/scenario.hpp"

namespace py = pybind11;
using namespace distgeo;

namespace {

py::dict golden_dict(const GoldenResult& g) {
  py::dict d;
  d["block"] = g.block;
  d["key"] = g.key;
  d["eq"] = g.eq;
  d["expected"] = g.expected;
  d["expected_sample"] = g.expected_sample;
  d["engine_sample"] = g.engine_sample;
  d["residual"] = g.residual;
  d["match"] = g.match;
  d["finding"] = g.finding;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Frame-field verification of distribution geometry";

  py::register_exception<Error>(m, "DistgeoError", PyExc_ValueError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

  m.def("render", [](const std::string& text) { return render(parse_expr(text)); }, py::arg("expr"),
        "Parse an expression in t and print it back.");
  m.def("evaluate", [](const std::string& text, double t) { return eval(parse_expr(text), t); }, py::arg("expr"),
        py::arg("t"));
  m.def("derivative", [](const std::string& text) { return render(derive(parse_expr(text))); }, py::arg("expr"));

  m.def("preset_names", &preset_names);
  m.def("family_labels", &family_labels);
  m.def("check_names", &check_names);
  m.def("catalog", &catalog_list);

  m.def(
      "golden",
      [](const std::string& preset, std::optional<std::string> f) {
        std::optional<ScalarExpr> fx;
        if (f) fx = parse_expr(*f);
        py::list out;
        for (const auto& g : evaluate_golden(make_preset(preset, fx))) out.append(golden_dict(g));
        return out;
      },
      py::arg("preset"), py::arg("f") = py::none());

  m.def(
      "verify_family",
      [](const std::string& label, std::optional<double> constant, double c1, double c2) {
        FamilyCheck fc = verify_family(family(label, FamilyParams{constant, c1, c2}));
        py::dict d;
        d["label"] = fc.fam.label;
        d["f"] = render(fc.fam.f);
        d["constant"] = fc.fam.constant;
        d["ode_max"] = fc.ode_max;
        d["residual"] = fc.check.residual;
        d["perturbed_residual"] = fc.perturbed.residual;
        d["pass"] = fc.pass;
        return d;
      },
      py::arg("label"), py::arg("constant") = py::none(), py::arg("c1") = 0.0, py::arg("c2") = 0.0);

  m.def(
      "run_scenario",
      [](const std::string& text, bool strict_golden, std::uint64_t seed) {
        RunOutcome r;
        {
          py::gil_scoped_release release;
          r = run_scenario(text, RunOptions{strict_golden, seed});
        }
        return py::make_tuple(r.exit_code, r.report);
      },
      py::arg("scenario_json"), py::arg("strict_golden") = false, py::arg("seed") = 0,
      "Run a scenario given as JSON text; returns (exit_code, report_json).");
}
