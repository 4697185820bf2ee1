#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hardylab/cli.hpp"
#include "hardylab/dsl.hpp"
#include "hardylab/duality.hpp"
#include "hardylab/error.hpp"
#include "hardylab/extremal.hpp"
#include "hardylab/fuzz.hpp"
#include "hardylab/norms.hpp"
#include "hardylab/operators.hpp"
#include "hardylab/serialize.hpp"
#include "hardylab/verify.hpp"

namespace py = pybind11;
using namespace hardylab;

namespace {

FamilyKind family_kind(const std::string& name) {
  if (name == "step") return FamilyKind::Step;
  if (name == "zero") return FamilyKind::ZeroSingular;
  if (name == "inf") return FamilyKind::InfinitySingular;
  throw Error(ErrorKind::ParseError, "unknown family '" + name + "' (step, zero, inf)");
}

}  // namespace

PYBIND11_MODULE(_hardylab, m) {
  m.doc() = "Hardy operator toolkit (C++ core)";

  static py::exception<Error> error_type(m, "HardylabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(to_string(e.kind())), e.what());
      PyErr_SetObject(error_type.ptr(), args.ptr());
    }
  });

  py::class_<QuadResult>(m, "QuadResult")
      .def_readonly("value", &QuadResult::value)
      .def_readonly("err", &QuadResult::err)
      .def_readonly("converged", &QuadResult::converged)
      .def("__repr__", [](const QuadResult& r) { return "QuadResult(" + to_json(r).dump() + ")"; });

  py::class_<PiecewiseFn>(m, "PiecewiseFn")
      .def("__call__", [](const PiecewiseFn& f, double x) { return f(x); }, py::arg("x"))
      .def_property_readonly("breakpoints",
                             [](const PiecewiseFn& f) {
                               return std::vector<double>(f.interior_breaks().begin(),
                                                          f.interior_breaks().end());
                             })
      .def_property_readonly("nonnegative", &PiecewiseFn::nonnegative)
      .def("to_json", [](const PiecewiseFn& f) { return function_to_json(f).dump(); })
      .def("__repr__", [](const PiecewiseFn& f) { return "PiecewiseFn(" + function_to_json(f).dump() + ")"; });

  m.def("parse", &parse_function_spec, py::arg("spec"), "Parse the JSON DSL or the chi/pow shorthand.");
  m.def("indicator", &indicator, py::arg("lo"), py::arg("hi"), py::arg("coef") = 1.0);
  m.def("power_on", &power_on, py::arg("a"), py::arg("lo"), py::arg("hi"), py::arg("coef") = 1.0);

  m.def("hardy", &hardy, py::arg("f"));
  m.def("dual_hardy", &dual_hardy, py::arg("f"));
  m.def("hardy_minus_identity", &hardy_minus_identity, py::arg("phi"));

  m.def("lp_norm", &lp_norm, py::arg("g"), py::arg("p"), py::arg("tol") = kDefaultTol);
  m.def("ip_via_parts", &ip_via_parts, py::arg("f"), py::arg("p"), py::arg("tol") = kDefaultTol);
  m.def("ipstar_via_fubini", &ipstar_via_fubini, py::arg("f"), py::arg("p"), py::arg("tol") = kDefaultTol);

  m.def(
      "_verify",
      [](const std::string& which, const PiecewiseFn& f, double p, double tol) {
        if (which == "thm1") return to_json(verify_theorem1(f, p, tol)).dump();
        if (which == "thm2") return to_json(verify_theorem2(f, p, tol)).dump();
        if (which == "crude") return to_json(verify_crude(f, p, tol)).dump();
        throw Error(ErrorKind::ParseError, "unknown check '" + which + "' (thm1, thm2, crude)");
      },
      py::arg("which"), py::arg("f"), py::arg("p"), py::arg("tol") = kDefaultTol);

  m.def("family", [](const std::string& kind, double eps, double p) { return family(family_kind(kind), eps, p); },
        py::arg("kind"), py::arg("eps"), py::arg("p"));
  m.def("limit_ratio", [](const std::string& kind, double p) { return limit_ratio(family_kind(kind), p); },
        py::arg("kind"), py::arg("p"));
  m.def(
      "_sweep",
      [](const std::string& kind, double p, std::optional<std::vector<double>> grid, double tol) {
        const FamilyKind k = family_kind(kind);
        const auto eps = grid ? *grid : default_eps_grid(k, p);
        const auto records = sweep(k, p, eps, tol);
        nlohmann::json j = {{"records", to_json(records)}, {"csv", sweep_csv(records)}};
        try {
          j["estimated_limit"] = estimate_limit(records);
        } catch (const Error&) {
          j["estimated_limit"] = nullptr;
        }
        return j.dump();
      },
      py::arg("kind"), py::arg("p"), py::arg("grid") = std::nullopt, py::arg("tol") = kDefaultTol);

  m.def("phi_to_f", &phi_to_f, py::arg("phi"));
  m.def("f_to_phi", &f_to_phi, py::arg("f"));
  m.def("mollify", &mollify, py::arg("phi"), py::arg("n"));
  m.def(
      "_equivalence",
      [](const PiecewiseFn& phi, double p, double pointwise_tol, double tol) {
        return to_json(equivalence_report(phi, p, pointwise_tol, tol)).dump();
      },
      py::arg("phi"), py::arg("p"), py::arg("pointwise_tol") = 1e-8, py::arg("tol") = kDefaultTol);

  m.def(
      "fuzz_generate",
      [](std::uint64_t seed, bool monotone) { return fuzz_generate({.seed = seed, .monotone = monotone}); },
      py::arg("seed"), py::arg("monotone") = false);
  m.def(
      "_fuzz_campaign",
      [](std::uint64_t seed, std::size_t count, bool monotone, const std::vector<double>& ps, double tol) {
        py::gil_scoped_release release;
        return to_json(fuzz_campaign(seed, count, monotone, ps, tol)).dump();
      },
      py::arg("seed"), py::arg("count"), py::arg("monotone"), py::arg("ps"), py::arg("tol") = kDefaultTol);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run one CLI subcommand; returns (exit_code, stdout, stderr).");
}
