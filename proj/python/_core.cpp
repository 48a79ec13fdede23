#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "artgallery/reports.hpp"

namespace py = pybind11;
using namespace artgallery;

namespace {

Instance parse_instance(const std::string& text) { return instance_from_json(Json::parse(text)); }

std::vector<Point> parse_guards(const std::string& text) {
  std::vector<Point> out;
  for (const auto& p : Json::parse(text)) out.push_back(point_from_json(p));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact-rational art gallery guarding (JSON in, JSON out)";

  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  m.def("generate", [](const std::string& spec) { return instance_to_json(generate(spec)).dump(); },
        py::arg("spec"));

  m.def(
      "solve",
      [](const std::string& instance, const std::string& eps, const std::string& delta,
         const std::string& nu) {
        const Instance in = parse_instance(instance);
        py::gil_scoped_release release;
        const SolveParams p = make_params(parse_rational(eps), parse_rational(delta), parse_rational(nu));
        return report_to_json(mwu_report(in, p)).dump();
      },
      py::arg("instance"), py::arg("eps") = "1/2", py::arg("delta") = "1/10", py::arg("nu") = "1/2");

  m.def(
      "greedy",
      [](const std::string& instance, const std::string& delta, const std::string& nu) {
        const Instance in = parse_instance(instance);
        py::gil_scoped_release release;
        return report_to_json(greedy_report(in, parse_rational(delta), parse_rational(nu))).dump();
      },
      py::arg("instance"), py::arg("delta") = "1/10", py::arg("nu") = "1/2");

  m.def(
      "sample",
      [](const std::string& instance, const std::string& delta, const std::string& sigma,
         std::uint64_t seed, unsigned long k) {
        const Instance in = parse_instance(instance);
        py::gil_scoped_release release;
        return report_to_json(
                   sample_report(in, parse_rational(delta), parse_rational(sigma), seed, k))
            .dump();
      },
      py::arg("instance"), py::arg("delta") = "1/10", py::arg("sigma") = "1/10",
      py::arg("seed") = 0, py::arg("k") = 0);

  m.def(
      "opt_bracket",
      [](const std::string& instance) {
        return bracket_to_json(opt_bracket(parse_instance(instance).polygon)).dump();
      },
      py::arg("instance"));

  m.def(
      "verify",
      [](const std::string& instance, const std::string& guards) {
        return to_string(verify(parse_instance(instance).polygon, parse_guards(guards)));
      },
      py::arg("instance"), py::arg("guards"));

  m.def(
      "render",
      [](const std::string& instance, const std::string& guards) {
        return render_svg(parse_instance(instance).polygon, parse_guards(guards));
      },
      py::arg("instance"), py::arg("guards") = "[]");
}
