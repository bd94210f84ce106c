// Python bindings. Reports cross the boundary as JSON text; the Python
// package turns them into dicts. Rationals travel as strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kstab/commands.hpp"
#include "kstab/integrate.hpp"

namespace py = pybind11;
using namespace kstab;

namespace {

py::tuple run(const std::string& command, const std::string& file, const std::string& problem_json,
              const std::string& catalog_dir, std::optional<unsigned> net_denominator,
              std::optional<double> tolerance, const std::string& svg, bool no_shift, bool permissive_colours) {
  CommandSettings s;
  s.file = file;
  if (!problem_json.empty()) s.problem = Json::parse(problem_json);
  s.catalog_dir = catalog_dir;
  s.net_denominator = net_denominator;
  s.tolerance = tolerance;
  s.svg = svg;
  s.no_shift = no_shift;
  s.permissive_colours = permissive_colours;
  CommandOutput o;
  {
    py::gil_scoped_release release;
    o = run_command(command, s);
  }
  return py::make_tuple(o.json.dump(), o.text, o.code);
}

// Exact integral of sum c * x^i * y^j over the hull of the given points.
std::string integrate_polygon(const std::vector<std::pair<std::string, std::string>>& points,
                              const std::vector<std::tuple<unsigned, unsigned, std::string>>& terms) {
  std::vector<QVector> pts;
  for (const auto& [x, y] : points) pts.push_back({parse_rational(x), parse_rational(y)});
  Polynomial q(2);
  for (const auto& [i, j, c] : terms) q.add_term({i, j}, parse_rational(c));
  return to_string(integrate(Polytope::from_vertices(pts), q));
}

}  // namespace

PYBIND11_MODULE(_kstab, m) {
  m.doc() = "K-stability of spherical varieties from root data and moment polytopes";

  static py::exception<Error> error(m, "KstabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(py::str(e.what()));
      exc.attr("code") = to_string(e.code());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("commands", &command_names);
  m.def("run", &run, py::arg("command"), py::arg("file") = "", py::arg("problem_json") = "",
        py::arg("catalog_dir") = "catalog", py::arg("net_denominator") = py::none(),
        py::arg("tolerance") = py::none(), py::arg("svg") = "", py::arg("no_shift") = false,
        py::arg("permissive_colours") = false);
  m.def("integrate_polygon", &integrate_polygon, py::arg("points"), py::arg("terms"));
}
