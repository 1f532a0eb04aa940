#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>

#include "qehrhart/generators.hpp"
#include "qehrhart/gk.hpp"
#include "qehrhart/harmonic.hpp"
#include "qehrhart/polytope.hpp"
#include "qehrhart/serialize.hpp"

namespace py = pybind11;
using namespace qehrhart;

namespace {

// nlohmann::json -> Python objects through the json module.
py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Rational to_rational(const std::variant<long long, std::string>& v) {
  if (std::holds_alternative<long long>(v)) return Rational(Integer(std::to_string(std::get<long long>(v))));
  return parse_rational(std::get<std::string>(v));
}

LatticePointSet to_points(const std::vector<IntVector>& points) {
  if (points.empty()) throw std::invalid_argument("point set must be nonempty");
  return LatticePointSet::from_points(points.front().size(), points);
}

std::vector<std::vector<std::string>> basis_strings(const HarmonicBasis& basis) {
  std::vector<std::vector<std::string>> out;
  for (const auto& part : basis.graded_parts) {
    auto& row = out.emplace_back();
    for (const auto& f : part) row.push_back(f.to_string());
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact q-Ehrhart series, harmonic spaces and vanishing-order filtrations";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Polytope>(m, "Polytope")
      .def(py::init([](std::size_t dim, const std::vector<std::vector<std::variant<long long, std::string>>>& verts) {
             std::vector<RationalVector> vertices;
             for (const auto& v : verts) {
               auto& row = vertices.emplace_back();
               for (const auto& x : v) row.push_back(to_rational(x));
             }
             return Polytope::from_vertices(dim, std::move(vertices));
           }),
           py::arg("dim"), py::arg("vertices"))
      .def_property_readonly("dim", &Polytope::dim)
      .def_property_readonly("vertices",
                             [](const Polytope& p) {
                               std::vector<std::vector<std::string>> out;
                               for (const auto& v : p.vertices()) {
                                 auto& row = out.emplace_back();
                                 for (const auto& x : v) row.push_back(to_string(x));
                               }
                               return out;
                             })
      .def_property_readonly("facets", [](const Polytope& p) { return to_python(to_json(p)["facets"]); })
      .def("is_lattice", &Polytope::is_lattice)
      .def("dilate", [](const Polytope& p, const std::variant<long long, std::string>& f) { return dilate(p, to_rational(f)); })
      .def("__repr__", [](const Polytope& p) { return "Polytope(" + to_json(p)["vertices"].dump() + ")"; });

  m.def("parse_polytope", [](const std::string& text) { return parse_polytope(text); }, py::arg("document"));
  m.def("load_polytope", [](const std::string& path) { return load_polytope(path); }, py::arg("path"));

  m.def(
      "lattice_points",
      [](const Polytope& p, long long dilation) { return lattice_points(dilate(p, Rational(static_cast<long>(dilation)))).points; },
      py::arg("polytope"), py::arg("dilation") = 1);
  m.def("ehrhart_series", &ehrhart_series, py::arg("polytope"), py::arg("m_max"));

  m.def(
      "q_ehrhart",
      [](const Polytope& p, std::int64_t m_max, const std::string& method, unsigned threads) {
        py::gil_scoped_release release;
        return q_ehrhart(p, m_max, parse_method(method), {}, threads).rows;
      },
      py::arg("polytope"), py::arg("m_max"), py::arg("method") = "filtration", py::arg("threads") = 1);

  m.def(
      "filtration_dims",
      [](const Polytope& p, std::int64_t dilation, bool with_bases) {
        return to_python(to_json(filtration_dims(p, dilation, with_bases), with_bases));
      },
      py::arg("polytope"), py::arg("m"), py::arg("with_bases") = false);

  m.def(
      "harmonic_basis",
      [](const std::vector<IntVector>& points, const std::string& method) {
        const LatticePointSet z = to_points(points);
        return basis_strings(method == "dual" ? harmonic_dual(z) : harmonic_basis(z));
      },
      py::arg("points"), py::arg("method") = "harmonic");
  m.def("gr_hilbert", [](const std::vector<IntVector>& points) { return gr_hilbert(to_points(points)); }, py::arg("points"));
  m.def(
      "gr_ideal_basis",
      [](const std::vector<IntVector>& points, std::int64_t d) {
        std::vector<std::string> out;
        for (const auto& f : gr_ideal_basis(to_points(points), d)) out.push_back(f.to_string());
        return out;
      },
      py::arg("points"), py::arg("d"));

  m.def(
      "minimal_generators",
      [](const Polytope& p, std::int64_t m_max) {
        std::vector<std::tuple<std::int64_t, std::int64_t, std::size_t>> out;
        for (const auto& c : minimal_generators(p, m_max).counts) out.emplace_back(c.m, c.d, c.count);
        return out;
      },
      py::arg("polytope"), py::arg("m_max"));

  m.def(
      "lemma32_check",
      [](const std::vector<IntVector>& points, std::size_t trials, std::uint64_t seed) {
        const auto r = lemma32_check(to_points(points), trials, seed);
        return py::dict(py::arg("trials") = r.trials, py::arg("skipped") = r.skipped, py::arg("mismatches") = r.mismatches);
      },
      py::arg("points"), py::arg("trials") = 100, py::arg("seed") = 1);
  m.def(
      "multiplicativity_check",
      [](const Polytope& p, std::int64_t m_max, std::size_t samples, std::uint64_t seed) {
        const auto r = multiplicativity_check(p, m_max, samples, seed);
        return py::dict(py::arg("samples") = r.samples, py::arg("violations") = r.violations());
      },
      py::arg("polytope"), py::arg("m_max"), py::arg("samples") = 50, py::arg("seed") = 1);

  m.def("gk_rational_triangle", &gk::rational_triangle);
  m.def(
      "max_vanishing_order",
      [](const Polytope& p, std::int64_t dilation) {
        const auto w = gk::max_vanishing_order(p, dilation);
        return py::make_tuple(w.order, w.witness.to_string());
      },
      py::arg("polytope"), py::arg("m"));
  m.def(
      "gk_report",
      [](const Polytope& p, std::int64_t m_max, std::int64_t k_max, std::int64_t property3_m_max, std::int64_t growth_m_max) {
        gk::GKOptions options;
        options.m_max = m_max;
        options.k_max = k_max;
        options.property3_m_max = property3_m_max;
        options.growth_m_max = growth_m_max;
        return to_python(to_json(gk::gk_report(p, "python", options)));
      },
      py::arg("polytope"), py::arg("m_max") = 5, py::arg("k_max") = 4, py::arg("property3_m_max") = 2,
      py::arg("growth_m_max") = 4);
}
