#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "confocal/cli.hpp"
#include "confocal/geometry.hpp"
#include "confocal/measure.hpp"
#include "confocal/potential.hpp"
#include "confocal/verify.hpp"

namespace py = pybind11;
using namespace confocal;

namespace {

std::string sheet_str(Sheet s) {
  switch (s) {
    case Sheet::North: return "north";
    case Sheet::South: return "south";
    default: return "both";
  }
}

}  // namespace

PYBIND11_MODULE(_confocal, m) {
  m.doc() = "Confocal ellipsoid potential theory: Euclidean d-space and S^3";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "ConfocalError");

  py::enum_<Sheet>(m, "Sheet")
      .value("North", Sheet::North)
      .value("South", Sheet::South)
      .value("Both", Sheet::Both);

  py::enum_<Region>(m, "Region")
      .value("Interior", Region::Interior)
      .value("Surface", Region::Surface)
      .value("Exterior", Region::Exterior);

  py::enum_<Cap>(m, "Cap")
      .value("North", Cap::North)
      .value("Band", Cap::Band)
      .value("South", Cap::South);

  py::class_<EuclideanEllipsoid>(m, "EuclideanEllipsoid")
      .def(py::init<std::vector<double>>(), py::arg("semi_axes"))
      .def_property_readonly("semi_axes", &EuclideanEllipsoid::semi_axes)
      .def_property_readonly("dim", &EuclideanEllipsoid::dim)
      .def("__repr__", [](const EuclideanEllipsoid& e) {
        std::string r = "EuclideanEllipsoid([";
        for (int i = 0; i < e.dim(); ++i)
          r += (i ? ", " : "") + std::to_string(e.axis(i));
        return r + "])";
      });

  py::class_<SphericalEllipsoid>(m, "SphericalEllipsoid")
      .def(py::init<double, double, double, double, Sheet>(), py::arg("a"),
           py::arg("b"), py::arg("c"), py::arg("h"),
           py::arg("sheet") = Sheet::Both)
      .def_property_readonly("a", &SphericalEllipsoid::a)
      .def_property_readonly("b", &SphericalEllipsoid::b)
      .def_property_readonly("c", &SphericalEllipsoid::c)
      .def_property_readonly("h", &SphericalEllipsoid::h)
      .def_property_readonly("sheet", &SphericalEllipsoid::sheet)
      .def("__repr__", [](const SphericalEllipsoid& se) {
        return "SphericalEllipsoid(" + std::to_string(se.a()) + ", " +
               std::to_string(se.b()) + ", " + std::to_string(se.c()) + ", " +
               std::to_string(se.h()) + ", sheet=" + sheet_str(se.sheet()) +
               ")";
      });

  m.def(
      "confocal_shift",
      [](const EuclideanEllipsoid& e, double g) { return confocal_shift(e, g); },
      py::arg("ellipsoid"), py::arg("gamma"),
      "Member of the confocal family at shift gamma");
  m.def(
      "confocal_shift",
      [](const SphericalEllipsoid& e, double g) { return confocal_shift(e, g); },
      py::arg("ellipsoid"), py::arg("gamma"));

  py::class_<Classification>(m, "Classification")
      .def_readonly("region", &Classification::region)
      .def_readonly("witness", &Classification::witness)
      .def_readonly("distance_est", &Classification::distance_est)
      .def_readonly("cap", &Classification::cap);

  m.def(
      "classify",
      [](const EuclideanEllipsoid& e, const std::vector<double>& x) {
        return classify(e, x);
      },
      py::arg("ellipsoid"), py::arg("point"));
  m.def(
      "classify",
      [](const SphericalEllipsoid& e, const std::vector<double>& x) {
        return classify(e, x);
      },
      py::arg("ellipsoid"), py::arg("point"));

  m.def(
      "confocal_parameter_through",
      [](const EuclideanEllipsoid& e, const std::vector<double>& p) {
        return confocal_parameter_through(e, p);
      },
      py::arg("ellipsoid"), py::arg("point"),
      "Shift of the family member passing through the point");
  m.def(
      "confocal_parameter_through",
      [](const SphericalEllipsoid& e, const std::vector<double>& p) {
        return confocal_parameter_through(e, p);
      },
      py::arg("ellipsoid"), py::arg("point"));

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init([](const std::string& method, int order,
                       std::int64_t samples, std::uint64_t seed, int refine,
                       double min_sep) {
             QuadratureSpec q;
             if (method == "gauss_product")
               q.method = QuadMethod::GaussProduct;
             else if (method == "monte_carlo")
               q.method = QuadMethod::MonteCarlo;
             else
               fail(Errc::config_error,
                    "method must be gauss_product|monte_carlo");
             q.order = order;
             q.samples = samples;
             q.seed = seed;
             q.refine = refine;
             q.min_sep = min_sep;
             validate_quadrature_spec(q);
             return q;
           }),
           py::arg("method") = "gauss_product", py::arg("order") = 64,
           py::arg("samples") = 1000000, py::arg("seed") = 0,
           py::arg("refine") = 2, py::arg("min_sep") = 1e-3)
      .def_readwrite("order", &QuadratureSpec::order)
      .def_readwrite("samples", &QuadratureSpec::samples)
      .def_readwrite("seed", &QuadratureSpec::seed)
      .def_readwrite("refine", &QuadratureSpec::refine)
      .def_readwrite("min_sep", &QuadratureSpec::min_sep);

  py::class_<FieldValue>(m, "FieldValue")
      .def_readonly("value", &FieldValue::value)
      .def_readonly("force", &FieldValue::force)
      .def_readonly("error", &FieldValue::error)
      .def_readonly("force_error", &FieldValue::force_error)
      .def("__repr__", [](const FieldValue& f) {
        return "FieldValue(value=" + std::to_string(f.value) +
               ", error=" + std::to_string(f.error) + ")";
      });

  py::class_<MassSurface>(m, "MassSurface")
      .def_static("euclidean_homeoid", &MassSurface::euclidean_homeoid,
                  py::arg("ellipsoid"), py::arg("mass"))
      .def_static("spherical_homeoid", &MassSurface::spherical_homeoid,
                  py::arg("ellipsoid"), py::arg("mass"))
      .def_static("focaloid", &MassSurface::focaloid, py::arg("base"),
                  py::arg("lam"), py::arg("mass"))
      .def_property_readonly("mass", &MassSurface::mass);

  py::class_<ThickLayer>(m, "ThickLayer")
      .def_readonly("outer", &ThickLayer::outer)
      .def_readonly("inner", &ThickLayer::inner);
  m.def("homothetic_layer", &homothetic_layer, py::arg("outer"),
        py::arg("lam"), py::arg("mass"));
  m.def("confocal_layer", &confocal_layer, py::arg("base"),
        py::arg("lambda_outer"), py::arg("lambda_inner"), py::arg("mass"));

  const QuadratureSpec default_quad{};
  m.def(
      "potential",
      [](const MassSurface& ms, const std::vector<double>& p,
         const QuadratureSpec& q) { return potential_surface(ms, p, q).value; },
      py::arg("surface"), py::arg("point"), py::arg("quad") = default_quad,
      "Potential of a mass surface at a point (scalar; use field() for "
      "error estimates)");
  m.def(
      "force",
      [](const MassSurface& ms, const std::vector<double>& p,
         const QuadratureSpec& q) { return force_surface(ms, p, q).force; },
      py::arg("surface"), py::arg("point"), py::arg("quad") = default_quad,
      "Force vector of a mass surface at a point (use field() for error "
      "estimates)");
  m.def(
      "field",
      [](const MassSurface& ms, const std::vector<double>& p,
         const QuadratureSpec& q) { return field_surface(ms, p, q); },
      py::arg("surface"), py::arg("point"), py::arg("quad") = default_quad,
      "Potential and force in one pass");
  m.def(
      "field_homogeneous",
      [](const EuclideanEllipsoid& e, double mass, const std::vector<double>& p,
         const QuadratureSpec& q, int n_layers) {
        return field_homogeneous_ellipsoid(e, mass, p, q, n_layers);
      },
      py::arg("ellipsoid"), py::arg("mass"), py::arg("point"),
      py::arg("quad") = default_quad, py::arg("n_layers") = 32,
      "Field of a homogeneous solid ellipsoid");
  m.def(
      "field_thick_layer",
      [](const ThickLayer& layer, const std::vector<double>& p,
         const QuadratureSpec& q, int n_layers) {
        return field_thick_layer(layer, p, q, n_layers);
      },
      py::arg("layer"), py::arg("point"), py::arg("quad") = default_quad,
      py::arg("n_layers") = 32);

  m.def("check_names", [] {
    std::vector<std::string> names;
    for (const auto& spec : check_registry()) names.push_back(spec.name);
    return names;
  });
  m.def(
      "run_check_json",
      [](const std::string& name) { return run_check(name).to_json().dump(); },
      py::arg("name"),
      "Runs a named verification check; returns the report as a JSON string");
}
