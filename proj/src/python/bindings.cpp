#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ecfam/heights.hpp"
#include "ecfam/localdata.hpp"
#include "ecfam/report.hpp"
#include "ecfam/rootnum.hpp"
#include "ecfam/scan.hpp"
#include "ecfam/verify.hpp"

namespace py = pybind11;
using namespace ecfam;
using json = nlohmann::json;

namespace {

py::object fraction_type() {
  static py::object F = py::module_::import("fractions").attr("Fraction");
  return F;
}

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<long long>());
    case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list l;
      for (const auto& v : j) l.append(to_py(v));
      return l;
    }
    case json::value_t::object: {
      py::dict d;
      for (const auto& [k, v] : j.items()) d[py::str(k)] = to_py(v);
      return d;
    }
    default: return py::none();
  }
}

json from_py(const py::handle& h) {
  return json::parse(py::module_::import("json").attr("dumps")(h).cast<std::string>());
}

Rational rational(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return parse_rational(h.cast<std::string>());
  if (py::isinstance<py::bool_>(h)) throw py::type_error("expected a rational number");
  if (py::isinstance<py::int_>(h)) return parse_rational(py::str(h).cast<std::string>());
  if (py::isinstance(h, fraction_type()))
    return parse_rational(py::str(h.attr("numerator")).cast<std::string>() + "/" +
                          py::str(h.attr("denominator")).cast<std::string>());
  throw py::type_error("expected int, Fraction or str");
}

py::object fraction(const Rational& q) { return fraction_type()(py::str(to_string(q))); }

Point point(const py::handle& h) {
  if (h.is_none()) return Point::infinity();
  if (py::isinstance<py::str>(h)) return parse_point(h.cast<std::string>());
  auto s = h.cast<py::sequence>();
  if (py::len(s) != 2) throw py::value_error("a point is a pair (x, y) or None");
  return Point{rational(s[0]), rational(s[1])};
}

py::object point_py(const Point& P) {
  if (P.inf) return py::none();
  return py::make_tuple(fraction(P.x), fraction(P.y));
}

std::vector<Point> points(const py::iterable& it) {
  std::vector<Point> v;
  for (const auto& h : it) v.push_back(point(h));
  return v;
}

std::vector<Integer> integers(const py::iterable& it) {
  std::vector<Integer> v;
  for (const auto& h : it) v.push_back(Integer(py::str(h).cast<std::string>()));
  return v;
}

// Curve, "ID@u", "[a1,...,a6]" or a sequence of 2 or 5 coefficients.
WeierstrassCurve curve(const py::handle& h) {
  if (py::isinstance<WeierstrassCurve>(h)) return h.cast<WeierstrassCurve>();
  if (py::isinstance<py::str>(h)) return parse_curve(h.cast<std::string>(), Catalog::builtin());
  std::vector<Rational> a;
  for (const auto& c : h.cast<py::sequence>()) a.push_back(rational(c));
  if (a.size() == 2) return WeierstrassCurve::from_ab(a[0], a[1]);
  if (a.size() == 5) return WeierstrassCurve(a);
  throw py::value_error("a curve needs 2 or 5 coefficients");
}

std::vector<Integer> hints_for(const py::handle& h, const py::object& hints) {
  if (!hints.is_none()) return integers(hints);
  if (py::isinstance<py::str>(h)) return reference_hints(h.cast<std::string>(), Catalog::builtin());
  return {};
}

FactorBudget budget(const py::object& b) {
  return b.is_none() ? FactorBudget::from_env() : FactorBudget::parse(b.cast<std::string>());
}

HeightOptions height_options(double eps, double threshold, const py::object& b, unsigned threads) {
  HeightOptions o;
  o.eps = eps;
  o.threshold = threshold;
  o.budget = budget(b);
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Elliptic curve families with torsion and rank structure";

  py::register_exception<BadSpecialization>(m, "BadSpecialization", PyExc_ValueError);
  py::register_exception<UnfactoredError>(m, "UnfactoredError", PyExc_RuntimeError);

  py::class_<WeierstrassCurve>(m, "Curve")
      .def(py::init([](const py::object& spec) { return curve(spec); }), py::arg("spec"))
      .def_property_readonly("ainvs",
                             [](const WeierstrassCurve& E) {
                               py::list l;
                               for (const auto& c : E.ainvs()) l.append(fraction(c));
                               return l;
                             })
      .def_property_readonly("discriminant", [](const WeierstrassCurve& E) { return fraction(E.disc()); })
      .def_property_readonly("j", [](const WeierstrassCurve& E) { return fraction(E.j()); })
      .def("contains", [](const WeierstrassCurve& E, const py::object& P) { return E.on_curve(point(P)); })
      .def("add",
           [](const WeierstrassCurve& E, const py::object& P, const py::object& Q) {
             Point a = point(P), b = point(Q);
             E.check(a);
             E.check(b);
             return point_py(E.add(a, b));
           })
      .def("neg",
           [](const WeierstrassCurve& E, const py::object& P) {
             Point a = point(P);
             E.check(a);
             return point_py(E.neg(a));
           })
      .def("mul",
           [](const WeierstrassCurve& E, const py::object& P, long n) {
             Point a = point(P);
             E.check(a);
             return point_py(E.mul(a, n));
           })
      .def("order", [](const WeierstrassCurve& E, const py::object& P) { return E.order(point(P)); })
      .def("minimal_model",
           [](const WeierstrassCurve& E, const py::object& b) { return minimal_model(E, budget(b)).curve; },
           py::arg("budget") = py::none())
      .def("__eq__", [](const WeierstrassCurve& a, const WeierstrassCurve& b) { return a == b; })
      .def("__repr__", [](const WeierstrassCurve& E) { return "Curve(" + curve_json(E).dump() + ")"; });

  m.def("catalog_ids", [] { return Catalog::builtin().ids(); });
  m.def("catalog_path", [] { return Catalog::default_path(); });
  m.def("family", [](const std::string& id) {
    const Catalog& cat = Catalog::builtin();
    return to_py(family_report(cat.family(id), cat.entry(id)));
  });
  m.def("specialize", [](const std::string& id, const py::object& u) {
    return to_py(specialization_report(Catalog::builtin().family(id), rational(u)));
  });
  m.def("listed_points", [](const std::string& id, const py::object& u) {
    py::list l;
    for (const auto& P : listed_points(Catalog::builtin().family(id), rational(u))) l.append(point_py(P));
    return l;
  });
  m.def("discriminant_hints", [](const std::string& id, const py::object& u) {
    std::vector<std::string> v;
    for (const auto& h : discriminant_hints(Catalog::builtin().family(id), rational(u))) v.push_back(to_string(h));
    return v;
  });

  m.def("torsion", [](const py::object& E) { return to_py(torsion_report(curve(E))); }, py::arg("curve"));
  m.def(
      "local_data",
      [](const py::object& E, const py::object& hints, const py::object& b) {
        return to_py(local_report(curve(E), budget(b), hints_for(E, hints)));
      },
      py::arg("curve"), py::arg("hints") = py::none(), py::arg("budget") = py::none());
  m.def(
      "root_number",
      [](const py::object& E, const py::object& hints, const py::object& b) {
        return to_py(rootnumber_report(curve(E), budget(b), hints_for(E, hints)));
      },
      py::arg("curve"), py::arg("hints") = py::none(), py::arg("budget") = py::none());

  m.def(
      "canonical_height",
      [](const py::object& E, const py::object& P, double eps, const py::object& hints, const py::object& b) {
        HeightOptions o = height_options(eps, 1e-6, b, 0);
        o.hints = hints_for(E, hints);
        auto h = canonical_height(curve(E), point(P), o);
        return py::make_tuple(to_string(h.value, 30), to_string(h.error, 3));
      },
      py::arg("curve"), py::arg("point"), py::arg("eps") = 1e-10, py::arg("hints") = py::none(),
      py::arg("budget") = py::none());
  m.def(
      "independence",
      [](const py::object& E, const py::iterable& pts, double eps, double threshold, const py::object& hints,
         const py::object& b, unsigned threads) {
        HeightOptions o = height_options(eps, threshold, b, threads);
        o.hints = hints_for(E, hints);
        return to_py(heights_report(curve(E), points(pts), o));
      },
      py::arg("curve"), py::arg("points"), py::arg("eps") = 1e-10, py::arg("threshold") = 1e-6,
      py::arg("hints") = py::none(), py::arg("budget") = py::none(), py::arg("threads") = 0);

  m.def("builtin_scans", [] { return builtin_scan_names(); });
  m.def("scan_spec", [](const std::string& name) { return to_py(builtin_scan(name).to_json()); });
  m.def(
      "scan",
      [](const py::object& spec, const py::object& radius, bool curves, bool audit) {
        ScanSpec s = py::isinstance<py::str>(spec) ? builtin_scan(spec.cast<std::string>())
                                                  : ScanSpec::from_json(from_py(spec));
        if (!radius.is_none()) s.radius = radius.cast<int>();
        ScanGrid g;
        AuditReport a;
        {
          py::gil_scoped_release release;
          g = lattice_scan(s);
          if (audit) a = symmetry_audit(g, s.symmetry);
        }
        json j = g.to_json(curves);
        if (audit) j["audit"] = a.to_json();
        return to_py(j);
      },
      py::arg("spec"), py::arg("radius") = py::none(), py::arg("curves") = false, py::arg("audit") = true);

  m.def(
      "verify_all",
      [](const py::object& printed, unsigned threads) {
        json pr = load_printed(printed.is_none() ? default_printed_path() : printed.cast<std::string>());
        HeightOptions o;
        o.threads = threads;
        std::vector<EntryReport> reps;
        {
          py::gil_scoped_release release;
          reps = verify_all(Catalog::builtin(), pr, o);
        }
        json a = json::array();
        bool ok = true;
        for (const auto& r : reps) {
          a.push_back(r.to_json());
          ok = ok && r.pass();
        }
        return to_py(json{{"pass", ok}, {"entries", a}});
      },
      py::arg("printed") = py::none(), py::arg("threads") = 0);
}
