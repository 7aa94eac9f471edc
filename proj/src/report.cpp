#include "ecfam/report.hpp"

#include "ecfam/localdata.hpp"
#include "ecfam/rootnum.hpp"

namespace ecfam {

using json = nlohmann::json;

json point_json(const Point& P) {
  if (P.inf) return "O";
  return json::array({to_string(P.x), to_string(P.y)});
}

json curve_json(const WeierstrassCurve& E) {
  json a = json::array();
  for (const auto& c : E.ainvs()) a.push_back(to_string(c));
  return a;
}

Point point_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "O") return Point::infinity();
  return Point{parse_rational(j.at(0).get<std::string>()), parse_rational(j.at(1).get<std::string>())};
}

WeierstrassCurve curve_from_json(const json& j) {
  std::vector<Rational> a;
  for (const auto& c : j) a.push_back(parse_rational(c.get<std::string>()));
  return WeierstrassCurve(a);
}

json factored_json(const FactoredInt& f) {
  json j = json::array();
  for (const auto& pe : f.factors) j.push_back({to_string(pe.p), pe.e});
  return j;
}

json family_report(const CurveFamily& F, const CatalogEntry& e) {
  json j{{"id", F.id}, {"var", F.var}, {"torsion", F.torsion}, {"rank_lower_bound", F.rank_lower_bound},
         {"A", F.A.to_string(F.var)}, {"B", F.B.to_string(F.var)}};
  if (!e.parent.empty()) j["parent"] = e.parent;
  if (!e.sub.empty()) j["substitution"] = e.sub;
  auto secs = [&](const std::vector<Section>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back({{"X", s.X.to_string(F.var)}, {"Y", s.Y.to_string(F.var)}, {"origin", s.origin}});
    return a;
  };
  j["sections"] = secs(F.sections);
  j["torsion_generators"] = secs(F.torsion_generators);
  if (F.condition) j["condition"] = F.condition->to_string(F.recipe.empty() ? F.var : F.recipe.back().parent_var);
  if (F.specialization) j["specialization"] = to_string(*F.specialization);
  return j;
}

json specialization_report(const CurveFamily& F, const Rational& u) {
  auto S = specialize(F, u);
  json j{{"family", F.id}, {"u", to_string(u)}, {"A", to_string(S.A)}, {"B", to_string(S.B)},
         {"curve", curve_json(S.curve)}, {"ref", F.id + "@" + to_string(u)}};
  j["sections"] = json::array();
  for (const auto& P : S.sections) j["sections"].push_back(point_json(P));
  j["torsion_points"] = json::array();
  for (const auto& P : S.torsion) j["torsion_points"].push_back(point_json(P));
  return j;
}

json torsion_report(const WeierstrassCurve& E) {
  auto T = torsion_subgroup(E);
  json j{{"curve", curve_json(E)}, {"label", T.label()}, {"order", T.order()}};
  j["generators"] = json::array();
  for (const auto& P : T.generators) j["generators"].push_back(point_json(P));
  j["points"] = json::array();
  for (const auto& P : T.points) j["points"].push_back(point_json(P));
  return j;
}

json local_report(const WeierstrassCurve& E, const FactorBudget& budget, const std::vector<Integer>& hints) {
  auto G = global_reduction(E, budget, hints);
  json j{{"curve", curve_json(E)}, {"minimal", curve_json(G.minimal)}, {"complete", G.complete()},
         {"conductor", to_string(G.conductor.value())}, {"discriminant", factored_json(G.disc)}};
  if (G.unfactored != 1) j["unfactored"] = to_string(G.unfactored);
  j["local"] = json::array();
  for (const auto& ld : G.local)
    j["local"].push_back({{"p", to_string(ld.p)}, {"kodaira", ld.kodaira.symbol()}, {"f", ld.f}, {"c", ld.c},
                          {"reduction", to_string(ld.reduction)}, {"v_disc", ld.vp_disc_min}});
  return j;
}

json rootnumber_report(const WeierstrassCurve& E, const FactorBudget& budget, const std::vector<Integer>& hints) {
  auto R = global_root_number(E, budget, hints);
  json j{{"curve", curve_json(E)}, {"value", R.complete ? R.value : 0}, {"complete", R.complete}};
  j["locals"] = json::object();
  for (const auto& [p, w] : R.local) j["locals"][to_string(p)] = w;
  j["unresolved"] = json::array();
  for (const auto& p : R.unresolved) j["unresolved"].push_back(to_string(p));
  return j;
}

json heights_report(const WeierstrassCurve& E, const std::vector<Point>& points, const HeightOptions& opt) {
  auto C = independence_certificate(E, points, opt);
  json j{{"curve", curve_json(E)}, {"certificate", to_string(C.result)}, {"threshold", C.threshold},
         {"det", to_string(C.gram.det, 20)}, {"det_error", to_string(C.gram.det_error, 3)},
         {"entry_error", to_string(C.gram.entry_error, 3)}};
  j["points"] = json::array();
  for (const auto& P : points) j["points"].push_back(point_json(P));
  j["heights"] = json::array();
  for (std::size_t i = 0; i < points.size(); ++i) j["heights"].push_back(to_string(C.gram.entries[i][i], 20));
  j["matrix"] = json::array();
  for (const auto& row : C.gram.entries) {
    json r = json::array();
    for (const auto& v : row) r.push_back(to_string(v, 20));
    j["matrix"].push_back(r);
  }
  return j;
}

std::vector<Integer> reference_hints(const std::string& ref, const Catalog& cat) {
  auto at = ref.find('@');
  if (at == std::string::npos) return {};
  return discriminant_hints(cat.family(ref.substr(0, at)), parse_rational(ref.substr(at + 1)));
}

std::vector<Point> listed_points(const CurveFamily& F, const Rational& u) {
  auto S = specialize(F, u);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < F.sections.size(); ++i)
    if (F.sections[i].origin == "listed") pts.push_back(S.sections[i]);
  return pts;
}

}  // namespace ecfam
