#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "ecfam/families.hpp"
#include "ecfam/heights.hpp"

namespace ecfam {

// JSON views shared by the CLI and the Python module.  Integers and rationals
// are strings; the point at infinity is "O".
nlohmann::json point_json(const Point& P);
nlohmann::json curve_json(const WeierstrassCurve& E);
nlohmann::json factored_json(const FactoredInt& f);
Point point_from_json(const nlohmann::json& j);
WeierstrassCurve curve_from_json(const nlohmann::json& j);

nlohmann::json family_report(const CurveFamily& F, const CatalogEntry& e);
nlohmann::json specialization_report(const CurveFamily& F, const Rational& u);
nlohmann::json torsion_report(const WeierstrassCurve& E);
nlohmann::json local_report(const WeierstrassCurve& E, const FactorBudget& budget = FactorBudget{},
                            const std::vector<Integer>& hints = {});
nlohmann::json rootnumber_report(const WeierstrassCurve& E, const FactorBudget& budget = FactorBudget{},
                                 const std::vector<Integer>& hints = {});
nlohmann::json heights_report(const WeierstrassCurve& E, const std::vector<Point>& points,
                              const HeightOptions& opt = HeightOptions{});

// Discriminant hints for a curve reference "ID@u"; empty for any other form.
std::vector<Integer> reference_hints(const std::string& ref, const Catalog& cat);

// Listed sections of F specialized at u.
std::vector<Point> listed_points(const CurveFamily& F, const Rational& u);

}  // namespace ecfam
