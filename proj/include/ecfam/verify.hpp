#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "ecfam/families.hpp"
#include "ecfam/heights.hpp"

namespace ecfam {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct EntryReport {
  std::string id;
  std::vector<Check> checks;

  bool pass() const;
  nlohmann::json to_json() const;
};

// Printed coefficients shipped with the catalog (data/printed_coefficients.json).
std::string default_printed_path();
nlohmann::json load_printed(const std::string& path = default_printed_path());

// Coefficients against the printed values, exact section identities, torsion
// and independence at the specialization, the family condition.
EntryReport verify_entry(const Catalog& cat, const std::string& id, const nlohmann::json& printed,
                         const HeightOptions& opt = HeightOptions{});

// The rank-3 condition: X gives the quartic, and its Jacobian matches the printed model.
EntryReport verify_rank3(const Catalog& cat, const Rank3Condition& cond);

// Every entry and every rank-3 condition; entries in parallel when threads != 1.
std::vector<EntryReport> verify_all(const Catalog& cat, const nlohmann::json& printed,
                                    const HeightOptions& opt = HeightOptions{});

// "ID@u" specializes a catalog family; "[a1,a2,a3,a4,a6]", "a1,a2,a3,a4,a6" or "a4,a6" give a model.
WeierstrassCurve parse_curve(const std::string& text, const Catalog& cat);
Point parse_point(const std::string& text);  // "x,y", "[x,y]" or "O"

}  // namespace ecfam
