#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "ecfam/heights.hpp"
#include "ecfam/localdata.hpp"
#include "ecfam/report.hpp"
#include "ecfam/scan.hpp"
#include "ecfam/sections.hpp"
#include "ecfam/verify.hpp"

using namespace ecfam;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string budget;
  std::string catalog;
  double eps = 1e-10;
  double threshold = 1e-6;
  unsigned threads = 0;
  std::string format = "json";

  FactorBudget factor_budget() const { return budget.empty() ? FactorBudget::from_env() : FactorBudget::parse(budget); }
  HeightOptions heights() const {
    HeightOptions o;
    o.eps = eps;
    o.threshold = threshold;
    o.threads = threads;
    o.budget = factor_budget();
    return o;
  }
};

void text_out(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) text_out(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) text_out(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Config& cfg, const json& j) {
  if (cfg.format == "text")
    text_out(j, "", std::cout);
  else
    std::cout << j.dump(2) << "\n";
}

const Catalog& catalog(const Config& cfg) {
  static std::unique_ptr<Catalog> cat;
  if (cfg.catalog.empty()) return Catalog::builtin();
  if (!cat) cat = std::make_unique<Catalog>(Catalog::load(cfg.catalog));
  return *cat;
}

WeierstrassCurve curve_arg(const Config& cfg, const std::string& text) {
  try {
    return parse_curve(text, catalog(cfg));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(std::string("unknown catalog id: ") + e.what());
  }
}

json report_list(const std::vector<EntryReport>& reps, bool& ok) {
  json a = json::array();
  ok = true;
  for (const auto& r : reps) {
    a.push_back(r.to_json());
    ok = ok && r.pass();
  }
  return a;
}

int run(int argc, char** argv) {
  CLI::App app{"Elliptic curve families with torsion Z/8Z and Z/2Z x Z/6Z"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--budget", cfg.budget, "factorization budget: trial=N,rho=N,ecm=N,b1=N,ms=N (default ECFAM_BUDGET)");
  app.add_option("--catalog", cfg.catalog, "catalog file (default ECFAM_CATALOG or the installed catalog)");
  app.add_option("--eps", cfg.eps, "height precision")->check(CLI::PositiveNumber);
  app.add_option("--threshold", cfg.threshold, "independence threshold for the Gram determinant")->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "worker threads, 0 for all cores");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text", "csv"}));

  int status = 0;

  // catalog
  auto* cat_cmd = app.add_subcommand("catalog", "inspect and verify the family catalog");
  cat_cmd->require_subcommand(1);
  cat_cmd->fallthrough();
  cat_cmd->add_subcommand("list", "list catalog entries")->callback([&] {
    json a = json::array();
    for (const auto& e : catalog(cfg).entries())
      a.push_back({{"id", e.id}, {"torsion", e.torsion}, {"rank_lower_bound", e.rank_lower_bound}, {"parent", e.parent}});
    emit(cfg, a);
  });
  std::string show_id;
  auto* show = cat_cmd->add_subcommand("show", "coefficients and sections of one family");
  show->add_option("id", show_id)->required();
  show->callback([&] {
    if (!catalog(cfg).contains(show_id)) throw UsageError("unknown catalog id " + show_id);
    emit(cfg, family_report(catalog(cfg).family(show_id), catalog(cfg).entry(show_id)));
  });
  std::vector<std::string> verify_ids;
  std::string printed_path;
  auto* cverify = cat_cmd->add_subcommand("verify", "verify catalog entries (all when no id is given)");
  cverify->add_option("ids", verify_ids);
  cverify->add_option("--printed", printed_path, "printed coefficient file");
  cverify->callback([&] {
    const Catalog& cat = catalog(cfg);
    json printed = load_printed(printed_path.empty() ? default_printed_path() : printed_path);
    if (verify_ids.empty()) verify_ids = cat.ids();
    std::vector<EntryReport> reps;
    for (const auto& id : verify_ids) {
      if (!cat.contains(id)) throw UsageError("unknown catalog id " + id);
      reps.push_back(verify_entry(cat, id, printed, cfg.heights()));
    }
    bool ok;
    json j = report_list(reps, ok);
    emit(cfg, j);
    if (!ok) status = 1;
  });

  // specialize
  std::string spec_id, spec_u;
  auto* specialize_cmd = app.add_subcommand("specialize", "specialize a family at a parameter value");
  specialize_cmd->add_option("id", spec_id)->required();
  specialize_cmd->add_option("--u", spec_u, "parameter value")->required();
  specialize_cmd->callback([&] {
    const Catalog& cat = catalog(cfg);
    if (!cat.contains(spec_id)) throw UsageError("unknown catalog id " + spec_id);
    const CurveFamily& F = cat.family(spec_id);
    Rational u;
    try {
      u = parse_rational(spec_u);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--u: ") + e.what());
    }
    emit(cfg, specialization_report(F, u));
  });

  // torsion
  std::string tors_curve;
  auto* torsion_cmd = app.add_subcommand("torsion", "torsion subgroup of a curve");
  torsion_cmd->add_option("curve", tors_curve, "ID@u, [a1,a2,a3,a4,a6] or a4,a6")->required();
  torsion_cmd->callback([&] {
    emit(cfg, torsion_report(curve_arg(cfg, tors_curve)));
  });

  // local
  std::string local_curve;
  auto* local_cmd = app.add_subcommand("local", "minimal model, conductor and Tate's algorithm at each bad prime");
  local_cmd->add_option("curve", local_curve)->required();
  local_cmd->callback([&] {
    auto E = curve_arg(cfg, local_curve);
    emit(cfg, local_report(E, cfg.factor_budget(), reference_hints(local_curve, catalog(cfg))));
  });

  // rootnumber
  std::string rn_curve;
  auto* rn_cmd = app.add_subcommand("rootnumber", "global root number with local factors");
  rn_cmd->add_option("curve", rn_curve)->required();
  rn_cmd->callback([&] {
    auto E = curve_arg(cfg, rn_curve);
    emit(cfg, rootnumber_report(E, cfg.factor_budget(), reference_hints(rn_curve, catalog(cfg))));
  });

  // heights
  std::string h_curve;
  std::vector<std::string> h_points;
  bool h_sections = false;
  auto* h_cmd = app.add_subcommand("heights", "canonical heights, pairing matrix and independence certificate");
  h_cmd->add_option("curve", h_curve)->required();
  h_cmd->add_option("--points", h_points, "points x,y");
  h_cmd->add_flag("--sections", h_sections, "use the listed sections of ID@u");
  h_cmd->callback([&] {
    auto E = curve_arg(cfg, h_curve);
    std::vector<Point> pts;
    HeightOptions opt = cfg.heights();
    if (auto at = h_curve.find('@'); at != std::string::npos) {
      const CurveFamily& F = catalog(cfg).family(h_curve.substr(0, at));
      Rational u = parse_rational(h_curve.substr(at + 1));
      opt.hints = discriminant_hints(F, u);
      if (h_sections) pts = listed_points(F, u);
    } else if (h_sections) {
      throw UsageError("--sections needs a curve given as ID@u");
    }
    for (const auto& s : h_points) {
      try {
        pts.push_back(parse_point(s));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (!E.on_curve(pts.back())) throw UsageError("point " + s + " is not on the curve");
    }
    if (pts.empty()) throw UsageError("no points given");
    emit(cfg, heights_report(E, pts, opt));
  });

  // sections
  auto* sec_cmd = app.add_subcommand("sections", "quadratic-section tooling");
  sec_cmd->require_subcommand(1);
  sec_cmd->fallthrough();
  std::string en_id;
  std::size_t en_limit = 20000;
  bool en_no_constants = false;
  auto* en = sec_cmd->add_subcommand("enumerate", "divisor conditions d + A + B/d = square");
  en->add_option("id", en_id)->required();
  en->add_option("--limit", en_limit);
  en->add_flag("--no-constants", en_no_constants, "skip the integer divisors of the content of B");
  en->callback([&] {
    if (!catalog(cfg).contains(en_id)) throw UsageError("unknown catalog id " + en_id);
    const CurveFamily& F = catalog(cfg).family(en_id);
    DivisorOptions o;
    o.limit = en_limit;
    o.constant_divisors = !en_no_constants;
    o.threads = cfg.threads;
    json a = json::array();
    for (const auto& c : divisor_conditions(F, o, cfg.factor_budget()))
      a.push_back({{"d", c.d.to_string(F.var)}, {"condition", c.condition.to_string(F.var)},
                   {"degree", c.condition.degree()}});
    emit(cfg, a);
  });
  std::vector<std::string> conic_coeffs;
  auto* sc = sec_cmd->add_subcommand("solve-conic", "a x^2 + b y^2 + c z^2 + d xy + e xz + f yz = 0");
  sc->add_option("coefficients", conic_coeffs, "a b c [d e f]")->required()->expected(3, 6);
  sc->callback([&] {
    if (conic_coeffs.size() != 3 && conic_coeffs.size() != 6) throw UsageError("solve-conic takes 3 or 6 coefficients");
    std::vector<Rational> c;
    for (const auto& s : conic_coeffs) c.push_back(parse_rational(s));
    c.resize(6, Rational(0));
    Conic C = [&] {
      try {
        return Conic::from_form(c[0], c[1], c[2], c[3], c[4], c[5]);
      } catch (const DegenerateConic& e) {
        throw UsageError(e.what());
      }
    }();
    auto sol = solve_conic(C, cfg.factor_budget());
    json j{{"conic", C.to_string()}, {"solvable", sol.solvable()}};
    if (sol.point) j["point"] = {to_string((*sol.point)[0]), to_string((*sol.point)[1]), to_string((*sol.point)[2])};
    if (sol.witness) j["witness"] = *sol.witness == 0 ? std::string("infinity") : to_string(*sol.witness);
    emit(cfg, j);
  });
  std::string q_text, q_var = "u", q_point;
  auto* qc = sec_cmd->add_subcommand("quartic2cubic", "Weierstrass model of t^2 = q(u) through a known point");
  qc->add_option("quartic", q_text)->required();
  qc->add_option("--var", q_var);
  qc->add_option("--point", q_point, "u0,t0 with t0^2 = q(u0)")->required();
  qc->callback([&] {
    QuarticModel Q;
    try {
      Q.q = parse_poly(q_text, q_var);
      Point p = parse_point(q_point);
      Q.point = std::pair{p.x, p.y};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    auto J = quartic_jacobian(Q);
    auto M = minimal_model(J.curve(), cfg.factor_budget());
    emit(cfg, json{{"quartic", Q.q.to_string(q_var)}, {"curve", curve_json(J.curve())}, {"minimal", curve_json(M.curve)}});
  });

  // scan
  std::string scan_spec, scan_example, scan_out, scan_json;
  int scan_radius = -1, scan_orientation = 0;
  bool scan_curves = false;
  auto* scan_cmd = app.add_subcommand("scan", "root numbers over a Mordell-Weil lattice");
  auto* spec_opt = scan_cmd->add_option("--spec", scan_spec, "scan specification (JSON)");
  scan_cmd->add_option("--example", scan_example, "built-in scan")->excludes(spec_opt)->check(CLI::IsMember(builtin_scan_names()));
  scan_cmd->add_option("--radius", scan_radius, "|n|, |m| <= radius");
  scan_cmd->add_option("--orientation", scan_orientation, "1 or -1")->check(CLI::IsMember({-1, 1}));
  scan_cmd->add_option("--out", scan_out, "write the grid as CSV");
  scan_cmd->add_option("--json", scan_json, "write the grid as JSON");
  scan_cmd->add_flag("--curves", scan_curves, "include minimal models in the JSON grid");
  scan_cmd->callback([&] {
    ScanSpec spec;
    if (!scan_spec.empty()) {
      std::ifstream in(scan_spec);
      if (!in) throw UsageError("cannot open " + scan_spec);
      try {
        spec = ScanSpec::from_json(json::parse(in));
      } catch (const std::exception& e) {
        throw UsageError(std::string("spec: ") + e.what());
      }
    } else if (!scan_example.empty()) {
      spec = builtin_scan(scan_example);
    } else {
      throw UsageError("scan needs --spec or --example");
    }
    if (scan_radius >= 0) spec.radius = scan_radius;
    if (scan_orientation) spec.orientation = scan_orientation;
    if (!cfg.budget.empty() || std::getenv("ECFAM_BUDGET")) spec.budget = cfg.factor_budget();
    if (cfg.threads) spec.threads = cfg.threads;
    ScanGrid grid;
    try {
      grid = lattice_scan(spec, catalog(cfg));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("spec: ") + e.what());
    }
    if (!scan_out.empty()) std::ofstream(scan_out) << grid.to_csv();
    if (!scan_json.empty()) std::ofstream(scan_json) << grid.to_json(scan_curves).dump(1) << "\n";
    if (cfg.format == "csv") {
      std::cout << grid.to_csv();
      return;
    }
    auto audit = symmetry_audit(grid, spec.symmetry);
    json j{{"name", grid.name}, {"radius", spec.radius}, {"budget", spec.budget.to_string()},
           {"counts", {{"plus", grid.counts.plus}, {"minus", grid.counts.minus},
                       {"incomplete", grid.counts.incomplete}, {"skipped", grid.counts.skipped}}},
           {"audit", audit.to_json()}};
    emit(cfg, j);
  });

  // verify-all
  std::string va_printed;
  auto* va = app.add_subcommand("verify-all", "catalog identities, torsion, independence and rank-3 models");
  va->add_option("--printed", va_printed, "printed coefficient file");
  va->callback([&] {
    json printed = load_printed(va_printed.empty() ? default_printed_path() : va_printed);
    bool ok;
    json reps = report_list(verify_all(catalog(cfg), printed, cfg.heights()), ok);
    json j{{"pass", ok}, {"entries", reps}};
    if (cfg.format == "text") {
      for (const auto& r : reps) std::cout << (r["pass"].get<bool>() ? "PASS " : "FAIL ") << r["id"].get<std::string>() << "\n";
      std::cout << (ok ? "all entries pass" : "verification failed") << "\n";
    } else {
      emit(cfg, j);
    }
    if (!ok) status = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
