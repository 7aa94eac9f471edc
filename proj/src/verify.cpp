#include "ecfam/verify.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "ecfam/sections.hpp"

namespace ecfam {

namespace {

void add(EntryReport& r, std::string name, bool pass, std::string detail = "") {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

template <class F>
void guarded(EntryReport& r, const std::string& name, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    add(r, name, false, e.what());
  }
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string strip_brackets(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '[' || s.front() == '(') && (s.back() == ']' || s.back() == ')'))
    s = s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

bool EntryReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json EntryReport::to_json() const {
  nlohmann::json j{{"id", id}, {"pass", pass()}};
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json k{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) k["detail"] = c.detail;
    j["checks"].push_back(k);
  }
  return j;
}

std::string default_printed_path() {
  if (const char* env = std::getenv("ECFAM_PRINTED"); env && *env) return env;
  std::string cat = Catalog::default_path();
  auto slash = cat.find_last_of('/');
  return (slash == std::string::npos ? std::string(".") : cat.substr(0, slash)) + "/printed_coefficients.json";
}

nlohmann::json load_printed(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in).at("families");
}

EntryReport verify_entry(const Catalog& cat, const std::string& id, const nlohmann::json& printed,
                         const HeightOptions& opt) {
  EntryReport r;
  r.id = id;
  const CurveFamily* Fp = nullptr;
  guarded(r, "rebuild", [&] {
    Fp = &cat.family(id);
    add(r, "rebuild", true);
  });
  if (!Fp) return r;
  const CurveFamily& F = *Fp;
  const CatalogEntry& e = cat.entry(id);

  if (printed.contains(id)) {
    const auto& rec = printed[id];
    guarded(r, "printed coefficients", [&] {
      bool okA = F.A.is_polynomial(), okB = F.B.is_polynomial();
      std::string why;
      if (okA && rec.contains("A")) {
        okA = F.A.num() == parse_poly(rec["A"].get<std::string>(), F.var);
      } else if (okA && rec.contains("A_legible_terms")) {
        for (const auto& [k, c] : rec["A_legible_terms"].items())
          if (F.A.num()[std::stoul(k)] != Rational(Integer(c.get<std::string>()))) {
            okA = false;
            why = "coefficient " + k;
          }
      }
      if (okB && rec.contains("B")) okB = F.B.num() == parse_poly(rec["B"].get<std::string>(), F.var);
      add(r, "printed A", okA, why);
      add(r, "printed B", okB);
    });
  }
  add(r, "discriminant nonzero", !F.discriminant().is_zero());
  for (std::size_t i = 0; i < F.sections.size(); ++i) {
    const Section& s = F.sections[i];
    std::string name = "section " + std::to_string(i) + " (" + s.origin + ")";
    guarded(r, name, [&] {
      RatFunc Y = verify_section(F, s.X);
      bool ok = Y * Y == s.Y * s.Y && s.Y * s.Y == s.X * (s.X * s.X + F.A * s.X + F.B);
      add(r, name, ok);
    });
  }
  for (std::size_t i = 0; i < F.torsion_generators.size(); ++i) {
    const Section& s = F.torsion_generators[i];
    add(r, "torsion generator " + std::to_string(i), s.Y * s.Y == s.X * (s.X * s.X + F.A * s.X + F.B));
  }
  if (e.rank_lower_bound > 0)
    add(r, "section count", F.sections.size() >= e.rank_lower_bound);
  if (F.condition) {
    guarded(r, "condition square", [&] {
      RatFunc c = RatFunc(*F.condition).compose(F.recipe.back().sub);
      add(r, "condition square", ratfunc_sqrt(c).has_value());
    });
  }
  if (F.specialization) {
    const Rational& u = *F.specialization;
    guarded(r, "specialization", [&] {
      auto S = specialize(F, u);
      auto label = torsion_subgroup(S.curve).label();
      add(r, "torsion at u=" + to_string(u), label == F.torsion, label);
      std::vector<Point> listed;
      for (std::size_t i = 0; i < F.sections.size(); ++i)
        if (F.sections[i].origin == "listed") listed.push_back(S.sections[i]);
      HeightOptions o = opt;
      o.hints = discriminant_hints(F, u);
      auto C = independence_certificate(S.curve, listed, o);
      add(r, "independence at u=" + to_string(u), C.independent(), "det " + to_string(C.gram.det, 12));
    });
  }
  return r;
}

EntryReport verify_rank3(const Catalog& cat, const Rank3Condition& cond) {
  EntryReport r;
  r.id = cond.id;
  guarded(r, "quartic", [&] {
    const CurveFamily& F = cat.family(cond.family);
    Poly q = condition_for_x(F, cond.X);
    add(r, "condition from X", q == square_class(cond.quartic), q.to_string(F.var));
    add(r, "point on quartic", cond.quartic.eval(cond.u0) == cond.t0 * cond.t0);
    auto J = quartic_jacobian(QuarticModel{cond.quartic, std::pair{cond.u0, cond.t0}});
    if (cond.model) add(r, "printed model", isomorphic_over_q(J.curve(), WeierstrassCurve(*cond.model)),
                        J.curve().to_string());
  });
  return r;
}

std::vector<EntryReport> verify_all(const Catalog& cat, const nlohmann::json& printed, const HeightOptions& opt) {
  auto ids = cat.ids();
  std::vector<EntryReport> out(ids.size() + cat.rank3_conditions().size());
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto job = [&] {
    for (std::size_t i; (i = next++) < out.size();) {
      HeightOptions o = opt;
      o.threads = 1;
      out[i] = i < ids.size() ? verify_entry(cat, ids[i], printed, o)
                              : verify_rank3(cat, cat.rank3_conditions()[i - ids.size()]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < std::min<std::size_t>(threads, out.size()); ++k) pool.emplace_back(job);
  for (auto& t : pool) t.join();
  return out;
}

WeierstrassCurve parse_curve(const std::string& text, const Catalog& cat) {
  std::string s = trim(text);
  if (auto at = s.find('@'); at != std::string::npos) {
    const CurveFamily& F = cat.family(trim(s.substr(0, at)));
    return specialize(F, parse_rational(trim(s.substr(at + 1)))).curve;
  }
  auto parts = split(strip_brackets(s), ',');
  std::vector<Rational> a;
  for (const auto& p : parts) a.push_back(parse_rational(p));
  if (a.size() == 2) return WeierstrassCurve(0, 0, 0, a[0], a[1]);
  if (a.size() == 5) return WeierstrassCurve(a);
  throw std::invalid_argument("curve: expected 2 or 5 coefficients or ID@u, got '" + text + "'");
}

Point parse_point(const std::string& text) {
  std::string s = trim(text);
  if (s == "O" || s == "0") return Point::infinity();
  auto parts = split(strip_brackets(s), ',');
  if (parts.size() != 2) throw std::invalid_argument("point: expected x,y, got '" + text + "'");
  return Point{parse_rational(parts[0]), parse_rational(parts[1])};
}

}  // namespace ecfam
