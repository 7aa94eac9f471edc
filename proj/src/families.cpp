#include "ecfam/families.hpp"

#include <algorithm>

#include <cstdlib>
#include <fstream>
#include <json.hpp>

namespace ecfam {

namespace {

long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

Rational power(const Rational& base, long e) {
  Rational out = 1;
  Rational b = e < 0 ? Rational(1 / base) : base;
  for (long i = 0; i < std::labs(e); ++i) out *= b;
  return out;
}

RatFunc transport(const RatFunc& f, const RecipeStep& step, int weight) {
  return f.compose(step.sub) * step.scale.pow(weight);
}

struct ShiftedModel {
  RatFunc A, B;
  GenericPoint<RatFunc> from(const GenericPoint<RatFunc>& P) const {
    return GenericPoint<RatFunc>{P.x - xT, P.y + (a1 * P.x + a3) / RatFunc(2), P.inf};
  }
  RatFunc xT, a1, a3;
};

// Completes the square and moves the 2-torsion point with x = xT to (0,0).
ShiftedModel shift_to_ab(const std::array<RatFunc, 5>& a, const RatFunc& xT) {
  RatFunc b2 = a[0] * a[0] + RatFunc(4) * a[1];
  RatFunc b4 = RatFunc(2) * a[3] + a[0] * a[2];
  RatFunc b6 = a[2] * a[2] + RatFunc(4) * a[4];
  RatFunc q2 = b2 / RatFunc(4), q1 = b4 / RatFunc(2), q0 = b6 / RatFunc(4);
  if (xT * xT * xT + q2 * xT * xT + q1 * xT + q0 != RatFunc(0))
    throw std::logic_error("shift point is not 2-torsion");
  ShiftedModel m;
  m.A = RatFunc(3) * xT + q2;
  m.B = RatFunc(3) * xT * xT + RatFunc(2) * q2 * xT + q1;
  m.xT = xT;
  m.a1 = a[0];
  m.a3 = a[2];
  return m;
}

CurveFamily from_tate(const RatFunc& b, const RatFunc& c, int two_torsion_multiple,
                      const std::string& id, const std::string& var, const std::string& label) {
  auto a = tate_normal_form(b, c);
  auto mult = tate_point_multiples(b, c);
  auto sh = shift_to_ab(a, mult.at(two_torsion_multiple).x);
  auto nm = normalize_model(sh.A, sh.B);
  CurveFamily F;
  F.id = id;
  F.var = var;
  F.torsion = label;
  F.A = nm.A;
  F.B = nm.B;
  auto P = sh.from(mult.at(1));
  RatFunc s2 = nm.scale.pow(2), s3 = nm.scale.pow(3);
  Section t{P.x * s2, P.y * s3, "torsion"};
  if (t.Y * t.Y != t.X * t.X * t.X + F.A * t.X * t.X + F.B * t.X)
    throw std::logic_error("torsion point transport failed");
  F.torsion_generators.push_back(t);
  return F;
}

}  // namespace

RatFunc CurveFamily::discriminant() const { return disc_shifted_cubic(A, B); }

RatFunc CurveFamily::j() const {
  RatFunc c = A * A - RatFunc(3) * B;
  return RatFunc(256) * c * c * c / (B * B * (A * A - RatFunc(4) * B));
}

std::vector<Section> CurveFamily::listed_sections() const {
  std::vector<Section> out;
  for (const auto& s : sections)
    if (s.origin == "listed") out.push_back(s);
  return out;
}

NormalizedModel normalize_model(const RatFunc& A, const RatFunc& B, const FactorBudget& budget) {
  if (B.is_zero()) throw DegenerateSubstitution("B vanishes identically");
  std::vector<std::pair<Poly, std::pair<unsigned, unsigned>>> dens;
  auto collect = [&](const Poly& den, bool isA) {
    if (den.degree() <= 0) return;
    for (const auto& [g, e] : factor_poly(den).factors) {
      auto it = std::find_if(dens.begin(), dens.end(), [&](const auto& d) { return d.first == g; });
      if (it == dens.end()) it = dens.insert(dens.end(), {g, {0u, 0u}});
      (isA ? it->second.first : it->second.second) = e;
    }
  };
  collect(A.den(), true);
  collect(B.den(), false);
  Poly lambda(1);
  for (const auto& [g, e] : dens) {
    unsigned k = std::max((e.first + 1) / 2, (e.second + 3) / 4);
    lambda *= g.pow(k);
  }
  RatFunc l2 = RatFunc(lambda).pow(2);
  RatFunc A1 = A * l2, B1 = B * l2 * l2;
  if (!A1.is_polynomial() || !B1.is_polynomial())
    throw std::logic_error("denominator clearing left a denominator");

  Rational cA = A1.is_zero() ? Rational(0) : Rational(abs(content(A1.num())));
  Rational cB = abs(content(B1.num()));
  std::vector<Integer> primes;
  for (const Integer& n : {Integer(cA.get_num()), Integer(cA.get_den()), Integer(cB.get_num()),
                           Integer(cB.get_den())}) {
    if (n == 0 || n == 1) continue;
    auto f = factor(n, budget);
    if (!f.complete()) throw UnfactoredError("content of normalized coefficients", f.residue);
    for (const auto& pp : f.factors)
      if (std::find(primes.begin(), primes.end(), pp.p) == primes.end()) primes.push_back(pp.p);
  }
  Rational mu = 1;
  for (const auto& p : primes) {
    long vb = valuation(cB, p);
    long e = floor_div(vb, 4);
    if (cA != 0) e = std::min(e, floor_div(valuation(cA, p), 2));
    mu *= power(Rational(p), -e);
  }
  NormalizedModel out;
  out.A = A1 * RatFunc(mu * mu);
  out.B = B1 * RatFunc(mu * mu * mu * mu);
  out.scale = RatFunc(lambda) * RatFunc(mu);
  return out;
}

CurveFamily model_z8() {
  RatFunc v = RatFunc::x();
  RatFunc b = (RatFunc(2) * v - RatFunc(1)) * (v - RatFunc(1));
  return from_tate(b, b / v, 4, "Z8", "v", "Z/8Z");
}

CurveFamily model_z6() {
  RatFunc d = RatFunc::x();
  return from_tate(d + d * d, d, 3, "Z6", "d", "Z/6Z");
}

CurveFamily model_z2x6() {
  // (d+1)(9d+1) = (3d+v)^2 is linear in d
  RatFunc v = RatFunc::x();
  RatFunc d = (v * v - RatFunc(1)) / (RatFunc(10) - RatFunc(6) * v);
  CurveFamily F = substitute_parameter(model_z6(), d, "v", "Z2x6");
  F.torsion = "Z/2Z x Z/6Z";
  auto root = ratfunc_sqrt(F.A * F.A - RatFunc(4) * F.B);
  if (!root) throw std::logic_error("full 2-torsion not rational");
  RatFunc e = (-F.A + *root) / RatFunc(2);
  F.torsion_generators.push_back(Section{e, RatFunc(0), "torsion"});
  return F;
}

CurveFamily substitute_parameter(const CurveFamily& F, const RatFunc& sub, const std::string& new_var,
                                 const std::string& new_id) {
  if (sub.is_constant()) throw DegenerateSubstitution("constant substitution");
  RatFunc A = F.A.compose(sub), B = F.B.compose(sub);
  if (B.is_zero() || (A * A - RatFunc(4) * B).is_zero())
    throw DegenerateSubstitution("discriminant vanishes identically");
  auto nm = normalize_model(A, B);
  CurveFamily G;
  G.id = new_id.empty() ? F.id + "[" + sub.to_string(F.var) + "]" : new_id;
  G.var = new_var;
  G.torsion = F.torsion;
  G.A = nm.A;
  G.B = nm.B;
  G.rank_lower_bound = F.rank_lower_bound;
  G.recipe = F.recipe;
  G.recipe.push_back(RecipeStep{F.id, F.var, sub, nm.scale});
  const RecipeStep& step = G.recipe.back();
  for (const auto& s : F.sections) {
    std::string origin = s.origin.rfind("inherited:", 0) == 0 ? s.origin : "inherited:" + F.id;
    G.sections.push_back(Section{transport(s.X, step, 2), transport(s.Y, step, 3), origin});
  }
  for (const auto& t : F.torsion_generators)
    G.torsion_generators.push_back(Section{transport(t.X, step, 2), transport(t.Y, step, 3), t.origin});
  return G;
}

RatFunc verify_section(const CurveFamily& F, const RatFunc& X) {
  RatFunc rhs = X * (X * X + F.A * X + F.B);
  auto Y = ratfunc_sqrt(rhs);
  if (!Y) throw NotASection("X = " + X.to_string(F.var) + " is not a section of " + F.id);
  return *Y;
}

const Section& add_section(CurveFamily& F, const RatFunc& X, const std::string& origin) {
  RatFunc Y = verify_section(F, X);
  F.sections.push_back(Section{X, Y, origin});
  return F.sections.back();
}

Specialization specialize(const CurveFamily& F, const Rational& u0) {
  if (F.A.has_pole_at(u0) || F.B.has_pole_at(u0))
    throw BadSpecialization(F.id + ": pole at " + to_string(u0));
  Rational A = F.A.eval(u0), B = F.B.eval(u0);
  if (B == 0 || A * A - 4 * B == 0)
    throw BadSpecialization(F.id + ": singular fiber at " + to_string(u0));
  Specialization s{u0, A, B, WeierstrassCurve::from_ab(A, B), {}, {}};
  auto image = [&](const Section& sec) {
    if (sec.X.has_pole_at(u0) || sec.Y.has_pole_at(u0)) return Point::infinity();
    Point P{sec.X.eval(u0), sec.Y.eval(u0)};
    s.curve.check(P);
    return P;
  };
  for (const auto& sec : F.sections) s.sections.push_back(image(sec));
  for (const auto& t : F.torsion_generators) s.torsion.push_back(image(t));
  return s;
}

std::vector<Integer> discriminant_hints(const CurveFamily& F, const Rational& u0) {
  std::vector<Integer> out;
  auto push = [&](const Integer& n) {
    Integer a = abs(n);
    if (a > 1 && std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  };
  Integer n = u0.get_num(), d = u0.get_den();
  push(n);
  push(d);
  RatFunc disc = F.discriminant();
  for (const Poly* p : {&disc.num(), &disc.den()}) {
    if (p->degree() <= 0) continue;
    for (const auto& [g, e] : factor_poly(*p).factors) {
      Rational val = g.eval_homogeneous(n, d, g.degree());
      push(val.get_num());
    }
  }
  return out;
}

// Catalog

Catalog::Catalog(Catalog&& other) noexcept = default;

std::string Catalog::default_path() {
  if (const char* env = std::getenv("ECFAM_CATALOG"); env && *env) return env;
#ifdef ECFAM_DEFAULT_CATALOG
  return ECFAM_DEFAULT_CATALOG;
#else
  return "data/catalog.json";
#endif
}

const Catalog& Catalog::builtin() {
  static const Catalog cat = load(default_path());
  return cat;
}

Catalog Catalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.value("format", "") != "ecfam-catalog")
    throw std::runtime_error("not an ecfam catalog: " + path);
  Catalog cat;
  auto str = [](const nlohmann::json& o, const char* key) {
    return o.contains(key) ? o[key].get<std::string>() : std::string();
  };
  auto strs = [](const nlohmann::json& o, const char* key) {
    std::vector<std::string> v;
    if (o.contains(key))
      for (const auto& s : o[key]) v.push_back(s.get<std::string>());
    return v;
  };
  for (const auto& f : j.at("families")) {
    CatalogEntry e;
    e.id = f.at("id").get<std::string>();
    e.var = f.value("var", "u");
    e.parent = str(f, "parent");
    e.model = str(f, "model");
    e.sub = str(f, "sub");
    e.torsion = str(f, "torsion");
    e.rank_lower_bound = f.value("rank_lower_bound", 0u);
    e.parent_sections = strs(f, "parent_sections");
    e.sections = strs(f, "sections");
    e.condition = str(f, "condition");
    e.specialization = str(f, "specialization");
    if (e.parent.empty() == e.model.empty())
      throw std::runtime_error("catalog entry " + e.id + " needs exactly one of parent/model");
    cat.entries_.push_back(std::move(e));
  }
  if (j.contains("rank3_conditions")) {
    for (const auto& r : j["rank3_conditions"]) {
      Rank3Condition c;
      c.id = r.at("id").get<std::string>();
      c.family = r.at("family").get<std::string>();
      const CatalogEntry& fe = cat.entry(c.family);
      c.X = parse_ratfunc(r.at("x").get<std::string>(), fe.var);
      c.quartic = parse_poly(r.at("quartic").get<std::string>(), fe.var);
      c.u0 = parse_rational(r.at("point")[0].get<std::string>());
      c.t0 = parse_rational(r.at("point")[1].get<std::string>());
      if (r.contains("model")) {
        std::vector<Rational> m;
        for (const auto& s : r["model"]) m.push_back(parse_rational(s.get<std::string>()));
        c.model = m;
      }
      cat.rank3_.push_back(std::move(c));
    }
  }
  return cat;
}

const CatalogEntry& Catalog::entry(const std::string& id) const {
  for (const auto& e : entries_)
    if (e.id == id) return e;
  throw std::out_of_range("unknown catalog id " + id);
}

bool Catalog::contains(const std::string& id) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.id == id; });
}

std::vector<std::string> Catalog::ids() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.id);
  return out;
}

const CurveFamily& Catalog::family(const std::string& id) const {
  std::lock_guard<std::recursive_mutex> lock(*mu_);
  if (auto it = cache_.find(id); it != cache_.end()) return *it->second;
  const CatalogEntry& e = entry(id);
  CurveFamily F;
  if (!e.model.empty()) {
    if (e.model == "z8")
      F = model_z8();
    else if (e.model == "z2x6")
      F = model_z2x6();
    else
      throw std::runtime_error("unknown base model " + e.model);
    F.id = e.id;
  } else {
    const CurveFamily& parent = family(e.parent);
    RatFunc sub = parse_ratfunc(e.sub, e.var);
    F = substitute_parameter(parent, sub, e.var, e.id);
    const RecipeStep& step = F.recipe.back();
    std::vector<Section> inherited = std::move(F.sections);
    F.sections.clear();
    auto known = [&](const RatFunc& X) {
      return std::any_of(F.sections.begin(), F.sections.end(), [&](const Section& s) { return s.X == X; });
    };
    for (const auto& s : e.sections) add_section(F, parse_ratfunc(s, e.var), "listed");
    for (const auto& s : e.parent_sections) {
      RatFunc X = transport(parse_ratfunc(s, parent.var), step, 2);
      if (!known(X)) add_section(F, X, "condition");
    }
    for (auto& s : inherited)
      if (!known(s.X)) F.sections.push_back(std::move(s));
    if (!e.condition.empty()) F.condition = parse_poly(e.condition, parent.var);
  }
  if (!e.torsion.empty()) F.torsion = e.torsion;
  F.rank_lower_bound = e.rank_lower_bound;
  if (!e.specialization.empty()) F.specialization = parse_rational(e.specialization);
  auto ptr = std::make_shared<const CurveFamily>(std::move(F));
  cache_[id] = ptr;
  return *ptr;
}

}  // namespace ecfam
