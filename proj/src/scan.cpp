#include "ecfam/scan.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "ecfam/report.hpp"
#include "ecfam/rootnum.hpp"

namespace ecfam {

namespace {

std::string replace_var(const std::string& text, char var, const std::string& value) {
  std::string out;
  for (char ch : text) {
    if (ch == var)
      out += "(" + value + ")";
    else
      out += ch;
  }
  return out;
}

const Rank3Condition& condition_by_id(const Catalog& cat, const std::string& id) {
  for (const auto& c : cat.rank3_conditions())
    if (c.id == id) return c;
  throw std::invalid_argument("unknown rank-3 condition " + id);
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer a = q.get_num(), b = q.get_den(), ra, rb;
  if (!mpz_perfect_square_p(a.get_mpz_t()) || !mpz_perfect_square_p(b.get_mpz_t())) return std::nullopt;
  mpz_sqrt(ra.get_mpz_t(), a.get_mpz_t());
  mpz_sqrt(rb.get_mpz_t(), b.get_mpz_t());
  return make_rational(ra, rb);
}

Rational other_root(const std::array<Poly, 3>& q, const Rational& x, const Rational& root) {
  Rational a = q[2].eval(x), b = q[1].eval(x);
  if (a == 0) throw DegenerateFiber("leading coefficient vanishes at " + ecfam::to_string(x));
  return -b / a - root;
}

}  // namespace

BiquadraticCurve::BiquadraticCurve(const std::array<std::array<Rational, 3>, 3>& c) : c_(c) {
  bool deg2 = false, any = false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (c_[i][j] == 0) continue;
      any = true;
      if (i == 2 || j == 2) deg2 = true;
    }
  if (!any || !deg2) throw std::invalid_argument("biquadratic curve needs degree 2 in r or s");
}

BiquadraticCurve BiquadraticCurve::parse(const std::string& text) {
  // interpolate in s from the values s = 0, 1, -1 and check s = 2..5
  auto at = [&](long s) { return parse_poly(replace_var(text, 's', std::to_string(s)), "r"); };
  Poly p0 = at(0), p1 = at(1), pm = at(-1);
  std::array<Poly, 3> cs;
  cs[0] = p0;
  cs[2] = (p1 + pm - p0 - p0).scaled(make_rational(1, 2));
  cs[1] = (p1 - pm).scaled(make_rational(1, 2));
  for (long s = 2; s <= 5; ++s)
    if (at(s) != cs[0] + cs[1].scaled(s) + cs[2].scaled(s * s))
      throw std::invalid_argument("degree in s exceeds 2: " + text);
  std::array<std::array<Rational, 3>, 3> c;
  for (int j = 0; j < 3; ++j) {
    if (cs[j].degree() > 2) throw std::invalid_argument("degree in r exceeds 2: " + text);
    for (int i = 0; i < 3; ++i) c[i][j] = cs[j][i];
  }
  return BiquadraticCurve(c);
}

Rational BiquadraticCurve::eval(const RS& p) const {
  Rational v = 0, ri = 1;
  for (int i = 0; i < 3; ++i, ri *= p.r) {
    Rational sj = 1;
    for (int j = 0; j < 3; ++j, sj *= p.s) v += c_[i][j] * ri * sj;
  }
  return v;
}

std::array<Poly, 3> BiquadraticCurve::in(Var v) const {
  std::array<Poly, 3> out;
  for (int k = 0; k < 3; ++k) {
    std::vector<Rational> co(3);
    for (int l = 0; l < 3; ++l) co[l] = v == Var::S ? c_[l][k] : c_[k][l];
    out[k] = Poly(co);
  }
  return out;
}

Poly BiquadraticCurve::discriminant(Var v) const {
  auto q = in(v);
  return q[1] * q[1] - q[0] * q[2].scaled(4);
}

std::string BiquadraticCurve::to_string() const {
  std::string out;
  for (int i = 2; i >= 0; --i)
    for (int j = 2; j >= 0; --j) {
      const Rational& c = c_[i][j];
      if (c == 0) continue;
      std::string mon;
      if (i) mon += i == 1 ? "r" : "r^2";
      if (j) mon += std::string(mon.empty() ? "" : "*") + (j == 1 ? "s" : "s^2");
      Rational a = abs(c);
      std::string coef = ecfam::to_string(a);
      std::string term = mon.empty() ? coef : (a == 1 ? mon : coef + "*" + mon);
      if (out.empty())
        out = (c < 0 ? "-" : "") + term;
      else
        out += (c < 0 ? " - " : " + ") + term;
    }
  return out;
}

RS tau1(const BiquadraticCurve& C, const RS& p) {
  if (!C.on_curve(p)) throw PointNotOnCurve("tau1: point not on the curve");
  return {p.r, other_root(C.in(Var::S), p.r, p.s)};
}

RS tau2(const BiquadraticCurve& C, const RS& p) {
  if (!C.on_curve(p)) throw PointNotOnCurve("tau2: point not on the curve");
  return {other_root(C.in(Var::R), p.s, p.r), p.s};
}

std::pair<RS, RS> involutions(const BiquadraticCurve& C, const RS& p) { return {tau1(C, p), tau2(C, p)}; }

RS psi1(const BiquadraticCurve& C, const RS& p) {
  if (!C.on_curve(p)) throw PointNotOnCurve("psi1: point not on the curve");
  Poly D = C.discriminant(Var::S);
  if (D.compose(-Poly::x()) != D) throw std::invalid_argument("psi1: discriminant in s is not even in r");
  auto q = C.in(Var::S);
  Rational a = q[2].eval(p.r), b = q[1].eval(p.r);
  Rational am = q[2].eval(-p.r), bm = q[1].eval(-p.r);
  if (am == 0) throw DegenerateFiber("psi1: leading coefficient vanishes at -r");
  return {-p.r, (2 * a * p.s + b - bm) / (2 * am)};
}

RS psi2(const BiquadraticCurve& C, const RS& p) { return tau1(C, psi1(C, p)); }

QuarticModel quartic_correspondence(const BiquadraticCurve& C, Var eliminate) {
  Poly D = C.discriminant(eliminate);
  if (D.is_zero()) throw DegenerateQuartic("discriminant vanishes identically");
  // remove the largest rational square factor of the content
  Rational c = content(D);
  Integer num = abs(c.get_num()), den = c.get_den();
  auto sq = [](const Integer& n) {
    auto f = factor(n);
    if (!f.complete()) throw UnfactoredError("content", f.residue);
    Integer s = 1;
    for (const auto& pe : f.factors)
      for (unsigned k = 0; k < pe.e / 2; ++k) s *= pe.p;
    return s;
  };
  Integer a = sq(num * den);
  Rational scale = make_rational(den * den, a * a);
  return QuarticModel{D.scaled(scale), std::nullopt};
}

std::string Symmetry::to_string() const {
  if (identity) return "identity";
  auto term = [](const char* v, int d) {
    std::string s = std::string("-") + v;
    if (d > 0) s += "+" + std::to_string(d);
    if (d < 0) s += std::to_string(d);
    return s;
  };
  return "(n,m) -> (" + term("n", dn) + "," + term("m", dm) + ")";
}

// ---------- spec ----------

nlohmann::json ScanSpec::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["parametrizer"] = curve_json(parametrizer);
  j["generators"] = nlohmann::json::array();
  for (const auto& P : generators) j["generators"].push_back(point_json(P));
  j["torsion"] = nlohmann::json::array();
  for (const auto& P : torsion) j["torsion"].push_back(point_json(P));
  if (translate) j["translate"] = point_json(*translate);
  j["condition"] = condition;
  j["family"] = family;
  if (curve) j["curve"] = curve->to_string();
  if (base_point) j["base_point"] = {to_string(base_point->r), to_string(base_point->s)};
  if (!partner_family.empty()) j["partner_family"] = partner_family;
  j["orientation"] = orientation;
  j["radius"] = radius;
  j["symmetry"] = symmetry.identity ? nlohmann::json("identity") : nlohmann::json::array({symmetry.dn, symmetry.dm});
  j["budget"] = budget.to_string();
  j["threads"] = threads;
  return j;
}

ScanSpec ScanSpec::from_json(const nlohmann::json& j) {
  ScanSpec s;
  s.name = j.value("name", "");
  s.parametrizer = curve_from_json(j.at("parametrizer"));
  for (const auto& P : j.at("generators")) s.generators.push_back(point_from_json(P));
  if (j.contains("torsion"))
    for (const auto& P : j["torsion"]) s.torsion.push_back(point_from_json(P));
  if (j.contains("translate")) s.translate = point_from_json(j["translate"]);
  s.condition = j.at("condition").get<std::string>();
  s.family = j.value("family", "");
  if (j.contains("curve")) s.curve = BiquadraticCurve::parse(j["curve"].get<std::string>());
  if (j.contains("base_point"))
    s.base_point = RS{parse_rational(j["base_point"][0].get<std::string>()),
                      parse_rational(j["base_point"][1].get<std::string>())};
  s.partner_family = j.value("partner_family", "");
  s.orientation = j.value("orientation", 1);
  s.radius = j.value("radius", 2);
  if (j.contains("symmetry")) {
    const auto& y = j["symmetry"];
    if (y.is_string()) {
      if (y.get<std::string>() != "identity") throw std::invalid_argument("symmetry: expected \"identity\" or [dn, dm]");
      s.symmetry.identity = true;
    } else {
      s.symmetry = Symmetry{y.at(0).get<int>(), y.at(1).get<int>(), false};
    }
  }
  if (j.contains("budget")) s.budget = FactorBudget::parse(j["budget"].get<std::string>());
  s.threads = j.value("threads", 0u);
  return s;
}

void ScanSpec::validate(const Catalog& cat) const {
  if (generators.size() != 2) throw std::invalid_argument("scan needs two generators");
  auto check = [&](const Point& P) {
    if (!parametrizer.on_curve(P))
      throw std::invalid_argument("point (" + to_string(P.x) + ", " + to_string(P.y) + ") is not on the parametrizer");
  };
  for (const auto& P : generators) check(P);
  for (const auto& P : torsion) check(P);
  if (translate) check(*translate);
  if (orientation != 1 && orientation != -1) throw std::invalid_argument("orientation must be 1 or -1");
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  const auto& cond = condition_by_id(cat, condition);
  if (!cat.contains(family.empty() ? cond.family : family)) throw std::invalid_argument("unknown family " + family);
  if (!partner_family.empty() && !cat.contains(partner_family))
    throw std::invalid_argument("unknown family " + partner_family);
  if (curve.has_value() != base_point.has_value())
    throw std::invalid_argument("curve and base_point go together");
  if (base_point && !curve->on_curve(*base_point)) throw std::invalid_argument("base point not on the curve");
  ScanMap map(*this, cat);
  for (const Point& T : {Point::infinity(), generators[0], generators[1]}) {
    auto v = map(T);
    if (!v) continue;
    if (curve && v->second && !curve->on_curve({v->first, *v->second}))
      throw std::invalid_argument("scan map leaves the curve");
  }
  if (base_point) {
    auto o = map(Point::infinity());
    if (!o || o->first != base_point->r || o->second != base_point->s)
      throw std::invalid_argument("scan map does not send O to the base point");
  }
}

std::vector<std::string> builtin_scan_names() { return {"first", "second", "third"}; }

ScanSpec builtin_scan(const std::string& name) {
  ScanSpec s;
  s.name = name;
  if (name == "first") {
    s.parametrizer = WeierstrassCurve(1, 1, 1, -1595, -4768);
    s.generators = {Point{make_rational(-57, 4), make_rational(1043, 8)}, Point{42, -89}};
    s.torsion = {Point{-3, 1}, Point{-39, 19}};
    s.condition = "R3-8-1";
    s.family = "DP8R2-1";
    s.curve = BiquadraticCurve::parse("r^2*s^2 - 29*r^2 + 10*r*s^2 - 120*r*s + 290*r - 11*s^2 + 319");
    s.base_point = RS{-1, 0};
    s.partner_family = "DP8R2-2";
    s.symmetry = Symmetry{1, -1, false};
  } else if (name == "second") {
    s.parametrizer = WeierstrassCurve(0, 0, 0, -105987, 11743634);
    s.generators = {Point{-77, -4410}, Point{805, 21168}};
    s.condition = "R3-8-3";
    s.family = "DP8R2-2";
    s.symmetry = Symmetry{-1, 0, false};
  } else if (name == "third") {
    s.parametrizer = WeierstrassCurve(0, -1, 0, -456, 3456);
    s.generators = {Point{20, -44}, Point{make_rational(4, 9), make_rational(-1540, 27)}};
    s.condition = "R3-26-4";
    s.family = "DP26R2-3";
    s.curve = BiquadraticCurve::parse("r^2*s - 24*r*s^2 + 168*r*s - 336*r + 360*s^2 - 2700*s + 5040");
    s.base_point = RS{0, 4};
    s.partner_family = "DP26R2-1";
    s.symmetry = Symmetry{1, 1, false};
  } else {
    throw std::invalid_argument("unknown scan " + name);
  }
  if (s.torsion.empty()) s.torsion = torsion_subgroup(s.parametrizer).generators;
  s.budget.time_limit = std::chrono::milliseconds(0);
  return s;
}

// ---------- map ----------

namespace {

QuarticModel scan_quartic(const ScanSpec& spec, const Catalog& cat, Rational& mu) {
  const auto& cond = condition_by_id(cat, spec.condition);
  mu = 1;
  if (!spec.curve) return QuarticModel{cond.quartic, std::pair{cond.u0, cond.t0}};
  Poly D = spec.curve->discriminant(Var::S);
  if (D.degree() != cond.quartic.degree()) throw std::invalid_argument("curve discriminant does not match the condition");
  Rational lambda = D.lead() / cond.quartic.lead();
  if (D != cond.quartic.scaled(lambda)) throw std::invalid_argument("curve discriminant does not match the condition");
  auto m = rational_sqrt(lambda);
  if (!m) throw std::invalid_argument("curve discriminant is not a square multiple of the condition");
  mu = *m;
  auto q = spec.curve->in(Var::S);
  const RS& b = *spec.base_point;
  Rational t0 = (2 * q[2].eval(b.r) * b.s + q[1].eval(b.r)) / mu;
  return QuarticModel{cond.quartic, std::pair{b.r, t0}};
}

}  // namespace

ScanMap::ScanMap(const ScanSpec& spec, const Catalog& cat)
    : spec_(spec), J_(quartic_jacobian(scan_quartic(spec, cat, mu_))) {
  auto iso = isomorphism(spec.parametrizer, J_.curve());
  if (!iso) throw std::invalid_argument("parametrizer is not isomorphic to the Jacobian of the condition");
  to_jacobian_ = *iso;
}

std::optional<std::pair<Rational, std::optional<Rational>>> ScanMap::operator()(const Point& T) const {
  auto ut = J_.inverse(to_jacobian_.map(T));
  if (!ut) return std::nullopt;
  std::optional<Rational> partner;
  if (spec_.curve) {
    auto q = spec_.curve->in(Var::S);
    Rational a = q[2].eval(ut->first);
    if (a != 0) partner = (mu_ * ut->second - q[1].eval(ut->first)) / (2 * a);
  }
  return std::pair{ut->first, partner};
}

Point lattice_point(const ScanSpec& spec, int n, int m) {
  const auto& E = spec.parametrizer;
  Point T = E.add(E.mul(spec.generators[0], n), E.mul(spec.generators[1], m));
  if (spec.orientation < 0) T = E.neg(T);
  if (spec.translate) T = E.add(T, *spec.translate);
  return T;
}

// ---------- scan ----------

const ScanCell* ScanGrid::find(int n, int m) const {
  auto it = std::lower_bound(cells.begin(), cells.end(), std::pair{n, m},
                             [](const ScanCell& c, const std::pair<int, int>& k) { return std::pair{c.n, c.m} < k; });
  if (it == cells.end() || it->n != n || it->m != m) return nullptr;
  return &*it;
}

ScanCounts ScanGrid::tally() const {
  ScanCounts c;
  for (const auto& cell : cells) {
    if (cell.skipped)
      ++c.skipped;
    else if (!cell.complete)
      ++c.incomplete;
    else
      ++(cell.root == 1 ? c.plus : c.minus);
  }
  return c;
}

std::string ScanGrid::to_csv() const {
  std::ostringstream os;
  os << "n,m,root,complete,skipped\n";
  for (const auto& c : cells)
    os << c.n << ',' << c.m << ',' << c.root << ',' << (c.complete ? 1 : 0) << ',' << (c.skipped ? 1 : 0) << '\n';
  return os.str();
}

nlohmann::json ScanGrid::to_json(bool with_curves) const {
  nlohmann::json j;
  j["name"] = name;
  j["counts"] = {{"plus", counts.plus}, {"minus", counts.minus}, {"incomplete", counts.incomplete},
                 {"skipped", counts.skipped}};
  j["cells"] = nlohmann::json::array();
  for (const auto& c : cells) {
    nlohmann::json k{{"n", c.n}, {"m", c.m}, {"root", c.root}, {"complete", c.complete}, {"skipped", c.skipped}};
    if (!c.note.empty()) k["note"] = c.note;
    if (c.u) k["u"] = to_string(*c.u);
    if (c.partner) k["partner"] = to_string(*c.partner);
    if (!c.torsion.empty()) k["torsion"] = c.torsion;
    if (c.partner_isomorphic) k["partner_isomorphic"] = *c.partner_isomorphic;
    if (!c.unresolved.empty()) {
      k["unresolved"] = nlohmann::json::array();
      for (const auto& p : c.unresolved) k["unresolved"].push_back(to_string(p));
    }
    if (with_curves && c.curve) k["curve"] = curve_json(*c.curve);
    j["cells"].push_back(k);
  }
  return j;
}

ScanGrid lattice_scan(const ScanSpec& spec, const Catalog& cat) {
  spec.validate(cat);
  const auto& cond = condition_by_id(cat, spec.condition);
  const CurveFamily& F = cat.family(spec.family.empty() ? cond.family : spec.family);
  const CurveFamily* partner = spec.partner_family.empty() ? nullptr : &cat.family(spec.partner_family);
  ScanMap map(spec, cat);

  ScanGrid grid;
  grid.name = spec.name;
  for (int n = -spec.radius; n <= spec.radius; ++n)
    for (int m = -spec.radius; m <= spec.radius; ++m) {
      ScanCell c;
      c.n = n;
      c.m = m;
      grid.cells.push_back(c);
    }

  auto work = [&](ScanCell& c) {
    Point T = lattice_point(spec, c.n, c.m);
    auto v = map(T);
    if (!v) {
      c.skipped = true;
      c.note = "map undefined";
      return;
    }
    c.u = v->first;
    c.partner = v->second;
    if (spec.curve && c.partner && !spec.curve->on_curve({*c.u, *c.partner}))
      throw std::logic_error("scan: mapped point is not on the curve");
    std::optional<Specialization> spec_u;
    try {
      spec_u = specialize(F, *c.u);
    } catch (const BadSpecialization&) {
      c.skipped = true;
      c.note = "degenerate parameter";
      return;
    }
    const Specialization& S = *spec_u;
    c.torsion = torsion_subgroup(S.curve).label();
    if (c.torsion != F.torsion) c.note = "torsion " + c.torsion;
    auto hints = discriminant_hints(F, *c.u);
    try {
      GlobalReduction G = global_reduction(S.curve, spec.budget, hints);
      c.curve = G.minimal;
      RootNumber R = root_number(G);
      c.complete = R.complete;
      c.root = R.complete ? R.value : 0;
      c.unresolved = R.unresolved;
      if (G.unfactored != 1) c.unresolved.push_back(G.unfactored);
    } catch (const UnfactoredError& e) {
      c.complete = false;
      c.note = "unfactored";
    }
    if (partner && c.partner) {
      try {
        c.partner_isomorphic = isomorphic_over_q(S.curve, specialize(*partner, *c.partner).curve);
      } catch (const BadSpecialization&) {
      }
    }
  };

  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < std::min<std::size_t>(threads, grid.cells.size()); ++k)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < grid.cells.size();) {
        try {
          work(grid.cells[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  grid.counts = grid.tally();
  return grid;
}

// ---------- audit ----------

nlohmann::json AuditReport::to_json() const {
  nlohmann::json j{{"symmetry", symmetry.to_string()},
                   {"pairs", pairs},
                   {"isomorphism_checked", isomorphism_checked},
                   {"isomorphism_failures", isomorphism_failures}};
  j["violations"] = nlohmann::json::array();
  for (const auto& [a, b] : violations) j["violations"].push_back({{a.first, a.second}, {b.first, b.second}});
  return j;
}

AuditReport symmetry_audit(const ScanGrid& grid, const Symmetry& sym, int isomorphism_samples) {
  AuditReport rep;
  rep.symmetry = sym;
  for (const auto& c : grid.cells) {
    auto [n2, m2] = sym.apply(c.n, c.m);
    if (std::pair{n2, m2} < std::pair{c.n, c.m}) continue;
    const ScanCell* d = grid.find(n2, m2);
    if (!d) continue;
    bool self = d == &c;
    if (!self && c.curve && d->curve && rep.isomorphism_checked < isomorphism_samples) {
      ++rep.isomorphism_checked;
      if (!isomorphic_over_q(*c.curve, *d->curve)) ++rep.isomorphism_failures;
    }
    if (self || !c.complete || !d->complete) continue;
    ++rep.pairs;
    if (c.root != d->root) rep.violations.push_back({{c.n, c.m}, {d->n, d->m}});
  }
  return rep;
}

}  // namespace ecfam
