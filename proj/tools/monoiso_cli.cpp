// monoiso: batch front end. Every subcommand prints one JSON document (or a
// CSV table) that embeds the resolved configuration.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "monoiso/integrate.hpp"
#include "monoiso/isoperimetry.hpp"
#include "monoiso/limits.hpp"
#include "monoiso/shapes.hpp"
#include "monoiso/sobolev.hpp"
#include "monoiso/weight.hpp"

using namespace monoiso;
using nlohmann::json;

namespace {

constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;  ///< optional leading text column
};

struct Output {
  json doc;
  std::optional<Table> table;
  bool failed = false;
};

struct Options {
  std::string out;
  std::string format = "json";
  int nodes = 12;
  int depth = 6;
  double rel_tol = 1e-11;
  std::uint64_t seed = 0x5eed;

  int N = 0;
  std::string A, B;
  int i = 0;
  std::string shape;
  std::string family = "tball";
  double t_start = 10.0;
  double eps_start = 0.1;
  std::optional<double> ratio;
  int count = 8;
  double radius = 1.0;
  double p = 1.0;
  std::string input;
  bool tail = false;
  std::string check;
  double eps = 1e-3;
  int draws = 1000;
  int nodes_per_eps = 10;
};

QuadratureSpec quad_spec(const Options& o) {
  QuadratureSpec q;
  q.nodes_per_axis = o.nodes;
  q.max_refinement_depth = o.depth;
  q.rel_tol = o.rel_tol;
  q.validate();
  return q;
}

json base_config(const Options& o, const std::string& sub) {
  return {{"subcommand", sub},
          {"format", o.format},
          {"quadrature", {{"nodes_per_axis", o.nodes}, {"max_refinement_depth", o.depth}, {"rel_tol", o.rel_tol}}},
          {"seed", o.seed}};
}

WeightPair make_pair(const Options& o, const char* A_default = nullptr, const char* B_default = nullptr) {
  const std::string a = o.A.empty() && A_default ? A_default : o.A;
  const std::string b = o.B.empty() && B_default ? B_default : o.B;
  if (a.empty() || b.empty()) throw std::invalid_argument("--A and --B are required");
  WeightPair pair(parse_exponents(a), parse_exponents(b));
  if (o.N != 0 && o.N != pair.N)
    throw std::invalid_argument("--N " + std::to_string(o.N) + " does not match the exponent length " +
                                std::to_string(pair.N));
  return pair;
}

json pair_config(const WeightPair& pair) {
  return {{"N", pair.N}, {"A", format_exponents(pair.A)}, {"B", format_exponents(pair.B)}};
}

std::size_t index_flag(const Options& o, const WeightPair& pair, int fallback) {
  const int i = o.i != 0 ? o.i : fallback;
  if (i < 1 || i > pair.N) throw std::invalid_argument("--i must lie in 1.." + std::to_string(pair.N));
  return static_cast<std::size_t>(i - 1);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- subcommands ---------------------------------------------------------------

Output run_classify(const Options& o) {
  const WeightPair pair = make_pair(o);
  const ExistenceVerdict v = classify_existence(pair);
  Output out;
  out.doc = {{"config", base_config(o, "classify")}, {"result", to_json(v)}};
  out.doc["config"].update(pair_config(pair));
  return out;
}

Table quotient_table(const std::vector<double>& params, const std::vector<QuotientReport>& reports) {
  Table t;
  t.header = {"param", "perimeter", "perimeter_err", "volume", "volume_err", "quotient", "relerr"};
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    t.rows.push_back({params[k], r.perimeter.value, r.perimeter.abs_error_est, r.volume.value, r.volume.abs_error_est,
                      r.quotient, r.combined_rel_error});
  }
  return t;
}

Output run_quotient(const Options& o) {
  const WeightPair pair = make_pair(o);
  if (o.shape.empty()) throw std::invalid_argument("--shape is required");
  const Shape shape = parse_shape(o.shape, pair.N);
  const QuotientReport r = quotient(shape, pair, quad_spec(o));
  Output out;
  out.doc = {{"config", base_config(o, "quotient")}, {"result", to_json(r)}};
  out.doc["config"].update(pair_config(pair));
  out.doc["config"]["shape"] = o.shape;
  out.table = quotient_table({0.0}, {r});
  out.table->header.erase(out.table->header.begin());
  out.table->rows[0].erase(out.table->rows[0].begin());
  return out;
}

ExtremalFamily parse_family(const std::string& s) {
  if (s == "tball" || s == "translated-ball") return ExtremalFamily::translated_ball;
  if (s == "cone-slab") return ExtremalFamily::cone_slab;
  throw std::invalid_argument("unknown family '" + s + "' (expected tball or cone-slab)");
}

Output run_sweep(const Options& o) {
  const WeightPair pair = make_pair(o);
  FamilyTemplate fam;
  fam.family = parse_family(o.family);
  fam.N = pair.N;
  fam.axis = index_flag(o, pair, 1);
  fam.radius = o.radius;
  SweepSchedule sched;
  sched.parameter = fam.parameter();
  const bool tball = fam.family == ExtremalFamily::translated_ball;
  sched.start = tball ? o.t_start : o.eps_start;
  sched.ratio = o.ratio.value_or(tball ? 2.0 : 0.5);
  sched.count = o.count;
  sched.validate();

  const QuadratureSpec q = quad_spec(o);
  const auto reports = sweep(fam, sched, pair, q);
  const auto params = sched.values();
  const PowerLawFit all = fit_power_law(reports, sched);
  const PowerLawFit tail = fit_tail(reports, sched);
  const DominanceReport dom = dominance_report(reports, sched);

  json rows = json::array();
  for (std::size_t k = 0; k < reports.size(); ++k) {
    json r = to_json(reports[k]);
    r["param"] = params[k];
    r["contaminated"] = static_cast<bool>(dom.contaminated[k]);
    rows.push_back(std::move(r));
  }
  bool tail_decreasing = true;
  for (std::size_t k = params.size() - params.size() / 2; k < params.size(); ++k)
    if (k > 0 && !(reports[k].quotient < reports[k - 1].quotient)) tail_decreasing = false;

  Output out;
  out.doc["config"] = base_config(o, "sweep");
  out.doc["config"].update(pair_config(pair));
  out.doc["config"]["family"] = tball ? "tball" : "cone-slab";
  out.doc["config"]["axis"] = fam.axis + 1;
  out.doc["config"]["radius"] = fam.radius;
  out.doc["config"]["schedule"] = {
      {"parameter", tball ? "t" : "eps"}, {"start", sched.start}, {"ratio", sched.ratio}, {"count", sched.count}};
  out.doc["result"] = {{"rows", rows},
                       {"fit_all", to_json(all)},
                       {"fit_tail", to_json(tail)},
                       {"predicted_exponent", predicted_exponent(pair, fam.axis, fam.family)},
                       {"tail_strictly_decreasing", tail_decreasing},
                       {"dominant_piece", dom.dominant},
                       {"leading_term_fit", to_json(dom.leading)},
                       {"tail_clean", dom.tail_clean}};
  out.table = quotient_table(params, reports);
  return out;
}

// Reads (param, quotient) columns from a CSV written by `sweep --format csv`.
void read_sweep_csv(const std::string& path, std::vector<double>& x, std::vector<double>& y) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open --in file " + path);
  std::string line;
  std::vector<std::string> header;
  int px = -1, py = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (header.empty()) {
      header = cells;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (cells[k] == "param") px = static_cast<int>(k);
        if (cells[k] == "quotient") py = static_cast<int>(k);
      }
      if (px < 0 || py < 0) throw std::invalid_argument("--in file lacks param/quotient columns");
      continue;
    }
    if (static_cast<int>(cells.size()) <= std::max(px, py)) throw std::invalid_argument("short row in " + path);
    x.push_back(std::stod(cells[px]));
    y.push_back(std::stod(cells[py]));
  }
}

Output run_fit(const Options& o) {
  if (o.input.empty()) throw std::invalid_argument("--in is required");
  std::vector<double> x, y;
  read_sweep_csv(o.input, x, y);
  std::size_t s = 0;
  if (o.tail && x.size() >= 6) s = x.size() - x.size() / 2;
  const PowerLawFit f = fit_power_law(std::span(x).subspan(s), std::span(y).subspan(s));
  Output out;
  out.doc["config"] = base_config(o, "fit");
  out.doc["config"]["input"] = o.input;
  out.doc["config"]["tail"] = o.tail;
  out.doc["result"] = to_json(f);
  out.table = Table{{"exponent", "stderr", "intercept", "r_squared", "points"},
                    {{f.exponent, f.stderr_exponent, f.intercept, f.r_squared, static_cast<double>(f.points)}}};
  return out;
}

Output run_sobolev(const Options& o) {
  if (o.A.empty()) throw std::invalid_argument("--A is required");
  const ExponentVector A = parse_exponents(o.A);
  if (o.N != 0 && static_cast<std::size_t>(o.N) != A.size()) throw std::invalid_argument("--N does not match --A");
  const double c1 = best_constant_p1(A);
  const double cp = o.p == 1.0 ? c1 : best_constant(o.p, A);
  Output out;
  out.doc["config"] = base_config(o, "sobolev-const");
  out.doc["config"]["A"] = format_exponents(A);
  out.doc["config"]["p"] = o.p;
  out.doc["result"] = {{"C_p", cp},
                       {"C_1", c1},
                       {"ball_constant", ball_constant(A)},
                       {"homogeneous_dimension", A.size() + A.sum()},
                       {"abs_error_est", 0.0}};
  out.table = Table{{"p", "C_p", "C_1", "ball_constant", "abs_error_est"}, {{o.p, cp, c1, ball_constant(A), 0.0}}};
  return out;
}

// ---- verify --------------------------------------------------------------------

json check(const std::string& name, double measured, double predicted, double tol, bool pass) {
  return {{"name", name}, {"measured", measured}, {"predicted", predicted}, {"tolerance", tol}, {"pass", pass}};
}

Output finish_verify(const Options& o, json config, json checks, json detail = json::object()) {
  Output out;
  bool ok = true;
  for (const auto& c : checks) ok = ok && c["pass"].get<bool>();
  out.doc["config"] = base_config(o, "verify");
  out.doc["config"].update(config);
  out.doc["config"]["check"] = o.check;
  out.doc["result"] = {{"pass", ok}, {"checks", checks}, {"detail", detail}};
  out.failed = !ok;
  Table t{{"name", "measured", "predicted", "tolerance", "pass"}, {}, {}};
  for (const auto& c : checks) {
    t.labels.push_back(c["name"].get<std::string>());
    t.rows.push_back({c["measured"].get<double>(), c["predicted"].get<double>(), c["tolerance"].get<double>(),
                      c["pass"].get<bool>() ? 1.0 : 0.0});
  }
  out.table = t;
  return out;
}

Output verify_rate(const Options& o, ExtremalFamily family) {
  const bool tball = family == ExtremalFamily::translated_ball;
  const WeightPair pair = tball ? make_pair(o, "0,0", "1,0") : make_pair(o, "2,0", "0,0");
  const ExistenceVerdict v = classify_existence(pair);
  const std::size_t i = index_flag(o, pair, v.witness_index ? static_cast<int>(*v.witness_index) + 1 : 1);
  FamilyTemplate fam{family, pair.N, i, o.radius};
  const SweepSchedule sched = tball ? SweepSchedule::spanning(SweepParam::t, 10.0, 1e4, 12)
                                    : SweepSchedule::spanning(SweepParam::eps, 1e-1, 1e-4, 10);
  const QuadratureSpec q = quad_spec(o);
  const auto reports = sweep(fam, sched, pair, q);
  const double predicted = predicted_exponent(pair, i, family);
  const double tol = 0.05;
  json checks = json::array();
  json detail;
  if (tball) {
    const PowerLawFit f = fit_tail(reports, sched);
    checks.push_back(check("tail_exponent", f.exponent, predicted, tol, std::fabs(f.exponent - predicted) <= tol));
    detail["fit_tail"] = to_json(f);
  } else {
    const DominanceReport d = dominance_report(reports, sched);
    bool decreasing = true;
    for (std::size_t k = reports.size() - reports.size() / 2; k < reports.size(); ++k)
      decreasing = decreasing && reports[k].quotient < reports[k - 1].quotient;
    checks.push_back(check("tail_strictly_decreasing", decreasing ? 1.0 : 0.0, 1.0, 0.0, decreasing));
    checks.push_back(check("leading_term_exponent", d.leading.exponent, predicted, tol,
                           std::fabs(d.leading.exponent - predicted) <= tol));
    detail["dominant_piece"] = d.dominant;
    detail["tail_clean"] = d.tail_clean;
    detail["leading_term_fit"] = to_json(d.leading);
    detail["fit_tail_quotient"] = to_json(fit_tail(reports, sched));
  }
  json rows = json::array();
  const auto params = sched.values();
  for (std::size_t k = 0; k < reports.size(); ++k)
    rows.push_back({{"param", params[k]},
                    {"quotient", reports[k].quotient},
                    {"relerr", reports[k].combined_rel_error}});
  detail["rows"] = rows;
  json cfg = pair_config(pair);
  cfg["i"] = i + 1;
  return finish_verify(o, cfg, checks, detail);
}

Output verify_lemma33(const Options& o) {
  const WeightPair pair = make_pair(o, "1,0", "1,1");
  const Shape shape = Shape::orthant_ball(pair.N, o.radius);
  const std::vector<double> eps{0.1, 0.05, 0.025};
  const MollificationStudy s = mollification_study(shape, pair, eps, o.nodes_per_eps, quad_spec(o));
  const double min_rate = 0.9;
  json checks = json::array();
  checks.push_back(check("volume_rate", s.volume_rate.exponent, min_rate, 0.0, s.volume_rate.exponent >= min_rate));
  checks.push_back(
      check("perimeter_rate", s.perimeter_rate.exponent, min_rate, 0.0, s.perimeter_rate.exponent >= min_rate));
  json cfg = pair_config(pair);
  cfg["shape"] = shape.to_json();
  cfg["nodes_per_eps"] = o.nodes_per_eps;
  return finish_verify(o, cfg, checks, to_json(s));
}

Output verify_lemma34(const Options& o) {
  const WeightPair pair = make_pair(o, "0,0", "0,0");
  const Shape shape = Shape::orthant_ball(pair.N, o.radius);
  const double eps = o.eps_start;
  const GridFunction u = mollified_indicator(shape, MollifierSpec{eps}, mollifier_grid(shape, eps, o.nodes_per_eps));
  const CoareaResult c = coarea_lower_bound_check(u, pair, 64);
  const double fq = functional_quotient(u, pair);
  json checks = json::array();
  checks.push_back(check("coarea_chain", c.gradient_integral, c.norm_term, 1e-2, c.holds));
  json detail = {{"gradient_integral", c.gradient_integral}, {"level_integral", c.level_integral},
                 {"norm_term", c.norm_term},                 {"c_hat", c.c_hat},
                 {"levels", c.levels},                       {"functional_quotient", fq}};
  json cfg = pair_config(pair);
  cfg["shape"] = shape.to_json();
  cfg["epsilon"] = eps;
  cfg["nodes_per_eps"] = o.nodes_per_eps;
  return finish_verify(o, cfg, checks, detail);
}

Output verify_thm12(const Options& o) {
  const WeightPair pair = make_pair(o, "1,0", "0,0");
  const std::size_t i = index_flag(o, pair, 1);
  const LimitEstimate l = cone_slab_ratio_limit(pair, i, o.eps, quad_spec(o));
  const double tol = 1e-2;
  json checks = json::array();
  checks.push_back(check("extrapolated_limit", l.extrapolated, l.predicted, tol, l.rel_error <= tol));
  json cfg = pair_config(pair);
  cfg["i"] = i + 1;
  cfg["eps"] = o.eps;
  return finish_verify(o, cfg, checks, to_json(l));
}

Output verify_thmA(const Options& o) {
  const WeightPair pair = make_pair(o, "1,1", "1,1");
  const ExponentVector& A = pair.A;
  const QuadratureSpec q = quad_spec(o);
  json checks = json::array();
  const double c1 = best_constant_p1(A), bc = ball_constant(A);
  checks.push_back(check("C1_equals_ball_constant", c1, bc, 1e-10, std::fabs(c1 - bc) <= 1e-10 * bc));
  const Shape ob = Shape::orthant_ball(pair.N, 1.0);
  const IntegralEstimate mass = weighted_volume(ob, A, q);
  const double closed = closed_form_orthant_ball_mass(A);
  checks.push_back(
      check("orthant_ball_mass", mass.value, closed, 1e-6, std::fabs(mass.value - closed) <= 1e-6 * closed));
  json detail = {{"mass_abs_error_est", mass.abs_error_est}};
  bool same = true;
  for (std::size_t k = 0; k < A.size(); ++k) same = same && A[k] == pair.B[k];
  if (same) {
    const QuotientReport r = quotient(ob, pair, q);
    // The orthant ball is the cone ball only when every a_k > 0; otherwise it
    // is a competitor whose quotient must not fall below the ball constant.
    const bool full = A.positive_count() == pair.N;
    const double tol = std::max(1e-3, r.tolerance() * bc);
    const bool pass = full ? std::fabs(r.quotient - bc) <= tol : r.quotient >= bc - tol;
    checks.push_back(check(full ? "ball_quotient" : "orthant_ball_not_below", r.quotient, bc, tol, pass));
    detail["quotient"] = to_json(r);
  }
  return finish_verify(o, pair_config(pair), checks, detail);
}

Output verify_ibp(const Options& o) {
  const double a = o.A.empty() ? 1.0 : parse_exponents(o.A)[0];
  if (!(a > 0.0)) throw std::invalid_argument("verify ibp: --A must be a single positive exponent");
  const double b = a - 1.0;
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int d = 0; d < o.draws; ++d) {
    const int n = 3 + static_cast<int>(unif(rng) * 12);
    const double lo = -0.1 - 2.0 * unif(rng), hi = 0.1 + 2.0 * unif(rng);
    std::vector<double> y(n), v(n, 0.0);
    for (int k = 0; k < n; ++k) y[k] = lo + (hi - lo) * k / (n - 1);
    for (int k = 1; k + 1 < n; ++k) v[k] = 2.0 * unif(rng);
    const IbpResult r = ibp_inequality_check(y, v, a, b);
    if (!r.holds) ++failures;
    if (r.rhs > 0.0) worst = std::min(worst, r.rhs / r.lhs);
  }
  const std::vector<double> ty{-1.0, 0.0, 1.0}, tv{0.0, 1.0, 0.0};
  const IbpResult tent = ibp_inequality_check(ty, tv, a, b);
  const double tent_gap = std::fabs(tent.lhs - tent.rhs) / tent.rhs;
  json checks = json::array();
  checks.push_back(check("random_failures", failures, 0.0, 0.0, failures == 0));
  checks.push_back(check("tent_equality_relgap", tent_gap, 0.0, 1e-8, a == 1.0 ? tent_gap <= 1e-8 : true));
  json cfg = {{"a", a}, {"b", b}, {"draws", o.draws}, {"seed", o.seed}};
  json detail = {{"min_rhs_over_lhs", worst}, {"tent_lhs", tent.lhs}, {"tent_rhs", tent.rhs}};
  return finish_verify(o, cfg, checks, detail);
}

Output run_verify(const Options& o) {
  if (o.check == "lemma31") return verify_rate(o, ExtremalFamily::translated_ball);
  if (o.check == "lemma32") return verify_rate(o, ExtremalFamily::cone_slab);
  if (o.check == "lemma33") return verify_lemma33(o);
  if (o.check == "lemma34") return verify_lemma34(o);
  if (o.check == "thm12") return verify_thm12(o);
  if (o.check == "thmA") return verify_thmA(o);
  if (o.check == "ibp") return verify_ibp(o);
  throw std::invalid_argument("unknown check '" + o.check + "'");
}

// ---- output --------------------------------------------------------------------

std::string render(const Output& out, const std::string& format) {
  if (format == "json" || !out.table) return out.doc.dump(2) + "\n";
  std::ostringstream s;
  s << "# config " << out.doc["config"].dump() << "\n";
  const auto& t = *out.table;
  for (std::size_t k = 0; k < t.header.size(); ++k) s << (k ? "," : "") << t.header[k];
  s << "\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    if (!t.labels.empty()) s << t.labels[r] << ",";
    for (std::size_t k = 0; k < row.size(); ++k) s << (k ? "," : "") << fmt(row[k]);
    s << "\n";
  }
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted isoperimetric quotients, limits and Sobolev constants for monomial weights"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  o.depth = QuadratureSpec::defaults().max_refinement_depth;

  app.add_option("--out", o.out, "output path, or json/csv to pick the format");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--nodes", o.nodes, "Gauss nodes per axis")->check(CLI::Range(2, 64));
  app.add_option("--depth", o.depth, "maximum refinement depth (default from MONOISO_QUAD_DEPTH)")
      ->check(CLI::Range(0, 30));
  app.add_option("--rel-tol", o.rel_tol, "quadrature relative tolerance");
  app.add_option("--seed", o.seed, "random seed");

  auto pair_flags = [&](CLI::App* c) {
    c->add_option("--N", o.N, "dimension (inferred from --A when omitted)");
    c->add_option("--A", o.A, "perimeter exponents, comma separated");
    c->add_option("--B", o.B, "volume exponents, comma separated");
  };

  auto* classify = app.add_subcommand("classify", "existence verdict for (A, B)");
  pair_flags(classify);

  auto* quot = app.add_subcommand("quotient", "P_A / m_B^sigma of one shape");
  pair_flags(quot);
  quot->add_option("--shape", o.shape, "e.g. \"cone-slab --axis 1 --eps 1e-3 --R 1\"")->required();

  auto* sw = app.add_subcommand("sweep", "quotients along an extremal family");
  pair_flags(sw);
  sw->add_option("--family", o.family, "tball or cone-slab");
  sw->add_option("--i", o.i, "1-based axis of the family");
  sw->add_option("--t-start", o.t_start, "first t (tball)");
  sw->add_option("--eps-start", o.eps_start, "first eps (cone-slab)");
  sw->add_option("--ratio", o.ratio, "geometric ratio (default 2 for tball, 0.5 for cone-slab)");
  sw->add_option("--count", o.count, "number of points (>= 5)");
  sw->add_option("--radius", o.radius, "r for tball, R for cone-slab");

  auto* fit = app.add_subcommand("fit", "power-law fit of a sweep CSV");
  fit->add_option("--in", o.input, "CSV written by sweep --format csv")->required();
  fit->add_flag("--tail", o.tail, "fit the last half only");

  auto* sob = app.add_subcommand("sobolev-const", "best Sobolev constant");
  sob->add_option("--N", o.N);
  sob->add_option("--A", o.A, "exponents")->required();
  sob->add_option("--p", o.p, "1 <= p < N + a");

  auto* ver = app.add_subcommand("verify", "run a named check; exit 1 when it fails");
  pair_flags(ver);
  ver->add_option("check", o.check, "lemma31, lemma32, lemma33, lemma34, thm12, thmA or ibp")
      ->required()
      ->check(CLI::IsMember({"lemma31", "lemma32", "lemma33", "lemma34", "thm12", "thmA", "ibp"}));
  ver->add_option("--i", o.i, "1-based index");
  ver->add_option("--eps", o.eps, "epsilon for thm12");
  ver->add_option("--eps-start", o.eps_start, "mollifier epsilon for lemma34");
  ver->add_option("--radius", o.radius, "shape radius");
  ver->add_option("--draws", o.draws, "random draws for ibp");
  ver->add_option("--nodes-per-eps", o.nodes_per_eps, "grid resolution for the mollifier checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (o.out == "json" || o.out == "csv") {
    o.format = o.out;
    o.out.clear();
  }

  Output out;
  try {
    if (classify->parsed()) out = run_classify(o);
    else if (quot->parsed()) out = run_quotient(o);
    else if (sw->parsed()) out = run_sweep(o);
    else if (fit->parsed()) out = run_fit(o);
    else if (sob->parsed()) out = run_sobolev(o);
    else out = run_verify(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }

  const std::string text = render(out, o.format);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::trunc);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return kExitNumerical;
    }
    f << text;
  }
  return out.failed ? kExitFailedCheck : 0;
}
