#include "jordan/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "jordan/io.hpp"

namespace jordan::cli {

namespace {

using io::Json;
using io::number;

struct Report {
  Json result = Json::object();
  Json checks = Json::array();
  Json tolerances = Json::object();
  bool passed = true;

  void check(const std::string& name, bool ok, double value, double threshold) {
    checks.push_back({{"name", name}, {"passed", ok}, {"value", number(value)}, {"threshold", number(threshold)}});
    passed = passed && ok;
  }
  void check(const std::string& name, bool ok) {
    checks.push_back({{"name", name}, {"passed", ok}});
    passed = passed && ok;
  }
  void error(const std::string& what) {
    result["error"] = what;
    check("completed", false);
  }
};

using Handler = std::function<void(const RunConfig&, const Json&, Report&)>;

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

const Json& need(const Json& input, const char* key) {
  if (!input.is_object() || !input.contains(key))
    throw SchemaError(std::string("input must be an object with field '") + key + "'");
  return input[key];
}

FdAlgebra algebra_arg(const RunConfig& c, const FdAlgebra& fallback) {
  if (c.dims.empty()) return fallback;
  try {
    return FdAlgebra(c.dims.front());
  } catch (const std::exception& e) {
    throw SchemaError(std::string("--dims: ") + e.what());
  }
}

double tol_or(const RunConfig& c, double fallback) { return c.tol.value_or(fallback); }

Complex eval_scalar(const JSRep& j, const AlgElement& a, const AlgElement& b) { return evaluate(j, {a, b})(0, 0); }

std::vector<AlgElement> random_args(const JSRep& j, Rng& rng) {
  std::vector<AlgElement> args;
  for (const auto& alg : j.algebras()) args.push_back(AlgElement::random_unit(alg, rng));
  return args;
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_norm(const RunConfig& c, const Json& input, Report& r) {
  r.tolerances["ascent"] = 1e-12;
  r.tolerances["max_sweeps"] = 500;
  if (input.is_object() && input.contains("map")) {
    const HilbertMap f = io::map_from_json(input["map"]);
    const NormEstimate e = hilbertmap_norm(f, c.restarts, c.seed);
    r.result["kind"] = "map";
    r.result["estimate"] = io::to_json(e);
    r.check("converged", e.converged);
    return;
  }
  const BilinearForm b = io::form_from_json(need(input, "form"));
  const NormEstimate e = form_norm(b, c.restarts, c.seed);
  r.result["kind"] = "bilinear";
  r.result["estimate"] = io::to_json(e);
  r.check("converged", e.converged);
}

void cmd_cb_example(const RunConfig& c, const Json&, Report& r) {
  const int n = c.n.value_or(8);
  if (n < 1 || n > 64) throw SchemaError("--n must lie in 1..64");
  const double norm_tol = 1e-10, entry_tol = tol_or(c, 1e-12);
  r.tolerances["norm"] = norm_tol;
  r.tolerances["entries"] = entry_tol;
  Json entries = Json::array();
  for (int k = 1; k <= n; ++k) {
    const CbExample ex = cb_example(k);
    ComplexMatrix target = ComplexMatrix::Zero(k, k);
    target(0, 0) = static_cast<double>(k);
    double integrality = 0.0;
    for (Eigen::Index i = 0; i < ex.amplified.size(); ++i) {
      const Complex z = ex.amplified.data()[i];
      integrality = std::max({integrality, std::abs(z.real() - std::round(z.real())), std::abs(z.imag())});
    }
    const double mismatch = linalg::max_abs(ex.amplified - target);
    entries.push_back({{"n", k},
                       {"x_norm", ex.x_norm},
                       {"y_norm", ex.y_norm},
                       {"value_11", io::to_json(ex.amplified(0, 0))},
                       {"amplified_norm", linalg::op_norm(ex.amplified)},
                       {"integrality", integrality},
                       {"mismatch", mismatch}});
    const std::string tag = "n=" + std::to_string(k);
    r.check(tag + " x_norm", std::abs(ex.x_norm - 1.0) <= norm_tol, ex.x_norm, norm_tol);
    r.check(tag + " y_norm", std::abs(ex.y_norm - 1.0) <= norm_tol, ex.y_norm, norm_tol);
    r.check(tag + " amplified", mismatch <= entry_tol && integrality <= entry_tol, mismatch, entry_tol);
  }
  r.result["form_norm"] = 1.0;
  r.result["entries"] = std::move(entries);
}

void cmd_gns(const RunConfig& c, const Json& input, Report& r) {
  State phi = input.is_object() && input.contains("state")
                  ? io::state_from_json(input["state"])
                  : [&] {
                      Rng rng(c.seed);
                      return State::random(algebra_arg(c, FdAlgebra::full(2)), rng);
                    }();
  const double tol = tol_or(c, 1e-9);
  const int trials = c.n.value_or(100);
  r.tolerances["identities"] = tol;
  r.tolerances["kernel_cutoff"] = GnsOptions{}.kernel_cutoff;
  const GnsData g = gns_construct(phi);
  const GnsResidual res = verify_gns(g, trials, c.seed);
  r.result["gns"] = io::to_json(g);
  r.result["trials"] = trials;
  r.result["residuals"] = io::to_json(res);
  r.check("pi_identity", res.pi_identity <= tol, res.pi_identity, tol);
  r.check("rho_identity", res.rho_identity <= tol, res.rho_identity, tol);
  r.check("conjugation_identity", res.conjugation_identity <= tol, res.conjugation_identity, tol);
  r.check("embed_identity", res.embed_identity <= tol, res.embed_identity, tol);
  r.check("module_identity", res.module_identity <= tol, res.module_identity, tol);
  r.check("pi_multiplicativity", res.pi_multiplicativity <= tol, res.pi_multiplicativity, tol);
  r.check("rho_anti_multiplicativity", res.rho_anti_multiplicativity <= tol, res.rho_anti_multiplicativity, tol);
}

void cmd_js_validate(const RunConfig& c, const Json& input, Report& r) {
  const JSRep j = io::jsrep_from_json(need(input, "jsrep"));
  r.tolerances["structure"] = ValidationReport::kTolerance;
  const ValidationReport v = validate(j, 8, c.seed);
  r.result["validation"] = io::to_json(v);
  r.result["bound"] = bound(j);
  r.check("shape_chain", v.shape_chain);
  r.check("multiplicativity", v.multiplicativity <= ValidationReport::kTolerance, v.multiplicativity,
          ValidationReport::kTolerance);
  r.check("anti_multiplicativity", v.anti_multiplicativity <= ValidationReport::kTolerance, v.anti_multiplicativity,
          ValidationReport::kTolerance);
  r.check("self_adjointness", v.self_adjointness <= ValidationReport::kTolerance, v.self_adjointness,
          ValidationReport::kTolerance);
  r.check("positivity", v.positivity <= ValidationReport::kTolerance, v.positivity, ValidationReport::kTolerance);
}

void cmd_js_eval(const RunConfig& c, const Json& input, Report& r) {
  const JSRep j = io::jsrep_from_json(need(input, "jsrep"));
  const Json& args_json = need(input, "args");
  if (!args_json.is_array()) throw SchemaError("args must be an array of algebra elements");
  std::vector<AlgElement> args;
  for (const auto& a : args_json) args.push_back(io::element_from_json(a));
  if (static_cast<int>(args.size()) != j.arity()) throw SchemaError("args: need one element per slot");
  for (int i = 0; i < j.arity(); ++i)
    if (!(args[static_cast<std::size_t>(i)].algebra() == j.rep(i).algebra()))
      throw SchemaError("args: element " + std::to_string(i) + " lives on the wrong algebra");
  const ComplexMatrix value = evaluate(j, args);
  r.result["value"] = io::to_json(value);
  r.result["bound"] = bound(j);
  if (input.contains("expected")) {
    const double tol = tol_or(c, 1e-10);
    r.tolerances["expected"] = tol;
    const ComplexMatrix expected = io::matrix_from_json(input["expected"]);
    if (expected.rows() != value.rows() || expected.cols() != value.cols())
      throw SchemaError("expected: shape does not match the value");
    const double res = linalg::max_abs(value - expected);
    r.check("expected", res <= tol, res, tol);
  }
}

void cmd_js_sum(const RunConfig& c, const Json& input, Report& r) {
  const JSRep first = io::jsrep_from_json(need(input, "first"));
  const JSRep second = input.contains("second") ? io::jsrep_from_json(input["second"]) : first;
  const double tol = tol_or(c, 1e-10);
  const int trials = c.n.value_or(16);
  r.tolerances["additivity"] = tol;
  r.tolerances["subadditivity"] = tol;
  const JSRep sum = direct_sum(first, second);
  Rng rng(c.seed);
  double additivity = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::vector<AlgElement> args = random_args(first, rng);
    additivity =
        std::max(additivity, linalg::max_abs(evaluate(sum, args) - evaluate(first, args) - evaluate(second, args)));
  }
  const double b1 = bound(first), b2 = bound(second), bs = bound(sum);
  r.result["sum"] = io::to_json(sum);
  r.result["bounds"] = {{"first", b1}, {"second", b2}, {"sum", bs}};
  r.result["trials"] = trials;
  r.result["additivity_residual"] = additivity;
  r.check("additivity", additivity <= tol * std::max(1.0, b1 + b2), additivity, tol);
  r.check("subadditivity", bs <= b1 + b2 + tol, bs - (b1 + b2), tol);
}

WitnessSearchOptions search_options(const RunConfig& c, double target) {
  WitnessSearchOptions o;
  o.iters = c.iters.value_or(500);
  o.seed = c.seed;
  o.target = target;
  return o;
}

void record_search(Report& r, const Json& states, double constant, int iterations, bool reached) {
  r.result["search"] = {{"states", states},
                        {"constant", number(constant)},
                        {"iterations", iterations},
                        {"reached_target", reached}};
  r.check("search reached target", reached);
}

void cmd_witness_find(const RunConfig& c, const Json& input, Report& r) {
  const double tol = tol_or(c, 1e-6);
  r.tolerances["violation"] = tol;
  r.tolerances["step"] = WitnessSearchOptions{}.step;
  r.tolerances["eigen_floor"] = WitnessSearchOptions{}.eigen_floor;
  if (input.is_object() && input.contains("map")) {
    const HilbertMap f = io::map_from_json(input["map"]);
    const double norm = hilbertmap_norm(f, c.restarts, c.seed).value;
    const LittleWitnessSearch s = find_witness_little(f, search_options(c, norm));
    r.result["norm_estimate"] = norm;
    record_search(r, io::to_json(s.states), s.constant, s.iterations, s.reached_target);
    const WitnessReport w = check_witness(f, s.states, norm, 8, c.seed);
    r.result["check"] = io::to_json(w);
    r.check("violation", w.max_violation <= tol, w.max_violation, tol);
    return;
  }
  const BilinearForm b = io::form_from_json(need(input, "form"));
  const double norm = form_norm(b, c.restarts, c.seed).value;
  const BilinearWitnessSearch s = find_witness_bilinear(b, search_options(c, norm));
  r.result["norm_estimate"] = norm;
  record_search(r, io::to_json(s.states), s.constant, s.iterations, s.reached_target);
  const WitnessReport w = check_witness(b, s.states, norm, 8, c.seed);
  r.result["check"] = io::to_json(w);
  r.check("violation", w.max_violation <= tol, w.max_violation, tol);
}

double norm_input(const Json& input, const std::function<double()>& estimate) {
  if (!input.contains("norm")) return estimate();
  if (!input["norm"].is_number()) throw SchemaError("norm must be a number");
  return input["norm"].get<double>();
}

void cmd_witness_check(const RunConfig& c, const Json& input, Report& r) {
  const double tol = tol_or(c, 1e-6);
  r.tolerances["violation"] = tol;
  WitnessReport w = [&] {
    if (input.is_object() && input.contains("map")) {
      const HilbertMap f = io::map_from_json(input["map"]);
      const LittleWitness lw = io::little_witness_from_json(need(input, "witness"));
      const double norm = norm_input(input, [&] { return hilbertmap_norm(f, c.restarts, c.seed).value; });
      return check_witness(f, lw, norm, c.restarts, c.seed);
    }
    const BilinearForm b = io::form_from_json(need(input, "form"));
    const BilinearWitness bw = io::bilinear_witness_from_json(need(input, "witness"));
    const double norm = norm_input(input, [&] { return form_norm(b, c.restarts, c.seed).value; });
    return check_witness(b, bw, norm, c.restarts, c.seed);
  }();
  r.result["check"] = io::to_json(w);
  r.check("violation", w.max_violation <= tol, w.max_violation, tol);
}

void record_factorization(const RunConfig& c, Report& r, const Factorization& f, double norm, double factor) {
  const FactorizeTolerances t;
  const double rep_tol = tol_or(c, t.reproduction);
  r.result["factorization"] = io::to_json(f);
  r.result["norm_estimate"] = norm;
  const double limit = factor * norm * (1.0 + t.norm_slack);
  r.check("reproduction", f.reproduction_residual <= rep_tol, f.reproduction_residual, rep_tol);
  r.check("bound", f.bound <= limit, f.bound, limit);
}

void factorization_tolerances(const RunConfig& c, Report& r) {
  const FactorizeTolerances t;
  r.tolerances["pinv_cutoff"] = t.pinv_cutoff;
  r.tolerances["reproduction"] = tol_or(c, t.reproduction);
  r.tolerances["norm_slack"] = t.norm_slack;
}

void cmd_factorize_little(const RunConfig& c, const Json& input, Report& r) {
  factorization_tolerances(c, r);
  const HilbertMap f = io::map_from_json(need(input, "map"));
  const double norm = norm_input(input, [&] { return hilbertmap_norm(f, c.restarts, c.seed).value; });
  LittleWitness w = input.contains("witness") ? io::little_witness_from_json(input["witness"]) : [&] {
    const LittleWitnessSearch s = find_witness_little(f, search_options(c, norm));
    record_search(r, io::to_json(s.states), s.constant, s.iterations, s.reached_target);
    return s.states;
  }();
  try {
    record_factorization(c, r, factorize_little(f, w, norm), norm, std::sqrt(2.0));
  } catch (const FactorizationError& e) {
    r.error(e.what());
  }
}

void cmd_factorize_bilinear(const RunConfig& c, const Json& input, Report& r) {
  factorization_tolerances(c, r);
  const BilinearForm b = io::form_from_json(need(input, "form"));
  const double norm = norm_input(input, [&] { return form_norm(b, c.restarts, c.seed).value; });
  BilinearWitness w = input.contains("witness") ? io::bilinear_witness_from_json(input["witness"]) : [&] {
    const BilinearWitnessSearch s = find_witness_bilinear(b, search_options(c, norm));
    record_search(r, io::to_json(s.states), s.constant, s.iterations, s.reached_target);
    return s.states;
  }();
  try {
    record_factorization(c, r, factorize_bilinear(b, w, norm), norm, 2.0);
  } catch (const FactorizationError& e) {
    r.error(e.what());
  }
}

void cmd_split4(const RunConfig& c, const Json& input, Report& r) {
  const JSRep j = io::jsrep_from_json(need(input, "jsrep"));
  if (j.arity() != 2 || j.target_dim() != 1 || j.source_dim() != 1)
    throw SchemaError("split4 needs a bilinear form representation");
  const double tol = tol_or(c, 1e-10);
  r.tolerances["sum"] = tol;
  const std::array<JSRep, 4> pieces = split_four(j);
  const std::array<const char*, 4> names{"rep_rep", "anti_anti", "rep_anti", "anti_rep"};
  Json out = Json::array();
  for (std::size_t i = 0; i < 4; ++i) out.push_back({{"name", names[i]}, {"rep", io::to_json(pieces[i])}, {"bound", bound(pieces[i])}});
  double worst = 0.0;
  const FdAlgebra& a = j.rep(0).algebra();
  const FdAlgebra& b = j.rep(1).algebra();
  for (int p = 0; p < a.dim(); ++p)
    for (int q = 0; q < b.dim(); ++q) {
      const AlgElement ep = AlgElement::unit(a, p), eq = AlgElement::unit(b, q);
      Complex total = 0.0;
      for (const auto& piece : pieces) total += eval_scalar(piece, ep, eq);
      worst = std::max(worst, std::abs(total - eval_scalar(j, ep, eq)));
    }
  r.result["pieces"] = std::move(out);
  r.result["sum_residual"] = worst;
  r.check("pieces sum to the form", worst <= tol, worst, tol);
}

void cmd_positive(const RunConfig& c, const Json& input, Report& r) {
  const BilinearForm b = io::form_from_json(need(input, "form"));
  const double gap_tol = tol_or(c, 1e-5);
  r.tolerances["psd"] = 1e-9;
  r.tolerances["identity"] = 1e-9;
  r.tolerances["norm_square_gap"] = gap_tol;
  if (!(b.alg_a() == b.alg_b())) throw SchemaError("positive needs a form on A x A");
  const PositivityResult pos = is_positive(b);
  r.result["positivity"] = io::to_json(pos);
  r.check("positive", pos.positive, pos.min_eigenvalue, -1e-9);
  if (!pos.positive) return;
  const PositiveFormData d = build_fb(b);
  const NormSquareReport ns = check_norm_square(b, d, c.restarts, c.seed, gap_tol);
  r.result["fb"] = io::to_json(d);
  r.result["norm_square"] = io::to_json(ns);
  r.check("inner-product identity", d.identity_residual <= 1e-9, d.identity_residual, 1e-9);
  r.check("norm square", ns.passed, ns.relative_gap, gap_tol);
}

void cmd_roundtrip_positive(const RunConfig& c, const Json& input, Report& r) {
  const bool builtin = !(input.is_object() && input.contains("form"));
  const int d = c.n.value_or(2);
  if (builtin && (d < 1 || d > 16)) throw SchemaError("--n must lie in 1..16");
  const BilinearForm b = builtin ? corner_form(d) : io::form_from_json(input["form"]);
  const JSRep j = builtin ? transpose_factorization_example(d) : io::jsrep_from_json(need(input, "jsrep"));
  const double gap_tol = tol_or(c, 1e-5);
  r.tolerances["norm_square_gap"] = gap_tol;
  r.tolerances["fb_bound_slack"] = 1e-5;
  r.tolerances["final_bound_slack"] = 1e-4;
  r.tolerances["reproduction"] = 1e-8;
  if (builtin) r.result["builtin"] = {{"form", "corner"}, {"d", d}};
  try {
    const RoundTripReport rt = roundtrip_positive(j, b);
    const NormSquareReport ns = check_norm_square(b, build_fb(b), c.restarts, c.seed, gap_tol);
    r.result["roundtrip"] = io::to_json(rt);
    r.result["norm_square"] = io::to_json(ns);
    r.result["bound_chain"] = {rt.start_bound, rt.fb_bound_squared, rt.final_bound};
    r.check("fb bound squared", rt.fb_bound_squared <= rt.start_bound * (1.0 + 1e-5), rt.fb_bound_squared,
            rt.start_bound * (1.0 + 1e-5));
    r.check("final bound", rt.final_bound <= rt.start_bound * (1.0 + 1e-4), rt.final_bound,
            rt.start_bound * (1.0 + 1e-4));
    r.check("compress reproduction", rt.compress_residual <= 1e-8, rt.compress_residual, 1e-8);
    r.check("final reproduction", rt.final_residual <= 1e-8, rt.final_residual, 1e-8);
    r.check("norm square", ns.passed, ns.relative_gap, gap_tol);
  } catch (const NotPositiveError& e) {
    r.error(e.what());
  }
}

void cmd_ratio_scan(const RunConfig& c, const Json& input, Report& r) {
  RatioScanConfig cfg;
  cfg.include_maps = true;
  for (const auto& d : c.dims) cfg.algebras.emplace_back(d);
  if (input.is_object()) {
    if (input.contains("algebras") && cfg.algebras.empty())
      for (const auto& a : input["algebras"]) cfg.algebras.push_back(io::algebra_from_json(a));
    if (input.contains("include_maps")) cfg.include_maps = input["include_maps"].get<bool>();
    if (input.contains("max_rank")) cfg.max_rank = input["max_rank"].get<int>();
  }
  if (cfg.algebras.empty())
    cfg.algebras = {FdAlgebra::diagonal(2), FdAlgebra::full(2), FdAlgebra::full(3), FdAlgebra({1, 2}),
                    FdAlgebra::diagonal(3)};
  cfg.restarts = c.restarts;
  cfg.search_iters = c.iters.value_or(500);
  const int count = c.n.value_or(50);
  if (count < 0) throw SchemaError("--n must be nonnegative");
  const double slack = tol_or(c, 1e-6);
  r.tolerances["ratio_slack"] = slack;
  r.tolerances["pinv_cutoff"] = cfg.tolerances.pinv_cutoff;
  r.tolerances["reproduction"] = cfg.tolerances.reproduction;
  r.tolerances["norm_slack"] = cfg.tolerances.norm_slack;

  const std::vector<RatioReport> reports = ratio_scan(cfg, count, c.seed);
  Json rows = Json::array(), algebras = Json::array();
  for (const auto& a : cfg.algebras) algebras.push_back(io::to_json(a));
  int successes = 0;
  double lo = INFINITY, hi = -INFINITY;
  bool in_range = true;
  for (const auto& rep : reports) {
    rows.push_back(io::to_json(rep));
    if (!rep.success) continue;
    ++successes;
    lo = std::min(lo, rep.ratio);
    hi = std::max(hi, rep.ratio);
    in_range = in_range && rep.ratio >= 1.0 - slack && rep.ratio <= 2.0 + slack;
  }
  r.result["algebras"] = std::move(algebras);
  r.result["count"] = count;
  r.result["successes"] = successes;
  r.result["failures"] = count - successes;
  r.result["ratio_min"] = number(lo);
  r.result["ratio_max"] = number(hi);
  r.result["instances"] = std::move(rows);
  r.check("ratios in [1, 2]", in_range);
  if (c.csv) {
    std::ofstream out(*c.csv);
    if (!out) throw std::runtime_error("cannot open csv file " + *c.csv);
    out << ratio_csv(reports);
  }
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"norm", cmd_norm},
      {"cb-example", cmd_cb_example},
      {"gns", cmd_gns},
      {"js-validate", cmd_js_validate},
      {"js-eval", cmd_js_eval},
      {"js-sum", cmd_js_sum},
      {"witness-find", cmd_witness_find},
      {"witness-check", cmd_witness_check},
      {"factorize-little", cmd_factorize_little},
      {"factorize-bilinear", cmd_factorize_bilinear},
      {"split4", cmd_split4},
      {"positive", cmd_positive},
      {"roundtrip-positive", cmd_roundtrip_positive},
      {"ratio-scan", cmd_ratio_scan},
  };
  return table;
}

Json config_json(const RunConfig& c) {
  Json out{{"seed", c.seed}, {"restarts", c.restarts}, {"dims", c.dims}};
  out["input"] = c.input ? Json(*c.input) : Json(nullptr);
  out["tol"] = c.tol ? Json(*c.tol) : Json(nullptr);
  out["n"] = c.n ? Json(*c.n) : Json(nullptr);
  out["iters"] = c.iters ? Json(*c.iters) : Json(nullptr);
  return out;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int d = std::stoi(item, &used);
      if (used != item.size() || d < 1) throw std::invalid_argument(item);
      out.push_back(d);
    } catch (const std::exception&) {
      throw SchemaError("--dims: expected comma-separated positive block sizes, got '" + text + "'");
    }
  }
  if (out.empty()) throw SchemaError("--dims: empty block list");
  return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto it = handlers().find(config.subcommand);
  if (it == handlers().end()) {
    err << "unknown subcommand '" << config.subcommand << "'\n";
    return 2;
  }
  Report report;
  Json input = nullptr;
  try {
    if (config.restarts < 1) throw SchemaError("--restarts must be positive");
    if (config.iters && *config.iters < 0) throw SchemaError("--iters must be nonnegative");
    if (config.tol && !(*config.tol > 0.0)) throw SchemaError("--tol must be positive");
    if (config.input) input = io::read_file(*config.input);
    it->second(config, input, report);
  } catch (const SchemaError& e) {
    err << config.subcommand << ": schema error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    report.error(e.what());
  }

  Json doc{{"schema_version", kSchemaVersion},
           {"subcommand", config.subcommand},
           {"timestamp", timestamp()},
           {"config", config_json(config)},
           {"input", input},
           {"tolerances", report.tolerances},
           {"result", report.result},
           {"checks", report.checks},
           {"passed", report.passed}};
  try {
    if (config.output)
      io::write_file(*config.output, doc);
    else
      out << doc.dump(2) << '\n';
  } catch (const std::exception& e) {
    err << config.subcommand << ": " << e.what() << '\n';
    return 1;
  }
  if (!report.passed) {
    for (const auto& ch : report.checks)
      if (!ch["passed"].get<bool>()) err << config.subcommand << ": check failed: " << ch["name"].get<std::string>() << '\n';
    if (report.result.contains("error")) err << config.subcommand << ": " << report.result["error"].get<std::string>() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace jordan::cli
