// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "jordan/forms.hpp"
#include "jordan/gns.hpp"
#include "jordan/grothendieck.hpp"
#include "jordan/jsrep.hpp"
#include "jordan/positive.hpp"

using namespace jordan;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double form_reproduction(const JSRep& j, const BilinearForm& b) {
  double worst = 0.0;
  for (int p = 0; p < b.alg_a().dim(); ++p) {
    const AlgElement ep = AlgElement::unit(b.alg_a(), p);
    for (int q = 0; q < b.alg_b().dim(); ++q)
      worst = std::max(worst, std::abs(evaluate(j, {ep, AlgElement::unit(b.alg_b(), q)})(0, 0) - b.coeffs()(p, q)));
  }
  return worst;
}

double map_reproduction(const JSRep& j, const HilbertMap& f) {
  double worst = 0.0;
  for (int p = 0; p < f.algebra().dim(); ++p)
    worst = std::max(worst, linalg::max_abs(evaluate(j, {AlgElement::unit(f.algebra(), p)}) - f.matrix().col(p)));
  return worst;
}

Outcome cb_amplification() {
  double norm_dev = 0.0, entry_dev = 0.0;
  for (int n = 1; n <= 16; ++n) {
    const CbExample ex = cb_example(n);
    norm_dev = std::max({norm_dev, std::abs(ex.x_norm - 1.0), std::abs(ex.y_norm - 1.0)});
    ComplexMatrix target = ComplexMatrix::Zero(n, n);
    target(0, 0) = n;
    entry_dev = std::max(entry_dev, linalg::max_abs(ex.amplified - target));
  }
  return {norm_dev <= 1e-10 && entry_dev <= 1e-12, fmt("norm dev %.1e, entry dev %.1e", norm_dev, entry_dev)};
}

Outcome separation() {
  double bound_dev = 0.0, reproduction = 0.0, norm_dev = 0.0;
  for (int d = 1; d <= 6; ++d) {
    const JSRep j = transpose_factorization_example(d);
    const BilinearForm b = corner_form(d);
    bound_dev = std::max(bound_dev, std::abs(bound(j) - 1.0));
    reproduction = std::max(reproduction, form_reproduction(j, b));
    norm_dev = std::max(norm_dev, std::abs(form_norm(b).value - 1.0));
  }
  const double cb16 = cb_example(16).amplified(0, 0).real();
  const bool ok = bound_dev <= 1e-12 && reproduction <= 1e-12 && norm_dev <= 1e-8 && std::abs(cb16 - 16.0) <= 1e-12;
  return {ok, fmt("bound dev %.1e, reproduction %.1e, |B| dev %.1e, cb lower bound at n=16: %.0f", bound_dev,
                  reproduction, norm_dev, cb16)};
}

Outcome gns_identities() {
  double pi = 0.0, rho = 0.0, jo = 0.0;
  std::uint64_t seed = 1000;
  for (const FdAlgebra& alg : {FdAlgebra::full(2), FdAlgebra::full(3), FdAlgebra({2, 3})}) {
    for (int s = 0; s < 20; ++s) {
      Rng rng(seed++);
      const State phi = State::random(alg, rng);
      const GnsResidual r = verify_gns(gns_construct(phi), 100, seed++);
      pi = std::max(pi, r.pi_identity);
      rho = std::max(rho, r.rho_identity);
      jo = std::max(jo, r.conjugation_identity);
    }
  }
  const bool ok = pi <= 1e-9 && rho <= 1e-9 && jo <= 1e-9;
  return {ok, fmt("60 states x 100 elements: pi %.1e, rho %.1e, J symmetry %.1e", pi, rho, jo)};
}

Outcome triangle() {
  Rng rng(2000);
  const std::vector<FdAlgebra> algebras{FdAlgebra::full(2), FdAlgebra::full(3), FdAlgebra({1, 2}),
                                        FdAlgebra::diagonal(3), FdAlgebra({1, 3})};
  double additivity = 0.0, slack = -INFINITY;
  for (int t = 0; t < 100; ++t) {
    const FdAlgebra& a = algebras[static_cast<std::size_t>(t) % algebras.size()];
    const FdAlgebra& b = algebras[static_cast<std::size_t>(t / 5) % algebras.size()];
    const JSRep f = normalize(random_bilinear_jsrep(a, b, rng));
    const JSRep g = normalize(random_bilinear_jsrep(a, b, rng));
    const JSRep s = direct_sum(f, g);
    for (int k = 0; k < 10; ++k) {
      const AlgElement x = AlgElement::random_unit(a, rng), y = AlgElement::random_unit(b, rng);
      additivity = std::max(additivity, linalg::max_abs(evaluate(s, {x, y}) - evaluate(f, {x, y}) - evaluate(g, {x, y})));
    }
    slack = std::max(slack, bound(s) - bound(f) - bound(g));
  }
  return {additivity <= 1e-10 && slack <= 1e-10,
          fmt("100 pairs: additivity %.1e, worst bound excess %.1e", additivity, slack)};
}

struct BilinearCase {
  bool converged = false;
  bool factor_ok = false;
  double bound_ratio = 0.0;
  double reproduction = 0.0;
};

BilinearCase bilinear_case(const BilinearForm& b, std::uint64_t seed) {
  BilinearCase out;
  const double norm = form_norm(b, 32, seed).value;
  WitnessSearchOptions o;
  o.seed = seed;
  o.target = norm;
  const BilinearWitnessSearch s = find_witness_bilinear(b, o);
  if (!s.reached_target) return out;
  const WitnessReport w = check_witness(b, s.states, norm, 8, seed);
  if (w.max_violation > 1e-6) return out;
  out.converged = true;
  try {
    const Factorization f = factorize_bilinear(b, s.states, norm);
    out.reproduction = form_reproduction(f.rep, b);
    out.bound_ratio = f.bound / norm;
    out.factor_ok = out.reproduction <= 1e-8 && f.bound <= 2.0 * norm * (1.0 + 1e-6) && validate(f.rep).passed;
  } catch (const FactorizationError&) {
    out.factor_ok = false;
  }
  return out;
}

Outcome bilinear_factorizations() {
  bool ok = true;
  double worst_ratio = 0.0, worst_rep = 0.0;
  for (int d = 2; d <= 4; ++d) {
    const BilinearForm c = corner_form(d);
    const Factorization fa = factorize_bilinear(c, corner_witness(d), 1.0);
    ok = ok && fa.bound <= 2.0 * (1.0 + 1e-6) && form_reproduction(fa.rep, c) <= 1e-8;
    const BilinearCase searched = bilinear_case(c, 10 + d);
    ok = ok && searched.converged && searched.factor_ok;
    worst_ratio = std::max(worst_ratio, searched.bound_ratio);
    worst_rep = std::max(worst_rep, searched.reproduction);
  }
  int converged = 0;
  for (int i = 0; i < 20; ++i) {
    Rng rng(3000 + i);
    const FdAlgebra alg = FdAlgebra::full(2 + i % 2);
    const BilinearForm b = BilinearForm::random_rank(alg, alg, 1 + (i / 2) % 2, rng);
    const BilinearCase r = bilinear_case(b, 3000 + i);
    if (!r.converged) continue;
    ++converged;
    ok = ok && r.factor_ok;
    worst_ratio = std::max(worst_ratio, r.bound_ratio);
    worst_rep = std::max(worst_rep, r.reproduction);
  }
  ok = ok && converged >= 16;
  return {ok, fmt("converged %.0f/20, worst bound/norm %.4f, worst reproduction %.1e", converged, worst_ratio, worst_rep)};
}

Outcome little_factorizations() {
  bool ok = true;
  double worst = 0.0, worst_rep = 0.0;
  for (int d = 1; d <= 5; ++d) {
    for (const auto& [map, analytic] : {std::pair{HilbertMap::row_map(d), row_map_witness(d)},
                                        std::pair{HilbertMap::column_map(d), column_map_witness(d)}}) {
      const double norm = hilbertmap_norm(map).value;
      WitnessSearchOptions o;
      o.target = norm;
      const LittleWitnessSearch s = find_witness_little(map, o);
      for (const LittleWitness* w : {&analytic, &s.states}) {
        try {
          const Factorization f = factorize_little(map, *w, 1.0);
          worst = std::max(worst, f.bound);
          worst_rep = std::max(worst_rep, map_reproduction(f.rep, map));
          ok = ok && validate(f.rep).passed;
        } catch (const FactorizationError&) {
          ok = false;
        }
      }
      ok = ok && s.reached_target;
    }
  }
  ok = ok && worst <= std::sqrt(2.0) * (1.0 + 1e-6) && worst_rep <= 1e-8;
  return {ok, fmt("worst bound %.6f (limit %.6f), worst reproduction %.1e", worst, std::sqrt(2.0) * (1.0 + 1e-6), worst_rep)};
}

Outcome positive_roundtrip() {
  bool ok = true;
  double gap = 0.0, drift = 0.0;
  for (int d = 1; d <= 4; ++d) {
    const FdAlgebra alg = FdAlgebra::full(d);
    const std::array<std::pair<BilinearForm, JSRep>, 2> cases{
        std::pair{corner_form(d), transpose_factorization_example(d)},
        std::pair{BilinearForm::trace_form(alg), trace_form_rep(alg)}};
    for (const auto& [form, rep] : cases) {
      const NormSquareReport ns = check_norm_square(form, build_fb(form));
      const RoundTripReport rt = roundtrip_positive(rep, form);
      gap = std::max(gap, ns.relative_gap);
      drift = std::max(drift, std::abs(rt.final_bound - rt.start_bound) / rt.start_bound);
      ok = ok && ns.passed && rt.passed && rt.final_bound <= rt.start_bound * (1.0 + 1e-4) &&
           rt.final_bound >= rt.start_bound / (1.0 + 1e-4);
    }
  }
  ok = ok && gap <= 1e-5;
  return {ok, fmt("norm-square gap %.1e, bound drift %.1e", gap, drift)};
}

Outcome ratio_consistency() {
  RatioScanConfig cfg;
  cfg.algebras = {FdAlgebra::diagonal(2), FdAlgebra::full(2), FdAlgebra::full(3), FdAlgebra({1, 2}),
                  FdAlgebra::diagonal(3)};
  cfg.include_maps = true;
  const std::vector<RatioReport> reports = ratio_scan(cfg, 50, 4000);
  int successes = 0;
  bool ok = true;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& r : reports) {
    if (!r.success) {
      std::printf("      instance %d (%s) not factorized: %s\n", r.index, r.kind.c_str(), r.failure.c_str());
      continue;
    }
    ++successes;
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
    ok = ok && r.ratio >= 1.0 - 1e-6 && r.ratio <= 2.0 + 1e-6;
  }
  return {ok && successes > 0, fmt("%.0f/50 factorized, ratios in [%.4f, %.4f]", successes, lo, hi)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "cb amplification n e_11 for n = 1..16", 5.0, cb_amplification},
      {2, "transposition factorization bound 1, d <= 6", 10.0, separation},
      {3, "GNS identities on M_2, M_3, M_2+M_3", 30.0, gns_identities},
      {4, "direct sum additivity and subadditivity", 30.0, triangle},
      {5, "bilinear factorization bound <= 2 norm", 300.0, bilinear_factorizations},
      {6, "little factorization bound <= sqrt(2) norm", 60.0, little_factorizations},
      {7, "positive round trip and norm square", 120.0, positive_roundtrip},
      {8, "ratio scan within [1, 2]", 300.0, ratio_consistency},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.time_limit;
    const bool passed = o.passed && in_time;
    failures += !passed;
    std::printf("%s  [%d] %s: %s (%.2f s of %.0f s)\n", passed ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.time_limit);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
