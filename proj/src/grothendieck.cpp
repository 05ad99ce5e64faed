#include "jordan/grothendieck.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace jordan {

namespace {

constexpr double kGramCutoff = 1e-12;
constexpr double kLeakTolerance = 1e-9;
constexpr int kAscentSteps = 150;

// s(e_r) for a matrix unit e_r = e_ij in block k is rho_k(j, i).
Complex state_on_unit(const State& s, int r) {
  const auto u = s.algebra().unit(r);
  return s.density(u.block)(u.col, u.row);
}

AlgElement scaled_to_unit_ball(const AlgElement& x) {
  const double n = op_norm(x);
  return n > 0.0 ? x * Complex(1.0 / n) : x;
}

struct Whitening {
  linalg::PsdFactor factor;
  ComplexMatrix inv_root;  // U D^{-1/2}
  ComplexMatrix range_proj;
};

Whitening whiten(const ComplexMatrix& q) {
  Whitening w{linalg::psd_factor(q, kGramCutoff), {}, {}};
  w.inv_root = w.factor.vectors * w.factor.values.cwiseSqrt().cwiseInverse().asDiagonal();
  w.range_proj = w.factor.vectors * w.factor.vectors.adjoint();
  return w;
}

double quad(const ComplexMatrix& q, const ComplexVector& x) { return std::max(0.0, x.dot(q * x).real()); }

// Matrix exponentiated-gradient step on one state.
State mw_step(const State& s, const std::vector<ComplexMatrix>& direction, double step, double floor) {
  const FdAlgebra& alg = s.algebra();
  std::vector<Eigen::SelfAdjointEigenSolver<ComplexMatrix>> solvers;
  double top = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < alg.num_blocks(); ++k) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(linalg::hermitian_part(s.density(k)));
    const RealVector logs = es.eigenvalues().cwiseMax(floor).array().log().matrix();
    const ComplexMatrix log_rho = es.eigenvectors() * logs.asDiagonal() * es.eigenvectors().adjoint();
    solvers.emplace_back(linalg::hermitian_part(log_rho + step * direction[static_cast<std::size_t>(k)]));
    top = std::max(top, solvers.back().eigenvalues().maxCoeff());
  }
  std::vector<ComplexMatrix> densities;
  double trace = 0.0;
  for (const auto& es : solvers) {
    const RealVector e = (es.eigenvalues().array() - top).exp().matrix();
    trace += e.sum();
    densities.push_back(es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint());
  }
  double trace2 = 0.0;
  for (auto& rho : densities) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(linalg::hermitian_part(rho / trace));
    const RealVector e = es.eigenvalues().cwiseMax(floor);
    trace2 += e.sum();
    rho = es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
  }
  for (auto& rho : densities) rho /= trace2;
  return State(alg, std::move(densities));
}

std::vector<ComplexMatrix> square_blocks(const AlgElement& a, bool left) {
  std::vector<ComplexMatrix> out;
  for (const auto& blk : a.blocks()) out.push_back(left ? ComplexMatrix(blk.adjoint() * blk) : ComplexMatrix(blk * blk.adjoint()));
  return out;
}

double blocks_norm(const std::vector<ComplexMatrix>& d) {
  double n = 0.0;
  for (const auto& m : d) n = std::max(n, linalg::op_norm(m));
  return n;
}

void scale_blocks(std::vector<ComplexMatrix>& d, double s) {
  for (auto& m : d) m *= s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Analytic witnesses

BilinearWitness corner_witness(int d) {
  const FdAlgebra alg = FdAlgebra::full(d);
  const State corner = State::first_vector_state(alg);
  const State trace = State::tracial(alg);
  return {corner, trace, trace, corner};
}

LittleWitness row_map_witness(int d) {
  const FdAlgebra alg = FdAlgebra::full(d);
  return {State::tracial(alg), State::first_vector_state(alg)};
}

LittleWitness column_map_witness(int d) {
  const FdAlgebra alg = FdAlgebra::full(d);
  return {State::first_vector_state(alg), State::tracial(alg)};
}

ComplexMatrix witness_gram(const State& s, const State& t) {
  if (!(s.algebra() == t.algebra())) throw ShapeError("witness_gram: states on different algebras");
  const FdAlgebra& alg = s.algebra();
  const int n = alg.dim();
  ComplexMatrix q = ComplexMatrix::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    const int ps = alg.adjoint_index(p);
    for (int r = 0; r < n; ++r) {
      if (auto u = alg.product_index(ps, r)) q(p, r) += state_on_unit(s, *u);
      if (auto u = alg.product_index(r, ps)) q(p, r) += state_on_unit(t, *u);
    }
  }
  return q;
}

// ---------------------------------------------------------------------------
// Witness constants

WitnessConstant witness_constant(const BilinearForm& form, const BilinearWitness& w) {
  const FdAlgebra& alg_a = form.alg_a();
  const FdAlgebra& alg_b = form.alg_b();
  if (!(w.kappa.algebra() == alg_a) || !(w.lambda.algebra() == alg_a) || !(w.mu.algebra() == alg_b) ||
      !(w.nu.algebra() == alg_b))
    throw ShapeError("witness_constant: witness states live on the wrong algebras");
  const ComplexMatrix& c = form.coeffs();
  if (form.is_zero()) return {0.0, AlgElement::zero(alg_a), AlgElement::zero(alg_b), 0.0};

  // With w = conj(vec a) and z = vec b: B(a, b) = w^* C z, f(a) = w^* conj(F) w, g(b) = z^* G z.
  const Whitening left = whiten(witness_gram(w.kappa, w.lambda).conjugate());
  const Whitening right = whiten(witness_gram(w.mu, w.nu));
  const double scale = linalg::op_norm(c);
  const ComplexMatrix left_leak = c - left.range_proj * c;
  const ComplexMatrix right_leak = c - c * right.range_proj;
  const double leak = std::max(linalg::op_norm(left_leak), linalg::op_norm(right_leak)) / scale;
  if (leak > kLeakTolerance) {
    const ComplexMatrix& l = linalg::op_norm(left_leak) >= linalg::op_norm(right_leak) ? left_leak : right_leak;
    Eigen::JacobiSVD<ComplexMatrix> svd(l, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {std::numeric_limits<double>::infinity(), AlgElement::from_vec(alg_a, svd.matrixU().col(0).conjugate()),
            AlgElement::from_vec(alg_b, svd.matrixV().col(0)), leak};
  }
  const ComplexMatrix m = left.inv_root.adjoint() * c * right.inv_root;
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const ComplexVector wv = left.inv_root * svd.matrixU().col(0);
  const ComplexVector zv = right.inv_root * svd.matrixV().col(0);
  return {svd.singularValues()(0), AlgElement::from_vec(alg_a, wv.conjugate()), AlgElement::from_vec(alg_b, zv),
          leak};
}

WitnessConstant witness_constant(const HilbertMap& map, const LittleWitness& w) {
  const FdAlgebra& alg = map.algebra();
  if (!(w.psi.algebra() == alg) || !(w.phi.algebra() == alg))
    throw ShapeError("witness_constant: witness states live on the wrong algebra");
  if (map.is_zero()) return {0.0, AlgElement::zero(alg), std::nullopt, 0.0};
  const ComplexMatrix& m = map.matrix();
  const Whitening h = whiten(witness_gram(w.psi, w.phi));
  const double scale = linalg::op_norm(m);
  const ComplexMatrix leak_m = m - m * h.range_proj;
  const double leak = linalg::op_norm(leak_m) / scale;
  if (leak > kLeakTolerance) {
    Eigen::JacobiSVD<ComplexMatrix> svd(leak_m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {std::numeric_limits<double>::infinity(), AlgElement::from_vec(alg, svd.matrixV().col(0)), std::nullopt,
            leak};
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m * h.inv_root, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const ComplexVector x = h.inv_root * svd.matrixV().col(0);
  return {svd.singularValues()(0), AlgElement::from_vec(alg, x), std::nullopt, leak};
}

double witness_violation(const BilinearForm& form, const BilinearWitness& w, double norm, const AlgElement& a,
                         const AlgElement& b) {
  const double f = (w.kappa(mul(adjoint(a), a)) + w.lambda(mul(a, adjoint(a)))).real();
  const double g = (w.mu(mul(adjoint(b), b)) + w.nu(mul(b, adjoint(b)))).real();
  return std::abs(form(a, b)) - norm * std::sqrt(std::max(f, 0.0)) * std::sqrt(std::max(g, 0.0));
}

double witness_violation(const HilbertMap& map, const LittleWitness& w, double norm, const AlgElement& a) {
  const double h = (w.psi(mul(adjoint(a), a)) + w.phi(mul(a, adjoint(a)))).real();
  return map(a).norm() - norm * std::sqrt(std::max(h, 0.0));
}

// ---------------------------------------------------------------------------
// Violation search

WitnessReport check_witness(const BilinearForm& form, const BilinearWitness& w, double norm, int restarts,
                            std::uint64_t seed) {
  const WitnessConstant wc = witness_constant(form, w);
  AlgElement best_a = scaled_to_unit_ball(wc.a);
  AlgElement best_b = scaled_to_unit_ball(*wc.b);
  double best = witness_violation(form, w, norm, best_a, best_b);

  const ComplexMatrix& c = form.coeffs();
  const ComplexMatrix fq = witness_gram(w.kappa, w.lambda);
  const ComplexMatrix gq = witness_gram(w.mu, w.nu);
  const auto objective = [&](const ComplexVector& x, const ComplexVector& z) {
    return std::abs((x.transpose() * c * z)(0, 0)) - norm * std::sqrt(quad(fq, x)) * std::sqrt(quad(gq, z));
  };
  for (int r = 0; r < restarts && !form.is_zero(); ++r) {
    Rng rng(seed + static_cast<std::uint64_t>(r));
    ComplexVector x = AlgElement::random_unit(form.alg_a(), rng).vec();
    ComplexVector z = AlgElement::random_unit(form.alg_b(), rng).vec();
    double cur = objective(x, z);
    double t = 0.1;
    for (int step = 0; step < kAscentSteps && t > 1e-10; ++step) {
      const Complex bxz = (x.transpose() * c * z)(0, 0);
      const Complex phase = std::abs(bxz) > 0.0 ? bxz / std::abs(bxz) : Complex(1.0);
      const double f = std::max(quad(fq, x), 1e-24);
      const double g = std::max(quad(gq, z), 1e-24);
      const ComplexVector gx = phase * (c * z).conjugate() - norm * std::sqrt(g / f) * (fq * x);
      const ComplexVector gz = phase * (c.transpose() * x).conjugate() - norm * std::sqrt(f / g) * (gq * z);
      const ComplexVector nx = project_unit_ball(AlgElement::from_vec(form.alg_a(), x + t * gx)).vec();
      const ComplexVector nz = project_unit_ball(AlgElement::from_vec(form.alg_b(), z + t * gz)).vec();
      const double val = objective(nx, nz);
      if (val > cur) {
        x = nx;
        z = nz;
        cur = val;
        t *= 1.5;
      } else {
        t *= 0.5;
      }
    }
    const AlgElement a = AlgElement::from_vec(form.alg_a(), x);
    const AlgElement b = AlgElement::from_vec(form.alg_b(), z);
    const double v = witness_violation(form, w, norm, a, b);
    if (v > best) {
      best = v;
      best_a = a;
      best_b = b;
    }
  }
  return {best, best_a, best_b, norm, wc.value};
}

WitnessReport check_witness(const HilbertMap& map, const LittleWitness& w, double norm, int restarts,
                            std::uint64_t seed) {
  const WitnessConstant wc = witness_constant(map, w);
  AlgElement best_a = scaled_to_unit_ball(wc.a);
  double best = witness_violation(map, w, norm, best_a);

  const ComplexMatrix& m = map.matrix();
  const ComplexMatrix hq = witness_gram(w.psi, w.phi);
  const auto objective = [&](const ComplexVector& x) { return (m * x).norm() - norm * std::sqrt(quad(hq, x)); };
  for (int r = 0; r < restarts && !map.is_zero(); ++r) {
    Rng rng(seed + static_cast<std::uint64_t>(r));
    ComplexVector x = AlgElement::random_unit(map.algebra(), rng).vec();
    double cur = objective(x);
    double t = 0.1;
    for (int step = 0; step < kAscentSteps && t > 1e-10; ++step) {
      const double fx = std::max((m * x).norm(), 1e-24);
      const double h = std::max(quad(hq, x), 1e-24);
      const ComplexVector gx = (m.adjoint() * (m * x)) / fx - norm * (hq * x) / std::sqrt(h);
      const ComplexVector nx = project_unit_ball(AlgElement::from_vec(map.algebra(), x + t * gx)).vec();
      const double val = objective(nx);
      if (val > cur) {
        x = nx;
        cur = val;
        t *= 1.5;
      } else {
        t *= 0.5;
      }
    }
    const AlgElement a = AlgElement::from_vec(map.algebra(), x);
    const double v = witness_violation(map, w, norm, a);
    if (v > best) {
      best = v;
      best_a = a;
    }
  }
  return {best, best_a, std::nullopt, norm, wc.value};
}

// ---------------------------------------------------------------------------
// Witness search

BilinearWitnessSearch find_witness_bilinear(const BilinearForm& form, const WitnessSearchOptions& options) {
  BilinearWitness w{State::tracial(form.alg_a()), State::tracial(form.alg_a()), State::tracial(form.alg_b()),
                    State::tracial(form.alg_b())};
  if (form.is_zero()) return {w, 0.0, 0, true};
  BilinearWitnessSearch best{w, std::numeric_limits<double>::infinity(), 0, false};
  for (int it = 0;; ++it) {
    const WitnessConstant wc = witness_constant(form, w);
    if (wc.value < best.constant) {
      best.states = w;
      best.constant = wc.value;
    }
    best.iterations = it;
    if (options.target && wc.value <= *options.target) {
      best.reached_target = true;
      break;
    }
    if (it == options.iters) break;
    std::array<std::vector<ComplexMatrix>, 4> dirs{square_blocks(wc.a, true), square_blocks(wc.a, false),
                                                   square_blocks(*wc.b, true), square_blocks(*wc.b, false)};
    double top = 0.0;
    for (const auto& d : dirs) top = std::max(top, blocks_norm(d));
    if (!(top > 0.0)) break;
    for (auto& d : dirs) scale_blocks(d, 1.0 / top);
    w = BilinearWitness{mw_step(w.kappa, dirs[0], options.step, options.eigen_floor),
                        mw_step(w.lambda, dirs[1], options.step, options.eigen_floor),
                        mw_step(w.mu, dirs[2], options.step, options.eigen_floor),
                        mw_step(w.nu, dirs[3], options.step, options.eigen_floor)};
  }
  return best;
}

LittleWitnessSearch find_witness_little(const HilbertMap& map, const WitnessSearchOptions& options) {
  LittleWitness w{State::tracial(map.algebra()), State::tracial(map.algebra())};
  if (map.is_zero()) return {w, 0.0, 0, true};
  LittleWitnessSearch best{w, std::numeric_limits<double>::infinity(), 0, false};
  for (int it = 0;; ++it) {
    const WitnessConstant wc = witness_constant(map, w);
    if (wc.value < best.constant) {
      best.states = w;
      best.constant = wc.value;
    }
    best.iterations = it;
    if (options.target && wc.value <= *options.target) {
      best.reached_target = true;
      break;
    }
    if (it == options.iters) break;
    std::array<std::vector<ComplexMatrix>, 2> dirs{square_blocks(wc.a, true), square_blocks(wc.a, false)};
    const double top = std::max(blocks_norm(dirs[0]), blocks_norm(dirs[1]));
    if (!(top > 0.0)) break;
    for (auto& d : dirs) scale_blocks(d, 1.0 / top);
    w = LittleWitness{mw_step(w.psi, dirs[0], options.step, options.eigen_floor),
                      mw_step(w.phi, dirs[1], options.step, options.eigen_floor)};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Factorizations

Factorization factorize_little(const HilbertMap& map, const LittleWitness& w, double norm,
                               const FactorizeTolerances& tol) {
  const FdAlgebra& alg = map.algebra();
  if (map.is_zero()) {
    JSRep zero = zero_jsrep({alg}, map.target_dim(), 1);
    return {std::move(zero), 0.0, 0.0, 0.0};
  }
  const GnsData gp = gns_construct(w.psi);
  const GnsData gf = gns_construct(w.phi);
  const int n = alg.dim();
  const int k = gp.space_dim + gf.space_dim;

  ComplexMatrix v(k, n);
  for (int p = 0; p < n; ++p) {
    v.col(p).head(gp.space_dim) = gp.pi.image(p) * gp.cyclic_vector;
    v.col(p).tail(gf.space_dim) = gf.rho.image(p) * gf.cyclic_vector;
  }
  const ComplexMatrix& m = map.matrix();
  const ComplexMatrix s = m * linalg::pinv(v, tol.pinv_cutoff);
  const double residual = linalg::max_abs(s * v - m);
  if (residual > tol.reproduction) {
    std::ostringstream msg;
    msg << "factorize_little: linear system inconsistent (residual " << residual << "); the witness fails";
    throw FactorizationError(FactorizationError::Kind::Inconsistent, msg.str());
  }
  const double s_norm = linalg::op_norm(s);
  if (s_norm > norm * (1.0 + tol.norm_slack)) {
    std::ostringstream msg;
    msg << std::setprecision(12) << "factorize_little: ||S|| = " << s_norm << " exceeds norm estimate " << norm;
    throw FactorizationError(FactorizationError::Kind::NormExcess, msg.str());
  }
  ComplexVector gamma(k);
  gamma << gp.cyclic_vector, gf.cyclic_vector;
  JSRep rep({JordanRep(gp.pi, gf.rho)}, {s, gamma});

  double check = 0.0;
  for (int p = 0; p < n; ++p)
    check = std::max(check, linalg::max_abs(evaluate(rep, {AlgElement::unit(alg, p)}) - m.col(p)));
  const double b = bound(rep);
  return {std::move(rep), s_norm, std::max(residual, check), b};
}

Factorization factorize_bilinear(const BilinearForm& form, const BilinearWitness& w, double norm,
                                 const FactorizeTolerances& tol) {
  const FdAlgebra& alg_a = form.alg_a();
  const FdAlgebra& alg_b = form.alg_b();
  if (form.is_zero()) return {zero_jsrep({alg_a, alg_b}, 1, 1), 0.0, 0.0, 0.0};

  const GnsData gl = gns_construct(w.lambda);
  const GnsData gk = gns_construct(w.kappa);
  const GnsData gm = gns_construct(w.mu);
  const GnsData gn = gns_construct(w.nu);
  const int kl = gl.space_dim + gk.space_dim;
  const int kr = gm.space_dim + gn.space_dim;

  // v_p = sigma_L(e_p^*) gamma_L and u_q = sigma_R(e_q) gamma_R, so that
  // B(e_p, e_q) = v_p^* T u_q.
  ComplexMatrix v(kl, alg_a.dim());
  for (int p = 0; p < alg_a.dim(); ++p) {
    const int ps = alg_a.adjoint_index(p);
    v.col(p).head(gl.space_dim) = gl.pi.image(ps) * gl.cyclic_vector;
    v.col(p).tail(gk.space_dim) = gk.rho.image(ps) * gk.cyclic_vector;
  }
  ComplexMatrix u(kr, alg_b.dim());
  for (int q = 0; q < alg_b.dim(); ++q) {
    u.col(q).head(gm.space_dim) = gm.pi.image(q) * gm.cyclic_vector;
    u.col(q).tail(gn.space_dim) = gn.rho.image(q) * gn.cyclic_vector;
  }
  const ComplexMatrix& c = form.coeffs();
  const ComplexMatrix t = linalg::pinv(v.adjoint(), tol.pinv_cutoff) * c * linalg::pinv(u, tol.pinv_cutoff);
  const double residual = linalg::max_abs(v.adjoint() * t * u - c);
  if (residual > tol.reproduction) {
    std::ostringstream msg;
    msg << "factorize_bilinear: linear system inconsistent (residual " << residual << "); the witness fails";
    throw FactorizationError(FactorizationError::Kind::Inconsistent, msg.str());
  }
  const double t_norm = linalg::op_norm(t);
  if (t_norm > norm * (1.0 + tol.norm_slack)) {
    std::ostringstream msg;
    msg << std::setprecision(12) << "factorize_bilinear: ||T|| = " << t_norm << " exceeds norm estimate " << norm;
    throw FactorizationError(FactorizationError::Kind::NormExcess, msg.str());
  }
  ComplexVector gamma_l(kl), gamma_r(kr);
  gamma_l << gl.cyclic_vector, gk.cyclic_vector;
  gamma_r << gm.cyclic_vector, gn.cyclic_vector;
  JSRep rep({JordanRep(gl.pi, gk.rho), JordanRep(gm.pi, gn.rho)}, {gamma_l.adjoint(), t, gamma_r});

  double check = 0.0;
  for (int p = 0; p < alg_a.dim(); ++p) {
    const AlgElement ep = AlgElement::unit(alg_a, p);
    for (int q = 0; q < alg_b.dim(); ++q)
      check = std::max(check, std::abs(evaluate(rep, {ep, AlgElement::unit(alg_b, q)})(0, 0) - c(p, q)));
  }
  const double b = bound(rep);
  return {std::move(rep), t_norm, std::max(residual, check), b};
}

JSRep transpose_factorization_example(int d) {
  if (d < 1) throw ShapeError("transpose_factorization_example: d must be positive");
  const FdAlgebra alg = FdAlgebra::full(d);
  const JordanRep sigma = JordanRep::anti(StarRepTable::transpose(alg));
  const ComplexVector delta = ComplexVector::Unit(d, 0);
  return JSRep({sigma, sigma}, {delta.transpose(), ComplexMatrix::Identity(d, d), delta});
}

std::array<JSRep, 4> split_four(const JSRep& j) {
  if (j.arity() != 2) throw FactorizationError(FactorizationError::Kind::Structure, "split_four: bilinear JSRep required");
  const JordanRep& l = j.rep(0);
  const JordanRep& r = j.rep(1);
  if (!l.rep_part() || !l.anti_part() || !r.rep_part() || !r.anti_part())
    throw FactorizationError(FactorizationError::Kind::Structure,
                             "split_four: both sides need a representation and an anti-representation part");
  const ComplexMatrix& t = j.op(1);
  const int lr = l.rep_dim(), la = l.anti_dim(), rr = r.rep_dim(), ra = r.anti_dim();
  struct Block {
    int row, rows, col, cols;
  };
  const std::array<Block, 4> blocks{Block{0, lr, 0, rr}, Block{lr, la, rr, ra}, Block{0, lr, rr, ra},
                                    Block{lr, la, 0, rr}};
  std::array<std::optional<JSRep>, 4> pieces;
  for (std::size_t i = 0; i < 4; ++i) {
    ComplexMatrix masked = ComplexMatrix::Zero(t.rows(), t.cols());
    const Block& b = blocks[i];
    masked.block(b.row, b.col, b.rows, b.cols) = t.block(b.row, b.col, b.rows, b.cols);
    pieces[i] = JSRep(j.reps(), {j.op(0), masked, j.op(2)});
  }
  return {*pieces[0], *pieces[1], *pieces[2], *pieces[3]};
}

// ---------------------------------------------------------------------------
// Ratio scan

std::vector<RatioReport> ratio_scan(const RatioScanConfig& config, int count, std::uint64_t seed) {
  std::vector<RatioReport> out;
  if (count <= 0) return out;
  if (config.algebras.empty()) throw ShapeError("ratio_scan: at least one algebra required");
  for (int i = 0; i < count; ++i) {
    const std::uint64_t inst_seed = seed + static_cast<std::uint64_t>(i);
    Rng rng(inst_seed);
    const FdAlgebra& alg = config.algebras[static_cast<std::size_t>(i) % config.algebras.size()];
    std::uniform_int_distribution<int> rank_dist(1, std::max(1, config.max_rank));
    const int rank = rank_dist(rng);
    const bool is_map = config.include_maps && i % 3 == 2;

    RatioReport rep{i, is_map ? "map" : "bilinear", alg.block_dims(), rank, 0.0, 0.0, 0.0,
                    std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), false, ""};
    WitnessSearchOptions search;
    search.iters = config.search_iters;
    search.seed = inst_seed;
    try {
      if (is_map) {
        const int target = std::min(alg.dim(), 3);
        const HilbertMap map(alg, linalg::random_gaussian(target, rank, rng) *
                                      linalg::random_gaussian(rank, alg.dim(), rng));
        const NormEstimate ne = hilbertmap_norm(map, config.restarts, inst_seed);
        rep.norm_lower = ne.value;
        search.target = ne.value;
        const LittleWitnessSearch found = find_witness_little(map, search);
        rep.witness_constant = found.constant;
        const WitnessReport wr = check_witness(map, found.states, ne.value, 4, inst_seed);
        rep.violation = wr.max_violation;
        if (!found.reached_target) {
          rep.failure = "witness search stalled";
        } else {
          const Factorization f = factorize_little(map, found.states, ne.value, config.tolerances);
          rep.jordan_upper = f.bound;
        }
      } else {
        const BilinearForm form = BilinearForm::random_rank(alg, alg, rank, rng);
        const NormEstimate ne = form_norm(form, config.restarts, inst_seed);
        rep.norm_lower = ne.value;
        search.target = ne.value;
        const BilinearWitnessSearch found = find_witness_bilinear(form, search);
        rep.witness_constant = found.constant;
        const WitnessReport wr = check_witness(form, found.states, ne.value, 4, inst_seed);
        rep.violation = wr.max_violation;
        if (!found.reached_target) {
          rep.failure = "witness search stalled";
        } else {
          const Factorization f = factorize_bilinear(form, found.states, ne.value, config.tolerances);
          rep.jordan_upper = f.bound;
        }
      }
      if (rep.failure.empty()) {
        rep.ratio = rep.jordan_upper / rep.norm_lower;
        rep.success = true;
      }
    } catch (const FactorizationError& e) {
      rep.failure = e.what();
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::string ratio_csv(const std::vector<RatioReport>& reports) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "index,kind,blocks,rank,norm_lower,jordan_upper,ratio,witness_constant,violation,success,failure\n";
  for (const auto& r : reports) {
    std::string blocks;
    for (std::size_t k = 0; k < r.blocks.size(); ++k) blocks += (k ? " " : "") + std::to_string(r.blocks[k]);
    std::string failure = r.failure;
    std::replace(failure.begin(), failure.end(), ',', ';');
    os << r.index << ',' << r.kind << ',' << blocks << ',' << r.rank << ',' << r.norm_lower << ','
       << r.jordan_upper << ',' << r.ratio << ',' << r.witness_constant << ',' << r.violation << ','
       << (r.success ? 1 : 0) << ',' << failure << '\n';
  }
  return os.str();
}

}  // namespace jordan
