#include "jordan/jsrep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace jordan {

namespace {

StarRepTable table_sum(const StarRepTable& a, const StarRepTable& b) {
  if (!(a.algebra() == b.algebra())) throw ShapeError("oplus: representations on different algebras");
  std::vector<ComplexMatrix> images;
  images.reserve(a.images().size());
  for (std::size_t p = 0; p < a.images().size(); ++p) images.push_back(linalg::block_diag(a.images()[p], b.images()[p]));
  return StarRepTable(a.algebra(), a.space_dim() + b.space_dim(), std::move(images));
}

std::optional<StarRepTable> optional_sum(const std::optional<StarRepTable>& a, const std::optional<StarRepTable>& b) {
  if (a && b) return table_sum(*a, *b);
  if (a) return a;
  return b;
}

ComplexMatrix random_unitary(int n, Rng& rng) {
  const ComplexMatrix g = linalg::random_gaussian(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

// Unitary conjugate of a sum of irreducible blocks (transposed when `anti`).
StarRepTable random_table(const FdAlgebra& alg, const std::vector<int>& blocks, bool anti, Rng& rng) {
  int space = 0;
  for (int k : blocks) space += alg.block_dim(k);
  const ComplexMatrix u = random_unitary(space, rng);
  std::vector<ComplexMatrix> images;
  for (int p = 0; p < alg.dim(); ++p) {
    const auto unit = alg.unit(p);
    ComplexMatrix img = ComplexMatrix::Zero(space, space);
    int off = 0;
    for (int k : blocks) {
      if (k == unit.block) {
        if (anti)
          img(off + unit.col, off + unit.row) = 1.0;
        else
          img(off + unit.row, off + unit.col) = 1.0;
      }
      off += alg.block_dim(k);
    }
    images.push_back(u * img * u.adjoint());
  }
  return StarRepTable(alg, space, std::move(images));
}

// Random nonempty list of block indices whose sizes total at most budget.
std::vector<int> random_blocks(const FdAlgebra& alg, int budget, Rng& rng) {
  std::vector<int> fitting;
  for (int k = 0; k < alg.num_blocks(); ++k)
    if (alg.block_dim(k) <= budget) fitting.push_back(k);
  if (fitting.empty()) throw ShapeError("random_bilinear_jsrep: no block fits the dimension budget");
  std::vector<int> out;
  int used = 0;
  std::uniform_int_distribution<std::size_t> pick(0, fitting.size() - 1);
  std::bernoulli_distribution more(0.5);
  do {
    const int k = fitting[pick(rng)];
    if (used + alg.block_dim(k) > budget) break;
    out.push_back(k);
    used += alg.block_dim(k);
  } while (more(rng));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// StarRepTable

StarRepTable::StarRepTable(FdAlgebra alg, int space_dim, std::vector<ComplexMatrix> images)
    : alg_(std::move(alg)), space_dim_(space_dim), images_(std::move(images)) {
  if (space_dim_ < 0) throw ShapeError("StarRepTable: negative space dimension");
  if (static_cast<int>(images_.size()) != alg_.dim())
    throw ShapeError("StarRepTable: need one image per matrix unit");
  for (const auto& m : images_)
    if (m.rows() != space_dim_ || m.cols() != space_dim_)
      throw ShapeError("StarRepTable: image shape does not match space dimension");
}

StarRepTable StarRepTable::identity(const FdAlgebra& alg) {
  const int n = alg.rep_dim();
  std::vector<ComplexMatrix> images;
  for (int p = 0; p < alg.dim(); ++p) {
    const auto u = alg.unit(p);
    int off = 0;
    for (int k = 0; k < u.block; ++k) off += alg.block_dim(k);
    ComplexMatrix img = ComplexMatrix::Zero(n, n);
    img(off + u.row, off + u.col) = 1.0;
    images.push_back(std::move(img));
  }
  return StarRepTable(alg, n, std::move(images));
}

StarRepTable StarRepTable::transpose(const FdAlgebra& alg) {
  const StarRepTable id = identity(alg);
  std::vector<ComplexMatrix> images;
  for (const auto& m : id.images()) images.push_back(m.transpose());
  return StarRepTable(alg, id.space_dim(), std::move(images));
}

StarRepTable StarRepTable::left_regular(const FdAlgebra& alg) {
  const int n = alg.dim();
  std::vector<ComplexMatrix> images;
  for (int p = 0; p < n; ++p) {
    ComplexMatrix img = ComplexMatrix::Zero(n, n);
    for (int q = 0; q < n; ++q)
      if (auto r = alg.product_index(p, q)) img(*r, q) = 1.0;
    images.push_back(std::move(img));
  }
  return StarRepTable(alg, n, std::move(images));
}

StarRepTable StarRepTable::zero(const FdAlgebra& alg, int space_dim) {
  return StarRepTable(alg, space_dim,
                      std::vector<ComplexMatrix>(static_cast<std::size_t>(alg.dim()),
                                                 ComplexMatrix::Zero(space_dim, space_dim)));
}

ComplexMatrix StarRepTable::operator()(const AlgElement& a) const {
  if (!(a.algebra() == alg_)) throw ShapeError("StarRepTable: argument algebra mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(space_dim_, space_dim_);
  for (int p = 0; p < alg_.dim(); ++p) {
    const Complex c = a.coeff(p);
    if (c != Complex(0.0)) out += c * image(p);
  }
  return out;
}

double StarRepTable::multiplicativity_residual(bool reversed) const {
  double worst = 0.0;
  const int n = alg_.dim();
  const ComplexMatrix zero = ComplexMatrix::Zero(space_dim_, space_dim_);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const auto r = reversed ? alg_.product_index(q, p) : alg_.product_index(p, q);
      const ComplexMatrix& target = r ? image(*r) : zero;
      worst = std::max(worst, (image(p) * image(q) - target).norm());
    }
  }
  return worst;
}

double StarRepTable::adjoint_residual() const {
  double worst = 0.0;
  for (int p = 0; p < alg_.dim(); ++p)
    worst = std::max(worst, (image(alg_.adjoint_index(p)) - image(p).adjoint()).norm());
  return worst;
}

// ---------------------------------------------------------------------------
// JordanRep

JordanRep::JordanRep(std::optional<StarRepTable> rep_part, std::optional<StarRepTable> anti_part)
    : rep_(std::move(rep_part)), anti_(std::move(anti_part)) {
  if (!rep_ && !anti_) throw ShapeError("JordanRep: at least one part required");
  if (rep_ && anti_ && !(rep_->algebra() == anti_->algebra()))
    throw ShapeError("JordanRep: parts act on different algebras");
}

const FdAlgebra& JordanRep::algebra() const { return rep_ ? rep_->algebra() : anti_->algebra(); }

ComplexMatrix JordanRep::operator()(const AlgElement& a) const {
  if (rep_ && anti_) return linalg::block_diag((*rep_)(a), (*anti_)(a));
  return rep_ ? (*rep_)(a) : (*anti_)(a);
}

ComplexMatrix JordanRep::image(int index) const {
  if (rep_ && anti_) return linalg::block_diag(rep_->image(index), anti_->image(index));
  return rep_ ? rep_->image(index) : anti_->image(index);
}

JordanSum oplus(const JordanRep& first, const JordanRep& second) {
  if (!(first.algebra() == second.algebra())) throw ShapeError("oplus: representations on different algebras");
  const int r1 = first.rep_dim(), a1 = first.anti_dim();
  const int r2 = second.rep_dim(), a2 = second.anti_dim();
  const int n = r1 + a1 + r2 + a2;
  ComplexMatrix perm = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < r1; ++i) perm(i, i) = 1.0;
  for (int i = 0; i < a1; ++i) perm(r1 + r2 + i, r1 + i) = 1.0;
  for (int i = 0; i < r2; ++i) perm(r1 + i, r1 + a1 + i) = 1.0;
  for (int i = 0; i < a2; ++i) perm(r1 + r2 + a1 + i, r1 + a1 + r2 + i) = 1.0;
  return {JordanRep(optional_sum(first.rep_part(), second.rep_part()),
                    optional_sum(first.anti_part(), second.anti_part())),
          std::move(perm)};
}

// ---------------------------------------------------------------------------
// JSRep

JSRep::JSRep(std::vector<JordanRep> reps, std::vector<ComplexMatrix> operators)
    : reps_(std::move(reps)), ops_(std::move(operators)) {
  if (reps_.empty()) throw ShapeError("JSRep: arity must be at least one");
  if (ops_.size() != reps_.size() + 1) throw ShapeError("JSRep: need arity + 1 operators");
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    const int k = reps_[i].space_dim();
    if (ops_[i].cols() != k)
      throw ShapeError("JSRep: operator T_" + std::to_string(i) + " has the wrong number of columns");
    if (ops_[i + 1].rows() != k)
      throw ShapeError("JSRep: operator T_" + std::to_string(i + 1) + " has the wrong number of rows");
  }
  for (const auto& t : ops_)
    if (!t.allFinite()) throw DomainError("JSRep: non-finite operator entry");
}

std::vector<FdAlgebra> JSRep::algebras() const {
  std::vector<FdAlgebra> out;
  for (const auto& r : reps_) out.push_back(r.algebra());
  return out;
}

std::vector<int> JSRep::dims() const {
  std::vector<int> out;
  for (const auto& r : reps_) out.push_back(r.space_dim());
  return out;
}

ValidationReport validate(const JordanRep& sigma, int positivity_trials, std::uint64_t seed) {
  ValidationReport rep;
  if (sigma.rep_part()) {
    rep.multiplicativity = sigma.rep_part()->multiplicativity_residual(false);
    rep.self_adjointness = sigma.rep_part()->adjoint_residual();
  }
  if (sigma.anti_part()) {
    rep.anti_multiplicativity = sigma.anti_part()->multiplicativity_residual(true);
    rep.self_adjointness = std::max(rep.self_adjointness, sigma.anti_part()->adjoint_residual());
  }
  Rng rng(seed);
  for (int t = 0; t < positivity_trials; ++t) {
    const AlgElement a = AlgElement::random(sigma.algebra(), rng);
    const ComplexMatrix img = sigma(mul(adjoint(a), a));
    const double scale = std::max(1.0, linalg::op_norm(img));
    rep.positivity = std::max(rep.positivity, -linalg::min_eigenvalue(img) / scale);
  }
  rep.positivity = std::max(rep.positivity, 0.0);
  const double tol = ValidationReport::kTolerance;
  rep.passed = rep.multiplicativity < tol && rep.anti_multiplicativity < tol && rep.self_adjointness < tol &&
               rep.positivity < tol;
  return rep;
}

ValidationReport validate(const JSRep& j, int positivity_trials, std::uint64_t seed) {
  ValidationReport out;
  out.passed = true;
  for (int i = 0; i < j.arity(); ++i) {
    const ValidationReport r = validate(j.rep(i), positivity_trials, seed + static_cast<std::uint64_t>(i));
    out.multiplicativity = std::max(out.multiplicativity, r.multiplicativity);
    out.anti_multiplicativity = std::max(out.anti_multiplicativity, r.anti_multiplicativity);
    out.self_adjointness = std::max(out.self_adjointness, r.self_adjointness);
    out.positivity = std::max(out.positivity, r.positivity);
    out.passed = out.passed && r.passed;
  }
  return out;
}

ComplexMatrix evaluate(const JSRep& j, std::span<const AlgElement> args) {
  if (static_cast<int>(args.size()) != j.arity()) throw ShapeError("evaluate: wrong number of arguments");
  ComplexMatrix acc = j.op(0);
  for (int i = 0; i < j.arity(); ++i) {
    const auto& a = args[static_cast<std::size_t>(i)];
    if (!(a.algebra() == j.rep(i).algebra()))
      throw ShapeError("evaluate: argument " + std::to_string(i) + " lives in the wrong algebra");
    acc = acc * j.rep(i)(a) * j.op(i + 1);
  }
  return acc;
}

ComplexMatrix evaluate(const JSRep& j, std::initializer_list<AlgElement> args) {
  return evaluate(j, std::span<const AlgElement>(args.begin(), args.size()));
}

double bound(const JSRep& j) {
  double b = 1.0;
  for (const auto& t : j.operators()) b *= linalg::op_norm(t);
  return b;
}

JSRep normalize(const JSRep& j) {
  const int n = j.arity();
  std::vector<double> norms;
  double prod = 1.0;
  for (const auto& t : j.operators()) {
    const double v = linalg::op_norm(t);
    if (!(v > 0.0)) throw DomainError("normalize: zero operator in representation");
    norms.push_back(v);
    prod *= v;
  }
  const double end = std::sqrt(prod);
  std::vector<ComplexMatrix> ops = j.operators();
  ops[0] *= end / norms[0];
  for (int i = 1; i < n; ++i) ops[static_cast<std::size_t>(i)] /= norms[static_cast<std::size_t>(i)];
  ops[static_cast<std::size_t>(n)] *= end / norms[static_cast<std::size_t>(n)];
  return JSRep(j.reps(), std::move(ops));
}

JSRep direct_sum(const JSRep& first, const JSRep& second) {
  if (first.arity() != second.arity()) throw ShapeError("direct_sum: arities differ");
  if (first.algebras() != second.algebras()) throw ShapeError("direct_sum: algebras differ");
  if (first.target_dim() != second.target_dim() || first.source_dim() != second.source_dim())
    throw ShapeError("direct_sum: source or target dimensions differ");
  const JSRep s = normalize(first);
  const JSRep t = normalize(second);
  const int n = s.arity();

  std::vector<JordanRep> reps;
  std::vector<ComplexMatrix> perms;
  for (int i = 0; i < n; ++i) {
    JordanSum sum = oplus(s.rep(i), t.rep(i));
    reps.push_back(std::move(sum.rep));
    perms.push_back(std::move(sum.perm));
  }

  std::vector<ComplexMatrix> ops;
  ComplexMatrix row(s.target_dim(), s.op(0).cols() + t.op(0).cols());
  row << s.op(0), t.op(0);
  ops.push_back(row * perms.front().transpose());
  for (int i = 1; i < n; ++i) {
    const auto& p_in = perms[static_cast<std::size_t>(i - 1)];
    const auto& p_out = perms[static_cast<std::size_t>(i)];
    ops.push_back(p_in * linalg::block_diag(s.op(i), t.op(i)) * p_out.transpose());
  }
  ComplexMatrix col(s.op(n).rows() + t.op(n).rows(), s.source_dim());
  col << s.op(n), t.op(n);
  ops.push_back(perms.back() * col);
  return JSRep(std::move(reps), std::move(ops));
}

bool is_zero_map(const JSRep& j, double tol) {
  for (const auto& t : j.operators())
    if (linalg::max_abs(t) == 0.0) return true;
  // Depth-first over tuples of matrix units, pruning vanishing partial products.
  const int n = j.arity();
  std::function<bool(int, const ComplexMatrix&)> vanishes = [&](int i, const ComplexMatrix& acc) {
    if (linalg::max_abs(acc) <= tol) return true;
    if (i == n) return false;
    for (int p = 0; p < j.rep(i).algebra().dim(); ++p)
      if (!vanishes(i + 1, acc * j.rep(i).image(p) * j.op(i + 1))) return false;
    return true;
  };
  return vanishes(0, j.op(0));
}

JSRep add(const JSRep& first, const JSRep& second) {
  if (is_zero_map(second)) return first;
  if (is_zero_map(first)) return second;
  return direct_sum(first, second);
}

JSRep zero_jsrep(const std::vector<FdAlgebra>& algebras, int target_dim, int source_dim) {
  if (algebras.empty()) throw ShapeError("zero_jsrep: arity must be at least one");
  std::vector<JordanRep> reps;
  for (const auto& alg : algebras) reps.push_back(JordanRep::rep(StarRepTable::zero(alg, 1)));
  std::vector<ComplexMatrix> ops;
  ops.push_back(ComplexMatrix::Zero(target_dim, 1));
  for (std::size_t i = 1; i < algebras.size(); ++i) ops.push_back(ComplexMatrix::Zero(1, 1));
  ops.push_back(ComplexMatrix::Zero(1, source_dim));
  return JSRep(std::move(reps), std::move(ops));
}

JSRep random_bilinear_jsrep(const FdAlgebra& alg_a, const FdAlgebra& alg_b, Rng& rng) {
  constexpr int kMaxDim = 4;
  auto random_jordan = [&](const FdAlgebra& alg) {
    const int smallest = *std::min_element(alg.block_dims().begin(), alg.block_dims().end());
    std::uniform_int_distribution<int> kind(0, 2 * smallest <= kMaxDim ? 2 : 1);
    const int k = kind(rng);
    std::optional<StarRepTable> rep, anti;
    int budget = kMaxDim;
    if (k != 1) {
      rep = random_table(alg, random_blocks(alg, k == 2 ? budget / 2 : budget, rng), false, rng);
      budget -= rep->space_dim();
    }
    if (k != 0) anti = random_table(alg, random_blocks(alg, budget, rng), true, rng);
    return JordanRep(std::move(rep), std::move(anti));
  };
  std::vector<JordanRep> reps{random_jordan(alg_a), random_jordan(alg_b)};
  std::vector<ComplexMatrix> ops{linalg::random_gaussian(1, reps[0].space_dim(), rng),
                                 linalg::random_gaussian(reps[0].space_dim(), reps[1].space_dim(), rng),
                                 linalg::random_gaussian(reps[1].space_dim(), 1, rng)};
  return JSRep(std::move(reps), std::move(ops));
}

}  // namespace jordan
