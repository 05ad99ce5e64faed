#include "jordan/forms.hpp"

#include <cmath>
#include <string>

namespace jordan {

// ---------------------------------------------------------------------------
// BilinearForm

BilinearForm::BilinearForm(FdAlgebra alg_a, FdAlgebra alg_b, ComplexMatrix coeffs)
    : alg_a_(std::move(alg_a)), alg_b_(std::move(alg_b)), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != alg_a_.dim() || coeffs_.cols() != alg_b_.dim())
    throw ShapeError("BilinearForm: coefficient shape must be dim(A) x dim(B)");
  if (!coeffs_.allFinite()) throw DomainError("BilinearForm: non-finite coefficient");
}

BilinearForm BilinearForm::zero(const FdAlgebra& alg_a, const FdAlgebra& alg_b) {
  return BilinearForm(alg_a, alg_b, ComplexMatrix::Zero(alg_a.dim(), alg_b.dim()));
}

BilinearForm BilinearForm::product(const State& phi, const State& psi) {
  const ComplexVector u = AlgElement(phi.algebra(), LinearFunctional::from_state(phi).coeffs()).vec();
  const ComplexVector v = AlgElement(psi.algebra(), LinearFunctional::from_state(psi).coeffs()).vec();
  return BilinearForm(phi.algebra(), psi.algebra(), u * v.transpose());
}

BilinearForm BilinearForm::trace_form(const FdAlgebra& alg) {
  // Tr(xy) = sum_ij x_ij y_ji
  ComplexMatrix c = ComplexMatrix::Zero(alg.dim(), alg.dim());
  const double n = alg.rep_dim();
  for (int p = 0; p < alg.dim(); ++p) c(p, alg.adjoint_index(p)) = 1.0 / n;
  return BilinearForm(alg, alg, std::move(c));
}

BilinearForm BilinearForm::random_rank(const FdAlgebra& alg_a, const FdAlgebra& alg_b, int rank, Rng& rng) {
  const ComplexMatrix u = linalg::random_gaussian(alg_a.dim(), rank, rng);
  const ComplexMatrix v = linalg::random_gaussian(alg_b.dim(), rank, rng);
  return BilinearForm(alg_a, alg_b, u * v.transpose());
}

Complex BilinearForm::operator()(const AlgElement& x, const AlgElement& y) const {
  if (!(x.algebra() == alg_a_) || !(y.algebra() == alg_b_)) throw ShapeError("BilinearForm: argument algebra mismatch");
  return (x.vec().transpose() * coeffs_ * y.vec())(0, 0);
}

Complex eval(const BilinearForm& b, const AlgElement& x, const AlgElement& y) { return b(x, y); }

// ---------------------------------------------------------------------------
// HilbertMap

HilbertMap::HilbertMap(FdAlgebra alg, ComplexMatrix matrix) : alg_(std::move(alg)), matrix_(std::move(matrix)) {
  if (matrix_.cols() != alg_.dim()) throw ShapeError("HilbertMap: matrix must have dim(A) columns");
  if (!matrix_.allFinite()) throw DomainError("HilbertMap: non-finite entry");
}

HilbertMap HilbertMap::column_map(int d) {
  const FdAlgebra alg = FdAlgebra::full(d);
  ComplexMatrix m = ComplexMatrix::Zero(d, alg.dim());
  for (int k = 0; k < d; ++k) m(k, alg.index(0, k, 0)) = 1.0;
  return HilbertMap(alg, std::move(m));
}

HilbertMap HilbertMap::row_map(int d) {
  const FdAlgebra alg = FdAlgebra::full(d);
  ComplexMatrix m = ComplexMatrix::Zero(d, alg.dim());
  for (int k = 0; k < d; ++k) m(k, alg.index(0, 0, k)) = 1.0;
  return HilbertMap(alg, std::move(m));
}

ComplexVector HilbertMap::operator()(const AlgElement& a) const {
  if (!(a.algebra() == alg_)) throw ShapeError("HilbertMap: argument algebra mismatch");
  return matrix_ * a.vec();
}

// ---------------------------------------------------------------------------
// Norm estimation

NormEstimate form_norm(const BilinearForm& b, int restarts, std::uint64_t seed) {
  AscentOptions options;
  options.restarts = restarts;
  options.seed = seed;
  return form_norm(b, options);
}

NormEstimate form_norm(const BilinearForm& b, const AscentOptions& options) {
  if (options.restarts < 1) throw DomainError("form_norm: restarts must be at least one");
  if (b.is_zero())
    return {0.0, AlgElement::zero(b.alg_a()), AlgElement::zero(b.alg_b()), true, 0};

  const ComplexMatrix& c = b.coeffs();
  std::optional<NormEstimate> best;
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(options.seed + static_cast<std::uint64_t>(r));
    AlgElement x = AlgElement::random_unit(b.alg_a(), rng);
    AlgElement y = AlgElement::zero(b.alg_b());
    double value = -1.0;
    bool converged = false;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      const ComplexVector cy = c.transpose() * x.vec();
      y = functional_norm(LinearFunctional::from_vec(b.alg_b(), cy)).maximizer;
      const ComplexVector cx = c * y.vec();
      const FunctionalNorm fx = functional_norm(LinearFunctional::from_vec(b.alg_a(), cx));
      x = fx.maximizer;
      const double increase = fx.value - value;
      value = fx.value;
      if (increase < options.tolerance) {
        converged = true;
        break;
      }
    }
    const double attained = std::abs(b(x, y));
    if (!best || attained > best->value) best = NormEstimate{attained, x, y, converged, r + 1};
  }
  best->restarts_used = options.restarts;
  return *best;
}

NormEstimate hilbertmap_norm(const HilbertMap& f, int restarts, std::uint64_t seed) {
  AscentOptions options;
  options.restarts = restarts;
  options.seed = seed;
  return hilbertmap_norm(f, options);
}

NormEstimate hilbertmap_norm(const HilbertMap& f, const AscentOptions& options) {
  if (options.restarts < 1) throw DomainError("hilbertmap_norm: restarts must be at least one");
  if (f.is_zero()) return {0.0, AlgElement::zero(f.algebra()), std::nullopt, true, 0};

  const ComplexMatrix& m = f.matrix();
  std::optional<NormEstimate> best;
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(options.seed + static_cast<std::uint64_t>(r));
    AlgElement a = AlgElement::random_unit(f.algebra(), rng);
    double value = -1.0;
    bool converged = false;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      ComplexVector image = m * a.vec();
      if (image.norm() == 0.0) image = linalg::random_gaussian(f.target_dim(), 1, rng).col(0);
      const ComplexVector zeta = image / image.norm();
      // sup_a |<F(a), zeta>| = sup_a |zeta^* M vec(a)|
      const ComplexVector ca = m.transpose() * zeta.conjugate();
      const FunctionalNorm fa = functional_norm(LinearFunctional::from_vec(f.algebra(), ca));
      a = fa.maximizer;
      const double increase = fa.value - value;
      value = fa.value;
      if (increase < options.tolerance) {
        converged = true;
        break;
      }
    }
    const double attained = f(a).norm();
    if (!best || attained > best->value) best = NormEstimate{attained, a, std::nullopt, converged, r + 1};
  }
  best->restarts_used = options.restarts;
  return *best;
}

// ---------------------------------------------------------------------------
// Amplification

AlgMatrix::AlgMatrix(int n, std::vector<AlgElement> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 1) throw ShapeError("AlgMatrix: n must be positive");
  if (static_cast<int>(entries_.size()) != n * n) throw ShapeError("AlgMatrix: expected n*n entries");
  for (const auto& e : entries_)
    if (!(e.algebra() == entries_.front().algebra())) throw ShapeError("AlgMatrix: entries from different algebras");
}

AlgMatrix AlgMatrix::zero(const FdAlgebra& alg, int n) {
  if (n < 1) throw ShapeError("AlgMatrix: n must be positive");
  return AlgMatrix(n, std::vector<AlgElement>(static_cast<std::size_t>(n * n), AlgElement::zero(alg)));
}

void AlgMatrix::set(int k, int l, AlgElement value) {
  if (!(value.algebra() == algebra())) throw ShapeError("AlgMatrix::set: algebra mismatch");
  entries_[static_cast<std::size_t>(k * n_ + l)] = std::move(value);
}

double AlgMatrix::op_norm() const {
  const FdAlgebra& alg = algebra();
  double out = 0.0;
  for (int blk = 0; blk < alg.num_blocks(); ++blk) {
    const int d = alg.block_dim(blk);
    ComplexMatrix big(n_ * d, n_ * d);
    for (int k = 0; k < n_; ++k)
      for (int l = 0; l < n_; ++l) big.block(k * d, l * d, d, d) = at(k, l).block(blk);
    out = std::max(out, linalg::op_norm(big));
  }
  return out;
}

ComplexMatrix amplified_eval(const BilinearForm& b, const AlgMatrix& x, const AlgMatrix& y) {
  if (x.n() != y.n()) throw ShapeError("amplified_eval: X and Y must have the same size");
  const int n = x.n();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j) out(k, l) += b(x.at(k, j), y.at(j, l));
  return out;
}

BilinearForm corner_form(int d) {
  // (yx)_{11} = sum_k y_{1k} x_{k1}
  const FdAlgebra alg = FdAlgebra::full(d);
  ComplexMatrix c = ComplexMatrix::Zero(alg.dim(), alg.dim());
  for (int k = 0; k < d; ++k) c(alg.index(0, k, 0), alg.index(0, 0, k)) = 1.0;
  return BilinearForm(alg, alg, std::move(c));
}

CbExample cb_example(int n) {
  if (n < 1) throw ShapeError("cb_example: n must be positive");
  const FdAlgebra alg = FdAlgebra::full(n);
  AlgMatrix x = AlgMatrix::zero(alg, n);
  AlgMatrix y = AlgMatrix::zero(alg, n);
  for (int k = 0; k < n; ++k) {
    x.set(0, k, AlgElement::unit(alg, alg.index(0, k, 0)));
    y.set(k, 0, AlgElement::unit(alg, alg.index(0, 0, k)));
  }
  BilinearForm form = corner_form(n);
  ComplexMatrix amplified = amplified_eval(form, x, y);
  const double xn = x.op_norm();
  const double yn = y.op_norm();
  return {std::move(form), std::move(x), std::move(y), xn, yn, std::move(amplified)};
}

}  // namespace jordan
