#pragma once

// Bilinear forms on pairs of algebras, linear maps into Hilbert spaces, norm
// estimation by alternating maximization, and matrix amplification.

#include <optional>
#include <vector>

#include "jordan/algebra.hpp"

namespace jordan {

/// B(x, y) = vec(x)^T * coeffs * vec(y).
class BilinearForm {
 public:
  BilinearForm(FdAlgebra alg_a, FdAlgebra alg_b, ComplexMatrix coeffs);

  static BilinearForm zero(const FdAlgebra& alg_a, const FdAlgebra& alg_b);
  /// B(x, y) = phi(x) psi(y).
  static BilinearForm product(const State& phi, const State& psi);
  /// B(x, y) = Tr(xy) / d on M_d (trace over the defining representation, normalized).
  static BilinearForm trace_form(const FdAlgebra& alg);
  /// Random form whose coefficient matrix has rank at most `rank`.
  static BilinearForm random_rank(const FdAlgebra& alg_a, const FdAlgebra& alg_b, int rank, Rng& rng);

  const FdAlgebra& alg_a() const { return alg_a_; }
  const FdAlgebra& alg_b() const { return alg_b_; }
  const ComplexMatrix& coeffs() const { return coeffs_; }

  Complex operator()(const AlgElement& x, const AlgElement& y) const;
  BilinearForm scaled(Complex s) const { return BilinearForm(alg_a_, alg_b_, s * coeffs_); }
  bool is_zero() const { return coeffs_.size() == 0 || linalg::max_abs(coeffs_) == 0.0; }

 private:
  FdAlgebra alg_a_;
  FdAlgebra alg_b_;
  ComplexMatrix coeffs_;
};

Complex eval(const BilinearForm& b, const AlgElement& x, const AlgElement& y);

/// F(a) = matrix * vec(a), a vector in C^target_dim.
class HilbertMap {
 public:
  HilbertMap(FdAlgebra alg, ComplexMatrix matrix);

  /// a -> a * delta_1 (first column) on M_d.
  static HilbertMap column_map(int d);
  /// x -> (x_{1k})_k (first row) on M_d.
  static HilbertMap row_map(int d);

  const FdAlgebra& algebra() const { return alg_; }
  int target_dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

  ComplexVector operator()(const AlgElement& a) const;
  bool is_zero() const { return matrix_.size() == 0 || linalg::max_abs(matrix_) == 0.0; }

 private:
  FdAlgebra alg_;
  ComplexMatrix matrix_;
};

struct NormEstimate {
  double value = 0.0;
  AlgElement maximizer_x;
  /// Second maximizer for bilinear forms; empty for Hilbert-space maps.
  std::optional<AlgElement> maximizer_y;
  bool converged = false;
  int restarts_used = 0;
};

struct AscentOptions {
  int restarts = 32;
  std::uint64_t seed = 0;
  int max_sweeps = 500;
  double tolerance = 1e-12;
};

/// Best-found lower bound on sup |B(x, y)| over the unit balls. Every half
/// step is the exact dual-norm maximization of a linear functional.
NormEstimate form_norm(const BilinearForm& b, const AscentOptions& options = {});
NormEstimate form_norm(const BilinearForm& b, int restarts, std::uint64_t seed);

/// Best-found lower bound on sup ||F(a)|| over the unit ball.
NormEstimate hilbertmap_norm(const HilbertMap& f, const AscentOptions& options = {});
NormEstimate hilbertmap_norm(const HilbertMap& f, int restarts, std::uint64_t seed);

/// An n x n matrix whose entries are algebra elements (an element of M_n(A)).
class AlgMatrix {
 public:
  AlgMatrix(int n, std::vector<AlgElement> entries);
  static AlgMatrix zero(const FdAlgebra& alg, int n);

  int n() const { return n_; }
  const FdAlgebra& algebra() const { return entries_.front().algebra(); }
  const AlgElement& at(int k, int l) const { return entries_[static_cast<std::size_t>(k * n_ + l)]; }
  void set(int k, int l, AlgElement value);

  /// Norm in M_n(A): the largest over algebra blocks of the assembled
  /// (n d) x (n d) operator norm.
  double op_norm() const;

 private:
  int n_;
  std::vector<AlgElement> entries_;
};

/// B_n(X, Y)_{kl} = sum_j B(X_{kj}, Y_{jl}).
ComplexMatrix amplified_eval(const BilinearForm& b, const AlgMatrix& x, const AlgMatrix& y);

/// B(X, Y) = (YX)_{11} on M_n together with the partial isometries
/// X = sum_k e_{k1} (x) f_{1k} and Y = sum_k e_{1k} (x) f_{k1}.
struct CbExample {
  BilinearForm form;
  AlgMatrix x;
  AlgMatrix y;
  double x_norm;
  double y_norm;
  ComplexMatrix amplified;
};

/// The form B(x, y) = (yx)_{11} on M_d x M_d.
BilinearForm corner_form(int d);

CbExample cb_example(int n);

}  // namespace jordan
