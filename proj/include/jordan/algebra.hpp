#pragma once

// Finite-dimensional C*-algebras: direct sums of full matrix blocks, their
// elements, states, and linear functionals.
//
// Basis order used by every vectorization in the library: blocks in
// declaration order, and inside a block of size d the matrix unit e_ij sits at
// offset i * d + j.

#include <optional>
#include <vector>

#include "jordan/linalg.hpp"

namespace jordan {

class FdAlgebra {
 public:
  struct Unit {
    int block;
    int row;
    int col;
  };

  FdAlgebra() : FdAlgebra(std::vector<int>{1}) {}
  explicit FdAlgebra(std::vector<int> block_dims);

  static FdAlgebra full(int d) { return FdAlgebra({d}); }
  /// The commutative algebra C^n as n one-dimensional blocks.
  static FdAlgebra diagonal(int n) { return FdAlgebra(std::vector<int>(static_cast<std::size_t>(n), 1)); }

  const std::vector<int>& block_dims() const { return dims_; }
  int num_blocks() const { return static_cast<int>(dims_.size()); }
  int block_dim(int k) const { return dims_[static_cast<std::size_t>(k)]; }
  int offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }
  int dim() const { return offsets_.back(); }
  /// Sum of block sizes: dimension of the defining representation.
  int rep_dim() const;

  int index(int block, int row, int col) const;
  Unit unit(int index) const;
  /// Index of e_p^*.
  int adjoint_index(int p) const;
  /// Index of e_p e_q, or nothing when the product vanishes.
  std::optional<int> product_index(int p, int q) const;

  bool operator==(const FdAlgebra& other) const { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
};

class AlgElement {
 public:
  AlgElement(FdAlgebra alg, std::vector<ComplexMatrix> blocks);

  static AlgElement zero(const FdAlgebra& alg);
  static AlgElement identity(const FdAlgebra& alg);
  static AlgElement unit(const FdAlgebra& alg, int index);
  static AlgElement from_vec(const FdAlgebra& alg, const ComplexVector& v);
  /// Gaussian entries; not normalized.
  static AlgElement random(const FdAlgebra& alg, Rng& rng);
  /// Gaussian direction rescaled to operator norm one.
  static AlgElement random_unit(const FdAlgebra& alg, Rng& rng);

  const FdAlgebra& algebra() const { return alg_; }
  const std::vector<ComplexMatrix>& blocks() const { return blocks_; }
  const ComplexMatrix& block(int k) const { return blocks_[static_cast<std::size_t>(k)]; }

  ComplexVector vec() const;
  Complex coeff(int index) const;

  AlgElement operator+(const AlgElement& other) const;
  AlgElement operator-(const AlgElement& other) const;
  AlgElement operator*(Complex s) const;

 private:
  FdAlgebra alg_;
  std::vector<ComplexMatrix> blocks_;
};

AlgElement mul(const AlgElement& x, const AlgElement& y);
AlgElement adjoint(const AlgElement& x);
/// C*-norm: the largest singular value over all blocks.
double op_norm(const AlgElement& x);
/// Blockwise singular values clipped to at most one.
AlgElement project_unit_ball(const AlgElement& x);

/// Positive normalized functional phi(a) = sum_k Tr(rho_k a_k).
class State {
 public:
  static constexpr double kPsdTolerance = 1e-9;
  static constexpr double kTraceTolerance = 1e-9;

  /// Validates and clips: eigenvalues >= -1e-9 * largest are accepted and
  /// negative tails are set to zero. Throws DomainError otherwise, or if the
  /// total trace differs from one by more than 1e-9.
  State(FdAlgebra alg, std::vector<ComplexMatrix> densities);

  /// Rescales a PSD block family to unit trace before validating.
  static State normalized(FdAlgebra alg, std::vector<ComplexMatrix> densities);
  /// Normalized trace over the defining representation (each block weighted by its size).
  static State tracial(const FdAlgebra& alg);
  /// Vector state a -> <a_k v, v> on block k; v is normalized internally.
  static State vector_state(const FdAlgebra& alg, int block, const ComplexVector& v);
  /// Vector state at the first standard basis vector of block 0.
  static State first_vector_state(const FdAlgebra& alg);
  /// Random faithful state (Wishart densities, normalized).
  static State random(const FdAlgebra& alg, Rng& rng);
  /// Random state whose blocks have rank at most `rank`.
  static State random_rank(const FdAlgebra& alg, int rank, Rng& rng);

  const FdAlgebra& algebra() const { return alg_; }
  const std::vector<ComplexMatrix>& densities() const { return densities_; }
  const ComplexMatrix& density(int k) const { return densities_[static_cast<std::size_t>(k)]; }

  Complex operator()(const AlgElement& a) const;

 private:
  FdAlgebra alg_;
  std::vector<ComplexMatrix> densities_;
};

Complex apply_state(const State& phi, const AlgElement& a);

/// Linear functional f(y) = sum_p c_p y_p on an algebra, with c stored
/// blockwise as coefficient matrices (C_k)_ij = c_{index(k,i,j)}.
class LinearFunctional {
 public:
  LinearFunctional(FdAlgebra alg, std::vector<ComplexMatrix> coeffs);
  static LinearFunctional from_vec(const FdAlgebra& alg, const ComplexVector& c);
  static LinearFunctional from_state(const State& phi);

  const FdAlgebra& algebra() const { return alg_; }
  const std::vector<ComplexMatrix>& coeffs() const { return coeffs_; }
  Complex operator()(const AlgElement& y) const;

 private:
  FdAlgebra alg_;
  std::vector<ComplexMatrix> coeffs_;
};

struct FunctionalNorm {
  double value;
  /// Unitary (blockwise) element u with f(u) = value, real and nonnegative.
  AlgElement maximizer;
};

/// Dual norm: sum of blockwise trace norms, with its maximizer from the polar
/// decomposition of each coefficient block.
FunctionalNorm functional_norm(const LinearFunctional& f);

}  // namespace jordan
