#pragma once

// Jordan representations and Jordan-Stinespring factorizations
//   Phi(a_1, ..., a_n) = T_0 sigma_1(a_1) T_1 ... sigma_n(a_n) T_n
// where each sigma_i is an orthogonal sum of a *-representation and a
// *-anti-representation.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "jordan/algebra.hpp"

namespace jordan {

/// Linear map A -> B(K) given extensionally by its images of the matrix units.
class StarRepTable {
 public:
  StarRepTable(FdAlgebra alg, int space_dim, std::vector<ComplexMatrix> images);

  /// The defining representation on C^{d_1 + ... + d_m}.
  static StarRepTable identity(const FdAlgebra& alg);
  /// a -> a^T on the defining space (a *-anti-representation).
  static StarRepTable transpose(const FdAlgebra& alg);
  /// Left multiplication on the algebra itself, C^{dim A}.
  static StarRepTable left_regular(const FdAlgebra& alg);
  static StarRepTable zero(const FdAlgebra& alg, int space_dim);

  const FdAlgebra& algebra() const { return alg_; }
  int space_dim() const { return space_dim_; }
  const std::vector<ComplexMatrix>& images() const { return images_; }
  const ComplexMatrix& image(int index) const { return images_[static_cast<std::size_t>(index)]; }
  ComplexMatrix operator()(const AlgElement& a) const;

  /// max_{p,q} || pi(e_p) pi(e_q) - pi(e_p e_q) || (Frobenius); with
  /// `reversed`, the target is pi(e_q e_p) instead.
  double multiplicativity_residual(bool reversed) const;
  /// max_p || pi(e_p^*) - pi(e_p)^* ||
  double adjoint_residual() const;

 private:
  FdAlgebra alg_;
  int space_dim_;
  std::vector<ComplexMatrix> images_;
};

/// sigma = rep_part (+) anti_part on K = K_rep (+) K_anti, rep coordinates first.
class JordanRep {
 public:
  JordanRep(std::optional<StarRepTable> rep_part, std::optional<StarRepTable> anti_part);

  static JordanRep rep(StarRepTable pi) { return JordanRep(std::move(pi), std::nullopt); }
  static JordanRep anti(StarRepTable rho) { return JordanRep(std::nullopt, std::move(rho)); }

  const FdAlgebra& algebra() const;
  const std::optional<StarRepTable>& rep_part() const { return rep_; }
  const std::optional<StarRepTable>& anti_part() const { return anti_; }
  int rep_dim() const { return rep_ ? rep_->space_dim() : 0; }
  int anti_dim() const { return anti_ ? anti_->space_dim() : 0; }
  int space_dim() const { return rep_dim() + anti_dim(); }

  ComplexMatrix operator()(const AlgElement& a) const;
  ComplexMatrix image(int index) const;

 private:
  std::optional<StarRepTable> rep_;
  std::optional<StarRepTable> anti_;
};

/// Orthogonal sum of two Jordan representations stored canonically; `perm`
/// maps concatenated coordinates (first, then second) to the canonical order.
struct JordanSum {
  JordanRep rep;
  ComplexMatrix perm;
};
JordanSum oplus(const JordanRep& first, const JordanRep& second);

class JSRep {
 public:
  /// operators.size() must be reps.size() + 1 and chain: T_0 is H x K_1,
  /// T_i is K_i x K_{i+1}, T_n is K_n x G. Throws ShapeError otherwise.
  JSRep(std::vector<JordanRep> reps, std::vector<ComplexMatrix> operators);

  int arity() const { return static_cast<int>(reps_.size()); }
  const std::vector<JordanRep>& reps() const { return reps_; }
  const JordanRep& rep(int i) const { return reps_[static_cast<std::size_t>(i)]; }
  const std::vector<ComplexMatrix>& operators() const { return ops_; }
  const ComplexMatrix& op(int i) const { return ops_[static_cast<std::size_t>(i)]; }
  int target_dim() const { return static_cast<int>(ops_.front().rows()); }
  int source_dim() const { return static_cast<int>(ops_.back().cols()); }
  std::vector<FdAlgebra> algebras() const;
  std::vector<int> dims() const;

 private:
  std::vector<JordanRep> reps_;
  std::vector<ComplexMatrix> ops_;
};

struct ValidationReport {
  static constexpr double kTolerance = 1e-8;
  double multiplicativity = 0.0;       ///< rep parts: pi(xy) = pi(x) pi(y)
  double anti_multiplicativity = 0.0;  ///< anti parts: rho(xy) = rho(y) rho(x)
  double self_adjointness = 0.0;
  double positivity = 0.0;             ///< -min eigenvalue of sigma(a^* a) over random a, clipped at 0
  bool shape_chain = true;
  bool passed = false;
};

ValidationReport validate(const JordanRep& sigma, int positivity_trials = 8, std::uint64_t seed = 0);
ValidationReport validate(const JSRep& j, int positivity_trials = 8, std::uint64_t seed = 0);

ComplexMatrix evaluate(const JSRep& j, std::span<const AlgElement> args);
ComplexMatrix evaluate(const JSRep& j, std::initializer_list<AlgElement> args);

/// prod_i ||T_i||
double bound(const JSRep& j);

/// Rescales so that ||T_0|| = ||T_n|| and ||T_i|| = 1 for 0 < i < n.
/// Throws DomainError if an operator vanishes.
JSRep normalize(const JSRep& j);

/// Sum representation of Phi + Psi built from normalized inputs. Throws
/// DomainError on a zero operator and ShapeError on mismatched inputs.
JSRep direct_sum(const JSRep& first, const JSRep& second);

/// True when the represented map vanishes on every tuple of matrix units.
bool is_zero_map(const JSRep& j, double tol = 1e-14);

/// direct_sum with the zero summand short-circuited.
JSRep add(const JSRep& first, const JSRep& second);

/// Zero map of the given shape, realized on one-dimensional zero representations.
JSRep zero_jsrep(const std::vector<FdAlgebra>& algebras, int target_dim, int source_dim);

/// Random bilinear JSRep on A x B; every space has dimension at most 4 and
/// mixes unitarily conjugated irreducible and transposed blocks.
JSRep random_bilinear_jsrep(const FdAlgebra& alg_a, const FdAlgebra& alg_b, Rng& rng);

}  // namespace jordan
