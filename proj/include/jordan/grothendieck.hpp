#pragma once

// Witness states for the non-commutative Grothendieck inequalities
//   |B(a, b)| <= ||B|| sqrt(kappa(a^* a) + lambda(a a^*)) sqrt(mu(b^* b) + nu(b b^*))
//   ||F(a)||  <= ||F|| sqrt(psi(a^* a) + phi(a a^*))
// and the Jordan-Stinespring factorizations they induce.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jordan/forms.hpp"
#include "jordan/gns.hpp"
#include "jordan/jsrep.hpp"

namespace jordan {

/// kappa, lambda on A; mu, nu on B.
struct BilinearWitness {
  State kappa;
  State lambda;
  State mu;
  State nu;
};

struct LittleWitness {
  State psi;
  State phi;
};

/// kappa = nu = vector state at delta_1 and lambda = mu = trace: a witness for
/// the corner form (yx)_{11} on M_d.
BilinearWitness corner_witness(int d);
/// phi = vector state at delta_1 (first-row map) or psi = vector state at
/// delta_1 (first-column map); the other state is the trace.
LittleWitness row_map_witness(int d);
LittleWitness column_map_witness(int d);

/// Hermitian matrix Q with x^* Q x = s(a^* a) + t(a a^*) for x = vec(a).
ComplexMatrix witness_gram(const State& s, const State& t);

/// Smallest c with |B(a,b)| <= c sqrt(f(a)) sqrt(g(b)) for the given states,
/// with a pair attaining it (normalized to f(a) = g(b) = 1). When B does not
/// vanish where f or g does, value is +inf and (a, b) is a witness of that.
struct WitnessConstant {
  double value;
  AlgElement a;
  std::optional<AlgElement> b;
  double leak;
};
WitnessConstant witness_constant(const BilinearForm& form, const BilinearWitness& w);
WitnessConstant witness_constant(const HilbertMap& map, const LittleWitness& w);

/// |B(a,b)| - norm * sqrt(kappa(a^*a) + lambda(aa^*)) sqrt(mu(b^*b) + nu(bb^*))
double witness_violation(const BilinearForm& form, const BilinearWitness& w, double norm, const AlgElement& a,
                         const AlgElement& b);
/// ||F(a)|| - norm * sqrt(psi(a^*a) + phi(aa^*))
double witness_violation(const HilbertMap& map, const LittleWitness& w, double norm, const AlgElement& a);

struct WitnessReport {
  double max_violation;  ///< positive: the inequality fails at worst_pair
  AlgElement worst_a;
  std::optional<AlgElement> worst_b;
  double norm_estimate_used;
  double witness_constant;
};

/// Maximizes the violation over the unit balls: the exact constant-attaining
/// pair plus projected ascent from `restarts` random starts.
WitnessReport check_witness(const BilinearForm& form, const BilinearWitness& w, double norm, int restarts = 8,
                            std::uint64_t seed = 0);
WitnessReport check_witness(const HilbertMap& map, const LittleWitness& w, double norm, int restarts = 8,
                            std::uint64_t seed = 0);

struct WitnessSearchOptions {
  int iters = 500;
  std::uint64_t seed = 0;
  double step = 0.1;
  double eigen_floor = 1e-8;
  /// Stop as soon as the witness constant drops to this value.
  std::optional<double> target;
};

template <class Witness>
struct WitnessSearchResult {
  Witness states;
  double constant;
  int iterations;  ///< MW steps taken
  bool reached_target;
};
using BilinearWitnessSearch = WitnessSearchResult<BilinearWitness>;
using LittleWitnessSearch = WitnessSearchResult<LittleWitness>;

/// Matrix multiplicative weights: each density moves along the direction
/// (a^* a, a a^*, b^* b, b b^*) of the pair attaining the current constant,
/// rho <- normalize(exp(log rho + step * D)).
BilinearWitnessSearch find_witness_bilinear(const BilinearForm& form, const WitnessSearchOptions& options = {});
LittleWitnessSearch find_witness_little(const HilbertMap& map, const WitnessSearchOptions& options = {});

class FactorizationError : public std::runtime_error {
 public:
  enum class Kind { Inconsistent, NormExcess, Structure };
  FactorizationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct FactorizeTolerances {
  double pinv_cutoff = 1e-10;
  double reproduction = 1e-8;
  double norm_slack = 1e-6;
};

struct Factorization {
  JSRep rep;
  double middle_norm;  ///< ||S|| or ||T||
  double reproduction_residual;
  double bound;
};

/// F(a) = S (pi_psi(a) (+) rho_phi(a)) (xi_psi, xi_phi), with S the
/// minimal-norm solution over the basis. bound = sqrt(2) ||S||.
Factorization factorize_little(const HilbertMap& map, const LittleWitness& w, double norm,
                               const FactorizeTolerances& tol = {});

/// B(a, b) = <T (pi_mu(b) (+) rho_nu(b)) (xi_mu, xi_nu), (pi_lambda(a^*) (+) rho_kappa(a^*)) (xi_lambda, xi_kappa)>
/// read as a bilinear JSRep with end vectors of norm sqrt(2). bound = 2 ||T||.
Factorization factorize_bilinear(const BilinearForm& form, const BilinearWitness& w, double norm,
                                 const FactorizeTolerances& tol = {});

/// The corner form (yx)_{11} on M_d through the transposition anti-representation:
/// delta_1^T x^T y^T delta_1.
JSRep transpose_factorization_example(int d);

/// Pieces with the middle operator restricted to the blocks
/// (rep, rep), (anti, anti), (rep, anti), (anti, rep), in that order.
std::array<JSRep, 4> split_four(const JSRep& j);

struct RatioScanConfig {
  std::vector<FdAlgebra> algebras;
  int max_rank = 2;
  /// Every third instance is a Hilbert-space map instead of a form when set.
  bool include_maps = false;
  int restarts = 32;
  int search_iters = 500;
  FactorizeTolerances tolerances;
};

struct RatioReport {
  int index;
  std::string kind;  ///< "bilinear" or "map"
  std::vector<int> blocks;
  int rank;
  double norm_lower;
  double jordan_upper;
  double ratio;
  double witness_constant;
  double violation;
  bool success;
  std::string failure;
};

std::vector<RatioReport> ratio_scan(const RatioScanConfig& config, int count, std::uint64_t seed);
std::string ratio_csv(const std::vector<RatioReport>& reports);

}  // namespace jordan
