#pragma once

// GNS construction of a state together with the basis conjugation J that
// fixes the cyclic vector and the induced *-anti-representation
// rho(a) = J pi(a^*) J.

#include "jordan/jsrep.hpp"

namespace jordan {

struct GnsData {
  FdAlgebra alg;
  State state;
  int space_dim;
  /// space_dim x dim(A): vec(a) -> class of a; <embed x, embed y> = phi(y^* x).
  ComplexMatrix embed;
  ComplexVector cyclic_vector;
  StarRepTable pi;
  /// Unitary whose first column is the cyclic vector; J conjugates
  /// coordinates in this basis.
  ComplexMatrix conjugation_basis;
  StarRepTable rho;

  /// J(alpha) = Q conj(Q^* alpha)
  ComplexVector conjugate(const ComplexVector& alpha) const;
};

struct GnsOptions {
  double kernel_cutoff = 1e-12;  ///< relative to the largest Gram eigenvalue
};

/// Throws DomainError if the Gram matrix phi(e_q^* e_p) is not PSD.
GnsData gns_construct(const State& phi, const GnsOptions& options = {});

struct GnsResidual {
  double pi_identity = 0.0;         ///< |phi(a^* a) - ||pi(a) xi||^2|
  double rho_identity = 0.0;        ///< |phi(a a^*) - ||rho(a) xi||^2|
  double conjugation_identity = 0.0;  ///< |<J alpha, beta> - <J beta, alpha>|
  double embed_identity = 0.0;      ///< |<embed x, embed y> - phi(y^* x)|
  double module_identity = 0.0;     ///< ||pi(a) embed(x) - embed(ax)||
  double rho_anti_multiplicativity = 0.0;
  double pi_multiplicativity = 0.0;
  /// max of all of the above
  double worst() const;
};

GnsResidual verify_gns(const GnsData& g, int trials, std::uint64_t seed);

}  // namespace jordan
