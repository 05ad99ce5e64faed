#include "jordan/gns.hpp"

#include <algorithm>
#include <cmath>

namespace jordan {

namespace {

constexpr double kGramPsdTolerance = 1e-9;

// Orthonormal basis of C^n whose first column is xi: Gram-Schmidt over xi
// followed by the standard basis vectors in index order.
ComplexMatrix complete_basis(const ComplexVector& xi) {
  const Eigen::Index n = xi.size();
  ComplexMatrix q(n, n);
  q.col(0) = xi / xi.norm();
  Eigen::Index filled = 1;
  for (Eigen::Index k = 0; k < n && filled < n; ++k) {
    ComplexVector v = ComplexVector::Unit(n, k);
    for (int pass = 0; pass < 2; ++pass)
      v -= q.leftCols(filled) * (q.leftCols(filled).adjoint() * v);
    const double len = v.norm();
    if (len < 1e-8) continue;
    q.col(filled++) = v / len;
  }
  return q;
}

}  // namespace

ComplexVector GnsData::conjugate(const ComplexVector& alpha) const {
  return conjugation_basis * (conjugation_basis.adjoint() * alpha).conjugate();
}

GnsData gns_construct(const State& phi, const GnsOptions& options) {
  const FdAlgebra& alg = phi.algebra();
  const int n = alg.dim();

  // gram(q, p) = phi(e_q^* e_p), so <x, y> = y^* gram x.
  ComplexMatrix gram = ComplexMatrix::Zero(n, n);
  for (int q = 0; q < n; ++q) {
    const int qs = alg.adjoint_index(q);
    for (int p = 0; p < n; ++p)
      if (auto r = alg.product_index(qs, p)) gram(q, p) = phi(AlgElement::unit(alg, *r));
  }
  const double scale = std::max(1.0, linalg::max_abs(gram));
  if (linalg::min_eigenvalue(gram) < -kGramPsdTolerance * scale)
    throw DomainError("gns_construct: Gram matrix is not positive semidefinite");

  const linalg::PsdFactor factor = linalg::psd_factor(gram, options.kernel_cutoff);
  const int r = static_cast<int>(factor.values.size());
  if (r == 0) throw DomainError("gns_construct: state vanishes identically");
  const RealVector root = factor.values.cwiseSqrt();
  const ComplexMatrix embed = root.asDiagonal() * factor.vectors.adjoint();
  const ComplexMatrix lift = factor.vectors * root.cwiseInverse().asDiagonal();  // embed * lift = I

  const StarRepTable left = StarRepTable::left_regular(alg);
  std::vector<ComplexMatrix> pi_images;
  for (int p = 0; p < n; ++p) pi_images.push_back(embed * left.image(p) * lift);
  StarRepTable pi(alg, r, std::move(pi_images));

  const ComplexVector xi = embed * AlgElement::identity(alg).vec();
  const ComplexMatrix basis = complete_basis(xi);

  // rho(e_p) = J pi(e_p^*) J = Q conj(Q^* pi(e_p^*) Q) Q^*
  std::vector<ComplexMatrix> rho_images;
  for (int p = 0; p < n; ++p) {
    const ComplexMatrix inner = basis.adjoint() * pi.image(alg.adjoint_index(p)) * basis;
    rho_images.push_back(basis * inner.conjugate() * basis.adjoint());
  }
  StarRepTable rho(alg, r, std::move(rho_images));

  return GnsData{alg, phi, r, embed, xi, std::move(pi), basis, std::move(rho)};
}

double GnsResidual::worst() const {
  return std::max({pi_identity, rho_identity, conjugation_identity, embed_identity, module_identity,
                   rho_anti_multiplicativity, pi_multiplicativity});
}

GnsResidual verify_gns(const GnsData& g, int trials, std::uint64_t seed) {
  GnsResidual out;
  Rng rng(seed);
  const ComplexVector& xi = g.cyclic_vector;
  for (int t = 0; t < trials; ++t) {
    const AlgElement a = AlgElement::random(g.alg, rng);
    const AlgElement x = AlgElement::random(g.alg, rng);
    const AlgElement as = adjoint(a);
    const double lhs_pi = g.state(mul(as, a)).real();
    const double lhs_rho = g.state(mul(a, as)).real();
    out.pi_identity = std::max(out.pi_identity, std::abs(lhs_pi - (g.pi(a) * xi).squaredNorm()));
    out.rho_identity = std::max(out.rho_identity, std::abs(lhs_rho - (g.rho(a) * xi).squaredNorm()));

    const ComplexVector ex = g.embed * x.vec();
    const ComplexVector ea = g.embed * a.vec();
    out.embed_identity = std::max(out.embed_identity, std::abs(ea.dot(ex) - g.state(mul(adjoint(a), x))));
    out.module_identity =
        std::max(out.module_identity, (g.pi(a) * ex - g.embed * mul(a, x).vec()).norm());

    const ComplexVector alpha = linalg::random_gaussian(g.space_dim, 1, rng).col(0);
    const ComplexVector beta = linalg::random_gaussian(g.space_dim, 1, rng).col(0);
    // <u, v> = v^* u
    const Complex lhs = beta.dot(g.conjugate(alpha));
    const Complex rhs = alpha.dot(g.conjugate(beta));
    out.conjugation_identity = std::max(out.conjugation_identity, std::abs(lhs - rhs));
  }
  out.rho_anti_multiplicativity = g.rho.multiplicativity_residual(true);
  out.pi_multiplicativity = g.pi.multiplicativity_residual(false);
  return out;
}

}  // namespace jordan
