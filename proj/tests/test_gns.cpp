#include "doctest.h"
#include "oracles.hpp"

#include "jordan/gns.hpp"

using namespace jordan;

namespace {

int gram_rank(const State& phi) {
  const FdAlgebra& alg = phi.algebra();
  ComplexMatrix g(alg.dim(), alg.dim());
  for (int q = 0; q < alg.dim(); ++q)
    for (int p = 0; p < alg.dim(); ++p)
      g(q, p) = phi(mul(adjoint(AlgElement::unit(alg, q)), AlgElement::unit(alg, p)));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g);
  const double top = es.eigenvalues().maxCoeff();
  int rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()(i) > 1e-10 * top;
  return rank;
}

}  // namespace

TEST_CASE("vector state on M_d: space_dim d, pi equivalent to the identity representation") {
  for (int d = 1; d <= 4; ++d) {
    const FdAlgebra alg = FdAlgebra::full(d);
    const GnsData g = gns_construct(State::first_vector_state(alg));
    CHECK(g.space_dim == d);
    CHECK(gram_rank(g.state) == d);
    // equivalence: tr pi(a) = tr a and pi(a^* a) has the spectrum of a^* a
    Rng rng(31);
    for (int t = 0; t < 5; ++t) {
      const AlgElement a = AlgElement::random(alg, rng);
      CHECK(std::abs(g.pi(a).trace() - a.block(0).trace()) < 1e-10);
      CHECK(oracle::op_norm(g.pi(a)) == doctest::Approx(oracle::op_norm(a)).epsilon(1e-10));
    }
  }
}

TEST_CASE("normalized trace on M_2: space_dim 4 and phi(a^* a) = Tr(a^* a)/2") {
  const FdAlgebra m2 = FdAlgebra::full(2);
  const GnsData g = gns_construct(State::tracial(m2));
  CHECK(g.space_dim == 4);
  Rng rng(32);
  for (int t = 0; t < 10; ++t) {
    const AlgElement a = AlgElement::random(m2, rng);
    const double direct = (a.block(0).adjoint() * a.block(0)).trace().real() / 2.0;
    CHECK((g.pi(a) * g.cyclic_vector).squaredNorm() == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("state (1,0) on C^2 has a one-dimensional GNS space") {
  const FdAlgebra c2 = FdAlgebra::diagonal(2);
  ComplexMatrix one = ComplexMatrix::Ones(1, 1), zero = ComplexMatrix::Zero(1, 1);
  const GnsData g = gns_construct(State(c2, {one, zero}));
  CHECK(g.space_dim == 1);
  CHECK(oracle::max_abs(g.pi.image(1)) < 1e-15);
  CHECK(std::abs(g.cyclic_vector.norm() - 1.0) < 1e-14);
}

TEST_CASE("identity element gives zero residuals") {
  Rng rng(33);
  const FdAlgebra alg({1, 2});
  const GnsData g = gns_construct(State::random(alg, rng));
  const AlgElement one = AlgElement::identity(alg);
  CHECK(std::abs(g.state(one).real() - (g.pi(one) * g.cyclic_vector).squaredNorm()) < 1e-14);
  CHECK(std::abs(g.state(one).real() - (g.rho(one) * g.cyclic_vector).squaredNorm()) < 1e-14);
}

TEST_CASE("GNS identities on random states") {
  Rng rng(34);
  for (const FdAlgebra& alg : {FdAlgebra::full(2), FdAlgebra::full(3), FdAlgebra({2, 3}), FdAlgebra::diagonal(3)}) {
    for (int t = 0; t < 5; ++t) {
      const State phi = State::random(alg, rng);
      const GnsData g = gns_construct(phi);
      int faithful = 0;
      for (int d : alg.block_dims()) faithful += d * d;
      CHECK(g.space_dim == faithful);
      CHECK(g.space_dim == gram_rank(phi));
      const GnsResidual r = verify_gns(g, 100, 100 + t);
      CHECK(r.worst() < 1e-9);
      CHECK(validate(JordanRep::anti(g.rho)).passed);
      CHECK(validate(JordanRep::rep(g.pi)).passed);
      CHECK(g.rho.multiplicativity_residual(true) < 1e-9);
      // the basis is unitary with first column xi, and J fixes xi
      const ComplexMatrix& q = g.conjugation_basis;
      CHECK(oracle::max_abs(q.adjoint() * q - ComplexMatrix::Identity(g.space_dim, g.space_dim)) < 1e-12);
      CHECK(oracle::max_abs(q.col(0) - g.cyclic_vector) < 1e-12);
      CHECK(oracle::max_abs(g.conjugate(g.cyclic_vector) - g.cyclic_vector) < 1e-12);
      // J is an involution, conjugate-linear and isometric
      const ComplexVector v = linalg::random_gaussian(g.space_dim, 1, rng).col(0);
      CHECK(oracle::max_abs(g.conjugate(g.conjugate(v)) - v) < 1e-12);
      CHECK(g.conjugate(v).norm() == doctest::Approx(v.norm()).epsilon(1e-12));
      const Complex c(0.3, 0.7);
      CHECK(oracle::max_abs(g.conjugate(c * v) - std::conj(c) * g.conjugate(v)) < 1e-12);
    }
  }
}

TEST_CASE("low-rank states keep the identities") {
  Rng rng(35);
  for (const FdAlgebra& alg : {FdAlgebra::full(3), FdAlgebra({2, 3})}) {
    const State phi = State::random_rank(alg, 1, rng);
    const GnsData g = gns_construct(phi);
    CHECK(g.space_dim == gram_rank(phi));
    CHECK(verify_gns(g, 100, 1).worst() < 1e-9);
    CHECK(validate(JordanRep::anti(g.rho)).passed);
  }
}
