#pragma once

// Independent reference computations for the tests: naive loops and
// Hermitian eigen-decompositions instead of the library's SVD paths.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "jordan/algebra.hpp"
#include "jordan/forms.hpp"
#include "jordan/jsrep.hpp"

namespace oracle {

using jordan::AlgElement;
using jordan::Complex;
using jordan::ComplexMatrix;
using jordan::FdAlgebra;

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c = ComplexMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

/// sqrt of the largest eigenvalue of m^* m.
inline double op_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  const ComplexMatrix g = m.rows() >= m.cols() ? ComplexMatrix(m.adjoint() * m) : ComplexMatrix(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline double trace_norm(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ComplexMatrix(m.adjoint() * m));
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) s += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  return s;
}

inline double op_norm(const AlgElement& x) {
  double n = 0.0;
  for (const auto& b : x.blocks()) n = std::max(n, op_norm(b));
  return n;
}

/// sum_k Tr(rho_k a_k) by explicit summation.
inline Complex state_value(const std::vector<ComplexMatrix>& densities, const AlgElement& a) {
  Complex s = 0.0;
  for (std::size_t k = 0; k < densities.size(); ++k)
    for (Eigen::Index i = 0; i < a.block(static_cast<int>(k)).rows(); ++i)
      for (Eigen::Index j = 0; j < a.block(static_cast<int>(k)).cols(); ++j)
        s += densities[k](i, j) * a.block(static_cast<int>(k))(j, i);
  return s;
}

/// sum_{p,q} x_p C_pq y_q with indices rebuilt from (block, row, col).
inline Complex form_value(const jordan::BilinearForm& b, const AlgElement& x, const AlgElement& y) {
  Complex s = 0.0;
  const FdAlgebra& fa = b.alg_a();
  const FdAlgebra& fb = b.alg_b();
  for (int k = 0; k < fa.num_blocks(); ++k)
    for (int i = 0; i < fa.block_dim(k); ++i)
      for (int j = 0; j < fa.block_dim(k); ++j)
        for (int l = 0; l < fb.num_blocks(); ++l)
          for (int r = 0; r < fb.block_dim(l); ++r)
            for (int c = 0; c < fb.block_dim(l); ++c)
              s += x.block(k)(i, j) * b.coeffs()(fa.index(k, i, j), fb.index(l, r, c)) * y.block(l)(r, c);
  return s;
}

/// (yx)_{11} on M_d.
inline Complex corner(const AlgElement& x, const AlgElement& y) { return matmul(y.block(0), x.block(0))(0, 0); }

inline AlgElement unit(int d, int i, int j) { return AlgElement::unit(FdAlgebra::full(d), FdAlgebra::full(d).index(0, i, j)); }

inline double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Random element with op_norm at most one.
inline AlgElement random_ball(const FdAlgebra& alg, jordan::Rng& rng) { return AlgElement::random_unit(alg, rng); }

}  // namespace oracle
