#include "jordan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jordan::linalg {

namespace {

Eigen::JacobiSVD<ComplexMatrix> thin_svd(const ComplexMatrix& m) {
  return Eigen::JacobiSVD<ComplexMatrix>(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

}  // namespace

double op_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

ComplexMatrix pinv(const ComplexMatrix& m, double rel_cutoff) {
  ComplexMatrix out = ComplexMatrix::Zero(m.cols(), m.rows());
  if (m.size() == 0) return out;
  auto svd = thin_svd(m);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return out;
  const double cut = rel_cutoff * s(0);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) <= cut) break;
    out += svd.matrixV().col(k) * (1.0 / s(k)) * svd.matrixU().col(k).adjoint();
  }
  return out;
}

ComplexMatrix range_basis(const ComplexMatrix& m, double rel_cutoff) {
  if (m.size() == 0) return ComplexMatrix(m.rows(), 0);
  auto svd = thin_svd(m);
  const RealVector& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    while (rank < s.size() && s(rank) > rel_cutoff * s(0)) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  if (h.size() == 0) return h;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h));
  RealVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

double min_eigenvalue(const ComplexMatrix& h) {
  if (h.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

PsdFactor psd_factor(const ComplexMatrix& h, double rel_cutoff) {
  PsdFactor out;
  const Eigen::Index n = h.rows();
  if (n == 0) {
    out.vectors = ComplexMatrix(0, 0);
    out.values = RealVector(0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(h));
  const RealVector& ev = es.eigenvalues();
  const double top = std::max(ev(n - 1), 0.0);
  // Eigenvalues are ascending; keep the largest ones, listed in descending order.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    if (top > 0.0 && ev(k) > rel_cutoff * top) keep.push_back(k);
  }
  out.vectors = ComplexMatrix(n, static_cast<Eigen::Index>(keep.size()));
  out.values = RealVector(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.vectors.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(keep[i]);
    out.values(static_cast<Eigen::Index>(i)) = ev(keep[i]);
  }
  out.dropped = static_cast<int>(n) - static_cast<int>(keep.size());
  return out;
}

ComplexMatrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace jordan::linalg
