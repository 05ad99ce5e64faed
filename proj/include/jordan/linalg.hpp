#pragma once

// Dense complex linear algebra helpers shared by every module.

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace jordan {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Raised when operands do not have compatible shapes or algebras.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an input violates a numerical precondition (non-PSD density,
/// unnormalized state, zero operator where a nonzero one is required).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace linalg {

/// Largest singular value; 0 for empty matrices.
double op_norm(const ComplexMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const ComplexMatrix& m);

/// Moore-Penrose pseudoinverse with singular values below
/// rel_cutoff * (largest singular value) treated as zero.
ComplexMatrix pinv(const ComplexMatrix& m, double rel_cutoff);

/// Orthonormal basis (as columns) of the column space of m.
ComplexMatrix range_basis(const ComplexMatrix& m, double rel_cutoff);

/// (m + m*) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Square root of the PSD part of a Hermitian matrix (negative eigenvalues
/// clipped to zero).
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

/// Smallest eigenvalue of the Hermitian part of h; +inf for empty input.
double min_eigenvalue(const ComplexMatrix& h);

/// Block diagonal matrix diag(a, b).
ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hermitian eigenbasis restricted to eigenvalues above rel_cutoff * max.
struct PsdFactor {
  ComplexMatrix vectors;  ///< n x r, orthonormal columns
  RealVector values;      ///< r positive eigenvalues
  int dropped = 0;
};
PsdFactor psd_factor(const ComplexMatrix& h, double rel_cutoff);

/// Matrix of iid standard complex Gaussians (real and imaginary parts N(0, 1/2)).
ComplexMatrix random_gaussian(int rows, int cols, Rng& rng);

}  // namespace linalg
}  // namespace jordan
