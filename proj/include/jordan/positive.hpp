#pragma once

// Positive bilinear forms B(a^*, a) >= 0 on a single algebra: the associated
// Hilbert-space map F_B with <F_B(x), F_B(y)> = B(y^*, x), and conversions
// between Jordan-Stinespring representations of B and of F_B.

#include "jordan/forms.hpp"
#include "jordan/jsrep.hpp"

namespace jordan {

class NotPositiveError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct PositivityResult {
  bool positive;
  double min_eigenvalue;
  double hermitian_residual;
};

/// Sesquilinear Gram matrix H_pq = B(e_p^*, e_q), so that B(a^*, a) = x^* H x.
ComplexMatrix sesquilinear_gram(const BilinearForm& form);

/// PSD test of the Gram matrix. Throws ShapeError for forms on A x B with A != B.
PositivityResult is_positive(const BilinearForm& form, double tol = 1e-9);

struct PositiveFormData {
  BilinearForm form;
  ComplexMatrix gram;
  HilbertMap fb;
  int kernel_dim;
  double identity_residual;  ///< max |<F_B e_q, F_B e_p> - B(e_p^*, e_q)|
};

/// Throws NotPositiveError when the Gram matrix is not PSD.
PositiveFormData build_fb(const BilinearForm& form);

struct NormSquareReport {
  double form_norm;
  double map_norm;
  double relative_gap;  ///< |form_norm - map_norm^2| / max(form_norm, map_norm^2)
  bool passed;
};

NormSquareReport check_norm_square(const BilinearForm& form, const PositiveFormData& data, int restarts = 32,
                                   std::uint64_t seed = 0, double tol = 1e-5);

/// B(a, b) = xi^* sigma(a) (T^* T) sigma(b) xi from F(a) = T sigma(a) xi.
JSRep square_fb_rep(const JSRep& jf);

struct SymmetrizedRep {
  JSRep rep;
  double residual;  ///< max over basis pairs of |evaluate - B|
};

/// Self-adjoint representation gamma^* sigma(a) S sigma(b) gamma with
/// S = [[0, T], [T^*, 0]] and gamma = (eta, xi) / sqrt(2). Throws
/// NotPositiveError if B is not positive, DomainError if the evaluation
/// identity fails beyond tol.
SymmetrizedRep symmetrize(const JSRep& j, const BilinearForm& form, double tol = 1e-9);

struct CompressedRep {
  JSRep rep;           ///< JSRep of F_B: W^* (QSQ)^{1/2} sigma(a) gamma
  ComplexMatrix isometry;  ///< W
  double qsq_min_eigenvalue;
  double reproduction_residual;
  double isometry_residual;  ///< ||W^* W - I||
};

/// Compresses a self-adjoint representation onto the cyclic subspace of
/// gamma. Throws NotPositiveError if QSQ is not PSD and DomainError on a
/// frame mismatch.
CompressedRep compress_positive(const JSRep& jsym, const BilinearForm& form);

struct RoundTripReport {
  double start_bound;
  double fb_bound;
  double fb_bound_squared;
  double final_bound;
  double symmetrize_residual;
  double compress_residual;
  double final_residual;
  bool passed;  ///< fb_bound^2 <= start (1 + 1e-5) and final within (1 + 1e-4) of start
};

RoundTripReport roundtrip_positive(const JSRep& j, const BilinearForm& form);

/// tr(xy) / n through the left regular representation on the algebra with
/// end vectors vec(1) / sqrt(n).
JSRep trace_form_rep(const FdAlgebra& alg);

}  // namespace jordan
