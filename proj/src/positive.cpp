#include "jordan/positive.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jordan {

namespace {

double form_residual(const JSRep& j, const BilinearForm& form) {
  double worst = 0.0;
  for (int p = 0; p < form.alg_a().dim(); ++p) {
    const AlgElement ep = AlgElement::unit(form.alg_a(), p);
    for (int q = 0; q < form.alg_b().dim(); ++q) {
      const Complex v = evaluate(j, {ep, AlgElement::unit(form.alg_b(), q)})(0, 0);
      worst = std::max(worst, std::abs(v - form.coeffs()(p, q)));
    }
  }
  return worst;
}

void require_square(const BilinearForm& form, const char* what) {
  if (!(form.alg_a() == form.alg_b())) throw ShapeError(std::string(what) + ": form must act on A x A");
}

}  // namespace

ComplexMatrix sesquilinear_gram(const BilinearForm& form) {
  require_square(form, "sesquilinear_gram");
  const FdAlgebra& alg = form.alg_a();
  const int n = alg.dim();
  ComplexMatrix h(n, n);
  for (int p = 0; p < n; ++p) h.row(p) = form.coeffs().row(alg.adjoint_index(p));
  return h;
}

PositivityResult is_positive(const BilinearForm& form, double tol) {
  const ComplexMatrix h = sesquilinear_gram(form);
  const double scale = std::max(1.0, linalg::max_abs(h));
  const double herm = linalg::max_abs(h - h.adjoint());
  const double min_eig = linalg::min_eigenvalue(h);
  return {herm <= tol * scale && min_eig >= -tol * scale, min_eig, herm};
}

PositiveFormData build_fb(const BilinearForm& form) {
  const PositivityResult pos = is_positive(form);
  if (!pos.positive) {
    std::ostringstream msg;
    msg << "build_fb: form is not positive (min eigenvalue " << pos.min_eigenvalue << ", hermitian residual "
        << pos.hermitian_residual << ")";
    throw NotPositiveError(msg.str());
  }
  const ComplexMatrix h = sesquilinear_gram(form);
  const linalg::PsdFactor factor = linalg::psd_factor(h, 1e-12);
  const ComplexMatrix fb = factor.values.cwiseSqrt().asDiagonal() * factor.vectors.adjoint();
  const double residual = linalg::max_abs(fb.adjoint() * fb - h);
  if (residual > 1e-9 * std::max(1.0, linalg::max_abs(h)))
    throw NotPositiveError("build_fb: inner-product identity fails on the basis");
  return {form, h, HilbertMap(form.alg_a(), fb), factor.dropped, residual};
}

NormSquareReport check_norm_square(const BilinearForm& form, const PositiveFormData& data, int restarts,
                                   std::uint64_t seed, double tol) {
  const double bn = form_norm(form, restarts, seed).value;
  const double fn = hilbertmap_norm(data.fb, restarts, seed).value;
  const double sq = fn * fn;
  const double denom = std::max(bn, sq);
  const double gap = denom > 0.0 ? std::abs(bn - sq) / denom : 0.0;
  return {bn, fn, gap, gap <= tol};
}

JSRep square_fb_rep(const JSRep& jf) {
  if (jf.arity() != 1 || jf.source_dim() != 1)
    throw ShapeError("square_fb_rep: expected a one-slot representation of a Hilbert-space map");
  const ComplexMatrix& t = jf.op(0);
  const ComplexMatrix& xi = jf.op(1);
  return JSRep({jf.rep(0), jf.rep(0)}, {xi.adjoint(), t.adjoint() * t, xi});
}

SymmetrizedRep symmetrize(const JSRep& j, const BilinearForm& form, double tol) {
  require_square(form, "symmetrize");
  if (j.arity() != 2 || j.target_dim() != 1 || j.source_dim() != 1)
    throw ShapeError("symmetrize: expected a bilinear form representation");
  if (!(j.rep(0).algebra() == form.alg_a()) || !(j.rep(1).algebra() == form.alg_a()))
    throw ShapeError("symmetrize: representation and form act on different algebras");
  const PositivityResult pos = is_positive(form);
  if (!pos.positive) {
    std::ostringstream msg;
    msg << "symmetrize: form is not positive (min eigenvalue " << pos.min_eigenvalue << ")";
    throw NotPositiveError(msg.str());
  }
  const ComplexVector eta = j.op(0).adjoint().col(0);
  const ComplexVector xi = j.op(2).col(0);
  const double ne = eta.norm(), nx = xi.norm();
  // A vanishing end vector means the zero map, carried as gamma = 0.
  const bool zero = !(ne > 0.0) || !(nx > 0.0);
  const int l = j.rep(0).space_dim(), r = j.rep(1).space_dim();
  const ComplexMatrix t = zero ? ComplexMatrix::Zero(l, r) : ComplexMatrix((ne * nx) * j.op(1));

  ComplexVector gamma = ComplexVector::Zero(l + r);
  if (!zero) {
    gamma << eta / ne, xi / nx;
    gamma /= std::sqrt(2.0);
  }
  ComplexMatrix s = ComplexMatrix::Zero(l + r, l + r);
  s.topRightCorner(l, r) = t;
  s.bottomLeftCorner(r, l) = t.adjoint();

  JordanSum sum = oplus(j.rep(0), j.rep(1));
  const ComplexMatrix gc = sum.perm * gamma;
  const ComplexMatrix sc = sum.perm * s * sum.perm.transpose();
  JSRep rep({sum.rep, sum.rep}, {gc.adjoint(), sc, gc});
  const double residual = form_residual(rep, form);
  if (residual > tol * std::max(1.0, linalg::max_abs(form.coeffs()))) {
    std::ostringstream msg;
    msg << "symmetrize: evaluation identity fails (residual " << residual << ")";
    throw DomainError(msg.str());
  }
  return {std::move(rep), residual};
}

CompressedRep compress_positive(const JSRep& jsym, const BilinearForm& form) {
  require_square(form, "compress_positive");
  if (jsym.arity() != 2 || jsym.target_dim() != 1 || jsym.source_dim() != 1)
    throw ShapeError("compress_positive: expected a bilinear form representation");
  const ComplexMatrix& gamma = jsym.op(2);
  if (jsym.rep(0).space_dim() != jsym.rep(1).space_dim() ||
      linalg::max_abs(jsym.op(0).adjoint() - gamma) > 1e-12 * std::max(1.0, gamma.norm()))
    throw ShapeError("compress_positive: representation is not self-adjoint (use symmetrize first)");
  const FdAlgebra& alg = form.alg_a();
  const PositiveFormData data = build_fb(form);
  const JordanRep& sigma = jsym.rep(0);
  const int n = sigma.space_dim();

  if (data.fb.target_dim() == 0) {
    JSRep zero = zero_jsrep({alg}, 0, 1);
    return {std::move(zero), ComplexMatrix(n, 0), 0.0, 0.0, 0.0};
  }

  ComplexMatrix y(n, alg.dim());
  for (int p = 0; p < alg.dim(); ++p) y.col(p) = sigma.image(p) * gamma;
  const ComplexMatrix basis = linalg::range_basis(y, 1e-10);
  const ComplexMatrix q = basis * basis.adjoint();
  const ComplexMatrix& s = jsym.op(1);
  const ComplexMatrix qsq = linalg::hermitian_part(q * s * q);
  const double min_eig = linalg::min_eigenvalue(qsq);
  if (min_eig < -1e-8 * std::max(1.0, linalg::op_norm(s))) {
    std::ostringstream msg;
    msg << "compress_positive: QSQ is not positive (min eigenvalue " << min_eig << ")";
    throw NotPositiveError(msg.str());
  }
  const ComplexMatrix root = linalg::psd_sqrt(qsq);
  const ComplexMatrix g = root * y;
  const ComplexMatrix& f = data.fb.matrix();

  // Least-squares frame map G = W0 F_B, then its polar part.
  const ComplexMatrix w0 = g * linalg::pinv(f, 1e-10);
  Eigen::JacobiSVD<ComplexMatrix> svd(w0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const ComplexMatrix w = svd.matrixU() * svd.matrixV().adjoint();
  const double frame = linalg::max_abs(w * f - g);
  if (frame > 1e-8 * std::max(1.0, linalg::max_abs(g))) {
    std::ostringstream msg;
    msg << "compress_positive: frame mismatch (residual " << frame << ")";
    throw DomainError(msg.str());
  }
  const double iso = linalg::max_abs(w.adjoint() * w - ComplexMatrix::Identity(w.cols(), w.cols()));

  JSRep rep({sigma}, {w.adjoint() * root, gamma});
  double residual = 0.0;
  for (int p = 0; p < alg.dim(); ++p)
    residual = std::max(residual, linalg::max_abs(evaluate(rep, {AlgElement::unit(alg, p)}) - f.col(p)));
  return {std::move(rep), w, min_eig, residual, iso};
}

RoundTripReport roundtrip_positive(const JSRep& j, const BilinearForm& form) {
  RoundTripReport out{};
  out.start_bound = bound(j);
  const SymmetrizedRep sym = symmetrize(j, form);
  out.symmetrize_residual = sym.residual;
  const CompressedRep comp = compress_positive(sym.rep, form);
  out.compress_residual = comp.reproduction_residual;
  out.fb_bound = bound(comp.rep);
  out.fb_bound_squared = out.fb_bound * out.fb_bound;
  const JSRep back = square_fb_rep(comp.rep);
  out.final_bound = bound(back);
  out.final_residual = form_residual(back, form);
  out.passed = out.fb_bound_squared <= out.start_bound * (1.0 + 1e-5) &&
               out.final_bound <= out.start_bound * (1.0 + 1e-4) && out.compress_residual <= 1e-8 &&
               out.final_residual <= 1e-8;
  return out;
}

JSRep trace_form_rep(const FdAlgebra& alg) {
  const JordanRep sigma = JordanRep::rep(StarRepTable::left_regular(alg));
  const ComplexVector xi = AlgElement::identity(alg).vec() / std::sqrt(static_cast<double>(alg.rep_dim()));
  return JSRep({sigma, sigma}, {xi.adjoint(), ComplexMatrix::Identity(alg.dim(), alg.dim()), xi});
}

}  // namespace jordan
