#include "jordan/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace jordan {

namespace {

void require_same(const FdAlgebra& a, const FdAlgebra& b, const char* what) {
  if (!(a == b)) throw ShapeError(std::string(what) + ": algebras differ");
}

}  // namespace

// ---------------------------------------------------------------------------
// FdAlgebra

FdAlgebra::FdAlgebra(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw ShapeError("FdAlgebra: at least one block required");
  offsets_.reserve(dims_.size() + 1);
  offsets_.push_back(0);
  for (int d : dims_) {
    if (d < 1) throw ShapeError("FdAlgebra: block dimensions must be positive");
    offsets_.push_back(offsets_.back() + d * d);
  }
}

int FdAlgebra::rep_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

int FdAlgebra::index(int block, int row, int col) const {
  const int d = block_dim(block);
  if (row < 0 || row >= d || col < 0 || col >= d) throw ShapeError("FdAlgebra::index out of range");
  return offset(block) + row * d + col;
}

FdAlgebra::Unit FdAlgebra::unit(int index) const {
  if (index < 0 || index >= dim()) throw ShapeError("FdAlgebra::unit out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const int k = static_cast<int>(it - offsets_.begin()) - 1;
  const int d = block_dim(k);
  const int local = index - offset(k);
  return {k, local / d, local % d};
}

int FdAlgebra::adjoint_index(int p) const {
  const Unit u = unit(p);
  return index(u.block, u.col, u.row);
}

std::optional<int> FdAlgebra::product_index(int p, int q) const {
  const Unit a = unit(p);
  const Unit b = unit(q);
  if (a.block != b.block || a.col != b.row) return std::nullopt;
  return index(a.block, a.row, b.col);
}

// ---------------------------------------------------------------------------
// AlgElement

AlgElement::AlgElement(FdAlgebra alg, std::vector<ComplexMatrix> blocks)
    : alg_(std::move(alg)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != alg_.num_blocks())
    throw ShapeError("AlgElement: block count does not match algebra");
  for (int k = 0; k < alg_.num_blocks(); ++k) {
    const int d = alg_.block_dim(k);
    if (block(k).rows() != d || block(k).cols() != d)
      throw ShapeError("AlgElement: block " + std::to_string(k) + " has wrong shape");
    if (!block(k).allFinite()) throw DomainError("AlgElement: non-finite entry");
  }
}

AlgElement AlgElement::zero(const FdAlgebra& alg) {
  std::vector<ComplexMatrix> blocks;
  for (int d : alg.block_dims()) blocks.push_back(ComplexMatrix::Zero(d, d));
  return AlgElement(alg, std::move(blocks));
}

AlgElement AlgElement::identity(const FdAlgebra& alg) {
  std::vector<ComplexMatrix> blocks;
  for (int d : alg.block_dims()) blocks.push_back(ComplexMatrix::Identity(d, d));
  return AlgElement(alg, std::move(blocks));
}

AlgElement AlgElement::unit(const FdAlgebra& alg, int index) {
  AlgElement out = zero(alg);
  const auto u = alg.unit(index);
  out.blocks_[static_cast<std::size_t>(u.block)](u.row, u.col) = 1.0;
  return out;
}

AlgElement AlgElement::from_vec(const FdAlgebra& alg, const ComplexVector& v) {
  if (v.size() != alg.dim()) throw ShapeError("AlgElement::from_vec: length does not match algebra dimension");
  std::vector<ComplexMatrix> blocks;
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const int d = alg.block_dim(k);
    ComplexMatrix b(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) b(i, j) = v(alg.offset(k) + i * d + j);
    blocks.push_back(std::move(b));
  }
  return AlgElement(alg, std::move(blocks));
}

AlgElement AlgElement::random(const FdAlgebra& alg, Rng& rng) {
  std::vector<ComplexMatrix> blocks;
  for (int d : alg.block_dims()) blocks.push_back(linalg::random_gaussian(d, d, rng));
  return AlgElement(alg, std::move(blocks));
}

AlgElement AlgElement::random_unit(const FdAlgebra& alg, Rng& rng) {
  AlgElement x = random(alg, rng);
  const double n = op_norm(x);
  return n > 0.0 ? x * Complex(1.0 / n) : identity(alg);
}

ComplexVector AlgElement::vec() const {
  ComplexVector v(alg_.dim());
  for (int k = 0; k < alg_.num_blocks(); ++k) {
    const int d = alg_.block_dim(k);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) v(alg_.offset(k) + i * d + j) = block(k)(i, j);
  }
  return v;
}

Complex AlgElement::coeff(int index) const {
  const auto u = alg_.unit(index);
  return block(u.block)(u.row, u.col);
}

AlgElement AlgElement::operator+(const AlgElement& other) const {
  require_same(alg_, other.alg_, "AlgElement::operator+");
  std::vector<ComplexMatrix> blocks;
  for (int k = 0; k < alg_.num_blocks(); ++k) blocks.push_back(block(k) + other.block(k));
  return AlgElement(alg_, std::move(blocks));
}

AlgElement AlgElement::operator-(const AlgElement& other) const {
  require_same(alg_, other.alg_, "AlgElement::operator-");
  std::vector<ComplexMatrix> blocks;
  for (int k = 0; k < alg_.num_blocks(); ++k) blocks.push_back(block(k) - other.block(k));
  return AlgElement(alg_, std::move(blocks));
}

AlgElement AlgElement::operator*(Complex s) const {
  std::vector<ComplexMatrix> blocks;
  for (const auto& b : blocks_) blocks.push_back(s * b);
  return AlgElement(alg_, std::move(blocks));
}

AlgElement mul(const AlgElement& x, const AlgElement& y) {
  require_same(x.algebra(), y.algebra(), "mul");
  std::vector<ComplexMatrix> blocks;
  for (int k = 0; k < x.algebra().num_blocks(); ++k) blocks.push_back(x.block(k) * y.block(k));
  return AlgElement(x.algebra(), std::move(blocks));
}

AlgElement adjoint(const AlgElement& x) {
  std::vector<ComplexMatrix> blocks;
  for (const auto& b : x.blocks()) blocks.push_back(b.adjoint());
  return AlgElement(x.algebra(), std::move(blocks));
}

double op_norm(const AlgElement& x) {
  double n = 0.0;
  for (const auto& b : x.blocks()) n = std::max(n, linalg::op_norm(b));
  return n;
}

AlgElement project_unit_ball(const AlgElement& x) {
  std::vector<ComplexMatrix> blocks;
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<ComplexMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    RealVector s = svd.singularValues().cwiseMin(1.0);
    blocks.push_back(svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint());
  }
  return AlgElement(x.algebra(), std::move(blocks));
}

// ---------------------------------------------------------------------------
// State

State::State(FdAlgebra alg, std::vector<ComplexMatrix> densities)
    : alg_(std::move(alg)), densities_(std::move(densities)) {
  if (static_cast<int>(densities_.size()) != alg_.num_blocks())
    throw ShapeError("State: density count does not match algebra");
  double top = 0.0;
  std::vector<Eigen::SelfAdjointEigenSolver<ComplexMatrix>> solvers;
  for (int k = 0; k < alg_.num_blocks(); ++k) {
    const int d = alg_.block_dim(k);
    const ComplexMatrix& rho = density(k);
    if (rho.rows() != d || rho.cols() != d)
      throw ShapeError("State: density " + std::to_string(k) + " has wrong shape");
    if (!rho.allFinite()) throw DomainError("State: non-finite density entry");
    const double scale = std::max(1.0, linalg::max_abs(rho));
    if (linalg::max_abs(rho - rho.adjoint()) > kPsdTolerance * scale)
      throw DomainError("State: density " + std::to_string(k) + " is not Hermitian");
    solvers.emplace_back(linalg::hermitian_part(rho));
    top = std::max(top, solvers.back().eigenvalues().maxCoeff());
  }
  double trace = 0.0;
  for (int k = 0; k < alg_.num_blocks(); ++k) {
    const auto& es = solvers[static_cast<std::size_t>(k)];
    if (es.eigenvalues().minCoeff() < -kPsdTolerance * top)
      throw DomainError("State: density " + std::to_string(k) + " is not positive semidefinite");
    const RealVector clipped = es.eigenvalues().cwiseMax(0.0);
    densities_[static_cast<std::size_t>(k)] =
        es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
    trace += clipped.sum();
  }
  if (std::abs(trace - 1.0) > kTraceTolerance) throw DomainError("State: total trace must be one");
}

State State::normalized(FdAlgebra alg, std::vector<ComplexMatrix> densities) {
  double trace = 0.0;
  for (const auto& rho : densities) trace += rho.trace().real();
  if (!(trace > 0.0)) throw DomainError("State::normalized: zero trace");
  for (auto& rho : densities) rho = linalg::hermitian_part(rho) / trace;
  return State(std::move(alg), std::move(densities));
}

State State::tracial(const FdAlgebra& alg) {
  std::vector<ComplexMatrix> densities;
  const double n = alg.rep_dim();
  for (int d : alg.block_dims()) densities.push_back(ComplexMatrix::Identity(d, d) / n);
  return State(alg, std::move(densities));
}

State State::vector_state(const FdAlgebra& alg, int block, const ComplexVector& v) {
  if (block < 0 || block >= alg.num_blocks() || v.size() != alg.block_dim(block))
    throw ShapeError("State::vector_state: vector does not fit block");
  const double n2 = v.squaredNorm();
  if (!(n2 > 0.0)) throw DomainError("State::vector_state: zero vector");
  std::vector<ComplexMatrix> densities;
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const int d = alg.block_dim(k);
    densities.push_back(k == block ? ComplexMatrix(v * v.adjoint() / n2) : ComplexMatrix::Zero(d, d));
  }
  return State(alg, std::move(densities));
}

State State::first_vector_state(const FdAlgebra& alg) {
  ComplexVector v = ComplexVector::Zero(alg.block_dim(0));
  v(0) = 1.0;
  return vector_state(alg, 0, v);
}

State State::random(const FdAlgebra& alg, Rng& rng) {
  std::vector<ComplexMatrix> densities;
  for (int d : alg.block_dims()) {
    const ComplexMatrix g = linalg::random_gaussian(d, d, rng);
    densities.push_back(g * g.adjoint());
  }
  return normalized(alg, std::move(densities));
}

State State::random_rank(const FdAlgebra& alg, int rank, Rng& rng) {
  std::vector<ComplexMatrix> densities;
  for (int d : alg.block_dims()) {
    const ComplexMatrix g = linalg::random_gaussian(d, std::max(1, std::min(rank, d)), rng);
    densities.push_back(g * g.adjoint());
  }
  return normalized(alg, std::move(densities));
}

Complex State::operator()(const AlgElement& a) const {
  require_same(alg_, a.algebra(), "apply_state");
  Complex s = 0.0;
  for (int k = 0; k < alg_.num_blocks(); ++k) s += (density(k) * a.block(k)).trace();
  return s;
}

Complex apply_state(const State& phi, const AlgElement& a) { return phi(a); }

// ---------------------------------------------------------------------------
// LinearFunctional

LinearFunctional::LinearFunctional(FdAlgebra alg, std::vector<ComplexMatrix> coeffs)
    : alg_(std::move(alg)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != alg_.num_blocks())
    throw ShapeError("LinearFunctional: block count does not match algebra");
  for (int k = 0; k < alg_.num_blocks(); ++k) {
    const int d = alg_.block_dim(k);
    if (coeffs_[static_cast<std::size_t>(k)].rows() != d || coeffs_[static_cast<std::size_t>(k)].cols() != d)
      throw ShapeError("LinearFunctional: coefficient block has wrong shape");
  }
}

LinearFunctional LinearFunctional::from_vec(const FdAlgebra& alg, const ComplexVector& c) {
  return LinearFunctional(alg, AlgElement::from_vec(alg, c).blocks());
}

LinearFunctional LinearFunctional::from_state(const State& phi) {
  // Tr(rho a) = sum_ij rho_ji a_ij
  std::vector<ComplexMatrix> coeffs;
  for (const auto& rho : phi.densities()) coeffs.push_back(rho.transpose());
  return LinearFunctional(phi.algebra(), std::move(coeffs));
}

Complex LinearFunctional::operator()(const AlgElement& y) const {
  require_same(alg_, y.algebra(), "LinearFunctional");
  Complex s = 0.0;
  for (int k = 0; k < alg_.num_blocks(); ++k)
    s += coeffs_[static_cast<std::size_t>(k)].cwiseProduct(y.block(k)).sum();
  return s;
}

FunctionalNorm functional_norm(const LinearFunctional& f) {
  // f(y) = sum_k Tr(C_k^T y_k); with C_k^T = U S V^*, y_k = V U^* attains Tr S_k.
  double value = 0.0;
  std::vector<ComplexMatrix> blocks;
  for (const auto& c : f.coeffs()) {
    const ComplexMatrix m = c.transpose();
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    value += svd.singularValues().sum();
    blocks.push_back(svd.matrixV() * svd.matrixU().adjoint());
  }
  return {value, AlgElement(f.algebra(), std::move(blocks))};
}

}  // namespace jordan
