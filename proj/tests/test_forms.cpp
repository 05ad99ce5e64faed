#include "doctest.h"
#include "oracles.hpp"

#include "jordan/forms.hpp"

using namespace jordan;

TEST_CASE("eval: corner form on matrix units, bilinearity, coefficient-sum oracle") {
  for (int d = 1; d <= 4; ++d) {
    const BilinearForm b = corner_form(d);
    for (int k = 0; k < d; ++k) CHECK(std::abs(eval(b, oracle::unit(d, k, 0), oracle::unit(d, 0, k)) - 1.0) == 0.0);
  }
  Rng rng(11);
  const FdAlgebra m3 = FdAlgebra::full(3);
  const BilinearForm b = corner_form(3);
  CHECK(std::abs(eval(b, AlgElement::zero(m3), AlgElement::random(m3, rng))) == 0.0);
  for (int t = 0; t < 10; ++t) {
    const AlgElement x = AlgElement::random(m3, rng), y = AlgElement::random(m3, rng);
    CHECK(std::abs(eval(b, x, y) - oracle::corner(x, y)) < 1e-12);
  }
  const FdAlgebra a({1, 2}), c({2, 2});
  for (int t = 0; t < 10; ++t) {
    const BilinearForm r = BilinearForm::random_rank(a, c, 3, rng);
    const AlgElement x = AlgElement::random(a, rng), y = AlgElement::random(c, rng);
    CHECK(std::abs(eval(r, x, y) - oracle::form_value(r, x, y)) < 1e-11);
  }
  CHECK_THROWS_AS(eval(b, AlgElement::zero(a), AlgElement::zero(m3)), ShapeError);
}

TEST_CASE("trace form is Tr(xy)/d") {
  Rng rng(12);
  const FdAlgebra m3 = FdAlgebra::full(3);
  const BilinearForm t = BilinearForm::trace_form(m3);
  for (int i = 0; i < 5; ++i) {
    const AlgElement x = AlgElement::random(m3, rng), y = AlgElement::random(m3, rng);
    CHECK(std::abs(eval(t, x, y) - oracle::matmul(x.block(0), y.block(0)).trace() / 3.0) < 1e-12);
  }
}

TEST_CASE("form_norm examples") {
  for (int d = 1; d <= 8; ++d) {
    const NormEstimate e = form_norm(corner_form(d));
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-8));
  }
  const FdAlgebra m2 = FdAlgebra::full(2);
  const NormEstimate z = form_norm(BilinearForm::zero(m2, m2));
  CHECK(z.value == 0.0);
  CHECK(z.converged);
  CHECK(op_norm(z.maximizer_x) == 0.0);
  Rng rng(13);
  for (int t = 0; t < 3; ++t) {
    const State phi = State::random(m2, rng);
    const State psi = State::random(FdAlgebra({1, 2}), rng);
    const BilinearForm p = BilinearForm::product(phi, psi);
    // ||phi|| ||psi|| from the trace-norm oracle
    const double expected = oracle::trace_norm(phi.density(0)) *
                            (oracle::trace_norm(psi.density(0)) + oracle::trace_norm(psi.density(1)));
    CHECK(form_norm(p).value == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("hilbertmap_norm examples") {
  for (int d = 1; d <= 5; ++d) {
    const HilbertMap col = HilbertMap::column_map(d), row = HilbertMap::row_map(d);
    // both matrices are coisometries
    CHECK(oracle::op_norm(col.matrix()) == doctest::Approx(1.0));
    CHECK(oracle::op_norm(row.matrix()) == doctest::Approx(1.0));
    CHECK(hilbertmap_norm(col).value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(hilbertmap_norm(row).value == doctest::Approx(1.0).epsilon(1e-8));
  }
  const FdAlgebra m2 = FdAlgebra::full(2);
  CHECK(hilbertmap_norm(HilbertMap(m2, ComplexMatrix::Zero(3, 4))).value == 0.0);
  Rng rng(14);
  const AlgElement a = AlgElement::random(m2, rng);
  const HilbertMap col = HilbertMap::column_map(2);
  CHECK(oracle::max_abs(col(a) - a.block(0).col(0)) == 0.0);
  CHECK(oracle::max_abs(HilbertMap::row_map(2)(a) - a.block(0).row(0).transpose()) == 0.0);
}

TEST_CASE("norm estimates: maximizers attain the value, monotone in restarts") {
  Rng rng(15);
  for (const FdAlgebra& a : {FdAlgebra::full(2), FdAlgebra({1, 2}), FdAlgebra::diagonal(3)}) {
    const BilinearForm b = BilinearForm::random_rank(a, a, 2, rng);
    double previous = 0.0;
    for (int r : {1, 4, 16}) {
      const NormEstimate e = form_norm(b, r, 7);
      CHECK(e.value >= previous);
      previous = e.value;
      CHECK(std::abs(std::abs(eval(b, e.maximizer_x, *e.maximizer_y)) - e.value) <= 1e-10 * std::max(1.0, e.value));
      CHECK(op_norm(e.maximizer_x) <= 1.0 + 1e-10);
      CHECK(op_norm(*e.maximizer_y) <= 1.0 + 1e-10);
      CHECK(e.restarts_used >= 1);
      CHECK(e.restarts_used <= r);
    }
    // a lower bound: no random unit-ball pair exceeds it by more than noise
    const NormEstimate e = form_norm(b);
    for (int t = 0; t < 50; ++t)
      CHECK(std::abs(eval(b, AlgElement::random_unit(a, rng), AlgElement::random_unit(a, rng))) <= e.value + 1e-9);

    const HilbertMap f(a, linalg::random_gaussian(3, a.dim(), rng));
    const NormEstimate fe = hilbertmap_norm(f);
    CHECK(std::abs(f(fe.maximizer_x).norm() - fe.value) <= 1e-10 * std::max(1.0, fe.value));
    CHECK(op_norm(fe.maximizer_x) <= 1.0 + 1e-10);
    CHECK_FALSE(fe.maximizer_y.has_value());
  }
}

TEST_CASE("norm estimates are deterministic per seed") {
  Rng rng(16);
  const FdAlgebra m3 = FdAlgebra::full(3);
  const BilinearForm b = BilinearForm::random_rank(m3, m3, 2, rng);
  const NormEstimate e1 = form_norm(b, 8, 3), e2 = form_norm(b, 8, 3);
  CHECK(e1.value == e2.value);
  CHECK(oracle::max_abs(e1.maximizer_x.vec() - e2.maximizer_x.vec()) == 0.0);
}

TEST_CASE("amplified_eval") {
  Rng rng(17);
  const FdAlgebra m2 = FdAlgebra::full(2);
  const BilinearForm b = BilinearForm::random_rank(m2, m2, 2, rng);
  const AlgElement x = AlgElement::random(m2, rng), y = AlgElement::random(m2, rng);
  const ComplexMatrix one = amplified_eval(b, AlgMatrix(1, {x}), AlgMatrix(1, {y}));
  CHECK(one.rows() == 1);
  CHECK(one(0, 0) == eval(b, x, y));

  // single-block embedding X = x (x) f_11, Y = y (x) f_11
  AlgMatrix xm = AlgMatrix::zero(m2, 3), ym = AlgMatrix::zero(m2, 3);
  xm.set(0, 0, x);
  ym.set(0, 0, y);
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 0) = eval(b, x, y);
  CHECK(oracle::max_abs(amplified_eval(b, xm, ym) - expected) < 1e-14);
  CHECK_THROWS_AS(amplified_eval(b, xm, AlgMatrix::zero(m2, 2)), ShapeError);
}

TEST_CASE("AlgMatrix op_norm against the assembled operator") {
  Rng rng(18);
  const FdAlgebra alg({1, 2});
  std::vector<AlgElement> entries;
  for (int i = 0; i < 4; ++i) entries.push_back(AlgElement::random(alg, rng));
  const AlgMatrix m(2, entries);
  double expected = 0.0;
  for (int blk = 0; blk < 2; ++blk) {
    const int d = alg.block_dim(blk);
    ComplexMatrix big(2 * d, 2 * d);
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l) big.block(k * d, l * d, d, d) = m.at(k, l).block(blk);
    expected = std::max(expected, oracle::op_norm(big));
  }
  CHECK(m.op_norm() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("cb example: partial isometries with amplified value n e_11") {
  const CbExample one = cb_example(1);
  CHECK(one.x_norm == doctest::Approx(1.0));
  CHECK(std::abs(one.amplified(0, 0) - 1.0) == 0.0);
  for (int n : {2, 4, 8}) {
    const CbExample ex = cb_example(n);
    CHECK(std::abs(ex.x_norm - 1.0) <= 1e-10);
    CHECK(std::abs(ex.y_norm - 1.0) <= 1e-10);
    ComplexMatrix target = ComplexMatrix::Zero(n, n);
    target(0, 0) = n;
    CHECK(oracle::max_abs(ex.amplified - target) <= 1e-12);
    CHECK(form_norm(ex.form).value == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK_THROWS_AS(cb_example(0), ShapeError);
}
