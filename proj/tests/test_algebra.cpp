#include <doctest.h>

#include "oracles.hpp"
#include "orlicz/algebra.hpp"

using namespace orlicz;

namespace {

std::vector<std::vector<double>> dense(const Matrix& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

}  // namespace

TEST_CASE("trace") {
  const BlockAlgebra alg({{2, 1.0}, {3, 0.5}});
  CHECK(trace(AlgebraElement::identity(alg)) == doctest::Approx(3.5));
  CHECK(trace(AlgebraElement::zero(alg)) == 0.0);
  const BlockAlgebra w2({{2, 2.0}});
  CHECK(trace(AlgebraElement(w2, {Matrix{{1, 0}, {0, 2}}})) == doctest::Approx(6.0));
  CHECK_THROWS_AS(BlockAlgebra({{0, 1.0}}), ShapeError);
  CHECK_THROWS_AS(BlockAlgebra({{1, -1.0}}), DomainError);
  CHECK_THROWS_AS(AlgebraElement(w2, {Matrix(3, 3)}), ShapeError);
}

TEST_CASE("Jacobi eigen") {
  auto d = jacobi_eigen(Matrix{{3, 0}, {0, 1}});
  CHECK(d.values[0] == 3.0);
  CHECK(d.values[1] == 1.0);
  auto s = jacobi_eigen(Matrix{{0, 1}, {1, 0}});
  CHECK(s.values[0] == doctest::Approx(1.0));
  CHECK(s.values[1] == doctest::Approx(-1.0));
  CHECK_THROWS_AS(jacobi_eigen(Matrix{{0, 1}, {0, 0}}), DomainError);

  const BlockAlgebra alg({{5, 1.0}});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Matrix g = random_element(alg, seed).block(0);
    const Matrix a = g + g.transpose();
    const auto e = jacobi_eigen(a);
    const Matrix recon = e.vectors * Matrix::diagonal(e.values) * e.vectors.transpose();
    CHECK((recon - a).frobenius() <= 1e-10 * a.frobenius());
    for (std::size_t k = 1; k < e.values.size(); ++k) CHECK(e.values[k - 1] >= e.values[k]);
  }
}

TEST_CASE("blockwise operations") {
  const BlockAlgebra alg = BlockAlgebra::commutative({1, 1});
  const auto x = AlgebraElement::diagonal(alg, {-2, 3});
  CHECK(abs(x) == AlgebraElement::diagonal(alg, {2, 3}));
  const BlockAlgebra m2({{2, 1.0}});
  const AlgebraElement n(m2, {Matrix{{0, 1}, {0, 0}}});
  CHECK(adjoint(n).block(0) == Matrix{{0, 0}, {1, 0}});
  const auto r = random_element(m2, 4);
  CHECK(AlgebraElement::identity(m2) * r == r);
  CHECK_THROWS_AS(r * x, AlgebraMismatch);
}

TEST_CASE("absolute value squares back to x^T x") {
  const BlockAlgebra alg({{4, 1.0}, {2, 0.3}});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto x = random_element(alg, seed);
    const auto a = abs(x);
    CHECK(is_positive(a));
    const auto diff = a * a - adjoint(x) * x;
    CHECK(frobenius(diff) <= 1e-10 * (1 + frobenius(x) * frobenius(x)));
  }
}

TEST_CASE("functional calculus") {
  const BlockAlgebra alg = BlockAlgebra::commutative({1, 1});
  const auto sq = apply_function(OrliczFunction::power(2), AlgebraElement::diagonal(alg, {1, 3}));
  CHECK(sq.block(0)(0, 0) == doctest::Approx(1.0));
  CHECK(sq.block(1)(0, 0) == doctest::Approx(9.0));
  CHECK(apply_function(OrliczFunction::exp_minus_one(), AlgebraElement::zero(alg)).is_zero());
  CHECK_THROWS_AS(apply_function(OrliczFunction::power(2), AlgebraElement::diagonal(alg, {-1, 1})), DomainError);
  const auto cut = OrliczFunction::piecewise_linear_cutoff({{1, 1}}, 1.0);
  CHECK_THROWS_AS(apply_function(cut, AlgebraElement::diagonal(alg, {2, 0})), DomainError);

  // phi(alpha e) = phi(alpha) e for a projection e
  const BlockAlgebra m3({{3, 1.0}});
  const auto q = random_orthogonal(m3, 9);
  const auto e = q * AlgebraElement(m3, {Matrix::diagonal({1, 1, 0})}) * adjoint(q);
  for (const auto& phi : {OrliczFunction::power(3), OrliczFunction::exp_minus_one(), OrliczFunction::t_log1p()}) {
    const double alpha = 1.7;
    const auto lhs = apply_function(phi, alpha * e);
    const auto rhs = phi(alpha) * e;
    CHECK(frobenius(lhs - rhs) <= 1e-10 * (1 + phi(alpha)));
  }
}

TEST_CASE("generalised singular values") {
  const BlockAlgebra alg = BlockAlgebra::commutative({1, 1, 1});
  const auto x = AlgebraElement::diagonal(alg, {1, -2, 3});
  const auto m = mu(x);
  REQUIRE(m.steps().size() == 3);
  CHECK(m.steps()[0].value == doctest::Approx(3.0));
  CHECK(m.steps()[1].value == doctest::Approx(2.0));
  CHECK(m.steps()[2].value == doctest::Approx(1.0));
  // oracle: inf{s : tau(1 - e_s(|x|)) <= t} over an s-grid
  for (double t : {0.0, 0.5, 1.0, 1.5, 2.5, 3.5}) {
    double found = 0.0;
    for (int k = 0; k <= 4000; ++k) {
      const double s = k * 1e-3;
      double tail = 0.0;
      for (double v : {1.0, 2.0, 3.0}) tail += v > s ? 1.0 : 0.0;
      if (tail <= t) {
        found = s;
        break;
      }
    }
    CHECK(mu_at(x, t) == doctest::Approx(found).epsilon(1e-9));
  }
  CHECK_THROWS_AS(mu_at(x, -1.0), DomainError);

  const BlockAlgebra w({{1, 0.7}});
  const auto e = AlgebraElement::identity(w);
  REQUIRE(mu(e).steps().size() == 1);
  CHECK(mu(e).steps()[0].length == doctest::Approx(0.7));
  CHECK(mu(e).steps()[0].value == doctest::Approx(1.0));
}

TEST_CASE("singular values against an independent power iteration") {
  const BlockAlgebra alg({{4, 1.0}});
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto x = random_element(alg, seed);
    const auto ref = oracle::singular_values(dense(x.block(0)));
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(mu_at(x, k + 0.5) == doctest::Approx(ref[k]).epsilon(1e-6));
  }
}

TEST_CASE("rearrangement invariances") {
  const BlockAlgebra alg({{3, 1.0}, {2, 0.25}, {1, 2.0}});
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto x = random_element(alg, seed);
    const auto u = random_orthogonal(alg, seed + 100);
    CHECK(equivalent(mu(x), mu(adjoint(x))));
    CHECK(equivalent(mu(x), mu(abs(x))));
    CHECK(equivalent(mu(u * x), mu(x)));
    CHECK(equivalent(mu(x * u), mu(x)));
    const auto y = random_element(alg, seed + 200);
    CHECK(trace(x * y) == doctest::Approx(trace(y * x)).epsilon(1e-10));
  }
}

TEST_CASE("Rademacher family") {
  const auto a1 = BlockAlgebra::commutative({0.5, 0.5});
  const auto r1 = rademacher_family(a1, 1);
  CHECK(r1[0] == AlgebraElement::diagonal(a1, {1, -1}));
  CHECK(trace(r1[0] * r1[0]) == doctest::Approx(1.0));
  const auto a2 = BlockAlgebra::commutative({0.25, 0.25, 0.25, 0.25});
  const auto r2 = rademacher_family(a2, 2);
  CHECK(trace(r2[0] * r2[1]) == doctest::Approx(0.0));
  for (const auto& r : r2) {
    CHECK(trace(r) == doctest::Approx(0.0));
    CHECK(r * r == AlgebraElement::identity(a2));
  }
  CHECK_THROWS(rademacher_family(BlockAlgebra::commutative({0.5, 0.25, 0.25}), 2));
  CHECK_THROWS(rademacher_family(BlockAlgebra::commutative({0.6, 0.4}), 1));
}

TEST_CASE("partial isometry chain") {
  const BlockAlgebra alg({{3, 1.0}});
  const AlgebraElement e1(alg, {Matrix{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}});
  const auto v = partial_isometry_chain(alg, e1, 3);
  REQUIRE(v.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    Matrix unit(3, 3);
    unit(0, j) = 1.0;
    CHECK((v[j].block(0) - unit).max_abs() <= 1e-15);
    CHECK(frobenius(v[j] * adjoint(v[j]) - e1) <= 1e-14);
    CHECK(equivalent(mu(v[j]), mu(e1)));
  }
  CHECK(std::abs(trace(adjoint(v[0]) * v[1])) <= 1e-15);
  CHECK_THROWS_AS(partial_isometry_chain(alg, e1, 4), ShapeError);
}

TEST_CASE("central carrier") {
  const BlockAlgebra alg({{2, 1.0}, {3, 1.0}, {1, 1.0}});
  AlgebraElement x(alg, {Matrix{{1, 2}, {0, 1}}, Matrix(3, 3), Matrix{{5}}});
  const auto mask = central_carrier(x);
  CHECK(mask == std::vector<bool>{true, false, true});
  CHECK(central_carrier(AlgebraElement::zero(alg)) == std::vector<bool>{false, false, false});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = random_element(alg, seed);
    const auto c = central_projection(alg, central_carrier(r));
    CHECK(frobenius(r * c - r) <= 1e-12);
  }
}
