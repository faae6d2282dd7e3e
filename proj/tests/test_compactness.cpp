#include <doctest.h>

#include "orlicz/compactness.hpp"

using namespace orlicz;

TEST_CASE("Rademacher images") {
  const auto alg = BlockAlgebra::commutative({0.25, 0.25, 0.25, 0.25});
  const auto phi = OrliczFunction::power(2);
  const auto z = rademacher_image_check(AlgebraElement::zero(alg), phi);
  CHECK(z.holds);
  for (double n : z.norms) CHECK(n == 0.0);

  const auto r = rademacher_image_check(AlgebraElement::diagonal(alg, {1, 2, 3, 4}), phi);
  CHECK(r.holds);
  CHECK(r.k == 2);
  CHECK(r.norm_g == doctest::Approx(std::sqrt(30.0 / 4)));

  const auto e = rademacher_image_check(AlgebraElement::identity(alg), OrliczFunction::exp_minus_one());
  CHECK(e.holds);
  CHECK(e.norm_g == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-10));

  CHECK_THROWS(rademacher_image_check(AlgebraElement::identity(BlockAlgebra({{2, 0.5}})), phi));
}

TEST_CASE("partial isometry images") {
  const BlockAlgebra alg({{3, 1.0}});
  const auto phi = OrliczFunction::power(2);
  const auto scalar = isometry_image_check(2.0 * AlgebraElement::identity(alg), 2.0, phi);
  CHECK(scalar.holds);
  for (double n : scalar.norms) CHECK(n == doctest::Approx(2.0 * scalar.e1_norm));

  const AlgebraElement g(alg, {Matrix::diagonal({3, 1, 0.5})});
  const auto r = isometry_image_check(g, 2.0, phi);
  CHECK(r.holds);
  CHECK(r.top_eigenvalue == doctest::Approx(3.0));
  CHECK_THROWS_AS(isometry_image_check(g, 4.0, phi), DomainError);

  const BlockAlgebra five({{5, 1.0}, {2, 0.5}});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = random_positive(five, seed);
    const double top = jacobi_eigen(x.block(0)).values.front();
    CHECK(isometry_image_check(x, 0.5 * top, OrliczFunction::t_log1p()).holds);
  }
}

TEST_CASE("projection norm sandwich") {
  for (double p : {1.0, 2.0, 3.0}) {
    const auto r = projection_norm_sandwich(OrliczFunction::power(p), synthetic_projection(3.0));
    CHECK(r.holds);
    CHECK(r.norm == doctest::Approx(std::pow(3.0, 1.0 / p)).epsilon(1e-10));
    CHECK(r.inf_n == doctest::Approx(std::pow(3.0, 1.0 / p)).epsilon(1e-10));
    CHECK(r.inf_n1 == doctest::Approx(std::pow(4.0, 1.0 / p)).epsilon(1e-10));
  }
  const auto h = projection_norm_sandwich(OrliczFunction::power(2), synthetic_projection(2.5));
  CHECK(h.norm == doctest::Approx(std::sqrt(2.5)).epsilon(1e-10));
  CHECK(h.inf_n == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(h.inf_n1 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
  CHECK(h.holds);
  CHECK_FALSE(h.reversed_holds);

  const auto one = projection_norm_sandwich(OrliczFunction::exp_minus_one(), synthetic_projection(1.0));
  CHECK(one.norm == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-10));
  CHECK(projection_norm_sandwich(OrliczFunction::power(4), synthetic_projection(1.0)).norm ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(projection_norm_sandwich(OrliczFunction::power(2), synthetic_projection(0.5)), DomainError);
  const auto alg = BlockAlgebra::commutative({1});
  CHECK_THROWS_AS(projection_norm_sandwich(OrliczFunction::power(2), AlgebraElement::diagonal(alg, {2})), DomainError);

  for (const auto& phi : {OrliczFunction::power(1), OrliczFunction::power(2), OrliczFunction::power_scaled(3, 2),
                          OrliczFunction::exp_minus_one(), OrliczFunction::t_log1p()}) {
    for (double tau : {1.0, 1.5, 2.0, 2.5, 7.0}) CHECK(projection_norm_sandwich(phi, synthetic_projection(tau)).holds);
  }
}

TEST_CASE("structure report") {
  const BlockAlgebra alg({{2, 1.0}, {3, 1.0}, {1, 1.0}});
  const auto phi = OrliczFunction::power(2);
  const auto z = structure_report(AlgebraElement::zero(alg), phi);
  CHECK(z.carrier_mask == std::vector<bool>{false, false, false});
  CHECK(z.norm_floor == 0.0);
  CHECK(z.holds);

  const AlgebraElement x(alg, {Matrix{{1, 0}, {0, 2}}, Matrix(3, 3), Matrix{{0.5}}});
  const auto r = structure_report(x, phi);
  CHECK(r.carrier_mask == std::vector<bool>{true, false, true});
  CHECK(r.norm_floor == doctest::Approx(0.5));
  CHECK(r.block_norms[0] == doctest::Approx(std::sqrt(5.0)));
  CHECK(r.holds);

  const auto id = structure_report(AlgebraElement::identity(alg), phi);
  CHECK(id.norm_floor == doctest::Approx(1.0));

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = structure_report(random_element(alg, seed), phi);
    CHECK(s.holds);
    CHECK(s.norm_floor > 0.0);
  }
}

TEST_CASE("unitary invariance") {
  const BlockAlgebra alg({{3, 1.0}, {2, 2.0}});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CHECK(unitary_invariance_check(random_element(alg, seed), random_orthogonal(alg, seed + 40)));
  }
}
