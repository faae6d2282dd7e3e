#include <doctest.h>

#include <random>

#include "orlicz/rescaling.hpp"

using namespace orlicz;

namespace {

OrliczFunction P(double p) { return OrliczFunction::power(p); }

}  // namespace

TEST_CASE("norm lemma for compositions") {
  const auto alg = BlockAlgebra::commutative({1});
  const auto z = lemma_lm_check(P(2), P(2), AlgebraElement::zero(alg));
  CHECK(z.precondition);
  CHECK(z.holds);
  const auto half = lemma_lm_check(P(2), P(2), AlgebraElement::diagonal(alg, {0.5}));
  CHECK(half.holds);
  CHECK(half.lhs == doctest::Approx(0.25));
  CHECK(half.rhs == doctest::Approx(0.5));
  const auto big = lemma_lm_check(P(2), P(2), AlgebraElement::diagonal(alg, {2.0}));
  CHECK_FALSE(big.precondition);

  const BlockAlgebra blk({{3, 1.0}, {2, 0.5}});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto zeta = compose(P(2), OrliczFunction::t_log1p()).function;
    auto a = random_element(blk, seed);
    a = (0.9 / luxemburg_norm(zeta, a).value) * a;
    const auto r = lemma_lm_check(P(2), OrliczFunction::t_log1p(), a);
    CHECK(r.precondition);
    CHECK(r.holds);
  }
}

TEST_CASE("rescale up") {
  const auto alg = BlockAlgebra::commutative({1, 1});
  const auto r = rescale_up(P(2), P(2), AlgebraElement::diagonal(alg, {1, 2}));
  REQUIRE(r.applicable);
  CHECK(r.K == doctest::Approx(4.0));
  CHECK(r.image->block(1)(0, 0) == doctest::Approx(4.0));
  CHECK(r.alpha > std::ldexp(1.0, -r.N));
  CHECK((r.N == 0 || r.alpha <= std::ldexp(1.0, -(r.N - 1))));
  CHECK(r.holds);
  const auto z = rescale_up(P(2), P(2), AlgebraElement::zero(alg));
  CHECK(z.image->is_zero());
  CHECK(z.holds);
  CHECK_FALSE(rescale_up(P(2), OrliczFunction::exp_minus_one(), AlgebraElement::diagonal(alg, {1, 2})).applicable);
}

TEST_CASE("rescale down and round trip") {
  const auto alg = BlockAlgebra::commutative({1, 1});
  const auto r = rescale_down(P(2), P(2), AlgebraElement::diagonal(alg, {4, 9}));
  REQUIRE(r.applicable);
  CHECK(r.image->block(0)(0, 0) == doctest::Approx(2.0));
  CHECK(r.image->block(1)(0, 0) == doctest::Approx(3.0));
  CHECK(r.holds);
  CHECK(rescale_down(P(2), P(2), AlgebraElement::zero(alg)).image->is_zero());

  const BlockAlgebra blk({{3, 1.0}});
  for (const auto& phi2 : {P(2), P(3), OrliczFunction::power_scaled(2, 1.5)}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto g = random_positive(blk, seed);
      const auto up = rescale_up(P(2), phi2, g);
      REQUIRE(up.applicable);
      const auto down = rescale_down(P(2), phi2, *up.image);
      REQUIRE(down.applicable);
      CHECK(frobenius(*down.image - g) <= 1e-8 * (1 + frobenius(g)));
    }
  }
}

TEST_CASE("equivalent measure map") {
  const AtomicMeasurePair same{{1, 2}, {1, 2}};
  const auto id = equivalent_measure_map(P(3), same, {0.5, -1.5});
  CHECK(id.image[1] == doctest::Approx(-1.5));
  CHECK(id.ratio == doctest::Approx(1.0).epsilon(1e-12));

  const AtomicMeasurePair pair{{4, 1}, {1, 1}};
  const auto r = equivalent_measure_map(P(2), pair, {1, 1});
  CHECK(r.image[0] == doctest::Approx(2.0));
  CHECK(r.image[1] == doctest::Approx(1.0));
  CHECK(r.source_norm == doctest::Approx(std::sqrt(5.0)));
  CHECK(r.image_norm == doctest::Approx(std::sqrt(5.0)));
  CHECK(r.upper_checked);
  CHECK(r.lower_checked);

  const auto e = equivalent_measure_map(OrliczFunction::exp_minus_one(), pair, {1, 1});
  CHECK_FALSE(e.upper_checked);
  CHECK_FALSE(e.lower_checked);

  CHECK_THROWS_AS(AtomicMeasurePair({1, 0}, {1, 1}).validate(), DomainError);
  CHECK_THROWS_AS(AtomicMeasurePair({1}, {1, 1}).validate(), ShapeError);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> w(0.1, 5.0);
  std::normal_distribution<double> nd;
  for (double p : {1.0, 2.0, 3.5}) {
    for (int k = 0; k < 20; ++k) {
      AtomicMeasurePair pr;
      std::vector<double> f;
      for (int i = 0; i < 5; ++i) {
        pr.nu1.push_back(w(rng));
        pr.nu2.push_back(w(rng));
        f.push_back(nd(rng));
      }
      const auto m = equivalent_measure_map(P(p), pr, f);
      CHECK(m.ratio == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(m.upper_holds);
      CHECK(m.lower_holds);
    }
  }
}

TEST_CASE("power sandwich for functions passing both probes") {
  for (const auto& phi : {P(1.5), OrliczFunction::power_scaled(0.5, 3)}) {
    REQUIRE(probe_delta_prime(phi).holds);
    REQUIRE(probe_nabla_prime(phi).holds);
    CHECK(power_fit(phi).verdict == PowerFitVerdict::ok);
  }
}
