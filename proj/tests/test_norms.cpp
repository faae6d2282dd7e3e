#include <doctest.h>

#include "oracles.hpp"
#include "orlicz/norms.hpp"

using namespace orlicz;

namespace {

std::vector<OrliczFunction> builtins() {
  return {OrliczFunction::power(1),          OrliczFunction::power(2),      OrliczFunction::power(3),
          OrliczFunction::power_scaled(3, 2), OrliczFunction::exp_minus_one(), OrliczFunction::t_log1p()};
}

std::vector<double> singular_atoms(const AlgebraElement& x, std::vector<double>& weights) {
  std::vector<double> v;
  weights.clear();
  const StepFunction m = mu(x);
  for (const Step& s : m.steps()) {
    v.push_back(s.value);
    weights.push_back(s.length);
  }
  return v;
}

}  // namespace

TEST_CASE("modular") {
  const auto alg = BlockAlgebra::commutative({1, 1});
  CHECK(modular(OrliczFunction::power(2), AlgebraElement::diagonal(alg, {1, 2})) == doctest::Approx(5.0));
  CHECK(modular(OrliczFunction::power(2), AlgebraElement::zero(alg)) == 0.0);
  const auto cut = OrliczFunction::piecewise_linear_cutoff({{1, 1}}, 1.0);
  CHECK(std::isinf(modular(cut, AlgebraElement::diagonal(alg, {2, 0}))));
}

TEST_CASE("Luxemburg norm") {
  const auto alg = BlockAlgebra::commutative({1, 1});
  CHECK(luxemburg_norm(OrliczFunction::power(2), AlgebraElement::zero(alg)).value == 0.0);
  const auto r = luxemburg_norm(OrliczFunction::power(2), AlgebraElement::diagonal(alg, {3, 4}));
  CHECK(r.value == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(r.method == NormMethod::closed_form);

  // bisection path against a plain bisection oracle
  const BlockAlgebra blk({{3, 0.5}, {2, 1.5}});
  for (const auto& phi : builtins()) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto x = random_element(blk, seed);
      std::vector<double> w;
      const auto v = singular_atoms(x, w);
      const double ref = oracle::luxemburg([&](double t) { return phi(t); }, v, w);
      CHECK(luxemburg_norm(phi, x).value == doctest::Approx(ref).epsilon(1e-9));
    }
  }

  // projection of trace n has norm 1 / phi^{-1}(1/n)
  for (const auto& phi : builtins()) {
    for (double n : {1.0, 2.0, 5.0}) {
      const BlockAlgebra a({{1, n}});
      const double expect = 1.0 / formal_inverse(phi, 1.0 / n);
      CHECK(luxemburg_norm(phi, AlgebraElement::identity(a)).value == doctest::Approx(expect).epsilon(1e-10));
    }
  }
}

TEST_CASE("Orlicz norm") {
  const auto alg = BlockAlgebra::commutative({1, 1});
  CHECK(orlicz_norm(OrliczFunction::power(2), AlgebraElement::zero(alg)).value == 0.0);
  const auto x = AlgebraElement::diagonal(alg, {1, 0});
  const double lux = luxemburg_norm(OrliczFunction::power(2), x).value;
  const double orl = orlicz_norm(OrliczFunction::power(2), x).value;
  CHECK(orl >= lux * (1 - 1e-12));
  CHECK(orl <= 2 * lux);
  // for t^2 the Amemiya infimum over k of (1 + k^2 |x|^2)/k is 2 |x|
  CHECK(orl == doctest::Approx(2.0).epsilon(1e-9));

  const auto e = AlgebraElement::identity(BlockAlgebra::commutative({1}));
  CHECK(orlicz_norm(OrliczFunction::power(1), e).value == doctest::Approx(1.0).epsilon(1e-9));

  const BlockAlgebra blk({{3, 1.0}});
  for (const auto& phi : builtins()) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto y = random_element(blk, seed);
      const double l = luxemburg_norm(phi, y).value;
      const double o = orlicz_norm(phi, y).value;
      CHECK(o >= l * (1 - 1e-9));
      CHECK(o <= 2 * l * (1 + 1e-9));
    }
  }
}

TEST_CASE("Orlicz norm dominates sampled pairings") {
  const auto phi = OrliczFunction::power(3);
  const auto star = conjugate(phi);
  const BlockAlgebra blk({{3, 1.0}, {1, 0.5}});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = random_element(blk, seed);
    auto g = random_element(blk, seed + 50);
    g = (1.0 / luxemburg_norm(star, g).value) * g;
    CHECK(kothe_pairing(x, g) <= orlicz_norm(phi, x).value * (1 + 1e-8));
  }
}

TEST_CASE("norm axioms and invariances") {
  const BlockAlgebra blk({{2, 1.0}, {2, 0.5}});
  for (const auto& phi : builtins()) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const auto x = random_element(blk, seed);
      const auto y = random_element(blk, seed + 77);
      using NormFn = NormResult (*)(const OrliczFunction&, const AlgebraElement&);
      for (NormFn norm : {NormFn{&luxemburg_norm}, NormFn{&orlicz_norm}}) {
        auto n = [&](const AlgebraElement& z) { return norm(phi, z).value; };
        CHECK(n(x + y) <= (n(x) + n(y)) * (1 + 1e-9));
        CHECK(n(-2.5 * x) == doctest::Approx(2.5 * n(x)).epsilon(1e-9));
      }
      const double l = luxemburg_norm(phi, x).value;
      if (l <= 1.0) CHECK(modular(phi, x) <= 1 + 1e-9);
      CHECK(modular(phi, (1.0 / l) * x) <= 1 + 1e-9);
      const auto u = random_orthogonal(blk, seed + 9);
      CHECK(luxemburg_norm(phi, u * x).value == doctest::Approx(l).epsilon(1e-12));
      // mu(x/2) <= mu(x)
      CHECK(luxemburg_norm(phi, 0.5 * x).value <= l + 1e-9);
    }
  }
}

TEST_CASE("Hoelder inequality") {
  const auto alg = BlockAlgebra::commutative({0.5, 0.5});
  const auto f = AlgebraElement::identity(alg);
  const auto rep = holder_check(f, f, OrliczFunction::power(2));
  CHECK(rep.pairing == doctest::Approx(1.0));
  CHECK(rep.holds);
  CHECK(holder_check(f, AlgebraElement::zero(alg), OrliczFunction::power(2)).holds);

  const BlockAlgebra blk({{3, 1.0}});
  for (const auto& phi : {OrliczFunction::power(2), OrliczFunction::power(3), OrliczFunction::t_log1p()}) {
    const auto star = conjugate(phi);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      CHECK(holder_check(random_element(blk, seed), random_element(blk, seed + 1000), phi, star).holds);
    }
  }
}
