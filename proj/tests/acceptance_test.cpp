// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "orlicz/compactness.hpp"
#include "orlicz/multipliers.hpp"
#include "orlicz/rescaling.hpp"

using namespace orlicz;

namespace {

// Tolerances, one per quantitative claim.
constexpr double kYoungSlack = 1e-9;
constexpr double kYoungEquality = 1e-6;
constexpr double kBiconjPower = 1e-6;
constexpr double kBiconjPiecewise = 1e-3;
constexpr double kTraceIdentity = 1e-10;
constexpr double kHolder = 1e-8;
constexpr double kBoundSlack = 1e-8;
constexpr double kGrowthConstant = 1e-6;
constexpr double kFitExponent = 0.01;
constexpr double kFitScale = 0.02;
constexpr double kIsometry = 1e-9;
constexpr double kReconstruction = 1e-12;
constexpr double kSubmajorization = 1e-10;
constexpr std::size_t kSearchBudget = 100000;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

OrliczFunction P(double p) { return OrliczFunction::power(p); }

std::vector<OrliczFunction> power_family() {
  return {P(1), P(1.5), P(2), P(3), P(4), OrliczFunction::power_scaled(3, 2)};
}

std::vector<OrliczFunction> builtins() {
  auto out = power_family();
  out.push_back(OrliczFunction::exp_minus_one());
  out.push_back(OrliczFunction::t_log1p());
  return out;
}

AlgebraElement unit_ball(const OrliczFunction& phi, const AlgebraElement& x) {
  return (1.0 / luxemburg_norm(phi, x).value) * x;
}

StepFunction map_values(const StepFunction& m, const OrliczFunction& phi) {
  std::vector<std::pair<double, double>> atoms;
  for (const Step& s : m.steps()) atoms.emplace_back(phi(s.value), s.length);
  return StepFunction::from_atoms(std::move(atoms));
}

Outcome young() {
  Outcome o;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> e(-3.0, 3.0);
  double worst = kInf;
  for (const auto& phi : builtins()) {
    const auto star = conjugate(phi);
    for (int i = 0; i < 10000; ++i) {
      const double s = std::pow(10.0, e(rng));
      const double t = std::pow(10.0, e(rng));
      const double g = young_gap(phi, star, s, t) / (1.0 + s * t);
      worst = std::min(worst, g);
      o.require(g >= -kYoungSlack, phi.describe() + " gap at (" + std::to_string(s) + ", " + std::to_string(t) + ")");
    }
  }
  // Equality where t is the derivative of phi at s.
  double worst_eq = 0.0;
  for (const auto& phi : power_family()) {
    const double c = phi.as_power_scaled() ? phi.as_power_scaled()->c : 1.0;
    const double p = phi.as_power_scaled() ? phi.as_power_scaled()->p : phi.as_power()->p;
    for (double s : logspace(0.1, 10.0, 20)) {
      const double t = c * p * std::pow(s, p - 1.0);
      const double g = std::abs(young_gap(phi, s, t)) / (1.0 + s * t);
      worst_eq = std::max(worst_eq, g);
      o.require(g <= kYoungEquality, phi.describe() + " equality at s=" + std::to_string(s));
    }
  }
  o.detail << "min scaled gap " << worst << ", max equality defect " << worst_eq;
  return o;
}

Outcome biconjugation() {
  Outcome o;
  double worst_power = 0.0;
  for (const auto& phi : power_family()) {
    const auto bi = conjugate(conjugate(phi), ConjugateMethod::numeric);
    for (double t : logspace(1e-2, 1e2, 25)) {
      const double rel = std::abs(bi(t) - phi(t)) / phi(t);
      worst_power = std::max(worst_power, rel);
      o.require(rel <= kBiconjPower, phi.describe() + " at t=" + std::to_string(t));
    }
  }
  std::vector<Knot> knots;
  for (int i = 1; i <= 8; ++i) knots.push_back({0.5 * i, 0.125 * i * i + 0.25 * i});
  const auto pl = OrliczFunction::piecewise_linear(knots, 5.0);
  const auto bi = conjugate(conjugate(pl), ConjugateMethod::numeric);
  double worst_pl = 0.0;
  for (double t : logspace(0.05, 20.0, 40)) {
    const double rel = std::abs(bi(t) - pl(t)) / pl(t);
    worst_pl = std::max(worst_pl, rel);
    o.require(rel <= kBiconjPiecewise, "piecewise linear at t=" + std::to_string(t));
  }
  o.detail << "power family max rel " << worst_power << ", 8-knot piecewise max rel " << worst_pl;
  return o;
}

Outcome rearrangement_lemma() {
  Outcome o;
  const BlockAlgebra alg({{3, 1.0}, {2, 0.5}, {1, 2.0}});
  const std::vector<OrliczFunction> phis = {P(1.5), P(3), OrliczFunction::exp_minus_one(), OrliczFunction::t_log1p()};
  double worst_trace = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto x = random_positive(alg, seed);
    const auto m = mu(x);
    for (const auto& phi : phis) {
      const auto fx = apply_function(phi, x);
      o.require(equivalent(map_values(m, phi), mu(fx)), phi.describe() + " step equality, seed " + std::to_string(seed));
      const double direct = trace(fx);
      const double integral = m.integrate([&](double v) { return phi(v); });
      const double rel = std::abs(direct - integral) / std::max(1.0, std::abs(integral));
      worst_trace = std::max(worst_trace, rel);
      o.require(rel <= kTraceIdentity, phi.describe() + " trace identity, seed " + std::to_string(seed));
    }
  }
  o.detail << "400 step equalities, max trace defect " << worst_trace;
  return o;
}

Outcome kothe_holder() {
  Outcome o;
  const BlockAlgebra alg({{3, 1.0}, {1, 0.5}});
  const std::vector<OrliczFunction> phis = {P(2), P(3), OrliczFunction::t_log1p()};
  double worst = 0.0;
  double min_equiv = kInf;
  double max_equiv = 0.0;
  for (const auto& phi : phis) {
    const auto star = conjugate(phi);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto f = random_element(alg, 2 * seed);
      const auto g = random_element(alg, 2 * seed + 1);
      const auto h = holder_check(f, g, phi, star);
      worst = std::max(worst, h.pairing / h.bound);
      o.require(h.pairing <= h.bound * (1.0 + kHolder), phi.describe() + " seed " + std::to_string(seed));
      for (const auto& [fn, el] : {std::pair{&phi, &g}, std::pair{&star, &f}}) {
        const double l = luxemburg_norm(*fn, *el).value;
        const double n0 = orlicz_norm(*fn, *el).value;
        min_equiv = std::min(min_equiv, n0 / l);
        max_equiv = std::max(max_equiv, n0 / l);
        o.require(l <= n0 * (1.0 + kHolder) && n0 <= 2.0 * l * (1.0 + kHolder), "norm equivalence");
      }
    }
  }
  o.detail << "max pairing/bound " << worst << ", Orlicz/Luxemburg ratio in [" << min_equiv << ", " << max_equiv << "]";
  return o;
}

Outcome existence() {
  Outcome o;
  const auto zeta = P(4);
  const auto phi1 = P(4);
  const auto phi2 = P(2);
  const ConstantWitness w{2, 1, 1, 1};
  const auto rep = check_constants(zeta, phi1, phi2, w);
  o.require(rep.holds, "check_constants on (t^4, t^4, t^2)");
  const double bound = w.M * (3 / w.alpha + 3 / w.beta + 3 / w.gamma);
  o.require(std::abs(rep.derived_bound - bound) < 1e-12 && bound == 18.0, "derived bound equals 18");
  double max_pair = 0.0;
  double max_prod = 0.0;
  if (rep.holds) {
    const auto star = conjugate(phi2);
    const BlockAlgebra alg({{3, 1.0}, {2, 0.5}});
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto f = unit_ball(zeta, random_element(alg, 3 * seed));
      const auto g = unit_ball(phi1, random_element(alg, 3 * seed + 1));
      const auto h = unit_ball(star, random_element(alg, 3 * seed + 2));
      const auto b = verify_bound(zeta, phi1, phi2, rep, f, g, h);
      max_pair = std::max(max_pair, b.pairing);
      max_prod = std::max(max_prod, b.product_norm);
      o.require(b.normalized && b.pairing <= bound + kBoundSlack && b.product_norm <= bound + kBoundSlack,
                "triple seed " + std::to_string(seed));
    }
  }
  const auto neg = check_constants(P(2), P(2), P(2), w);
  o.require(!neg.holds && neg.violation_on_scan, "(t^2, t^2, t^2) must fail on the scan");
  o.detail << "grid worst ratio " << rep.worst_ratio << ", max pairing " << max_pair << ", max product norm "
           << max_prod << " (bound 18); negative control violated at (" << neg.worst_point[0] << ", "
           << neg.worst_point[1] << ", " << neg.worst_point[2] << ")";
  return o;
}

Outcome holder_recovery() {
  Outcome o;
  struct Case {
    double p, q, r;
    bool expect;
  };
  for (const Case& c : {Case{4, 4, 2, true}, Case{2, 2, 1, true}, Case{6, 3, 2, true}, Case{2, 2, 2, false},
                        Case{3, 3, 1, false}}) {
    const auto res = search_constants(P(c.p), P(c.q), P(c.r), kSearchBudget);
    const bool found = res.witness.has_value();
    o.require(found == c.expect, "exponents (" + std::to_string(c.p) + ", " + std::to_string(c.q) + ", " +
                                     std::to_string(c.r) + ")");
    o.detail << "(" << c.p << "," << c.q << "," << c.r << "): ";
    if (found) {
      o.detail << "witness (" << res.witness->M << "," << res.witness->alpha << "," << res.witness->beta << ","
               << res.witness->gamma << ") after " << res.evaluations << " evals; ";
    } else {
      o.detail << "none in " << res.evaluations << " evals; ";
    }
  }
  return o;
}

Outcome growth() {
  Outcome o;
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
    const auto d2 = probe_delta2(P(p));
    o.require(d2.holds && std::abs(d2.constant - std::pow(2.0, p)) <= kGrowthConstant, "Delta2 constant for p=" + std::to_string(p));
    const auto dp = probe_delta_prime(P(p));
    o.require(dp.holds && std::abs(dp.constant - 1.0) <= kGrowthConstant, "Delta' constant for p=" + std::to_string(p));
    const auto np = probe_nabla_prime(P(p));
    o.require(np.holds && std::abs(np.constant - 1.0) <= kGrowthConstant, "Nabla' constant for p=" + std::to_string(p));
  }
  const auto e = probe_delta2(OrliczFunction::exp_minus_one());
  const double u = e.witness_s;
  const double ratio = std::expm1(2.0 * u) / std::expm1(u);
  o.require(!e.holds && ratio > 1e6, "exp Delta2 must fail with ratio > 1e6");
  o.detail << "powers p in {1,1.5,2,3,4} exact; exp fails at u=" << u << " with ratio " << ratio;
  return o;
}

Outcome power_equivalence() {
  Outcome o;
  double worst_p = 0.0;
  double worst_a = 0.0;
  for (double c : {0.5, 1.0, 3.0}) {
    for (double p : {1.0, 2.0, 2.5}) {
      const auto phi = OrliczFunction::power_scaled(c, p);
      const auto fit = power_fit(phi);
      const double scale = std::pow(c, 1.0 / p);
      const double ep = std::abs(fit.p - p) / p;
      const double ea = std::max(std::abs(fit.a1 - scale), std::abs(fit.a2 - scale)) / scale;
      worst_p = std::max(worst_p, ep);
      worst_a = std::max(worst_a, ea);
      o.require(fit.verdict == PowerFitVerdict::ok && ep <= kFitExponent && ea <= kFitScale,
                "fit for c=" + std::to_string(c) + " p=" + std::to_string(p));
      const ProbeGrid grid;
      for (double x : logspace(grid.lo, grid.hi, grid.points)) {
        const double fx = phi(x);
        o.require(std::pow(fit.a1 * x, fit.p) <= fx * (1 + 1e-9) && fx <= std::pow(fit.a2 * x, fit.p) * (1 + 1e-9),
                  "sandwich at x=" + std::to_string(x));
      }
    }
  }
  o.detail << "max exponent error " << worst_p << ", max scale error " << worst_a;
  return o;
}

Outcome measure_isometry() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> w(0.05, 5.0);
  std::uniform_int_distribution<int> atoms(1, 8);
  std::normal_distribution<double> nd;
  auto random_pair = [&](AtomicMeasurePair& pr, std::vector<double>& f) {
    pr = {};
    f.clear();
    const int n = atoms(rng);
    for (int i = 0; i < n; ++i) {
      pr.nu1.push_back(w(rng));
      pr.nu2.push_back(w(rng));
      f.push_back(nd(rng));
    }
  };
  double worst = 0.0;
  const std::vector<double> ps = {1.0, 1.5, 2.0, 3.0, 4.0};
  for (int k = 0; k < 100; ++k) {
    AtomicMeasurePair pr;
    std::vector<double> f;
    random_pair(pr, f);
    const double p = ps[k % ps.size()];
    const auto r = equivalent_measure_map(P(p), pr, f);
    // independent weighted l^p arithmetic
    const double src = oracle::lp_norm(f, pr.nu1, p);
    const double img = oracle::lp_norm(r.image, pr.nu2, p);
    const double dev = std::max(std::abs(r.ratio - 1.0), std::abs(img / src - 1.0));
    worst = std::max(worst, dev);
    o.require(dev <= kIsometry, "power isometry, case " + std::to_string(k));
  }
  std::size_t upper = 0;
  std::size_t lower = 0;
  for (const auto& phi : builtins()) {
    for (int k = 0; k < 20; ++k) {
      AtomicMeasurePair pr;
      std::vector<double> f;
      random_pair(pr, f);
      const auto r = equivalent_measure_map(phi, pr, f);
      upper += r.upper_checked;
      lower += r.lower_checked;
      o.require(r.upper_holds && r.lower_holds, phi.describe() + " bound, case " + std::to_string(k));
    }
  }
  o.detail << "max isometry defect " << worst << "; " << upper << " upper and " << lower
           << " lower bounds checked on built-ins";
  return o;
}

Outcome compactness() {
  Outcome o;
  const std::vector<OrliczFunction> phis = {P(1), P(2), OrliczFunction::exp_minus_one()};
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;

  const BlockAlgebra dyadic = BlockAlgebra::commutative(std::vector<double>(16, 1.0 / 16));
  std::size_t rad = 0;
  for (const auto& phi : phis) {
    for (int k = 0; k < 10; ++k) {
      std::vector<double> d(16);
      for (double& v : d) v = nd(rng);
      o.require(rademacher_image_check(AlgebraElement::diagonal(dyadic, d), phi).holds, "Rademacher check");
      ++rad;
    }
  }

  const BlockAlgebra five({{5, 1.0}, {2, 0.5}});
  std::size_t iso = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto g = random_positive(five, seed);
    const double top = jacobi_eigen(g.block(0)).values.front();
    const auto& phi = phis[seed % phis.size()];
    o.require(isometry_image_check(g, 0.5 * top, phi).holds, "isometry chain seed " + std::to_string(seed));
    ++iso;
  }

  std::size_t sandwiches = 0;
  for (const auto& phi : phis) {
    for (double tau : {1.0, 1.5, 2.0, 2.5, 7.0}) {
      o.require(projection_norm_sandwich(phi, synthetic_projection(tau)).holds,
                phi.describe() + " sandwich tau=" + std::to_string(tau));
      ++sandwiches;
    }
  }

  const BlockAlgebra mixed({{2, 1.0}, {3, 0.5}, {1, 2.0}, {4, 0.25}});
  double worst_recon = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto mats = random_element(mixed, seed).mats();
    for (std::size_t b = 0; b < mats.size(); ++b) {
      if ((seed >> b) & 1U) mats[b] = Matrix(mats[b].rows(), mats[b].cols());
    }
    const AlgebraElement g(mixed, mats);
    const auto s = structure_report(g, P(2));
    worst_recon = std::max(worst_recon, s.reconstruction_error);
    o.require(s.holds && s.reconstruction_error <= kReconstruction, "structure seed " + std::to_string(seed));
  }
  o.detail << rad << " Rademacher, " << iso << " isometry, " << sandwiches << " sandwich checks; max reconstruction "
           << worst_recon;
  return o;
}

Outcome submajorization() {
  Outcome o;
  const BlockAlgebra alg({{4, 1.0}, {2, 0.5}});
  double worst = kInf;
  std::size_t pairs = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto x = random_element(alg, 2 * seed);
    const auto y = random_element(alg, 2 * seed + 1);
    const auto mx = mu(x);
    const auto my = mu(y);
    const auto mxy = mu(x * y);
    for (double t : mx.boundaries()) {
      for (double s : my.boundaries()) {
        const double slack = mx.at(t) * my.at(s) - mxy.at(t + s);
        worst = std::min(worst, slack);
        ++pairs;
        o.require(slack >= -kSubmajorization, "seed " + std::to_string(seed));
      }
    }
  }
  o.detail << pairs << " boundary pairs, min slack " << worst;
  return o;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {"Young inequality", young},
      {"biconjugation", biconjugation},
      {"rearrangement of phi(|f|)", rearrangement_lemma},
      {"Koethe/Hoelder and norm equivalence", kothe_holder},
      {"three-function multiplier bound", existence},
      {"Hoelder-exponent recovery", holder_recovery},
      {"growth probes", growth},
      {"power equivalence", power_equivalence},
      {"equivalent-measure isometry", measure_isometry},
      {"compactness identities", compactness},
      {"submajorization", submajorization},
  };
  int failed = 0;
  int index = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const Entry& e : entries) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail << "exception: " << ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << index << ". " << e.name << " | " << o.detail.str() << " | "
              << secs << " s" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (std::size(entries) - failed) << "/" << std::size(entries) << " criteria passed in " << total << " s"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
