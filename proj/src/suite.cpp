#include "orlicz/suite.hpp"

#include <random>

#include "orlicz/compactness.hpp"
#include "orlicz/rescaling.hpp"

namespace orlicz {

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::json:
      return "json";
    case OutputFormat::csv:
      return "csv";
    case OutputFormat::text:
      return "text";
  }
  return "json";
}

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  if (s == "text") return OutputFormat::text;
  throw DomainError("unknown output format \"" + s + "\" (json, csv or text)");
}

void RunConfig::validate() const {
  if (!(grid_lo > 0.0) || !(grid_hi > grid_lo) || !std::isfinite(grid_hi)) {
    throw DomainError("grid bounds must satisfy 0 < grid_lo < grid_hi < inf");
  }
  if (per_decade < 8) throw DomainError("per_decade must be at least 8");
  if (triple_points < 2) throw DomainError("triple_points must be at least 2");
  if (!(eps_young >= 0.0)) throw DomainError("eps_young must be nonnegative");
}

ProbeGrid RunConfig::probe_grid() const {
  return {grid_lo, grid_hi, logspace_per_decade(grid_lo, grid_hi, per_decade).size()};
}

TripleGrid RunConfig::triple_grid() const {
  TripleGrid g;
  g.lo = grid_lo;
  g.hi = grid_hi;
  g.points = triple_points;
  return g;
}

RunConfig config_from_json(const io::json& j, RunConfig base) {
  if (!j.is_object()) throw io::InputError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "grid_lo") {
      base.grid_lo = io::number_from_json(value);
    } else if (key == "grid_hi") {
      base.grid_hi = io::number_from_json(value);
    } else if (key == "per_decade" || key == "triple_points" || key == "seed") {
      if (!value.is_number_unsigned()) throw io::InputError("\"" + key + "\" must be a nonnegative integer");
      if (key == "per_decade") base.per_decade = value.get<std::size_t>();
      if (key == "triple_points") base.triple_points = value.get<std::size_t>();
      if (key == "seed") base.seed = value.get<std::uint64_t>();
    } else if (key == "eps_young") {
      base.eps_young = io::number_from_json(value);
    } else if (key == "format") {
      if (!value.is_string()) throw io::InputError("\"format\" must be a string");
      try {
        base.format = output_format_from_string(value.get<std::string>());
      } catch (const DomainError& e) {
        throw io::InputError(e.what());
      }
    } else if (key != "fixed") {
      throw io::InputError("unknown config key \"" + key + "\"");
    }
  }
  return base;
}

io::json config_to_json(const RunConfig& c) {
  return {{"grid_lo", c.grid_lo},
          {"grid_hi", c.grid_hi},
          {"per_decade", c.per_decade},
          {"triple_points", c.triple_points},
          {"eps_young", c.eps_young},
          {"seed", c.seed},
          {"format", to_string(c.format)},
          {"fixed",
           {{"eps_conv", kConvexityTolerance},
            {"bisection_width", 1e-10},
            {"bisection_max_iterations", 200},
            {"step_merge", kStepMergeTolerance}}}};
}

std::size_t SuiteReport::passed() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.failures == 0;
  return n;
}

std::size_t SuiteReport::failed() const { return checks.size() - passed(); }

io::json suite_to_json(const SuiteReport& r) {
  io::json checks = io::json::array();
  for (const auto& c : r.checks) {
    io::json entry{{"module", c.module}, {"name", c.name}, {"cases", c.cases}, {"failures", c.failures}};
    if (c.failures > 0) entry["first_failure"] = c.first_failure;
    checks.push_back(entry);
  }
  return {{"passed", r.passed()}, {"failed", r.failed()}, {"checks", checks}};
}

namespace {

struct Tally {
  SuiteCheck c;

  void expect(bool ok, const std::string& what) {
    ++c.cases;
    if (ok) return;
    if (c.failures == 0) c.first_failure = what;
    ++c.failures;
  }
};

template <class F>
void run(SuiteReport& report, const char* module, const char* name, F&& body) {
  Tally t;
  t.c.module = module;
  t.c.name = name;
  try {
    body(t);
  } catch (const std::exception& e) {
    t.expect(false, std::string("exception: ") + e.what());
  }
  report.checks.push_back(std::move(t.c));
}

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

std::string at(const OrliczFunction& phi, const std::string& where) { return phi.describe() + " at " + where; }

std::string num(double x) { return io::format_number(x); }

AlgebraElement unit_ball(const OrliczFunction& phi, const AlgebraElement& x) {
  return (1.0 / luxemburg_norm(phi, x).value) * x;
}

void function_checks(SuiteReport& report, const RunConfig& cfg) {
  const auto grid = logspace_per_decade(cfg.grid_lo, cfg.grid_hi, cfg.per_decade);

  run(report, "orlicz_function", "Young inequality", [&](Tally& t) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> e(std::log10(cfg.grid_lo), std::log10(cfg.grid_hi));
    for (const auto& phi : builtins()) {
      const auto star = conjugate(phi);
      for (int i = 0; i < 500; ++i) {
        const double s = std::pow(10.0, e(rng));
        const double u = std::pow(10.0, e(rng));
        t.expect(young_gap(phi, star, s, u) >= -cfg.eps_young * (1.0 + s * u), at(phi, "(" + num(s) + ", " + num(u) + ")"));
      }
    }
  });

  run(report, "orlicz_function", "biconjugation", [&](Tally& t) {
    for (const auto& phi : power_family()) {
      const auto bi = conjugate(conjugate(phi), ConjugateMethod::numeric);
      for (double x : logspace(1e-2, 1e2, 9)) t.expect(relative_close(bi(x), phi(x), 1e-6), at(phi, num(x)));
    }
    std::vector<Knot> knots;
    for (int i = 1; i <= 8; ++i) knots.push_back({0.5 * i, 0.125 * i * i + 0.25 * i});
    const auto pl = OrliczFunction::piecewise_linear(knots, 5.0);
    const auto bi = conjugate(conjugate(pl), ConjugateMethod::numeric);
    for (double x : logspace(0.05, 20.0, 12)) t.expect(relative_close(bi(x), pl(x), 1e-3), at(pl, num(x)));
  });

  run(report, "orlicz_function", "conjugate order reversal", [&](Tally& t) {
    // each pair is ordered pointwise on all of [0, inf)
    const std::pair<OrliczFunction, OrliczFunction> pairs[] = {
        {P(2), OrliczFunction::power_scaled(2, 2)},
        {OrliczFunction::t_log1p(), OrliczFunction::exp_minus_one()},
    };
    for (const auto& [lo, hi] : pairs) {
      const auto lo_star = conjugate(lo);
      const auto hi_star = conjugate(hi);
      for (double x : grid) {
        t.expect(hi_star(x) <= lo_star(x) * (1 + 1e-9) + 1e-12, at(hi, num(x)));
      }
    }
  });

  run(report, "orlicz_function", "formal inverse", [&](Tally& t) {
    for (const auto& phi : {P(1.5), P(3), OrliczFunction::power_scaled(3, 2), OrliczFunction::exp_minus_one(),
                            OrliczFunction::t_log1p()}) {
      for (double x : grid) t.expect(relative_close(phi(formal_inverse(phi, x)), x, 1e-8), at(phi, num(x)));
    }
  });

  run(report, "orlicz_function", "a-form and C-form agree", [&](Tally& t) {
    for (const auto& phi : {OrliczFunction::power_scaled(0.5, 2), OrliczFunction::power_scaled(0.25, 3)}) {
      const auto c = probe_delta_prime(phi, 0.0, cfg.probe_grid());
      t.expect(c.holds && c.constant > 1.0, at(phi, "C-form"));
      if (c.holds && c.constant > 1.0) {
        t.expect(check_delta_prime_a_form(phi, 1.0 / c.constant, 0.0, cfg.probe_grid()).holds, at(phi, "a-form"));
      }
    }
  });

  run(report, "orlicz_function", "power fit", [&](Tally& t) {
    for (double p : {1.0, 1.5, 2.5, 4.0}) {
      const auto fit = power_fit(P(p), 0.0, cfg.probe_grid());
      t.expect(fit.verdict == PowerFitVerdict::ok && std::abs(fit.p - p) <= 0.01 * p, at(P(p), "fit"));
    }
  });
}

void algebra_checks(SuiteReport& report, const RunConfig& cfg) {
  const BlockAlgebra alg({{3, 1.0}, {2, 0.5}, {1, 2.0}});
  const std::uint64_t s0 = cfg.seed * 1000;

  run(report, "trace_algebra", "rearrangement of phi(|x|)", [&](Tally& t) {
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto x = random_positive(alg, s0 + k);
      const StepFunction m = mu(x);
      for (const auto& phi : {P(1.5), P(3), OrliczFunction::exp_minus_one(), OrliczFunction::t_log1p()}) {
        const auto fx = apply_function(phi, x);
        const StepFunction mf = mu(fx);
        double start = 0.0;
        for (const Step& s : m.steps()) {
          const double mid = start + 0.5 * s.length;
          t.expect(relative_close(phi(s.value), mf.at(mid), 1e-10), at(phi, "step " + num(mid)));
          start += s.length;
        }
        const double integral = m.integrate([&](double v) { return phi(v); });
        t.expect(std::abs(trace(fx) - integral) <= 1e-10 * (1.0 + std::abs(integral)), at(phi, "trace"));
      }
    }
  });

  run(report, "trace_algebra", "trace cyclicity", [&](Tally& t) {
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto x = random_element(alg, s0 + 2 * k);
      const auto y = random_element(alg, s0 + 2 * k + 1);
      const double a = trace(x * y);
      const double b = trace(y * x);
      t.expect(std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)}), "seed " + std::to_string(s0 + k));
      t.expect(trace(x * adjoint(x)) >= 0.0, "positivity");
    }
  });

  run(report, "trace_algebra", "submajorization", [&](Tally& t) {
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto x = random_element(alg, s0 + 2 * k);
      const auto y = random_element(alg, s0 + 2 * k + 1);
      const StepFunction mx = mu(x);
      const StepFunction my = mu(y);
      for (double a : mx.boundaries())
        for (double b : my.boundaries()) t.expect(submajorization_check(x, y, a, b), "(" + num(a) + ", " + num(b) + ")");
    }
  });

  run(report, "trace_algebra", "mu invariance", [&](Tally& t) {
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto x = random_element(alg, s0 + k);
      const StepFunction m = mu(x);
      t.expect(equivalent(m, mu(adjoint(x))) && equivalent(m, mu(abs(x))), "seed " + std::to_string(s0 + k));
    }
  });
}

void norm_checks(SuiteReport& report, const RunConfig& cfg) {
  const BlockAlgebra alg({{2, 1.0}, {2, 0.5}});
  const std::uint64_t s0 = cfg.seed * 1000 + 100;
  using NormFn = NormResult (*)(const OrliczFunction&, const AlgebraElement&);

  run(report, "norms", "norm axioms", [&](Tally& t) {
    for (const auto& phi : builtins()) {
      for (std::uint64_t k = 0; k < 4; ++k) {
        const auto x = random_element(alg, s0 + 2 * k);
        const auto y = random_element(alg, s0 + 2 * k + 1);
        for (NormFn norm : {NormFn{&luxemburg_norm}, NormFn{&orlicz_norm}}) {
          auto n = [&](const AlgebraElement& z) { return norm(phi, z).value; };
          t.expect(n(x + y) <= (n(x) + n(y)) * (1 + 1e-9), at(phi, "triangle"));
          t.expect(relative_close(n(-2.5 * x), 2.5 * n(x), 1e-9), at(phi, "homogeneity"));
        }
      }
    }
  });

  run(report, "norms", "unit-ball modular law", [&](Tally& t) {
    for (const auto& phi : builtins()) {
      for (std::uint64_t k = 0; k < 4; ++k) {
        const auto x = unit_ball(phi, random_element(alg, s0 + k));
        t.expect(modular(phi, x) <= 1 + 1e-9, at(phi, "seed " + std::to_string(s0 + k)));
      }
    }
  });

  run(report, "norms", "rearrangement invariance", [&](Tally& t) {
    for (const auto& phi : builtins()) {
      for (std::uint64_t k = 0; k < 4; ++k) {
        const auto x = random_element(alg, s0 + k);
        const auto u = random_orthogonal(alg, s0 + 50 + k);
        const auto v = u * x;
        if (!equivalent(mu(x), mu(v))) continue;
        t.expect(relative_close(luxemburg_norm(phi, v).value, luxemburg_norm(phi, x).value, 1e-12), at(phi, "u x"));
        t.expect(luxemburg_norm(phi, mu(x)).value == luxemburg_norm(phi, x).value, at(phi, "step input"));
      }
    }
  });

  run(report, "norms", "monotonicity", [&](Tally& t) {
    for (const auto& phi : builtins()) {
      for (std::uint64_t k = 0; k < 4; ++k) {
        const auto x = random_element(alg, s0 + k);
        const auto y = 0.5 * x;
        t.expect(dominated_by(mu(y), mu(x)), "mu domination");
        t.expect(luxemburg_norm(phi, y).value <= luxemburg_norm(phi, x).value + 1e-9, at(phi, "x/2"));
      }
    }
  });

  run(report, "norms", "Hoelder inequality", [&](Tally& t) {
    for (const auto& phi : builtins()) {
      const auto star = conjugate(phi);
      for (std::uint64_t k = 0; k < 4; ++k) {
        const auto h = holder_check(random_element(alg, s0 + 2 * k), random_element(alg, s0 + 2 * k + 1), phi, star);
        t.expect(h.holds, at(phi, "seed " + std::to_string(s0 + k)));
      }
    }
  });
}

void multiplier_checks(SuiteReport& report, const RunConfig& cfg) {
  const auto grid = cfg.triple_grid();
  const std::uint64_t s0 = cfg.seed * 1000 + 200;

  run(report, "multipliers", "search soundness", [&](Tally& t) {
    const auto zeta = P(4);
    const auto phi1 = P(4);
    const auto phi2 = P(2);
    const auto found = search_constants(zeta, phi1, phi2, 100000, grid);
    t.expect(found.witness.has_value(), "no witness for (t^4, t^4, t^2)");
    if (!found.witness) return;
    const auto star = conjugate(phi2);
    const BlockAlgebra alg({{3, 1.0}, {1, 0.5}});
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto f = unit_ball(zeta, random_element(alg, s0 + 3 * k));
      const auto g = unit_ball(phi1, random_element(alg, s0 + 3 * k + 1));
      const auto h = unit_ball(star, random_element(alg, s0 + 3 * k + 2));
      t.expect(verify_bound(zeta, phi1, phi2, *found.report, f, g, h).holds, "triple " + std::to_string(k));
    }
  });

  run(report, "multipliers", "monotone slack", [&](Tally& t) {
    const ConstantWitness w{2, 1, 1, 1};
    t.expect(check_constants(P(4), P(4), P(2), w, grid).holds, "base witness");
    for (const ConstantWitness& v : {ConstantWitness{4, 1, 1, 1}, ConstantWitness{2, 2, 1, 1},
                                     ConstantWitness{2, 1, 3, 1}, ConstantWitness{2, 1, 1, 4}}) {
      t.expect(check_constants(P(4), P(4), P(2), v, grid).holds, "enlarged witness " + io::witness_to_json(v).dump());
    }
  });

  run(report, "multipliers", "Hoelder-exponent recovery", [&](Tally& t) {
    struct Case {
      double p, q, r;
      bool expect;
    };
    for (const Case& c : {Case{4, 4, 2, true}, Case{2, 2, 1, true}, Case{6, 3, 2, true}, Case{2, 2, 2, false}}) {
      const bool found = search_constants(P(c.p), P(c.q), P(c.r), 100000, grid).witness.has_value();
      t.expect(found == c.expect, "(" + num(c.p) + ", " + num(c.q) + ", " + num(c.r) + ")");
    }
  });

  run(report, "multipliers", "condition (a) witness", [&](Tally& t) {
    for (const auto& [psi, phi2] : {std::pair{P(2), P(2)}, std::pair{P(3), P(1.5)}}) {
      const auto a = condition_a(psi, phi2, grid);
      if (!a.applicable) continue;
      t.expect(a.validation && a.validation->holds, at(psi, "condition (a)"));
    }
  });
}

void rescaling_checks(SuiteReport& report, const RunConfig& cfg) {
  const std::uint64_t s0 = cfg.seed * 1000 + 300;

  run(report, "rescaling", "power isometry", [&](Tally& t) {
    std::mt19937_64 rng(s0);
    std::uniform_real_distribution<double> w(0.1, 5.0);
    std::normal_distribution<double> nd;
    for (double p : {1.0, 2.0, 3.5}) {
      for (int k = 0; k < 10; ++k) {
        AtomicMeasurePair pr;
        std::vector<double> f;
        for (int i = 0; i < 5; ++i) {
          pr.nu1.push_back(w(rng));
          pr.nu2.push_back(w(rng));
          f.push_back(nd(rng));
        }
        const auto m = equivalent_measure_map(P(p), pr, f);
        t.expect(std::abs(m.ratio - 1.0) <= 1e-9, at(P(p), "case " + std::to_string(k)));
      }
    }
  });

  run(report, "rescaling", "rescale round trip", [&](Tally& t) {
    const BlockAlgebra alg({{3, 1.0}});
    for (const auto& phi2 : {P(2), P(3), OrliczFunction::power_scaled(2, 1.5)}) {
      for (std::uint64_t k = 0; k < 3; ++k) {
        const auto g = random_positive(alg, s0 + k);
        const auto up = rescale_up(P(2), phi2, g);
        t.expect(up.applicable && up.holds, at(phi2, "up"));
        if (!up.applicable) continue;
        const auto down = rescale_down(P(2), phi2, *up.image);
        t.expect(down.applicable && frobenius(*down.image - g) <= 1e-8 * (1 + frobenius(g)), at(phi2, "down"));
      }
    }
  });

  run(report, "rescaling", "composition norm lemma", [&](Tally& t) {
    const BlockAlgebra alg({{3, 1.0}, {2, 0.5}});
    const auto inner = OrliczFunction::t_log1p();
    const auto zeta = compose(P(2), inner).function;
    for (std::uint64_t k = 0; k < 10; ++k) {
      auto a = random_element(alg, s0 + k);
      a = (0.9 / luxemburg_norm(zeta, a).value) * a;
      const auto r = lemma_lm_check(P(2), inner, a);
      if (r.precondition) t.expect(r.holds, "seed " + std::to_string(s0 + k));
    }
  });

  run(report, "rescaling", "power fit consistency", [&](Tally& t) {
    for (const auto& phi : builtins()) {
      if (!probe_delta_prime(phi, 0.0, cfg.probe_grid()).holds) continue;
      if (!probe_nabla_prime(phi, 0.0, cfg.probe_grid()).holds) continue;
      t.expect(power_fit(phi, 0.0, cfg.probe_grid()).verdict == PowerFitVerdict::ok, at(phi, "fit"));
    }
  });
}

void compactness_checks(SuiteReport& report, const RunConfig& cfg) {
  const std::uint64_t s0 = cfg.seed * 1000 + 400;
  const BlockAlgebra alg({{3, 1.0}, {2, 0.5}, {1, 2.0}});

  run(report, "compactness_diagnostics", "unitary invariance", [&](Tally& t) {
    for (std::uint64_t k = 0; k < 20; ++k) {
      t.expect(unitary_invariance_check(random_element(alg, s0 + k), random_orthogonal(alg, s0 + 50 + k)),
               "seed " + std::to_string(s0 + k));
    }
    const auto dyadic = BlockAlgebra::commutative(std::vector<double>(16, 1.0 / 16));
    std::mt19937_64 rng(s0);
    std::normal_distribution<double> nd;
    std::vector<double> d(16);
    for (double& v : d) v = nd(rng);
    t.expect(rademacher_image_check(AlgebraElement::diagonal(dyadic, d), P(2)).holds, "Rademacher family");
  });

  run(report, "compactness_diagnostics", "partial isometry chain", [&](Tally& t) {
    const BlockAlgebra five({{5, 1.0}, {2, 0.5}});
    for (std::uint64_t k = 0; k < 10; ++k) {
      const auto g = random_positive(five, s0 + k);
      const double top = jacobi_eigen(g.block(0)).values.front();
      t.expect(isometry_image_check(g, 0.5 * top, P(2)).holds, "seed " + std::to_string(s0 + k));
    }
  });

  run(report, "compactness_diagnostics", "projection norm sandwich", [&](Tally& t) {
    for (const auto& phi : builtins()) {
      for (double tau : {1.0, 1.5, 2.0, 2.5, 7.0}) {
        t.expect(projection_norm_sandwich(phi, synthetic_projection(tau)).holds, at(phi, "tau " + num(tau)));
      }
    }
  });

  run(report, "compactness_diagnostics", "structure floor", [&](Tally& t) {
    for (std::uint64_t k = 0; k < 10; ++k) {
      auto mats = random_element(alg, s0 + k).mats();
      mats[k % mats.size()] = Matrix(mats[k % mats.size()].rows(), mats[k % mats.size()].cols());
      const auto s = structure_report(AlgebraElement(alg, mats), P(2));
      t.expect(s.holds && s.norm_floor > 0.0, "seed " + std::to_string(s0 + k));
    }
    const auto z = structure_report(AlgebraElement::zero(alg), P(2));
    t.expect(z.holds && z.norm_floor == 0.0, "zero element");
  });
}

void determinism_checks(SuiteReport& report, const RunConfig& cfg) {
  run(report, "cli", "determinism", [&](Tally& t) {
    const BlockAlgebra alg({{3, 1.0}});
    t.expect(random_element(alg, cfg.seed) == random_element(alg, cfg.seed), "random_element");
    const auto a = search_constants(P(6), P(3), P(2), 100000, cfg.triple_grid());
    const auto b = search_constants(P(6), P(3), P(2), 100000, cfg.triple_grid());
    t.expect(a.evaluations == b.evaluations && a.witness.has_value() == b.witness.has_value(), "search_constants");
    const auto x = random_element(alg, cfg.seed);
    t.expect(luxemburg_norm(P(2.5), x).value == luxemburg_norm(P(2.5), x).value, "luxemburg_norm");
  });
}

}  // namespace

SuiteReport run_verify_suite(const RunConfig& config) {
  config.validate();
  SuiteReport report;
  function_checks(report, config);
  algebra_checks(report, config);
  norm_checks(report, config);
  multiplier_checks(report, config);
  rescaling_checks(report, config);
  compactness_checks(report, config);
  determinism_checks(report, config);
  return report;
}

}  // namespace orlicz
