#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "orlicz/compactness.hpp"
#include "orlicz/io.hpp"
#include "orlicz/multipliers.hpp"
#include "orlicz/rescaling.hpp"
#include "orlicz/suite.hpp"

using namespace orlicz;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

/// Thrown by a command whose checked property fails; carries the first
/// failing case for stderr.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json num(double x) { return io::number_to_json(x); }

json nums(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

json flags(const std::vector<bool>& v) {
  json out = json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

json to_json(const ValidityReport& r) {
  json out{{"valid", r.valid}, {"grid_points", r.grid_points}};
  if (!r.valid) {
    out["failed"] = to_string(r.failed);
    out["witness"] = num(r.witness);
    out["detail"] = r.detail;
  }
  return out;
}

json to_json(const GrowthReport& r) {
  json out{{"condition", to_string(r.condition)},
           {"holds", r.holds},
           {"constant", num(r.constant)},
           {"witness_s", num(r.witness_s)},
           {"witness_t", num(r.witness_t)},
           {"grid", r.grid},
           {"skipped_zero", r.skipped_zero},
           {"overflowed", r.overflowed}};
  if (!r.detail.empty()) out["detail"] = r.detail;
  if (r.a_form) out["a_form"] = num(*r.a_form);
  return out;
}

json to_json(const PowerFit& f) {
  return {{"p", num(f.p)},
          {"a1", num(f.a1)},
          {"a2", num(f.a2)},
          {"verdict", to_string(f.verdict)},
          {"points_checked", f.points_checked}};
}

json to_json(const NFunctionLimits& l) {
  return {{"at_zero", num(l.at_zero)},
          {"at_infinity", num(l.at_infinity)},
          {"zero_class", to_string(l.zero_class)},
          {"infinity_class", to_string(l.infinity_class)},
          {"n_function", l.n_function}};
}

json to_json(const NfnReport& r) {
  return {{"large_t_holds", r.large_t_holds},
          {"small_t_holds", r.small_t_holds},
          {"small_t_vacuous", r.small_t_vacuous},
          {"small_t_inverse_exponent", r.small_t_inverse_exponent},
          {"large_t_last_ratio", num(r.large_t_last_ratio)},
          {"small_t_last_ratio", num(r.small_t_last_ratio)},
          {"tail_start", r.tail_start}};
}

json to_json(const NormResult& r) {
  return {{"value", num(r.value)}, {"method", to_string(r.method)}, {"iterations", r.iterations}};
}

json to_json(const MultiplierReport& r) {
  json out{{"holds", r.holds},
           {"constants", io::witness_to_json(r.constants)},
           {"worst_ratio", num(r.worst_ratio)},
           {"worst_point", {num(r.worst_point[0]), num(r.worst_point[1]), num(r.worst_point[2])}},
           {"violation_on_scan", r.violation_on_scan},
           {"derived_bound", num(r.derived_bound)},
           {"checked_products", r.checked_products}};
  if (r.violation) out["violation"] = {num((*r.violation)[0]), num((*r.violation)[1]), num((*r.violation)[2])};
  return out;
}

json to_json(const BoundReport& b) {
  return {{"normalized", b.normalized}, {"holds", b.holds},   {"pairing", num(b.pairing)},
          {"product_norm", num(b.product_norm)}, {"bound", num(b.bound)}, {"slack", num(b.slack)}};
}

json to_json(const RescaleUpReport& r) {
  json out{{"applicable", r.applicable}};
  if (!r.applicable) {
    out["reason"] = r.reason;
    return out;
  }
  out.update({{"image", io::element_to_json(*r.image)},
              {"K", num(r.K)},
              {"alpha", num(r.alpha)},
              {"N", r.N},
              {"zeta_norm", num(r.zeta_norm)},
              {"image_norm", num(r.image_norm)},
              {"bound", num(r.bound)},
              {"domination", r.domination},
              {"holds", r.holds}});
  return out;
}

json to_json(const RescaleDownReport& r) {
  json out{{"applicable", r.applicable}};
  if (!r.applicable) {
    out["reason"] = r.reason;
    return out;
  }
  out.update({{"image", io::element_to_json(*r.image)},
              {"checks", r.checks},
              {"worst_excess", num(r.worst_excess)},
              {"holds", r.holds}});
  return out;
}

json to_json(const MeasureMapReport& r) {
  json out{{"image", nums(r.image)},
           {"source_norm", num(r.source_norm)},
           {"image_norm", num(r.image_norm)},
           {"ratio", num(r.ratio)},
           {"upper_checked", r.upper_checked},
           {"upper_holds", r.upper_holds},
           {"lower_checked", r.lower_checked},
           {"lower_holds", r.lower_holds}};
  if (r.a) out["a"] = num(*r.a);
  if (r.b) out["b"] = num(*r.b);
  return out;
}

json to_json(const StructureReport& s) {
  json dims = json::array();
  for (std::size_t d : s.block_dims) dims.push_back(d);
  return {{"carrier_mask", flags(s.carrier_mask)},   {"block_dims", dims},
          {"finite_type_I", s.finite_type_I},        {"block_norms", nums(s.block_norms)},
          {"norm_floor", num(s.norm_floor)},         {"reconstruction_error", num(s.reconstruction_error)},
          {"holds", s.holds}};
}

json to_json(const RademacherReport& r) {
  return {{"k", r.k}, {"norm_g", num(r.norm_g)}, {"norms", nums(r.norms)}, {"mu_equal", flags(r.mu_equal)},
          {"holds", r.holds}};
}

json to_json(const IsometryReport& r) {
  return {{"block", r.block},
          {"top_eigenvalue", num(r.top_eigenvalue)},
          {"e1_norm", num(r.e1_norm)},
          {"norms", nums(r.norms)},
          {"chain_exact", flags(r.chain_exact)},
          {"worst_margin", num(r.worst_margin)},
          {"holds", r.holds}};
}

json to_json(const SandwichReport& r) {
  return {{"tau", num(r.tau)},       {"n", r.n},           {"norm", num(r.norm)},
          {"inf_n", num(r.inf_n)},   {"inf_n1", num(r.inf_n1)}, {"holds", r.holds},
          {"reversed_holds", r.reversed_holds}};
}

/// key = value lines (text) or key,value rows (csv) for nested JSON.
void flatten(std::ostream& os, const json& j, const std::string& prefix, char sep) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(os, v, prefix.empty() ? k : prefix + "." + k, sep);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(os, j[i], prefix.empty() ? std::to_string(i) : prefix + "." + std::to_string(i), sep);
    }
  } else {
    os << prefix << (sep == ',' ? "," : " = ");
    if (j.is_number_float()) {
      os << io::format_number(j.get<double>());
    } else if (j.is_string()) {
      os << j.get<std::string>();
    } else {
      os << j.dump();
    }
    os << '\n';
  }
}

struct Context {
  std::function<void(RunConfig&)> configure;

  /// Config file and flags, applied once parsing completes.
  const RunConfig& config() {
    if (!configured_) {
      configure(config_);
      configured_ = true;
    }
    return config_;
  }

  void emit(const json& j) {
    switch (config().format) {
      case OutputFormat::json:
        std::cout << j.dump(2) << '\n';
        break;
      case OutputFormat::text:
        flatten(std::cout, j, "", '=');
        break;
      case OutputFormat::csv:
        std::cout << "key,value\n";
        flatten(std::cout, j, "", ',');
        break;
    }
  }

  void emit_scalar(double x) { std::cout << io::format_number(x) << '\n'; }

  /// Emits the report, then fails the command if `holds` is false.
  void emit_checked(const json& j, bool holds, const std::string& what) {
    emit(j);
    if (!holds) throw AssertionFailure(what);
  }

 private:
  RunConfig config_;
  bool configured_ = false;
};

OrliczFunction load_function(const std::string& path) { return io::function_from_json(io::read_json_file(path)); }

AlgebraElement load_element(const std::string& path) { return io::element_from_json(io::read_json_file(path)); }

std::vector<double> load_vector(const std::string& path) { return io::vector_from_json(io::read_json_file(path)); }

void add_fn(CLI::App& app, Context& ctx) {
  auto* fn = app.add_subcommand("fn", "Orlicz function operations")->require_subcommand(1);

  struct Args {
    std::string spec;
    double at = 0.0;
    bool numeric = false;
    std::string condition = "all";
    double u0 = 0.0;
    double x0 = 0.0;
    double q = 0.5;
  };
  auto args = std::make_shared<Args>();

  auto scalar = [fn, args](const char* name, const char* help) {
    auto* sub = fn->add_subcommand(name, help);
    sub->add_option("--spec", args->spec, "function spec (JSON)")->required();
    sub->add_option("--at", args->at, "argument")->required();
    return sub;
  };

  auto* conj = scalar("conjugate", "evaluate the complementary function");
  conj->add_flag("--numeric", args->numeric, "force the numeric supremum");
  conj->callback([&ctx, args] {
    const auto phi = load_function(args->spec);
    const auto star = conjugate(phi, args->numeric ? ConjugateMethod::numeric : ConjugateMethod::automatic);
    ctx.emit_scalar(star(args->at));
  });
  scalar("inverse", "formal inverse sup{s : phi(s) <= t}")->callback([&ctx, args] {
    ctx.emit_scalar(formal_inverse(load_function(args->spec), args->at));
  });
  scalar("eval", "evaluate phi")->callback([&ctx, args] {
    ctx.emit_scalar(load_function(args->spec)(args->at));
  });

  auto* check = fn->add_subcommand("check", "check the Orlicz axioms on the probe grid");
  check->add_option("--spec", args->spec)->required();
  check->callback([&ctx, args] {
    const auto phi = load_function(args->spec);
    const auto r = is_orlicz(phi);
    json out = to_json(r);
    out["a_phi"] = num(phi.a_phi());
    out["b_phi"] = num(phi.b_phi());
    ctx.emit_checked(out, r.valid, phi.describe() + " violates " + to_string(r.failed) + " at " + io::format_number(r.witness));
  });

  auto* probe = fn->add_subcommand("probe", "growth-condition probes");
  probe->add_option("--spec", args->spec)->required();
  probe->add_option("--condition", args->condition, "delta2, delta_prime, nabla_prime or all")
      ->check(CLI::IsMember({"delta2", "delta_prime", "nabla_prime", "all"}));
  probe->add_option("--u0", args->u0, "threshold for the local conditions");
  probe->callback([&ctx, args] {
    const auto phi = load_function(args->spec);
    const auto grid = ctx.config().probe_grid();
    json out = json::object();
    const bool all = args->condition == "all";
    if (all || args->condition == "delta2") {
      out["delta2"] = to_json(probe_delta2(phi, std::max(grid.lo, args->u0), grid.hi, grid.points));
    }
    if (all || args->condition == "delta_prime") out["delta_prime"] = to_json(probe_delta_prime(phi, args->u0, grid));
    if (all || args->condition == "nabla_prime") out["nabla_prime"] = to_json(probe_nabla_prime(phi, args->u0, grid));
    ctx.emit(out);
  });

  auto* limits = fn->add_subcommand("limits", "phi(t)/t at 0 and at infinity");
  limits->add_option("--spec", args->spec)->required();
  limits->callback([&ctx, args] { ctx.emit(to_json(n_function_limits(load_function(args->spec)))); });

  auto* fit = fn->add_subcommand("powerfit", "power sandwich a1 x^p <= phi(x) <= a2 x^p");
  fit->add_option("--spec", args->spec)->required();
  fit->add_option("--x0", args->x0, "lower end of the fitted range");
  fit->callback([&ctx, args] { ctx.emit(to_json(power_fit(load_function(args->spec), args->x0, ctx.config().probe_grid()))); });

  auto* nfn = fn->add_subcommand("nfn", "growth of phi(t)/t^q at both ends, 0 < q < 1");
  nfn->add_option("--spec", args->spec)->required();
  nfn->add_option("--q", args->q, "exponent in (0, 1)");
  nfn->callback([&ctx, args] { ctx.emit(to_json(lemma_nfn_check(load_function(args->spec), args->q))); });
}

void add_rearrange(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("rearrange", "generalised singular value function mu(x)");
  auto element = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  sub->add_option("--element", *element, "element (JSON)")->required();
  sub->add_option("--out", *out, "write the step function as CSV to this file");
  sub->callback([&ctx, element, out] {
    const StepFunction m = mu(load_element(*element));
    if (!out->empty()) {
      std::ofstream f(*out);
      if (!f) throw io::InputError("cannot write " + *out);
      io::write_rearrangement_csv(f, m);
      std::cerr << "wrote " << m.steps().size() << " steps to " << *out << '\n';
    } else if (ctx.config().format == OutputFormat::csv) {
      io::write_rearrangement_csv(std::cout, m);
    } else {
      ctx.emit(io::step_function_to_json(m));
    }
  });
}

void add_norm(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("norm", "Luxemburg or Orlicz norm");
  struct Args {
    std::string which = "luxemburg";
    std::string fn;
    std::string element;
  };
  auto args = std::make_shared<Args>();
  sub->add_option("--which", args->which)->check(CLI::IsMember({"luxemburg", "orlicz"}));
  sub->add_option("--fn", args->fn, "function spec (JSON)")->required();
  sub->add_option("--element", args->element, "element (JSON)")->required();
  sub->callback([&ctx, args] {
    const auto phi = load_function(args->fn);
    const auto x = load_element(args->element);
    const auto r = args->which == "luxemburg" ? luxemburg_norm(phi, x) : orlicz_norm(phi, x);
    if (ctx.config().format == OutputFormat::text) {
      ctx.emit_scalar(r.value);
    } else {
      ctx.emit(to_json(r));
    }
  });
}

void add_mult(CLI::App& app, Context& ctx) {
  auto* mult = app.add_subcommand("mult", "three-function multiplier conditions")->require_subcommand(1);
  struct Args {
    std::string zeta, phi1, phi2, constants, f, g, h;
    bool search = false;
    std::size_t budget = 100000;
  };
  auto args = std::make_shared<Args>();
  auto functions = [args](CLI::App* sub) {
    sub->add_option("--zeta", args->zeta)->required();
    sub->add_option("--phi1", args->phi1)->required();
    sub->add_option("--phi2", args->phi2)->required();
  };

  auto* check = mult->add_subcommand("check", "check a witness (M, alpha, beta, gamma) or search for one");
  functions(check);
  auto* c_opt = check->add_option("--constants", args->constants, "M,alpha,beta,gamma");
  auto* s_opt = check->add_flag("--search", args->search, "search the lattice 2^[-8,8]^4");
  c_opt->excludes(s_opt);
  check->add_option("--budget", args->budget, "search evaluation budget");
  check->callback([&ctx, args] {
    const auto zeta = load_function(args->zeta);
    const auto phi1 = load_function(args->phi1);
    const auto phi2 = load_function(args->phi2);
    const auto grid = ctx.config().triple_grid();
    if (args->search) {
      const auto r = search_constants(zeta, phi1, phi2, args->budget, grid);
      json out{{"found", r.witness.has_value()},
               {"evaluations", r.evaluations},
               {"best_candidate", io::witness_to_json(r.best_candidate)},
               {"best_ratio", num(r.best_ratio)}};
      if (r.witness) out["report"] = to_json(*r.report);
      ctx.emit_checked(out, r.witness.has_value(),
                       "no witness within " + std::to_string(r.evaluations) + " evaluations");
      return;
    }
    if (args->constants.empty()) throw io::InputError("mult check needs --constants or --search");
    const auto r = check_constants(zeta, phi1, phi2, io::witness_from_string(args->constants), grid);
    std::string where;
    if (r.violation) {
      where = "violation at (" + io::format_number((*r.violation)[0]) + ", " + io::format_number((*r.violation)[1]) +
              ", " + io::format_number((*r.violation)[2]) + ")" + (r.violation_on_scan ? " on the diagonal scan" : "");
    }
    ctx.emit_checked(to_json(r), r.holds, where);
  });

  auto* verify = mult->add_subcommand("verify", "bound tau(|fgh|) for Luxemburg-normalised f, g, h");
  verify->set_help_flag("--help", "print this help");  // frees -h for --h
  functions(verify);
  verify->add_option("--constants", args->constants, "M,alpha,beta,gamma")->required();
  verify->add_option("--f", args->f)->required();
  verify->add_option("--g", args->g)->required();
  verify->add_option("--h", args->h)->required();
  verify->callback([&ctx, args] {
    const auto zeta = load_function(args->zeta);
    const auto phi1 = load_function(args->phi1);
    const auto phi2 = load_function(args->phi2);
    const auto rep = check_constants(zeta, phi1, phi2, io::witness_from_string(args->constants), ctx.config().triple_grid());
    if (!rep.holds) {
      ctx.emit(json{{"check", to_json(rep)}});
      throw AssertionFailure("the constants fail check_constants; no bound to verify");
    }
    const auto b = verify_bound(zeta, phi1, phi2, rep, load_element(args->f), load_element(args->g), load_element(args->h));
    std::string why = b.normalized ? "pairing " + io::format_number(b.pairing) + " exceeds " + io::format_number(b.bound)
                                   : "inputs are not in the Luxemburg unit balls";
    ctx.emit_checked(to_json(b), b.holds, why);
  });
}

void add_rescale(CLI::App& app, Context& ctx) {
  auto* rescale = app.add_subcommand("rescale", "spectral rescaling by phi2 and its inverse")->require_subcommand(1);
  struct Args {
    std::string psi, phi2, element;
  };
  auto args = std::make_shared<Args>();
  for (const char* dir : {"up", "down"}) {
    auto* sub = rescale->add_subcommand(dir, std::string(dir) == "up" ? "g -> phi2(g)" : "f -> phi2^{-1}(f)");
    sub->add_option("--psi", args->psi)->required();
    sub->add_option("--phi2", args->phi2)->required();
    sub->add_option("--element", args->element, "positive element (JSON)")->required();
    const bool up = std::string(dir) == "up";
    sub->callback([&ctx, args, up] {
      const auto psi = load_function(args->psi);
      const auto phi2 = load_function(args->phi2);
      const auto x = load_element(args->element);
      if (up) {
        const auto r = rescale_up(psi, phi2, x);
        ctx.emit_checked(to_json(r), r.applicable && r.holds,
                         r.applicable ? "norm bound fails: " + io::format_number(r.image_norm) + " > " +
                                            io::format_number(r.bound)
                                      : r.reason);
      } else {
        const auto r = rescale_down(psi, phi2, x);
        ctx.emit_checked(to_json(r), r.applicable && r.holds,
                         r.applicable ? "modular domination fails by " + io::format_number(r.worst_excess) : r.reason);
      }
    });
  }
}

void add_measure_map(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("measure-map", "f -> phi^{-1}(d nu1 / d nu2) f on atoms");
  struct Args {
    std::string fn, nu1, nu2, f;
  };
  auto args = std::make_shared<Args>();
  sub->add_option("--fn", args->fn)->required();
  sub->add_option("--nu1", args->nu1)->required();
  sub->add_option("--nu2", args->nu2)->required();
  sub->add_option("--f", args->f)->required();
  sub->callback([&ctx, args] {
    const AtomicMeasurePair pair{load_vector(args->nu1), load_vector(args->nu2)};
    const auto r = equivalent_measure_map(load_function(args->fn), pair, load_vector(args->f));
    ctx.emit_checked(to_json(r), r.upper_holds && r.lower_holds,
                     r.upper_holds ? "lower norm bound fails" : "upper norm bound fails");
  });
}

void add_compact(CLI::App& app, Context& ctx) {
  auto* compact = app.add_subcommand("compact", "finite identities behind the compactness argument")->require_subcommand(1);
  struct Args {
    std::string g, fn;
    double lambda = 0.0;
    std::vector<double> taus{1.0, 1.5, 2.0, 2.5, 7.0};
  };
  auto args = std::make_shared<Args>();

  auto* diag = compact->add_subcommand("diag", "central carrier and block structure of g");
  diag->add_option("--g", args->g)->required();
  diag->add_option("--fn", args->fn)->required();
  diag->callback([&ctx, args] {
    const auto s = structure_report(load_element(args->g), load_function(args->fn));
    ctx.emit_checked(to_json(s), s.holds, "reconstruction error " + io::format_number(s.reconstruction_error));
  });

  auto* case1 = compact->add_subcommand("case1", "Rademacher images on a commutative dyadic algebra");
  case1->add_option("--g", args->g)->required();
  case1->add_option("--fn", args->fn)->required();
  case1->callback([&ctx, args] {
    const auto r = rademacher_image_check(load_element(args->g), load_function(args->fn));
    ctx.emit_checked(to_json(r), r.holds, "a Rademacher image changes mu or the norm");
  });

  auto* case2 = compact->add_subcommand("case2", "partial isometry chain inside a block of dimension >= 3");
  case2->add_option("--g", args->g, "positive element")->required();
  case2->add_option("--fn", args->fn)->required();
  case2->add_option("--lambda", args->lambda, "spectral level")->required();
  case2->callback([&ctx, args] {
    const auto r = isometry_image_check(load_element(args->g), args->lambda, load_function(args->fn));
    ctx.emit_checked(to_json(r), r.holds, "chain margin " + io::format_number(r.worst_margin));
  });

  auto* case3 = compact->add_subcommand("case3", "norm sandwich for projections of trace tau");
  case3->add_option("--fn", args->fn)->required();
  case3->add_option("--tau", args->taus, "projection traces")->delimiter(',');
  case3->callback([&ctx, args] {
    const auto phi = load_function(args->fn);
    json out = json::array();
    std::optional<double> first_bad;
    for (double tau : args->taus) {
      const auto r = projection_norm_sandwich(phi, synthetic_projection(tau));
      if (!r.holds && !first_bad) first_bad = tau;
      out.push_back(to_json(r));
    }
    ctx.emit_checked(out, !first_bad, first_bad ? "sandwich fails at tau = " + io::format_number(*first_bad) : "");
  });
}

void add_verify_suite(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("verify-suite", "run every module invariant");
  sub->callback([&ctx] {
    const auto report = run_verify_suite(ctx.config());
    for (const auto& c : report.checks) {
      std::cerr << (c.failures == 0 ? "ok   " : "FAIL ") << c.module << ": " << c.name << " (" << c.cases << " cases)\n";
    }
    const auto out = suite_to_json(report);
    if (ctx.config().format == OutputFormat::json) {
      ctx.emit(out);
    } else {
      std::cout << report.passed() << " passed, " << report.failed() << " failed\n";
    }
    for (const auto& c : report.checks) {
      if (c.failures > 0) throw AssertionFailure(c.module + ": " + c.name + ": " + c.first_failure);
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz function and noncommutative Orlicz space toolkit"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  Context ctx;
  std::string config_path;
  std::string format;
  bool show_config = false;
  std::optional<double> grid_lo, grid_hi, eps_young;
  std::optional<std::size_t> per_decade, triple_points;
  std::optional<std::uint64_t> seed;

  app.add_option("--config", config_path, "JSON run configuration");
  app.add_flag("--show-config", show_config, "print the effective configuration");
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", seed, "random seed");
  app.add_option("--grid-lo", grid_lo, "lower end of the probe grid");
  app.add_option("--grid-hi", grid_hi, "upper end of the probe grid");
  app.add_option("--per-decade", per_decade, "probe points per decade (>= 8)");
  app.add_option("--triple-points", triple_points, "points per axis of the triple grid");
  app.add_option("--eps-young", eps_young, "Young inequality slack");

  ctx.configure = [&](RunConfig& c) {
    if (!config_path.empty()) c = config_from_json(io::read_json_file(config_path), c);
    if (!format.empty()) c.format = output_format_from_string(format);
    if (seed) c.seed = *seed;
    if (grid_lo) c.grid_lo = *grid_lo;
    if (grid_hi) c.grid_hi = *grid_hi;
    if (per_decade) c.per_decade = *per_decade;
    if (triple_points) c.triple_points = *triple_points;
    if (eps_young) c.eps_young = *eps_young;
    c.validate();
    // with a subcommand the config goes to stderr so stdout stays the result
    if (show_config && !app.get_subcommands().empty()) std::cerr << config_to_json(c).dump(2) << '\n';
  };

  app.parse_complete_callback([&] { ctx.config(); });

  add_fn(app, ctx);
  add_rearrange(app, ctx);
  add_norm(app, ctx);
  add_mult(app, ctx);
  add_rescale(app, ctx);
  add_measure_map(app, ctx);
  add_compact(app, ctx);
  add_verify_suite(app, ctx);

  try {
    // subcommand callbacks fire inside parse
    app.parse(argc, argv);
    if (app.get_subcommands().empty()) {
      if (!show_config) throw CLI::CallForHelp();
      std::cout << config_to_json(ctx.config()).dump(2) << '\n';
    }
  } catch (const CLI::CallForHelp& e) {
    std::cerr << app.help();
    return argc > 1 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.what() << '\n';
    return kExitFailed;
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // DomainError, ShapeError and AlgebraMismatch all derive from logic_error
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
