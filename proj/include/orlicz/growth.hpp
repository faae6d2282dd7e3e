#pragma once

#include <optional>
#include <string>

#include "orlicz/function.hpp"

namespace orlicz {

enum class GrowthCondition { delta2, delta_prime, nabla_prime, delta_prime_a_form };

std::string to_string(GrowthCondition c);

/// Outcome of a growth probe. A "holds" verdict means the inequality holds at
/// every probe point with `constant`; it is evidence, not a proof.
struct GrowthReport {
  GrowthCondition condition = GrowthCondition::delta2;
  bool holds = false;
  double u0 = 0.0;
  /// K for Delta2, C for Delta', b for Nabla'.
  double constant = 0.0;
  /// Delta2 witnesses are single points u and leave witness_t at 0.
  double witness_s = 0.0;
  double witness_t = 0.0;
  std::string grid;
  std::string detail;
  std::size_t skipped_zero = 0;
  std::size_t overflowed = 0;
  /// Delta' only: largest a with phi(a s t) <= phi(s) phi(t) on the grid.
  std::optional<double> a_form;
};

struct ProbeGrid {
  double lo = 1e-3;
  double hi = 1e3;
  std::size_t points = 49;
};

/// Growth factor across the grid beyond which a monotone ratio is read as
/// divergent.
inline constexpr double kGrowthDivergence = 1e3;

/// K = max phi(2u)/phi(u) over a log grid on [u_min, u_max].
GrowthReport probe_delta2(const OrliczFunction& phi, double u_min = 1e-3, double u_max = 1e3,
                          std::size_t n = 49);

/// C = max phi(st) / (phi(s) phi(t)) over s, t >= max(u0, grid.lo). The
/// report also carries the a-form constant.
GrowthReport probe_delta_prime(const OrliczFunction& phi, double u0 = 0.0, const ProbeGrid& grid = {});

/// b = max phi^{-1}(phi(s) phi(t)) / (s t), the smallest b with
/// phi(b s t) >= phi(s) phi(t) at every probe pair.
GrowthReport probe_nabla_prime(const OrliczFunction& phi, double u0 = 0.0, const ProbeGrid& grid = {});

/// Checks phi(a s t) <= phi(s) phi(t) for the given a on the Delta' grid.
GrowthReport check_delta_prime_a_form(const OrliczFunction& phi, double a, double u0 = 0.0,
                                      const ProbeGrid& grid = {});

enum class PowerFitVerdict { ok, not_applicable, sandwich_failed, exponent_below_one };

std::string to_string(PowerFitVerdict v);

struct PowerFit {
  double p = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  PowerFitVerdict verdict = PowerFitVerdict::not_applicable;
  std::size_t points_checked = 0;
};

/// Fits (a1 x)^p <= phi(x) <= (a2 x)^p for x in [max(x0, grid.lo), grid.hi].
/// Not applicable unless both Delta' and Nabla' probes hold beyond x0.
PowerFit power_fit(const OrliczFunction& phi, double x0 = 0.0, const ProbeGrid& grid = {});

}  // namespace orlicz
