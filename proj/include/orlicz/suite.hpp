#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orlicz/growth.hpp"
#include "orlicz/io.hpp"
#include "orlicz/multipliers.hpp"

namespace orlicz {

enum class OutputFormat { json, csv, text };

std::string to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

/// Runtime knobs shared by the CLI. The convexity tolerance and the norm
/// bisection width are library constants and are reported, not configured.
struct RunConfig {
  double grid_lo = 1e-3;
  double grid_hi = 1e3;
  std::size_t per_decade = 8;
  std::size_t triple_points = 40;
  double eps_young = 1e-9;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::json;

  /// Throws DomainError unless 0 < grid_lo < grid_hi, per_decade >= 8,
  /// triple_points >= 2 and eps_young >= 0.
  void validate() const;

  ProbeGrid probe_grid() const;
  TripleGrid triple_grid() const;
};

/// Overrides `base` with the keys present in `j`; unknown keys are an error.
RunConfig config_from_json(const io::json& j, RunConfig base = {});
io::json config_to_json(const RunConfig& c);

struct SuiteCheck {
  std::string module;
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

struct SuiteReport {
  std::vector<SuiteCheck> checks;

  std::size_t passed() const;
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
};

/// Every module invariant at desk-scale counts, deterministic in the seed.
SuiteReport run_verify_suite(const RunConfig& config);

io::json suite_to_json(const SuiteReport& r);

}  // namespace orlicz
