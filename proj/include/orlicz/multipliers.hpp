#pragma once

#include <array>
#include <optional>
#include <string>

#include "orlicz/algebra.hpp"
#include "orlicz/growth.hpp"
#include "orlicz/norms.hpp"

namespace orlicz {

/// Constants of the three-function Young inequality
///   u v w <= M [phi2*(alpha u) + phi1(beta v) + zeta(gamma w)].
struct ConstantWitness {
  double M = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
};

/// M (3/alpha + 3/beta + 3/gamma)
double derived_bound(const ConstantWitness& w);

/// Probe set for the inequality: the full cube of `points` log-spaced values
/// on [lo, hi]^3, plus (when `divergence_scan` is set) the diagonal (s,s,s)
/// and the face diagonals (c,s,s), (s,c,s), (s,s,c) with c on the cube axis
/// and s = 2^k for scan_min_exp <= k <= scan_max_exp.
struct TripleGrid {
  double lo = 1e-3;
  double hi = 1e3;
  std::size_t points = 40;
  bool divergence_scan = true;
  int scan_min_exp = -64;
  int scan_max_exp = 64;
};

inline constexpr double kMultiplierSlack = 1e-9;

struct MultiplierReport {
  bool holds = false;
  ConstantWitness constants;
  /// max of uvw / rhs over the probe set; holds iff <= 1 + 1e-9
  double worst_ratio = 0.0;
  std::array<double, 3> worst_point{0.0, 0.0, 0.0};
  /// Set when the check fails; equals worst_point.
  std::optional<std::array<double, 3>> violation;
  bool violation_on_scan = false;
  double derived_bound = 0.0;
  std::size_t checked_products = 0;
};

/// phi2* is taken from conjugate(phi2).
MultiplierReport check_constants(const OrliczFunction& zeta, const OrliczFunction& phi1, const OrliczFunction& phi2,
                                 const ConstantWitness& w, const TripleGrid& grid = {});

struct SearchResult {
  std::optional<ConstantWitness> witness;
  std::optional<MultiplierReport> report;  ///< full check of the accepted witness
  ConstantWitness best_candidate;          ///< smallest violation ratio seen
  double best_ratio = kInf;
  std::size_t evaluations = 0;
};

/// Deterministic lattice search over (M, alpha, beta, gamma) = 2^(e1..e4),
/// e_i in [-8, 8]. Candidates are visited by increasing L1 norm of the
/// exponent vector, ties in lexicographic order; the first candidate passing
/// the full check is accepted. One candidate counts as one evaluation.
SearchResult search_constants(const OrliczFunction& zeta, const OrliczFunction& phi1, const OrliczFunction& phi2,
                              std::size_t budget = 100000, const TripleGrid& grid = {});

struct CorollaryResult {
  bool applicable = false;
  std::string reason;
  std::optional<OrliczFunction> zeta;
  std::optional<OrliczFunction> phi1;
  std::optional<ConstantWitness> witness;
  std::optional<MultiplierReport> validation;
};

/// zeta = phi2 o psi*, phi1 = phi2 o psi, witness (1, 1, 2, 2).
CorollaryResult condition_a(const OrliczFunction& psi, const OrliczFunction& phi2, const TripleGrid& grid = {});

/// zeta = psi* o phi2, phi1 = psi o phi2, witness (1, 1, 1/a, 1) where a is
/// the a-form constant of the global Delta' probe of phi2.
CorollaryResult condition_b(const OrliczFunction& psi, const OrliczFunction& phi2, const TripleGrid& grid = {});

struct KrasnoselskiiReport {
  bool holds = false;
  bool applicable = true;
  bool empty_grid = false;
  std::string detail;
  double witness_u = 0.0;
  std::size_t points = 0;
};

inline constexpr double kStrictMargin = 1e-12;

/// variant 1: phi2(zeta(u)) < phi1(alpha u) and phi2(zeta*(u)) < zeta(beta u);
/// variant 2: zeta(alpha phi2(u)) < phi1(u) and zeta*(beta phi2(u)) < zeta(u),
/// plus global Delta' for phi2. Strictness means lhs < rhs (1 - 1e-12) on a
/// log grid of u in [max(u0, grid.lo), grid.hi]. Not applicable unless all
/// three functions classify as N-functions.
KrasnoselskiiReport krasnoselskii_check(const OrliczFunction& zeta, const OrliczFunction& phi1,
                                        const OrliczFunction& phi2, int variant, double alpha, double beta,
                                        double u0 = 0.0, const ProbeGrid& grid = {1e-3, 1e3, 97});

struct BoundReport {
  bool normalized = false;  ///< all three Luxemburg norms <= 1 + 1e-9
  bool holds = false;
  double pairing = 0.0;     ///< tau(|fgh|)
  double product_norm = 0.0;  ///< Orlicz norm of fg for phi2
  double bound = 0.0;
  double slack = 0.0;  ///< bound - pairing
};

/// Requires a passing report (throws DomainError otherwise). Asserts
/// tau(|fgh|) <= bound + 1e-8 and ||fg||^0_{phi2} <= bound + 1e-8.
BoundReport verify_bound(const OrliczFunction& zeta, const OrliczFunction& phi1, const OrliczFunction& phi2,
                         const MultiplierReport& validated, const AlgebraElement& f, const AlgebraElement& g,
                         const AlgebraElement& h);

/// mu_{t+s}(x y) <= mu_t(x) mu_s(y) + 1e-10
bool submajorization_check(const AlgebraElement& x, const AlgebraElement& y, double t, double s);

}  // namespace orlicz
