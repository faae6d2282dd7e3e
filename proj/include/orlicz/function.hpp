#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "orlicz/common.hpp"

namespace orlicz {

struct Knot {
  double t;
  double value;
};

class OrliczFunction;

namespace node {

struct Power {
  double p;
};
struct PowerScaled {
  double c;
  double p;
};
struct ExpMinusOne {};
struct TLog1p {};

/// Linear interpolation through `knots` (an implicit (0,0) is prepended when
/// the first knot sits right of the origin). Beyond the last knot the graph
/// continues with `final_slope`, or, when `cutoff` is set, with the slope of
/// the last segment up to `cutoff` and +inf afterwards.
struct PiecewiseLinear {
  std::vector<Knot> knots;
  double final_slope = 0.0;
  std::optional<double> cutoff;
};

struct Compose;
struct Conjugate;
struct HScale;

}  // namespace node

enum class NodeKind {
  power,
  power_scaled,
  exp_minus_one,
  t_log1p,
  piecewise_linear,
  compose,
  conjugate,
  hscale,
};

/// A convex function [0, inf) -> [0, inf] held as an immutable expression
/// tree. Copies share the tree. Thresholds
///   a_phi = inf{u > 0 : phi(u) > 0},  b_phi = sup{u > 0 : phi(u) < inf}
/// are exact for closed-form nodes and computed on first use otherwise.
///
/// Construction only validates structure (finite parameters, increasing
/// knots). Whether the result satisfies the Orlicz axioms is answered by
/// is_orlicz(), so invalid candidates can be built and diagnosed.
class OrliczFunction {
 public:
  static OrliczFunction power(double p);
  static OrliczFunction power_scaled(double c, double p);
  static OrliczFunction exp_minus_one();
  static OrliczFunction t_log1p();
  static OrliczFunction piecewise_linear(std::vector<Knot> knots, double final_slope);
  static OrliczFunction piecewise_linear_cutoff(std::vector<Knot> knots, double cutoff);
  /// t -> of(a t)
  static OrliczFunction hscale(double a, OrliczFunction of);

  /// phi(t); +inf beyond b_phi. Throws DomainError for t < 0 or NaN.
  double operator()(double t) const;
  double evaluate(double t) const { return (*this)(t); }

  double a_phi() const;
  double b_phi() const;
  NodeKind kind() const;

  const node::Power* as_power() const;
  const node::PowerScaled* as_power_scaled() const;
  const node::PiecewiseLinear* as_piecewise_linear() const;
  const node::Compose* as_compose() const;
  const node::Conjugate* as_conjugate() const;
  const node::HScale* as_hscale() const;

  /// Human-readable expression, e.g. "compose(power(2), conjugate(power(2)))".
  std::string describe() const;

  struct Impl;

 private:
  explicit OrliczFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend struct FunctionAccess;
};

namespace node {

struct Compose {
  OrliczFunction outer;
  OrliczFunction inner;
};

/// Complementary function u -> sup_{v>0} (u v - of(v)). When a closed form
/// is known it is stored and used for evaluation; otherwise evaluation runs
/// the numeric supremum.
struct Conjugate {
  OrliczFunction of;
  std::optional<OrliczFunction> closed_form;
};

struct HScale {
  double a;
  OrliczFunction of;
};

}  // namespace node

enum class ConjugateMethod {
  automatic,  ///< closed form when available, else numeric
  numeric,    ///< always the grid supremum
};

/// Complementary (Legendre-Fenchel) function of `phi` on [0, inf).
OrliczFunction conjugate(const OrliczFunction& phi,
                         ConjugateMethod method = ConjugateMethod::automatic);

/// Numeric supremum sup_{v>0}(u v - phi(v)): 512 log-spaced points per decade
/// over [1e-6, min(b_phi, 1e6)], golden-section refinement around the grid
/// argmax, and bracket expansion when the argmax sits on a grid end.
double numeric_conjugate_value(const OrliczFunction& phi, double u);

/// sup{s : phi(s) <= t} by monotone bisection.
double formal_inverse(const OrliczFunction& phi, double t);

/// phi(s) + phi*(t) - s t
double young_gap(const OrliczFunction& phi, double s, double t);
double young_gap(const OrliczFunction& phi, const OrliczFunction& phi_star, double s, double t);

enum class Axiom {
  none,
  zero_at_origin,
  nondecreasing,
  convex,
  left_continuous,
  nondegenerate,
  thresholds,
};

std::string to_string(Axiom a);

struct ValidityReport {
  bool valid = true;
  Axiom failed = Axiom::none;
  double witness = 0.0;  ///< first violating point
  std::string detail;
  std::size_t grid_points = 0;
};

inline constexpr double kConvexityTolerance = 1e-9;

/// Numeric check of the Orlicz axioms on a probe grid.
ValidityReport is_orlicz(const OrliczFunction& phi);

struct Composition {
  OrliczFunction function;
  ValidityReport verdict;
};

/// outer(inner(t)), with its Orlicz verdict attached (the composition of two
/// Orlicz functions need not be one).
Composition compose(const OrliczFunction& outer, const OrliczFunction& inner);

enum class LimitClass { zero, finite, infinite };

std::string to_string(LimitClass c);

struct NFunctionLimits {
  double at_zero;      ///< estimate of lim_{t->0} phi(t)/t
  double at_infinity;  ///< estimate of lim_{t->inf} phi(t)/t
  LimitClass zero_class;
  LimitClass infinity_class;
  bool n_function;
};

/// Classifies phi(t)/t along t = 2^{+-k}, k = 0..max_k.
///
/// Heuristics (finite probes cannot prove limits):
///  - at 0: "zero" when the ratio vanishes or the last three successive
///    quotients r_k / r_{k-1} all stay below 1 - 1e-3;
///  - at inf: "infinite" when a ratio is +inf, or the last three decade-spaced
///    samples each exceed 10x their predecessor, or the last three increments
///    do not decay (each >= 0.75 of the previous and non-negligible).
NFunctionLimits n_function_limits(const OrliczFunction& phi, int max_k = 60);

struct NfnReport {
  bool large_t_holds;    ///< phi(t)/t^q increasing on a tail and past the threshold
  bool small_t_holds;    ///< phi(t)/t^q -> 0 along t = 2^-k
  bool small_t_vacuous;  ///< a_phi > 0: the small-t claim is trivially true
  /// Literal phi(t)/t^{1/q} -> 0 reading of the small-t claim. Reported only;
  /// phi(t) = t already violates it.
  bool small_t_inverse_exponent;
  double large_t_last_ratio;
  double small_t_last_ratio;
  std::size_t tail_start;  ///< first index of the increasing tail
};

inline constexpr double kNfnDivergenceFactor = 1e3;

/// Growth check at both ends for 0 < q < 1. Throws DomainError otherwise.
NfnReport lemma_nfn_check(const OrliczFunction& phi, double q, std::size_t samples = 60);

}  // namespace orlicz
