#pragma once

#include <utility>
#include <vector>

namespace orlicz {

struct Step {
  double length;
  double value;
};

/// Values closer than this (times 1 + value) share a step; values below it
/// fall into the zero tail.
inline constexpr double kStepMergeTolerance = 1e-12;

/// Nonincreasing right-continuous step function on [0, inf) with a zero tail.
/// Step k occupies [start_k, start_k + length_k).
class StepFunction {
 public:
  StepFunction() = default;

  /// Canonical form of a multiset of (value, length) atoms: sorted
  /// descending, near-equal values merged, negligible values dropped.
  static StepFunction from_atoms(std::vector<std::pair<double, double>> value_length);

  const std::vector<Step>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }

  double at(double t) const;
  double support_length() const;
  /// 0 followed by the right end of every step.
  std::vector<double> boundaries() const;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (const Step& st : steps_) s += st.length * f(st.value);
    return s;
  }

 private:
  std::vector<Step> steps_;
};

/// Same steps up to `tol` (times 1 + magnitude) in both lengths and values.
bool equivalent(const StepFunction& a, const StepFunction& b, double tol = kStepMergeTolerance);

/// a(t) <= b(t) + tol at every start point of either function.
bool dominated_by(const StepFunction& a, const StepFunction& b, double tol = kStepMergeTolerance);

}  // namespace orlicz
