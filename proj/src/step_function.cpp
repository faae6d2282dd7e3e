#include "orlicz/step_function.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/common.hpp"

namespace orlicz {

StepFunction StepFunction::from_atoms(std::vector<std::pair<double, double>> value_length) {
  std::sort(value_length.begin(), value_length.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  StepFunction f;
  for (const auto& [v, len] : value_length) {
    if (!(len > 0.0)) continue;
    if (v < kStepMergeTolerance) break;
    if (!f.steps_.empty() && f.steps_.back().value - v <= kStepMergeTolerance * (1.0 + v)) {
      f.steps_.back().length += len;
      continue;
    }
    f.steps_.push_back({len, v});
  }
  return f;
}

double StepFunction::at(double t) const {
  if (std::isnan(t) || t < 0.0) throw DomainError("step function evaluated at a negative argument");
  double start = 0.0;
  for (const Step& s : steps_) {
    if (t < start + s.length) return s.value;
    start += s.length;
  }
  return 0.0;
}

double StepFunction::support_length() const {
  double s = 0.0;
  for (const Step& st : steps_) s += st.length;
  return s;
}

std::vector<double> StepFunction::boundaries() const {
  std::vector<double> out{0.0};
  double start = 0.0;
  for (const Step& s : steps_) {
    start += s.length;
    out.push_back(start);
  }
  return out;
}

bool equivalent(const StepFunction& a, const StepFunction& b, double tol) {
  const auto& x = a.steps();
  const auto& y = b.steps();
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i].value - y[i].value) > tol * (1.0 + std::abs(x[i].value))) return false;
    if (std::abs(x[i].length - y[i].length) > tol * (1.0 + std::abs(x[i].length))) return false;
  }
  return true;
}

bool dominated_by(const StepFunction& a, const StepFunction& b, double tol) {
  auto points = a.boundaries();
  const auto more = b.boundaries();
  points.insert(points.end(), more.begin(), more.end());
  for (double t : points) {
    const double va = a.at(t);
    if (va > b.at(t) + tol * (1.0 + va)) return false;
  }
  return true;
}

}  // namespace orlicz
