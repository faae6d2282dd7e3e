#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised when an argument lies outside the mathematical domain of an
/// operation (negative arguments, exponents out of range, non-symmetric
/// input to a symmetric solver, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when two algebra elements from different block algebras meet.
class AlgebraMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix or element carries the wrong shape for its algebra.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// `n` log-spaced points from `lo` to `hi` inclusive.
inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {lo};
  out.reserve(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(std::exp(x));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

/// Log-spaced points with a fixed density per decade; always includes both
/// endpoints.
inline std::vector<double> logspace_per_decade(double lo, double hi, std::size_t per_decade) {
  if (!(hi > lo)) return {lo};
  const double decades = std::log10(hi / lo);
  const auto n = static_cast<std::size_t>(std::ceil(decades * static_cast<double>(per_decade))) + 1;
  return logspace(lo, hi, std::max<std::size_t>(n, 2));
}

inline bool relative_close(double a, double b, double rel) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace orlicz
