#pragma once

// Independent reference computations used to cross-check the library. None
// of these call into the code paths they are compared against.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

/// sup_{v in grid} (u v - f(v)) over a dense uniform-in-log grid with a
/// local parabola polish. Adequate for smooth f with an interior maximiser.
inline double conjugate(const std::function<double(double)>& f, double u, double vlo = 1e-8, double vhi = 1e8,
                        int per_decade = 4000) {
  const double decades = std::log10(vhi / vlo);
  const int n = static_cast<int>(decades * per_decade) + 1;
  double best = 0.0;
  int arg = -1;
  std::vector<double> vs(n);
  for (int i = 0; i < n; ++i) {
    vs[i] = vlo * std::pow(10.0, decades * i / (n - 1));
    const double fv = f(vs[i]);
    if (!std::isfinite(fv)) break;
    const double val = u * vs[i] - fv;
    if (val > best) {
      best = val;
      arg = i;
    }
  }
  if (arg > 0 && arg + 1 < n) {
    // ternary search on the bracketing cell pair
    double lo = vs[arg - 1];
    double hi = vs[arg + 1];
    for (int k = 0; k < 200; ++k) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (u * m1 - f(m1) < u * m2 - f(m2)) {
        lo = m1;
      } else {
        hi = m2;
      }
    }
    best = std::max(best, u * lo - f(lo));
  }
  return best;
}

/// Conjugate of c t^p for p > 1: the maximiser solves u = c p v^{p-1}.
inline double power_scaled_conjugate(double c, double p, double u) {
  const double v = std::pow(u / (c * p), 1.0 / (p - 1.0));
  return u * v * (p - 1.0) / p;
}

/// Luxemburg norm of weighted atoms for t^p: (sum w |v|^p)^{1/p}.
inline double lp_norm(const std::vector<double>& values, const std::vector<double>& weights, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * std::pow(std::abs(values[i]), p);
  return std::pow(s, 1.0 / p);
}

/// Generic Luxemburg norm of weighted atoms by plain bisection on lambda.
inline double luxemburg(const std::function<double(double)>& phi, const std::vector<double>& values,
                        const std::vector<double>& weights) {
  auto modular = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * phi(std::abs(values[i]) / lambda);
    return s;
  };
  double vmax = 0.0;
  for (double v : values) vmax = std::max(vmax, std::abs(v));
  if (vmax == 0.0) return 0.0;
  double lo = 1e-12 * vmax;
  double hi = vmax;
  while (!(modular(hi) <= 1.0)) hi *= 2.0;
  for (int k = 0; k < 400; ++k) {
    const double mid = 0.5 * (lo + hi);
    (modular(mid) <= 1.0 ? hi : lo) = mid;
  }
  return hi;
}

/// Singular values of a small dense matrix via eigenvalues of A^T A computed
/// by power iteration with deflation. Accurate to ~1e-9 for well separated
/// spectra; used only for coarse cross-checks.
inline std::vector<double> singular_values(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) s[i][j] += a[k][i] * a[k][j];
  std::vector<double> out;
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> nd;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<double> x(n);
    for (double& xi : x) xi = nd(rng);
    double lambda = 0.0;
    for (int it = 0; it < 5000; ++it) {
      std::vector<double> y(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y[i] += s[i][j] * x[j];
      double nrm = 0.0;
      for (double yi : y) nrm += yi * yi;
      nrm = std::sqrt(nrm);
      if (nrm == 0.0) break;
      for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / nrm;
      lambda = nrm;
    }
    out.push_back(std::sqrt(std::max(lambda, 0.0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s[i][j] -= lambda * x[i] * x[j];
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace oracle
