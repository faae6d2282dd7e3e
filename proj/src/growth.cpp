#include "orlicz/growth.hpp"

#include <algorithm>
#include <sstream>

namespace orlicz {

std::string to_string(GrowthCondition c) {
  switch (c) {
    case GrowthCondition::delta2: return "Delta2";
    case GrowthCondition::delta_prime: return "DeltaPrime";
    case GrowthCondition::nabla_prime: return "NablaPrime";
    case GrowthCondition::delta_prime_a_form: return "DeltaPrimeAForm";
  }
  return "unknown";
}

std::string to_string(PowerFitVerdict v) {
  switch (v) {
    case PowerFitVerdict::ok: return "ok";
    case PowerFitVerdict::not_applicable: return "not_applicable";
    case PowerFitVerdict::sandwich_failed: return "sandwich_failed";
    case PowerFitVerdict::exponent_below_one: return "exponent_below_one";
  }
  return "unknown";
}

namespace {

std::string describe_grid(double lo, double hi, std::size_t n, bool pairs) {
  std::ostringstream os;
  os << n << " log-spaced points on [" << lo << ", " << hi << "]";
  if (pairs) os << ", all pairs";
  return os.str();
}

struct Sample {
  double s;
  double t;
  double ratio;
};

// Ratio sequence read as divergent: from its minimum onwards it never
// decreases and finishes more than `factor` above that minimum.
bool monotone_divergence(const std::vector<Sample>& seq, double factor = kGrowthDivergence) {
  if (seq.size() < 2) return false;
  std::size_t m = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i].ratio < seq[m].ratio) m = i;
  }
  for (std::size_t i = m + 1; i < seq.size(); ++i) {
    if (seq[i].ratio < seq[i - 1].ratio * (1.0 - 1e-12)) return false;
  }
  return seq.back().ratio > factor * seq[m].ratio;
}

// A rising sequence cut short by floating-point overflow needs less growth
// to count as divergent.
inline constexpr double kOverflowRise = 10.0;

struct Edge {
  std::vector<Sample> seq;
  bool overflowed = false;
  const char* name;

  bool diverges() const {
    return monotone_divergence(seq) || (overflowed && monotone_divergence(seq, kOverflowRise));
  }
};

std::vector<double> pair_axis(double u0, const ProbeGrid& grid) {
  const double lo = std::max(u0, grid.lo);
  if (lo > grid.hi) return {};
  if (lo == grid.hi || grid.points < 2) return {lo};
  return logspace(lo, grid.hi, grid.points);
}

enum class PairMode { delta_prime, nabla_prime };

GrowthReport probe_pairs(const OrliczFunction& phi, double u0, const ProbeGrid& grid, PairMode mode) {
  GrowthReport r;
  r.condition = mode == PairMode::delta_prime ? GrowthCondition::delta_prime : GrowthCondition::nabla_prime;
  r.u0 = u0;
  const auto axis = pair_axis(u0, grid);
  r.grid = axis.empty() ? "empty" : describe_grid(axis.front(), axis.back(), axis.size(), true);
  if (axis.empty()) {
    r.holds = true;
    r.detail = "empty grid";
    return r;
  }

  const double b = phi.b_phi();
  std::vector<double> f(axis.size());
  for (std::size_t i = 0; i < axis.size(); ++i) f[i] = phi(axis[i]);

  double best = -kInf;
  double a_form = kInf;
  std::vector<Sample> diagonal;
  bool diagonal_overflow = false;
  Sample overflow_at{0, 0, 0};
  const std::size_t last = axis.size() - 1;
  Edge row{{}, false, "the edge s = min"};
  Edge col{{}, false, "the edge t = max"};
  auto note_overflow = [&](std::size_t i, std::size_t j) {
    if (i == 0) row.overflowed = true;
    if (j == last) col.overflowed = true;
  };

  for (std::size_t i = 0; i < axis.size(); ++i) {
    for (std::size_t j = i; j < axis.size(); ++j) {
      const double s = axis[i];
      const double t = axis[j];
      const double prod = f[i] * f[j];
      if (std::isinf(f[i]) || std::isinf(f[j]) || std::isinf(prod)) {
        ++r.overflowed;
        note_overflow(i, j);
        continue;
      }
      if (prod == 0.0) {
        if (mode == PairMode::delta_prime && phi(s * t) > 0.0) {
          r.holds = false;
          r.constant = kInf;
          r.witness_s = s;
          r.witness_t = t;
          r.detail = "phi(s)phi(t) = 0 < phi(st)";
          return r;
        }
        ++r.skipped_zero;
        continue;
      }
      double ratio = 0.0;
      if (mode == PairMode::delta_prime) {
        const double fst = phi(s * t);
        if (std::isinf(fst)) {
          if (s * t > b) {
            r.holds = false;
            r.constant = kInf;
            r.witness_s = s;
            r.witness_t = t;
            r.detail = "phi(st) = inf with phi(s)phi(t) finite";
            return r;
          }
          ++r.overflowed;
          note_overflow(i, j);
          if (i == j && !diagonal_overflow) {
            diagonal_overflow = true;
            overflow_at = {s, t, kInf};
          }
          continue;
        }
        ratio = fst / prod;
        const double inv = formal_inverse(phi, prod);
        if (std::isfinite(inv)) a_form = std::min(a_form, inv / (s * t));
      } else {
        const double inv = formal_inverse(phi, prod);
        if (std::isinf(inv)) {
          ++r.overflowed;
          note_overflow(i, j);
          continue;
        }
        ratio = inv / (s * t);
      }
      if (ratio > best) {
        best = ratio;
        r.witness_s = s;
        r.witness_t = t;
      }
      if (i == j) diagonal.push_back({s, t, ratio});
      if (i == 0) row.seq.push_back({s, t, ratio});
      if (j == last) col.seq.push_back({s, t, ratio});
    }
  }

  r.constant = std::isfinite(best) ? best : 0.0;
  if (mode == PairMode::delta_prime && std::isfinite(a_form)) r.a_form = a_form;
  r.holds = true;
  if (diagonal_overflow) {
    r.holds = false;
    r.witness_s = overflow_at.s;
    r.witness_t = overflow_at.t;
    r.detail = "ratio overflows along the diagonal";
  } else if (monotone_divergence(diagonal)) {
    r.holds = false;
    r.witness_s = diagonal.back().s;
    r.witness_t = diagonal.back().t;
    r.detail = "ratio grows without bound along the diagonal";
  } else {
    for (const Edge* e : {&row, &col}) {
      if (!e->diverges()) continue;
      r.holds = false;
      r.witness_s = e->seq.back().s;
      r.witness_t = e->seq.back().t;
      r.detail = std::string("ratio grows without bound along ") + e->name;
      break;
    }
  }
  return r;
}

}  // namespace

GrowthReport probe_delta2(const OrliczFunction& phi, double u_min, double u_max, std::size_t n) {
  if (!(u_min > 0.0) || !(u_max > u_min)) throw DomainError("probe_delta2 needs 0 < u_min < u_max");
  GrowthReport r;
  r.condition = GrowthCondition::delta2;
  r.grid = describe_grid(u_min, u_max, n, false);
  const double b = phi.b_phi();
  std::vector<Sample> seq;
  bool overflow = false;
  double best = -kInf;
  for (double u : logspace(u_min, u_max, n)) {
    const double fu = phi(u);
    if (fu == 0.0) {
      ++r.skipped_zero;
      continue;
    }
    if (std::isinf(fu)) {
      if (u <= b) ++r.overflowed;
      continue;
    }
    const double f2 = phi(2.0 * u);
    if (std::isinf(f2)) {
      if (2.0 * u > b) {
        r.holds = false;
        r.constant = kInf;
        r.witness_s = u;
        r.detail = "phi(2u) = inf with phi(u) finite";
        return r;
      }
      ++r.overflowed;
      overflow = true;
      continue;
    }
    const double ratio = f2 / fu;
    seq.push_back({u, 2.0 * u, ratio});
    if (ratio > best) {
      best = ratio;
      r.witness_s = u;
    }
  }
  r.constant = std::isfinite(best) ? best : 0.0;
  r.holds = true;
  if (monotone_divergence(seq) || (overflow && !seq.empty() && seq.back().ratio > kGrowthDivergence)) {
    r.holds = false;
    r.detail = "ratio grows without bound";
  }
  return r;
}

GrowthReport probe_delta_prime(const OrliczFunction& phi, double u0, const ProbeGrid& grid) {
  return probe_pairs(phi, u0, grid, PairMode::delta_prime);
}

GrowthReport probe_nabla_prime(const OrliczFunction& phi, double u0, const ProbeGrid& grid) {
  return probe_pairs(phi, u0, grid, PairMode::nabla_prime);
}

GrowthReport check_delta_prime_a_form(const OrliczFunction& phi, double a, double u0, const ProbeGrid& grid) {
  if (!(a > 0.0)) throw DomainError("a-form constant must be > 0");
  GrowthReport r;
  r.condition = GrowthCondition::delta_prime_a_form;
  r.u0 = u0;
  r.constant = a;
  r.holds = true;
  const auto axis = pair_axis(u0, grid);
  r.grid = axis.empty() ? "empty" : describe_grid(axis.front(), axis.back(), axis.size(), true);
  double worst = -kInf;
  for (std::size_t i = 0; i < axis.size(); ++i) {
    for (std::size_t j = i; j < axis.size(); ++j) {
      const double s = axis[i];
      const double t = axis[j];
      const double rhs = phi(s) * phi(t);
      const double lhs = phi(a * s * t);
      if (std::isinf(rhs)) {
        ++r.overflowed;
        continue;
      }
      const double excess = lhs - rhs * (1.0 + 1e-12);
      const double scaled = rhs > 0.0 ? excess / rhs : excess;
      if (scaled > worst) {
        worst = scaled;
        r.witness_s = s;
        r.witness_t = t;
      }
      if (excess > 0.0) r.holds = false;
    }
  }
  if (!r.holds) r.detail = "phi(a s t) > phi(s) phi(t)";
  return r;
}

PowerFit power_fit(const OrliczFunction& phi, double x0, const ProbeGrid& grid) {
  PowerFit fit;
  const GrowthReport dp = probe_delta_prime(phi, x0, grid);
  const GrowthReport np = probe_nabla_prime(phi, x0, grid);
  if (!dp.holds || !np.holds) return fit;

  std::vector<double> xs;
  std::vector<double> fs;
  for (double x : pair_axis(x0, grid)) {
    const double f = phi(x);
    if (f > 0.0 && std::isfinite(f)) {
      xs.push_back(x);
      fs.push_back(f);
    }
  }
  if (xs.size() < 2) return fit;

  std::vector<double> slopes;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    slopes.push_back((std::log(fs[i]) - std::log(fs[i - 1])) / (std::log(xs[i]) - std::log(xs[i - 1])));
  }
  std::sort(slopes.begin(), slopes.end());
  const std::size_t m = slopes.size();
  fit.p = m % 2 ? slopes[m / 2] : 0.5 * (slopes[m / 2 - 1] + slopes[m / 2]);

  fit.a1 = kInf;
  fit.a2 = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double a = std::pow(fs[i], 1.0 / fit.p) / xs[i];
    fit.a1 = std::min(fit.a1, a);
    fit.a2 = std::max(fit.a2, a);
  }
  fit.points_checked = xs.size();
  fit.verdict = PowerFitVerdict::ok;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lower = std::pow(fit.a1 * xs[i], fit.p);
    const double upper = std::pow(fit.a2 * xs[i], fit.p);
    if (lower > fs[i] * (1.0 + 1e-9) || fs[i] > upper * (1.0 + 1e-9)) {
      fit.verdict = PowerFitVerdict::sandwich_failed;
      return fit;
    }
  }
  if (fit.p < 1.0 - 1e-9) fit.verdict = PowerFitVerdict::exponent_below_one;
  return fit;
}

}  // namespace orlicz
