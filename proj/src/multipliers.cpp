#include "orlicz/multipliers.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>

namespace orlicz {

double derived_bound(const ConstantWitness& w) { return w.M * (3.0 / w.alpha + 3.0 / w.beta + 3.0 / w.gamma); }

namespace {

using Triple = std::array<std::uint16_t, 3>;

// Probe points and the index triples of the probe set. Indices below
// `n_grid` are cube points, the rest are scan points 2^k.
struct ProbeSet {
  std::vector<double> points;
  std::size_t n_grid = 0;
  std::vector<Triple> triples;
};

ProbeSet build_probe_set(const TripleGrid& g) {
  ProbeSet ps;
  ps.points = logspace(g.lo, g.hi, g.points);
  ps.n_grid = ps.points.size();
  const auto n = static_cast<std::uint16_t>(ps.n_grid);
  for (std::uint16_t i = 0; i < n; ++i)
    for (std::uint16_t j = 0; j < n; ++j)
      for (std::uint16_t k = 0; k < n; ++k) ps.triples.push_back({i, j, k});
  if (g.divergence_scan) {
    for (int e = g.scan_min_exp; e <= g.scan_max_exp; ++e) {
      const auto s = static_cast<std::uint16_t>(ps.points.size());
      ps.points.push_back(std::ldexp(1.0, e));
      ps.triples.push_back({s, s, s});
      for (std::uint16_t c = 0; c < n; ++c) {
        ps.triples.push_back({c, s, s});
        ps.triples.push_back({s, c, s});
        ps.triples.push_back({s, s, c});
      }
    }
  }
  return ps;
}

// f(scale * point) for every scale and probe point.
std::vector<std::vector<double>> table(const OrliczFunction& f, const std::vector<double>& scales,
                                       const std::vector<double>& points) {
  std::vector<std::vector<double>> t(scales.size(), std::vector<double>(points.size()));
  for (std::size_t a = 0; a < scales.size(); ++a)
    for (std::size_t x = 0; x < points.size(); ++x) t[a][x] = f(scales[a] * points[x]);
  return t;
}

struct Tables {
  ProbeSet probes;
  std::vector<double> scales;
  std::vector<std::vector<double>> dual;  // phi2*(scale u)
  std::vector<std::vector<double>> mid;   // phi1(scale v)
  std::vector<std::vector<double>> outer; // zeta(scale w)

  double ratio(const Triple& tr, double M, std::size_t ia, std::size_t ib, std::size_t ig) const {
    const double lhs = probes.points[tr[0]] * probes.points[tr[1]] * probes.points[tr[2]];
    if (lhs == 0.0) return 0.0;
    const double rhs = M * (dual[ia][tr[0]] + mid[ib][tr[1]] + outer[ig][tr[2]]);
    if (rhs == 0.0) return kInf;
    return lhs / rhs;
  }
};

Tables build_tables(const OrliczFunction& zeta, const OrliczFunction& phi1, const OrliczFunction& phi2_star,
                    const TripleGrid& grid, std::vector<double> scales) {
  Tables t;
  t.probes = build_probe_set(grid);
  t.scales = std::move(scales);
  t.dual = table(phi2_star, t.scales, t.probes.points);
  t.mid = table(phi1, t.scales, t.probes.points);
  t.outer = table(zeta, t.scales, t.probes.points);
  return t;
}

MultiplierReport full_check(const Tables& t, const ConstantWitness& w, std::size_t ia, std::size_t ib,
                            std::size_t ig) {
  const double M = w.M;
  MultiplierReport r;
  r.constants = w;
  r.derived_bound = derived_bound(r.constants);
  r.worst_ratio = 0.0;
  const std::size_t n = t.probes.n_grid;
  for (const Triple& tr : t.probes.triples) {
    const double q = t.ratio(tr, M, ia, ib, ig);
    if (q > r.worst_ratio) {
      r.worst_ratio = q;
      r.worst_point = {t.probes.points[tr[0]], t.probes.points[tr[1]], t.probes.points[tr[2]]};
      r.violation_on_scan = tr[0] >= n || tr[1] >= n || tr[2] >= n;
    }
  }
  r.checked_products = t.probes.triples.size();
  r.holds = r.worst_ratio <= 1.0 + kMultiplierSlack;
  if (!r.holds) r.violation = r.worst_point;
  else r.violation_on_scan = false;
  return r;
}

// Worst probe triple for a candidate, by index.
std::pair<double, Triple> worst_triple(const Tables& t, double M, std::size_t ia, std::size_t ib, std::size_t ig) {
  double worst = 0.0;
  Triple at{0, 0, 0};
  for (const Triple& tr : t.probes.triples) {
    const double q = t.ratio(tr, M, ia, ib, ig);
    if (q > worst) {
      worst = q;
      at = tr;
    }
  }
  return {worst, at};
}

}  // namespace

MultiplierReport check_constants(const OrliczFunction& zeta, const OrliczFunction& phi1, const OrliczFunction& phi2,
                                 const ConstantWitness& w, const TripleGrid& grid) {
  if (!(w.M > 0.0 && w.alpha > 0.0 && w.beta > 0.0 && w.gamma > 0.0)) {
    throw DomainError("multiplier constants must be positive");
  }
  const OrliczFunction phi2_star = conjugate(phi2);
  Tables t;
  t.probes = build_probe_set(grid);
  t.dual = table(phi2_star, {w.alpha}, t.probes.points);
  t.mid = table(phi1, {w.beta}, t.probes.points);
  t.outer = table(zeta, {w.gamma}, t.probes.points);
  return full_check(t, w, 0, 0, 0);
}

SearchResult search_constants(const OrliczFunction& zeta, const OrliczFunction& phi1, const OrliczFunction& phi2,
                              std::size_t budget, const TripleGrid& grid) {
  constexpr int kRange = 8;
  std::vector<double> scales;
  for (int e = -kRange; e <= kRange; ++e) scales.push_back(std::ldexp(1.0, e));
  const Tables t = build_tables(zeta, phi1, conjugate(phi2), grid, scales);

  std::vector<std::array<int, 4>> lattice;
  for (int a = -kRange; a <= kRange; ++a)
    for (int b = -kRange; b <= kRange; ++b)
      for (int c = -kRange; c <= kRange; ++c)
        for (int d = -kRange; d <= kRange; ++d) lattice.push_back({a, b, c, d});
  std::stable_sort(lattice.begin(), lattice.end(), [](const auto& x, const auto& y) {
    const int nx = std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) + std::abs(x[3]);
    const int ny = std::abs(y[0]) + std::abs(y[1]) + std::abs(y[2]) + std::abs(y[3]);
    if (nx != ny) return nx < ny;
    return x < y;
  });

  SearchResult res;
  std::deque<Triple> cache;  // recent violating triples, most recent first
  constexpr std::size_t kCacheSize = 64;
  for (const auto& e : lattice) {
    if (res.evaluations >= budget) break;
    ++res.evaluations;
    const double M = std::ldexp(1.0, e[0]);
    const auto ia = static_cast<std::size_t>(e[1] + kRange);
    const auto ib = static_cast<std::size_t>(e[2] + kRange);
    const auto ig = static_cast<std::size_t>(e[3] + kRange);
    const ConstantWitness cand{M, scales[ia], scales[ib], scales[ig]};

    double ratio = 0.0;
    for (const Triple& tr : cache) {
      ratio = t.ratio(tr, M, ia, ib, ig);
      if (ratio > 1.0 + kMultiplierSlack) break;
    }
    if (!(ratio > 1.0 + kMultiplierSlack)) {
      const auto [worst, at] = worst_triple(t, M, ia, ib, ig);
      ratio = worst;
      if (ratio > 1.0 + kMultiplierSlack) {
        cache.push_front(at);
        if (cache.size() > kCacheSize) cache.pop_back();
      }
    }
    if (ratio < res.best_ratio) {
      res.best_ratio = ratio;
      res.best_candidate = cand;
    }
    if (ratio <= 1.0 + kMultiplierSlack) {
      res.witness = cand;
      res.report = full_check(t, cand, ia, ib, ig);
      return res;
    }
  }
  return res;
}

CorollaryResult condition_a(const OrliczFunction& psi, const OrliczFunction& phi2, const TripleGrid& grid) {
  CorollaryResult r;
  const Composition zeta = compose(phi2, conjugate(psi));
  if (!zeta.verdict.valid) {
    r.reason = "phi2 o psi* is not an Orlicz function (" + to_string(zeta.verdict.failed) + ")";
    return r;
  }
  r.applicable = true;
  r.zeta = zeta.function;
  r.phi1 = compose(phi2, psi).function;
  r.witness = ConstantWitness{1.0, 1.0, 2.0, 2.0};
  r.validation = check_constants(*r.zeta, *r.phi1, phi2, *r.witness, grid);
  return r;
}

CorollaryResult condition_b(const OrliczFunction& psi, const OrliczFunction& phi2, const TripleGrid& grid) {
  CorollaryResult r;
  const GrowthReport dp = probe_delta_prime(phi2, 0.0);
  if (!dp.holds || !dp.a_form) {
    r.reason = "phi2 fails the global Delta' probe";
    return r;
  }
  const Composition zeta = compose(conjugate(psi), phi2);
  if (!zeta.verdict.valid) {
    r.reason = "psi* o phi2 is not an Orlicz function (" + to_string(zeta.verdict.failed) + ")";
    return r;
  }
  r.applicable = true;
  r.zeta = zeta.function;
  r.phi1 = compose(psi, phi2).function;
  r.witness = ConstantWitness{1.0, 1.0, 1.0 / *dp.a_form, 1.0};
  r.validation = check_constants(*r.zeta, *r.phi1, phi2, *r.witness, grid);
  return r;
}

KrasnoselskiiReport krasnoselskii_check(const OrliczFunction& zeta, const OrliczFunction& phi1,
                                        const OrliczFunction& phi2, int variant, double alpha, double beta,
                                        double u0, const ProbeGrid& grid) {
  if (variant != 1 && variant != 2) throw DomainError("variant must be 1 or 2");
  KrasnoselskiiReport r;
  for (const OrliczFunction* f : {&zeta, &phi1, &phi2}) {
    if (!n_function_limits(*f).n_function) {
      r.applicable = false;
      r.detail = f->describe() + " is not an N-function";
      return r;
    }
  }
  if (variant == 2 && !probe_delta_prime(phi2, 0.0).holds) {
    r.applicable = false;
    r.detail = "phi2 fails the global Delta' probe";
    return r;
  }

  const double lo = std::max(u0, grid.lo);
  if (lo > grid.hi) {
    r.holds = true;
    r.empty_grid = true;
    r.detail = "empty grid";
    return r;
  }
  const auto us = lo == grid.hi ? std::vector<double>{lo} : logspace(lo, grid.hi, grid.points);
  const OrliczFunction zeta_star = conjugate(zeta);
  auto strict = [](double lhs, double rhs) { return lhs < rhs * (1.0 - kStrictMargin); };
  r.points = us.size();
  r.holds = true;
  for (double u : us) {
    bool first = true;
    bool second = true;
    if (variant == 1) {
      first = strict(phi2(zeta(u)), phi1(alpha * u));
      second = strict(phi2(zeta_star(u)), zeta(beta * u));
    } else {
      first = strict(zeta(alpha * phi2(u)), phi1(u));
      second = strict(zeta_star(beta * phi2(u)), zeta(u));
    }
    if (!first || !second) {
      r.holds = false;
      r.witness_u = u;
      r.detail = first ? "second inequality fails" : "first inequality fails";
      return r;
    }
  }
  return r;
}

BoundReport verify_bound(const OrliczFunction& zeta, const OrliczFunction& phi1, const OrliczFunction& phi2,
                         const MultiplierReport& validated, const AlgebraElement& f, const AlgebraElement& g,
                         const AlgebraElement& h) {
  if (!validated.holds) throw DomainError("constants have not passed check_constants");
  BoundReport r;
  r.bound = derived_bound(validated.constants);
  const double nf = luxemburg_norm(zeta, f).value;
  const double ng = luxemburg_norm(phi1, g).value;
  const double nh = luxemburg_norm(conjugate(phi2), h).value;
  r.normalized = nf <= 1.0 + 1e-9 && ng <= 1.0 + 1e-9 && nh <= 1.0 + 1e-9;
  r.pairing = kothe_pairing(f * g, h);
  r.product_norm = orlicz_norm(phi2, f * g).value;
  r.slack = r.bound - r.pairing;
  r.holds = r.normalized && r.pairing <= r.bound + 1e-8 && r.product_norm <= r.bound + 1e-8;
  return r;
}

bool submajorization_check(const AlgebraElement& x, const AlgebraElement& y, double t, double s) {
  if (t < 0.0 || s < 0.0) throw DomainError("submajorization_check needs t, s >= 0");
  return mu_at(x * y, t + s) <= mu_at(x, t) * mu_at(y, s) + 1e-10;
}

}  // namespace orlicz
