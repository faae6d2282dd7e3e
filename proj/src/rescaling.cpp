#include "orlicz/rescaling.hpp"

#include <algorithm>

namespace orlicz {

LemmaLmReport lemma_lm_check(const OrliczFunction& psi, const OrliczFunction& phi, const AlgebraElement& a) {
  LemmaLmReport r;
  const Composition zeta = compose(psi, phi);
  if (!zeta.verdict.valid) {
    r.detail = "psi o phi is not an Orlicz function";
    return r;
  }
  r.rhs = luxemburg_norm(zeta.function, a).value;
  if (!(r.rhs < 1.0)) {
    r.detail = "||a||_zeta >= 1";
    return r;
  }
  r.precondition = true;
  r.lhs = luxemburg_norm(psi, apply_function(phi, abs(a))).value;
  r.holds = r.lhs <= r.rhs + 1e-8;
  return r;
}

RescaleUpReport rescale_up(const OrliczFunction& psi, const OrliczFunction& phi2, const AlgebraElement& g) {
  RescaleUpReport r;
  if (!is_positive(g)) throw DomainError("rescale_up needs a positive element");
  const OrliczFunction psi_star = conjugate(psi);
  const Composition zeta = compose(psi_star, phi2);
  if (!zeta.verdict.valid) {
    r.reason = "psi* o phi2 is not an Orlicz function";
    return r;
  }
  const GrowthReport d2 = probe_delta2(phi2);
  if (!d2.holds) {
    r.reason = "phi2 fails the Delta2 probe";
    return r;
  }
  r.applicable = true;
  r.K = d2.constant;
  r.image = apply_function(phi2, g);

  const double gz = luxemburg_norm(zeta.function, g).value;
  if (gz == 0.0) {
    r.alpha = 1.0;
    r.N = 0;
    r.domination = true;
    r.holds = true;
    return r;
  }
  r.alpha = 1.0 / (2.0 * gz);
  while (!(r.alpha > std::ldexp(1.0, -r.N))) ++r.N;
  r.zeta_norm = luxemburg_norm(zeta.function, r.alpha * g).value;
  r.image_norm = luxemburg_norm(psi_star, *r.image).value;
  const double KN = std::pow(r.K, r.N);
  r.bound = KN * r.zeta_norm;

  r.domination = true;
  for (double lambda : spectrum(g)) {
    const double lhs = phi2(lambda);
    const double rhs = KN * phi2(r.alpha * lambda);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300) r.domination = false;
  }
  r.holds = std::isfinite(r.image_norm) && r.domination && r.image_norm <= r.bound * (1.0 + 1e-9);
  return r;
}

RescaleDownReport rescale_down(const OrliczFunction& psi, const OrliczFunction& phi2, const AlgebraElement& f) {
  RescaleDownReport r;
  if (!is_positive(f)) throw DomainError("rescale_down needs a positive element");
  if (!probe_delta_prime(phi2, 0.0).holds) {
    r.reason = "phi2 fails the global Delta' probe";
    return r;
  }
  r.applicable = true;
  r.image = apply_spectral(f, [&](double lambda) { return formal_inverse(phi2, lambda); });

  const OrliczFunction psi_star = conjugate(psi);
  const Composition zeta = compose(psi_star, phi2);
  r.holds = true;
  for (double lambda : spectrum(f)) {
    const double root = formal_inverse(phi2, lambda);
    for (int k = 1; k <= 9; ++k) {
      const double s = 0.1 * k;
      const double lhs = zeta.function(s * root);
      const double rhs = psi_star(s * lambda);
      ++r.checks;
      const double excess = lhs - rhs;
      r.worst_excess = std::max(r.worst_excess, excess);
      if (excess > 1e-9 * (1.0 + std::abs(rhs))) r.holds = false;
    }
  }
  return r;
}

void AtomicMeasurePair::validate() const {
  if (nu1.size() != nu2.size() || nu1.empty()) throw ShapeError("measure pair needs equal, nonzero atom counts");
  for (std::size_t i = 0; i < nu1.size(); ++i) {
    if (!(nu1[i] > 0.0) || !(nu2[i] > 0.0) || !std::isfinite(nu1[i]) || !std::isfinite(nu2[i])) {
      throw DomainError("equivalent measures need strictly positive finite atom weights");
    }
  }
}

std::vector<double> AtomicMeasurePair::derivative() const {
  validate();
  std::vector<double> d(nu1.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = nu1[i] / nu2[i];
  return d;
}

double atomic_luxemburg(const OrliczFunction& phi, const std::vector<double>& weights, const std::vector<double>& f) {
  if (weights.size() != f.size()) throw ShapeError("one value per atom required");
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t i = 0; i < f.size(); ++i) atoms.emplace_back(std::abs(f[i]), weights[i]);
  return luxemburg_norm(phi, StepFunction::from_atoms(std::move(atoms))).value;
}

MeasureMapReport equivalent_measure_map(const OrliczFunction& phi, const AtomicMeasurePair& pair,
                                        const std::vector<double>& f) {
  const auto d = pair.derivative();
  if (f.size() != d.size()) throw ShapeError("one value per atom required");
  MeasureMapReport r;
  r.image.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r.image[i] = formal_inverse(phi, d[i]) * f[i];
  r.source_norm = atomic_luxemburg(phi, pair.nu1, f);
  r.image_norm = atomic_luxemburg(phi, pair.nu2, r.image);
  r.ratio = r.source_norm > 0.0 ? r.image_norm / r.source_norm : 1.0;

  const GrowthReport dp = probe_delta_prime(phi, 0.0);
  if (dp.holds && dp.a_form && *dp.a_form > 0.0) {
    r.a = *dp.a_form;
    r.upper_checked = true;
    r.upper_holds = r.image_norm <= r.source_norm / *r.a * (1.0 + kMeasureMapSlack);
  }
  const GrowthReport np = probe_nabla_prime(phi, 0.0);
  if (np.holds && np.constant > 0.0) {
    r.b = np.constant;
    r.lower_checked = true;
    r.lower_holds = r.source_norm / *r.b <= r.image_norm * (1.0 + kMeasureMapSlack);
  }
  return r;
}

}  // namespace orlicz
