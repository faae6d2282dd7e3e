#include "orlicz/compactness.hpp"

#include <algorithm>

namespace orlicz {

namespace {

StepFunction sqrt_steps(const StepFunction& m) {
  std::vector<std::pair<double, double>> atoms;
  for (const Step& s : m.steps()) atoms.emplace_back(std::sqrt(s.value), s.length);
  return StepFunction::from_atoms(std::move(atoms));
}

AlgebraElement block_projection(const BlockAlgebra& alg, std::size_t b) {
  std::vector<bool> mask(alg.size(), false);
  mask[b] = true;
  return central_projection(alg, mask);
}

}  // namespace

RademacherReport rademacher_image_check(const AlgebraElement& g, const OrliczFunction& phi2) {
  const BlockAlgebra& alg = g.algebra();
  RademacherReport r;
  while ((std::size_t{1} << r.k) < alg.size()) ++r.k;
  const auto family = rademacher_family(alg, r.k);

  const StepFunction mg = mu(g);
  r.norm_g = luxemburg_norm(phi2, mg).value;
  r.holds = true;
  for (const AlgebraElement& rn : family) {
    const AlgebraElement grn = g * rn;
    const bool same = equivalent(mu(grn), mg);
    const double nrm = luxemburg_norm(phi2, grn).value;
    r.mu_equal.push_back(same);
    r.norms.push_back(nrm);
    if (!same || std::abs(nrm - r.norm_g) > kNormAgreement * (1.0 + r.norm_g)) r.holds = false;
  }
  return r;
}

IsometryReport isometry_image_check(const AlgebraElement& g, double lambda, const OrliczFunction& phi) {
  if (!is_positive(g)) throw DomainError("isometry check needs a positive element");
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  const BlockAlgebra& alg = g.algebra();

  IsometryReport r;
  bool found = false;
  std::vector<double> xi;
  for (std::size_t b = 0; b < alg.size(); ++b) {
    if (alg.blocks()[b].dim < 3) continue;
    const auto eig = jacobi_eigen(g.block(b));
    if (eig.values.front() < lambda) continue;
    if (!found || eig.values.front() > r.top_eigenvalue) {
      found = true;
      r.block = b;
      r.top_eigenvalue = eig.values.front();
      xi.assign(eig.values.size(), 0.0);
      for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = eig.vectors(i, 0);
    }
  }
  if (!found) throw DomainError("spectral projection chi_[lambda, inf)(g) is empty on blocks of dimension >= 3");

  std::vector<Matrix> mats;
  for (const Block& blk : alg.blocks()) mats.emplace_back(blk.dim, blk.dim);
  Matrix& p = mats[r.block];
  for (std::size_t i = 0; i < xi.size(); ++i)
    for (std::size_t j = 0; j < xi.size(); ++j) p(i, j) = xi[i] * xi[j];
  const AlgebraElement e1(alg, std::move(mats));

  r.e1_norm = luxemburg_norm(phi, e1).value;
  const AlgebraElement ge1 = g * e1;
  const StepFunction target = mu(ge1);
  const StepFunction via_e1 = sqrt_steps(mu(ge1 * adjoint(g)));
  const double floor = lambda * r.e1_norm;

  r.holds = equivalent(via_e1, target);
  r.worst_margin = kInf;
  for (const AlgebraElement& v : partial_isometry_chain(alg, e1, alg.blocks()[r.block].dim)) {
    const AlgebraElement gv = g * v;
    const StepFunction m = mu(gv);
    const bool exact = equivalent(m, sqrt_steps(mu(gv * adjoint(gv)))) && equivalent(m, target);
    const double nrm = luxemburg_norm(phi, m).value;
    r.chain_exact.push_back(exact);
    r.norms.push_back(nrm);
    r.worst_margin = std::min(r.worst_margin, nrm - floor);
    if (!exact || nrm < floor - kNormAgreement) r.holds = false;
  }
  return r;
}

double projection_threshold(const OrliczFunction& phi, double c) {
  if (!(c > 0.0)) throw DomainError("threshold level must be positive");
  auto ok = [&](double alpha) { return phi(1.0 / alpha) <= c; };
  double lo = 1.0;
  double hi = 1.0;
  if (ok(1.0)) {
    while (ok(lo)) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) return 0.0;
    }
  } else {
    while (!ok(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) return kInf;
    }
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = std::sqrt(lo * hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

SandwichReport projection_norm_sandwich(const OrliczFunction& phi1, const AlgebraElement& e) {
  for (const Matrix& m : e.mats()) {
    if ((m * m - m).max_abs() > 1e-10 || (m - m.transpose()).max_abs() > 1e-12) {
      throw DomainError("sandwich needs a projection");
    }
  }
  SandwichReport r;
  r.tau = trace(e);
  if (r.tau < 1.0 - 1e-12) throw DomainError("sandwich needs tau(e) >= 1");
  r.n = static_cast<std::size_t>(std::floor(r.tau + 1e-12));
  r.norm = luxemburg_norm(phi1, e).value;
  r.inf_n = projection_threshold(phi1, 1.0 / static_cast<double>(r.n));
  r.inf_n1 = projection_threshold(phi1, 1.0 / static_cast<double>(r.n + 1));
  const double slack = 1e-10 * (1.0 + r.norm);
  r.holds = r.inf_n <= r.norm + slack && r.norm <= r.inf_n1 + slack;
  r.reversed_holds = r.inf_n >= r.norm - slack && r.norm >= r.inf_n1 - slack;
  return r;
}

AlgebraElement synthetic_projection(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive and finite");
  std::vector<double> w(static_cast<std::size_t>(std::floor(tau)), 1.0);
  const double frac = tau - std::floor(tau);
  if (frac > 0.0) w.push_back(frac);
  const BlockAlgebra alg = BlockAlgebra::commutative(w);
  return AlgebraElement::identity(alg);
}

StructureReport structure_report(const AlgebraElement& g, const OrliczFunction& phi) {
  const BlockAlgebra& alg = g.algebra();
  StructureReport r;
  r.carrier_mask = central_carrier(g);
  for (const Block& b : alg.blocks()) r.block_dims.push_back(b.dim);

  bool any = false;
  for (std::size_t b = 0; b < alg.size(); ++b) {
    double nrm = 0.0;
    if (r.carrier_mask[b]) {
      nrm = luxemburg_norm(phi, g * block_projection(alg, b)).value;
      r.norm_floor = any ? std::min(r.norm_floor, nrm) : nrm;
      any = true;
    }
    r.block_norms.push_back(nrm);
  }
  const AlgebraElement c = central_projection(alg, r.carrier_mask);
  r.reconstruction_error = frobenius(g * c - g);
  const bool nonzero = !g.is_zero(kCarrierTolerance);
  r.holds = r.reconstruction_error <= 1e-12 && ((r.norm_floor > 0.0) == nonzero);
  return r;
}

bool unitary_invariance_check(const AlgebraElement& g, const AlgebraElement& u) {
  return equivalent(mu(g * u), mu(g));
}

}  // namespace orlicz
