#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orlicz/algebra.hpp"
#include "orlicz/growth.hpp"
#include "orlicz/norms.hpp"

namespace orlicz {

struct LemmaLmReport {
  bool precondition = false;
  bool holds = false;
  double lhs = 0.0;  ///< Luxemburg norm of phi(|a|) for psi
  double rhs = 0.0;  ///< Luxemburg norm of a for psi o phi
  std::string detail;
};

/// ||phi(|a|)||_psi <= ||a||_{psi o phi} + 1e-8, asserted when psi o phi is
/// an Orlicz function and ||a||_{psi o phi} < 1.
LemmaLmReport lemma_lm_check(const OrliczFunction& psi, const OrliczFunction& phi, const AlgebraElement& a);

struct RescaleUpReport {
  bool applicable = false;
  std::string reason;
  std::optional<AlgebraElement> image;  ///< phi2(g)
  double K = 0.0;        ///< Delta2 constant of phi2
  double alpha = 0.0;    ///< 1 / (2 ||g||_zeta)
  int N = 0;             ///< minimal N >= 0 with alpha > 2^-N
  double zeta_norm = 0.0;    ///< ||alpha g||_zeta
  double image_norm = 0.0;   ///< ||phi2(g)||_{psi*}
  double bound = 0.0;        ///< K^N ||alpha g||_zeta
  bool domination = false;   ///< phi2(lambda) <= K^N phi2(alpha lambda) on the spectrum
  bool holds = false;
};

/// g -> phi2(g) with the Delta2 certificate. zeta = psi* o phi2.
RescaleUpReport rescale_up(const OrliczFunction& psi, const OrliczFunction& phi2, const AlgebraElement& g);

struct RescaleDownReport {
  bool applicable = false;
  std::string reason;
  std::optional<AlgebraElement> image;  ///< phi2^{-1}(f)
  std::size_t checks = 0;
  bool holds = false;
  double worst_excess = 0.0;  ///< max of zeta(s phi2^{-1}(lambda)) - psi*(s lambda)
};

/// f -> phi2^{-1}(f), checking zeta(s phi2^{-1}(f)) <= psi*(s f) spectrally
/// for s in {0.1, 0.2, ..., 0.9}. zeta = psi* o phi2.
RescaleDownReport rescale_down(const OrliczFunction& psi, const OrliczFunction& phi2, const AlgebraElement& f);

/// Two equivalent measures on finitely many atoms.
struct AtomicMeasurePair {
  std::vector<double> nu1;
  std::vector<double> nu2;

  /// Throws ShapeError on length mismatch and DomainError on a weight <= 0.
  void validate() const;
  std::vector<double> derivative() const;  ///< nu1 / nu2 atomwise
};

struct MeasureMapReport {
  std::vector<double> image;
  double source_norm = 0.0;  ///< ||f||_{phi, nu1}
  double image_norm = 0.0;   ///< ||image||_{phi, nu2}
  double ratio = 0.0;        ///< image_norm / source_norm (1 for f = 0)
  std::optional<double> a;   ///< Delta' a-form constant, when the probe holds
  std::optional<double> b;   ///< Nabla' constant, when the probe holds
  bool upper_checked = false;
  bool upper_holds = true;   ///< image_norm <= source_norm / a
  bool lower_checked = false;
  bool lower_holds = true;   ///< image_norm >= source_norm / b
};

inline constexpr double kMeasureMapSlack = 1e-8;

/// f -> phi^{-1}(d nu1 / d nu2) f atomwise, with the norm bounds unlocked by
/// the global Delta' and Nabla' probes.
MeasureMapReport equivalent_measure_map(const OrliczFunction& phi, const AtomicMeasurePair& pair,
                                        const std::vector<double>& f);

/// Luxemburg norm of a vector on atoms with the given weights.
double atomic_luxemburg(const OrliczFunction& phi, const std::vector<double>& weights, const std::vector<double>& f);

}  // namespace orlicz
