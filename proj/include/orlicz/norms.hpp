#pragma once

#include <string>

#include "orlicz/algebra.hpp"

namespace orlicz {

enum class NormMethod { bisection, amemiya, closed_form };

std::string to_string(NormMethod m);

struct NormResult {
  double value = 0.0;
  std::size_t iterations = 0;
  double lo = 0.0;
  double hi = 0.0;
  NormMethod method = NormMethod::closed_form;
};

/// tau(phi(|x|)); +inf as soon as a singular value maps to +inf.
double modular(const OrliczFunction& phi, const AlgebraElement& x);
double modular(const OrliczFunction& phi, const StepFunction& m);

/// inf{lambda > 0 : modular(phi, x / lambda) <= 1}. Depends on x only
/// through mu(x). The bisection returns the upper bracket end, so the
/// returned lambda always satisfies the modular inequality.
NormResult luxemburg_norm(const OrliczFunction& phi, const AlgebraElement& x);
NormResult luxemburg_norm(const OrliczFunction& phi, const StepFunction& m);

/// inf_{k > 0} (1 + modular(phi, k x)) / k, minimised by golden section
/// over log(1/k). Lies in [luxemburg, 2 luxemburg].
NormResult orlicz_norm(const OrliczFunction& phi, const AlgebraElement& x);
NormResult orlicz_norm(const OrliczFunction& phi, const StepFunction& m);

/// tau(|f g|)
double kothe_pairing(const AlgebraElement& f, const AlgebraElement& g);

struct HolderReport {
  bool holds = false;
  double pairing = 0.0;
  double dual_norm = 0.0;  ///< Orlicz norm of f for the conjugate of phi
  double norm = 0.0;       ///< Luxemburg norm of g for phi
  double bound = 0.0;
};

inline constexpr double kHolderSlack = 1e-8;

/// tau(|fg|) <= ||f||^0_{phi*} ||g||_phi (1 + 1e-8).
HolderReport holder_check(const AlgebraElement& f, const AlgebraElement& g, const OrliczFunction& phi);
HolderReport holder_check(const AlgebraElement& f, const AlgebraElement& g, const OrliczFunction& phi,
                          const OrliczFunction& phi_star);

}  // namespace orlicz
