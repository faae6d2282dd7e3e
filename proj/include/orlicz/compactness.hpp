#pragma once

#include <string>
#include <vector>

#include "orlicz/algebra.hpp"
#include "orlicz/norms.hpp"

namespace orlicz {

inline constexpr double kNormAgreement = 1e-10;

struct RademacherReport {
  std::size_t k = 0;
  double norm_g = 0.0;
  std::vector<double> norms;     ///< ||g r_n||, n = 1..k
  std::vector<bool> mu_equal;    ///< mu(g r_n) == mu(g) after merge
  bool holds = false;
};

/// Every g r_n has the rearrangement of g, hence the same phi2-norm.
/// Throws ShapeError unless the algebra is commutative with 2^k atoms, and
/// DomainError unless their weights are equal and sum to 1.
RademacherReport rademacher_image_check(const AlgebraElement& g, const OrliczFunction& phi2);

struct IsometryReport {
  std::size_t block = 0;          ///< host block of e1
  double top_eigenvalue = 0.0;
  double e1_norm = 0.0;           ///< ||e1||_phi
  std::vector<double> norms;      ///< ||g v_n||_phi
  std::vector<bool> chain_exact;  ///< all four rearrangements agree for v_n
  double worst_margin = 0.0;      ///< min_n ||g v_n|| - lambda ||e1||
  bool holds = false;
};

/// mu(g v_n) = mu(|(g v_n)^T|^2)^{1/2} = mu(g e1 g^T)^{1/2} = mu(g e1) and
/// ||g v_n||_phi >= lambda ||e1||_phi for the chain transporting the rank-one
/// e1 <= chi_[lambda, inf)(g). e1 is the top eigenprojection of the block of
/// dimension >= 3 with the largest eigenvalue, lowest index on ties.
/// Throws DomainError when no such block reaches lambda.
IsometryReport isometry_image_check(const AlgebraElement& g, double lambda, const OrliczFunction& phi);

struct SandwichReport {
  double tau = 0.0;
  std::size_t n = 0;
  double norm = 0.0;        ///< ||e||_phi
  double inf_n = 0.0;       ///< inf{alpha : phi(1/alpha) <= 1/n}
  double inf_n1 = 0.0;      ///< inf{alpha : phi(1/alpha) <= 1/(n+1)}
  bool holds = false;       ///< inf_n <= norm <= inf_n1
  bool reversed_holds = false;  ///< inf_n >= norm >= inf_n1
};

/// inf{alpha > 0 : phi(1/alpha) <= c} by bisection on log alpha.
double projection_threshold(const OrliczFunction& phi, double c);

/// Throws DomainError if e is not a projection or tau(e) < 1.
SandwichReport projection_norm_sandwich(const OrliczFunction& phi1, const AlgebraElement& e);

/// Identity of a commutative algebra with floor(tau) unit atoms plus one atom
/// carrying the fractional part.
AlgebraElement synthetic_projection(double tau);

struct StructureReport {
  std::vector<bool> carrier_mask;
  std::vector<std::size_t> block_dims;
  bool finite_type_I = true;
  std::vector<double> block_norms;  ///< ||g c_b||_phi, 0 off the carrier
  double norm_floor = 0.0;          ///< min over carrier blocks, 0 for g = 0
  double reconstruction_error = 0.0;  ///< ||g c - g||_F
  bool holds = false;  ///< reconstruction within 1e-12 and floor > 0 iff g != 0
};

StructureReport structure_report(const AlgebraElement& g, const OrliczFunction& phi);

/// mu(g u) == mu(g) after merge.
bool unitary_invariance_check(const AlgebraElement& g, const AlgebraElement& u);

}  // namespace orlicz
