#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "orlicz/function.hpp"
#include "orlicz/matrix.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz {

struct Block {
  std::size_t dim;
  double weight;
  friend bool operator==(const Block&, const Block&) = default;
};

/// Finite direct sum of full real matrix blocks; the trace of block b is
/// weight_b times the matrix trace.
class BlockAlgebra {
 public:
  BlockAlgebra() = default;
  explicit BlockAlgebra(std::vector<Block> blocks);

  /// All blocks of dimension 1 with the given atom weights.
  static BlockAlgebra commutative(const std::vector<double>& weights);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  double total_trace() const;
  bool is_commutative() const;

  friend bool operator==(const BlockAlgebra&, const BlockAlgebra&) = default;

 private:
  std::vector<Block> blocks_;
};

class AlgebraElement {
 public:
  AlgebraElement() = default;
  /// Throws ShapeError unless mats[b] is dim_b x dim_b for every block.
  AlgebraElement(BlockAlgebra algebra, std::vector<Matrix> mats);

  static AlgebraElement zero(const BlockAlgebra& alg);
  static AlgebraElement identity(const BlockAlgebra& alg);
  /// Commutative element with the given diagonal on a commutative algebra.
  static AlgebraElement diagonal(const BlockAlgebra& alg, const std::vector<double>& values);

  const BlockAlgebra& algebra() const { return algebra_; }
  const std::vector<Matrix>& mats() const { return mats_; }
  const Matrix& block(std::size_t b) const { return mats_.at(b); }
  bool is_zero(double tol = 0.0) const;

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  BlockAlgebra algebra_;
  std::vector<Matrix> mats_;
};

double trace(const AlgebraElement& x);
AlgebraElement adjoint(const AlgebraElement& x);
/// (x^T x)^{1/2} per block.
AlgebraElement abs(const AlgebraElement& x);
AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scale(double s, const AlgebraElement& x);

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator*(double s, const AlgebraElement& x);

/// Blockwise Frobenius norm, unweighted.
double frobenius(const AlgebraElement& x);

/// Symmetric with eigenvalues >= -1e-12 (1 + max |entry|) in every block.
bool is_positive(const AlgebraElement& x);

/// f applied to the clamped spectrum of a positive element. Throws
/// DomainError for non-positive input.
AlgebraElement apply_spectral(const AlgebraElement& x, const std::function<double(double)>& f);

/// Eigenvalues of a positive element, clamped at 0, all blocks together.
std::vector<double> spectrum(const AlgebraElement& x);

/// phi applied to the spectrum of a positive element. Throws DomainError for
/// non-positive input or when an eigenvalue lies beyond b_phi.
AlgebraElement apply_function(const OrliczFunction& phi, const AlgebraElement& x);

/// Generalised singular values: every singular value of block b carries
/// length weight_b.
StepFunction mu(const AlgebraElement& x);
double mu_at(const AlgebraElement& x, double t);

/// Entries i.i.d. standard normal.
AlgebraElement random_element(const BlockAlgebra& alg, std::uint64_t seed);
/// Q diag(lambda) Q^T per block with lambda uniform in [lo, hi].
AlgebraElement random_positive(const BlockAlgebra& alg, std::uint64_t seed, double lo = 0.1, double hi = 3.0);
/// Block-orthogonal element.
AlgebraElement random_orthogonal(const BlockAlgebra& alg, std::uint64_t seed);

/// r_1..r_k on 2^k equal atoms of total weight 1: r_n(i) = 1 - 2 bit_{k-n}(i).
std::vector<AlgebraElement> rademacher_family(const BlockAlgebra& alg, std::size_t k);

/// Matrix units v_j = xi b_j^T, j = 1..n, where e1 = xi xi^T and (b_j) is an
/// orthonormal basis of the host block with b_1 = xi.
std::vector<AlgebraElement> partial_isometry_chain(const BlockAlgebra& alg, const AlgebraElement& e1,
                                                   std::size_t n);

inline constexpr double kCarrierTolerance = 1e-12;

/// mask_b = ||x_b||_F > 1e-12.
std::vector<bool> central_carrier(const AlgebraElement& x);
AlgebraElement central_projection(const BlockAlgebra& alg, const std::vector<bool>& mask);

}  // namespace orlicz
