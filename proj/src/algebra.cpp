#include "orlicz/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace orlicz {

BlockAlgebra::BlockAlgebra(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ShapeError("a block algebra needs at least one block");
  for (const Block& b : blocks_) {
    if (b.dim == 0) throw ShapeError("block dimension must be >= 1");
    if (!(b.weight > 0.0) || !std::isfinite(b.weight)) throw DomainError("block weight must be positive and finite");
  }
}

BlockAlgebra BlockAlgebra::commutative(const std::vector<double>& weights) {
  std::vector<Block> blocks;
  blocks.reserve(weights.size());
  for (double w : weights) blocks.push_back({1, w});
  return BlockAlgebra(std::move(blocks));
}

double BlockAlgebra::total_trace() const {
  double s = 0.0;
  for (const Block& b : blocks_) s += static_cast<double>(b.dim) * b.weight;
  return s;
}

bool BlockAlgebra::is_commutative() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.dim == 1; });
}

AlgebraElement::AlgebraElement(BlockAlgebra algebra, std::vector<Matrix> mats)
    : algebra_(std::move(algebra)), mats_(std::move(mats)) {
  if (mats_.size() != algebra_.size()) throw ShapeError("element needs one matrix per block");
  for (std::size_t b = 0; b < mats_.size(); ++b) {
    const std::size_t d = algebra_.blocks()[b].dim;
    if (mats_[b].rows() != d || mats_[b].cols() != d) throw ShapeError("block matrix has the wrong shape");
  }
}

AlgebraElement AlgebraElement::zero(const BlockAlgebra& alg) {
  std::vector<Matrix> mats;
  for (const Block& b : alg.blocks()) mats.emplace_back(b.dim, b.dim);
  return AlgebraElement(alg, std::move(mats));
}

AlgebraElement AlgebraElement::identity(const BlockAlgebra& alg) {
  std::vector<Matrix> mats;
  for (const Block& b : alg.blocks()) mats.push_back(Matrix::identity(b.dim));
  return AlgebraElement(alg, std::move(mats));
}

AlgebraElement AlgebraElement::diagonal(const BlockAlgebra& alg, const std::vector<double>& values) {
  if (!alg.is_commutative()) throw ShapeError("diagonal elements need a commutative algebra");
  if (values.size() != alg.size()) throw ShapeError("one value per atom required");
  std::vector<Matrix> mats;
  for (double v : values) mats.push_back(Matrix{{v}});
  return AlgebraElement(alg, std::move(mats));
}

bool AlgebraElement::is_zero(double tol) const {
  return std::all_of(mats_.begin(), mats_.end(), [&](const Matrix& m) { return m.max_abs() <= tol; });
}

namespace {

void require_same(const AlgebraElement& x, const AlgebraElement& y) {
  if (!(x.algebra() == y.algebra())) throw AlgebraMismatch("elements belong to different algebras");
}

template <class F>
AlgebraElement blockwise(const AlgebraElement& x, F&& f) {
  std::vector<Matrix> mats;
  mats.reserve(x.mats().size());
  for (const Matrix& m : x.mats()) mats.push_back(f(m));
  return AlgebraElement(x.algebra(), std::move(mats));
}

template <class F>
AlgebraElement blockwise(const AlgebraElement& x, const AlgebraElement& y, F&& f) {
  require_same(x, y);
  std::vector<Matrix> mats;
  mats.reserve(x.mats().size());
  for (std::size_t b = 0; b < x.mats().size(); ++b) mats.push_back(f(x.mats()[b], y.mats()[b]));
  return AlgebraElement(x.algebra(), std::move(mats));
}

bool symmetric(const Matrix& m) {
  const double tol = kSymmetryTolerance * (1.0 + m.max_abs());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

Matrix reconstruct(const SymmetricEigen& eig, const std::vector<double>& values) {
  const std::size_t n = values.size();
  Matrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (values[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) r(i, j) += values[k] * eig.vectors(i, k) * eig.vectors(j, k);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) r(i, j) = r(j, i);
  return r;
}

}  // namespace

double trace(const AlgebraElement& x) {
  double s = 0.0;
  for (std::size_t b = 0; b < x.mats().size(); ++b) s += x.algebra().blocks()[b].weight * x.mats()[b].trace();
  return s;
}

AlgebraElement adjoint(const AlgebraElement& x) {
  return blockwise(x, [](const Matrix& m) { return m.transpose(); });
}

AlgebraElement abs(const AlgebraElement& x) {
  return blockwise(x, [](const Matrix& m) { return abs_matrix(m); });
}

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) {
  return blockwise(x, y, [](const Matrix& a, const Matrix& b) { return a * b; });
}

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
  return blockwise(x, y, [](const Matrix& a, const Matrix& b) { return a + b; });
}

AlgebraElement scale(double s, const AlgebraElement& x) {
  return blockwise(x, [&](const Matrix& m) { return s * m; });
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) { return multiply(x, y); }
AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) { return add(x, y); }
AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) { return add(x, scale(-1.0, y)); }
AlgebraElement operator*(double s, const AlgebraElement& x) { return scale(s, x); }

double frobenius(const AlgebraElement& x) {
  double s = 0.0;
  for (const Matrix& m : x.mats()) s += m.frobenius() * m.frobenius();
  return std::sqrt(s);
}

bool is_positive(const AlgebraElement& x) {
  for (const Matrix& m : x.mats()) {
    if (!symmetric(m)) return false;
    const auto eig = jacobi_eigen(m);
    if (eig.values.back() < -kSymmetryTolerance * (1.0 + m.max_abs())) return false;
  }
  return true;
}

AlgebraElement apply_spectral(const AlgebraElement& x, const std::function<double(double)>& f) {
  return blockwise(x, [&](const Matrix& m) {
    if (!symmetric(m)) throw DomainError("spectral calculus needs a positive element");
    const auto eig = jacobi_eigen(m);
    std::vector<double> fv(eig.values.size());
    for (std::size_t k = 0; k < fv.size(); ++k) {
      const double lambda = eig.values[k];
      if (lambda < -kSymmetryTolerance * (1.0 + m.max_abs())) {
        throw DomainError("spectral calculus needs a positive element");
      }
      fv[k] = f(std::max(lambda, 0.0));
    }
    return reconstruct(eig, fv);
  });
}

std::vector<double> spectrum(const AlgebraElement& x) {
  std::vector<double> out;
  for (const Matrix& m : x.mats()) {
    if (!symmetric(m)) throw DomainError("spectrum needs a positive element");
    for (double l : jacobi_eigen(m).values) {
      if (l < -kSymmetryTolerance * (1.0 + m.max_abs())) throw DomainError("spectrum needs a positive element");
      out.push_back(std::max(l, 0.0));
    }
  }
  return out;
}

AlgebraElement apply_function(const OrliczFunction& phi, const AlgebraElement& x) {
  const double b = phi.b_phi();
  return apply_spectral(x, [&](double lambda) {
    if (lambda > b) throw DomainError("eigenvalue beyond b_phi");
    const double v = phi(lambda);
    if (std::isinf(v)) throw DomainError("phi is infinite on the spectrum");
    return v;
  });
}

StepFunction mu(const AlgebraElement& x) {
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t b = 0; b < x.mats().size(); ++b) {
    const double w = x.algebra().blocks()[b].weight;
    for (double s : singular_decomposition(x.mats()[b]).values) atoms.emplace_back(s, w);
  }
  return StepFunction::from_atoms(std::move(atoms));
}

double mu_at(const AlgebraElement& x, double t) {
  if (std::isnan(t) || t < 0.0) throw DomainError("mu_at needs t >= 0");
  return mu(x).at(t);
}

AlgebraElement random_element(const BlockAlgebra& alg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Matrix> mats;
  for (const Block& b : alg.blocks()) {
    Matrix m(b.dim, b.dim);
    for (std::size_t i = 0; i < b.dim; ++i)
      for (std::size_t j = 0; j < b.dim; ++j) m(i, j) = normal(rng);
    mats.push_back(std::move(m));
  }
  return AlgebraElement(alg, std::move(mats));
}

AlgebraElement random_orthogonal(const BlockAlgebra& alg, std::uint64_t seed) {
  const AlgebraElement g = random_element(alg, seed);
  return blockwise(g, [](const Matrix& m) { return jacobi_eigen(m + m.transpose()).vectors; });
}

AlgebraElement random_positive(const BlockAlgebra& alg, std::uint64_t seed, double lo, double hi) {
  const AlgebraElement q = random_orthogonal(alg, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unif(lo, hi);
  return blockwise(q, [&](const Matrix& u) {
    std::vector<double> lambda(u.rows());
    for (double& l : lambda) l = unif(rng);
    return reconstruct(SymmetricEigen{{}, u}, lambda);
  });
}

std::vector<AlgebraElement> rademacher_family(const BlockAlgebra& alg, std::size_t k) {
  if (!alg.is_commutative()) throw ShapeError("Rademacher family needs a commutative algebra");
  const std::size_t atoms = alg.size();
  if (k >= 63 || atoms != (std::size_t{1} << k)) throw ShapeError("Rademacher family needs 2^k atoms");
  const double w0 = alg.blocks().front().weight;
  for (const Block& b : alg.blocks()) {
    if (std::abs(b.weight - w0) > 1e-12 * w0) throw DomainError("Rademacher family needs equal atom weights");
  }
  if (std::abs(alg.total_trace() - 1.0) > 1e-12) throw DomainError("Rademacher family needs unit total weight");
  std::vector<AlgebraElement> out;
  for (std::size_t n = 1; n <= k; ++n) {
    std::vector<double> signs(atoms);
    for (std::size_t i = 0; i < atoms; ++i) signs[i] = ((i >> (k - n)) & 1U) ? -1.0 : 1.0;
    out.push_back(AlgebraElement::diagonal(alg, signs));
  }
  return out;
}

std::vector<AlgebraElement> partial_isometry_chain(const BlockAlgebra& alg, const AlgebraElement& e1,
                                                   std::size_t n) {
  if (!(e1.algebra() == alg)) throw AlgebraMismatch("projection belongs to a different algebra");
  std::size_t host = alg.size();
  for (std::size_t b = 0; b < alg.size(); ++b) {
    if (e1.block(b).frobenius() > kCarrierTolerance) {
      if (host != alg.size()) throw DomainError("e1 must live in a single block");
      host = b;
    }
  }
  if (host == alg.size()) throw DomainError("e1 is zero");
  const Matrix& p = e1.block(host);
  const std::size_t d = p.rows();
  if ((p * p - p).max_abs() > 1e-10 || !symmetric(p) || std::abs(p.trace() - 1.0) > 1e-10) {
    throw DomainError("e1 must be a rank-one projection");
  }
  if (d < n) throw ShapeError("host block dimension is smaller than the chain length");

  std::size_t col = 0;
  double best = -1.0;
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += p(i, j) * p(i, j);
    if (s > best) {
      best = s;
      col = j;
    }
  }
  std::vector<std::vector<double>> basis;
  std::vector<double> xi(d);
  for (std::size_t i = 0; i < d; ++i) xi[i] = p(i, col) / std::sqrt(best);
  basis.push_back(xi);
  // Gram-Schmidt over the standard basis completes xi.
  for (std::size_t e = 0; e < d && basis.size() < d; ++e) {
    std::vector<double> v(d, 0.0);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        double dot = 0.0;
        for (std::size_t i = 0; i < d; ++i) dot += q[i] * v[i];
        for (std::size_t i = 0; i < d; ++i) v[i] -= dot * q[i];
      }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (double& x : v) x /= norm;
    basis.push_back(v);
  }

  std::vector<AlgebraElement> out;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Matrix> mats;
    for (std::size_t b = 0; b < alg.size(); ++b) mats.emplace_back(alg.blocks()[b].dim, alg.blocks()[b].dim);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) mats[host](r, c) = xi[r] * basis[j][c];
    out.emplace_back(alg, std::move(mats));
  }
  return out;
}

std::vector<bool> central_carrier(const AlgebraElement& x) {
  std::vector<bool> mask;
  for (const Matrix& m : x.mats()) mask.push_back(m.frobenius() > kCarrierTolerance);
  return mask;
}

AlgebraElement central_projection(const BlockAlgebra& alg, const std::vector<bool>& mask) {
  if (mask.size() != alg.size()) throw ShapeError("mask needs one entry per block");
  std::vector<Matrix> mats;
  for (std::size_t b = 0; b < alg.size(); ++b) {
    const std::size_t d = alg.blocks()[b].dim;
    mats.push_back(mask[b] ? Matrix::identity(d) : Matrix(d, d));
  }
  return AlgebraElement(alg, std::move(mats));
}

}  // namespace orlicz
