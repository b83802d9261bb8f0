#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfdiv/error.hpp"
#include "qfdiv/linalg.hpp"
#include "qfdiv/rng.hpp"

namespace qfdiv {

inline constexpr double kStateTol = 1e-10;
inline constexpr double kChannelTol = 1e-9;

/// Probability vector: nonnegative entries summing to one.
class ClassicalDistribution {
 public:
  explicit ClassicalDistribution(std::vector<double> probs, double tol = kStateTol) : probs_(std::move(probs)) {
    if (probs_.empty()) {
      throw Error(ErrorKind::InvalidDistribution, "empty distribution");
    }
    double total = 0.0;
    for (double p : probs_) {
      if (!std::isfinite(p) || p < 0.0) {
        throw Error(ErrorKind::InvalidDistribution, "entry " + std::to_string(p) + " is not a nonnegative number");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > tol) {
      throw Error(ErrorKind::InvalidDistribution, "entries sum to " + std::to_string(total));
    }
  }

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  double min() const { return *std::min_element(probs_.begin(), probs_.end()); }

 private:
  std::vector<double> probs_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates the state invariants; the stored matrix is the Hermitian part.
  explicit DensityMatrix(const ComplexMatrix& m, double tol = kStateTol) {
    if (!m.is_square() || m.rows() == 0) {
      throw Error(ErrorKind::InvariantViolation, "shape: expected a non-empty square matrix, got " + m.shape());
    }
    if (!m.all_finite()) {
      throw Error(ErrorKind::InvariantViolation, "finiteness: matrix has non-finite entries");
    }
    if (hermiticity_defect(m) > tol) {
      throw Error(ErrorKind::InvariantViolation, "hermiticity: ‖ρ − ρ†‖_max = " + std::to_string(hermiticity_defect(m)));
    }
    mat_ = m.hermitian_part();
    const double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > tol) {
      throw Error(ErrorKind::InvariantViolation, "trace: tr ρ = " + std::to_string(tr));
    }
    const double lmin = hermitian_eig(mat_).min();
    if (lmin < -tol) {
      throw Error(ErrorKind::InvariantViolation, "positivity: λ_min = " + std::to_string(lmin));
    }
  }

  std::size_t dim() const noexcept { return mat_.rows(); }
  const ComplexMatrix& mat() const noexcept { return mat_; }

  HermitianEigen eig() const { return hermitian_eig(mat_); }
  double min_eigenvalue() const { return eig().min(); }

 private:
  ComplexMatrix mat_;
};

inline void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma, const char* where) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(where) + ": dimensions " + std::to_string(rho.dim()) + " and " + std::to_string(sigma.dim()));
  }
}

/// CPTP map in Kraus form, τ ↦ Σ Aᵢ τ Aᵢ†.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus, double tol = kChannelTol) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
      throw Error(ErrorKind::InvariantViolation, "channel needs at least one Kraus operator");
    }
    const std::size_t rows = kraus_.front().rows();
    const std::size_t cols = kraus_.front().cols();
    ComplexMatrix completeness(cols);
    for (const auto& a : kraus_) {
      if (a.rows() != rows || a.cols() != cols) {
        throw Error(ErrorKind::DimensionMismatch, "Kraus operators of differing shapes");
      }
      completeness += a.adjoint() * a;
    }
    const double defect = max_abs_diff(completeness, ComplexMatrix::identity(cols));
    if (defect > tol) {
      throw Error(ErrorKind::InvariantViolation, "completeness: ‖Σ Aᵢ†Aᵢ − I‖_max = " + std::to_string(defect));
    }
  }

  static QuantumChannel identity(std::size_t n) { return QuantumChannel({ComplexMatrix::identity(n)}); }

  std::span<const ComplexMatrix> kraus() const noexcept { return kraus_; }
  std::size_t in_dim() const noexcept { return kraus_.front().cols(); }
  std::size_t out_dim() const noexcept { return kraus_.front().rows(); }

  /// Applies the map to any operator of matching size.
  ComplexMatrix apply(const ComplexMatrix& tau) const {
    if (tau.rows() != in_dim() || tau.cols() != in_dim()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "channel input is " + std::to_string(in_dim()) + "-dimensional, operator is " + tau.shape());
    }
    ComplexMatrix out(out_dim());
    for (const auto& a : kraus_) out += a * tau * a.adjoint();
    return out;
  }

 private:
  std::vector<ComplexMatrix> kraus_;
};

// Kraus completeness is only checked to kChannelTol, so the output trace is
// validated at that tolerance too.
inline DensityMatrix apply_channel(const QuantumChannel& w, const DensityMatrix& rho, double tol = kChannelTol) {
  return DensityMatrix(w.apply(rho.mat()).hermitian_part(), tol);
}

inline DensityMatrix diagonal_state(const ClassicalDistribution& p) {
  return DensityMatrix(ComplexMatrix::diagonal(p.probs()));
}

/// Hilbert–Schmidt-type state GG†/tr(GG†), G an n×rank complex Gaussian matrix.
inline DensityMatrix random_density(std::size_t n, std::size_t rank, Rng& rng) {
  if (n == 0 || rank < 1 || rank > n) {
    throw Error(ErrorKind::BadRank, "rank " + std::to_string(rank) + " outside [1, " + std::to_string(n) + "]");
  }
  ComplexMatrix g(n, rank);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();

  // Lower triangle only, mirrored, so the result is exactly Hermitian.
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < rank; ++k) acc += g(i, k) * std::conj(g(j, k));
      if (i == j) acc = acc.real();
      m(i, j) = acc;
      m(j, i) = std::conj(acc);
    }
  const double tr = m.trace().real();
  return DensityMatrix(m * Complex(1.0 / tr));
}

inline DensityMatrix random_density(std::size_t n, std::size_t rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(n, rank, rng);
}

/// Probability vector drawn as the normalized spectrum of a Hilbert–Schmidt state.
inline ClassicalDistribution random_distribution(std::size_t n, Rng& rng) {
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) {
    const Complex z = rng.complex_normal();
    x = std::norm(z);
    total += x;
  }
  for (auto& x : p) x /= total;
  return ClassicalDistribution(std::move(p));
}

/// Kraus blocks of a Haar-random isometry Cⁿ → C^{kn}.
inline QuantumChannel random_channel(std::size_t n, std::size_t k, Rng& rng) {
  if (n == 0 || k == 0) {
    throw Error(ErrorKind::BadRank, "random_channel needs n ≥ 1 and k ≥ 1");
  }
  const std::size_t rows = k * n;
  std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j][i] = rng.complex_normal();

  // Modified Gram–Schmidt, two passes. A positive-diagonal QR of a Gaussian
  // matrix has a Haar-distributed Q.
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t l = 0; l < j; ++l) {
        Complex dot = 0.0;
        for (std::size_t i = 0; i < rows; ++i) dot += std::conj(cols[l][i]) * cols[j][i];
        for (std::size_t i = 0; i < rows; ++i) cols[j][i] -= dot * cols[l][i];
      }
    }
    double nrm = 0.0;
    for (const auto& z : cols[j]) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (auto& z : cols[j]) z /= nrm;
  }

  std::vector<ComplexMatrix> kraus;
  kraus.reserve(k);
  for (std::size_t b = 0; b < k; ++b) {
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = cols[j][b * n + i];
    kraus.push_back(std::move(a));
  }
  return QuantumChannel(std::move(kraus));
}

inline QuantumChannel random_channel(std::size_t n, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(n, k, rng);
}

/// (1−δ)σ + δI/n, for experiments that need an invertible reference state.
inline DensityMatrix regularize(const DensityMatrix& sigma, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "regularize: δ must lie in [0, 1]");
  }
  const std::size_t n = sigma.dim();
  return DensityMatrix(sigma.mat() * Complex(1.0 - delta) +
                       ComplexMatrix::identity(n) * Complex(delta / static_cast<double>(n)));
}

namespace detail {

// Picks one of ±X deterministically so that |X| and |−X| come from the same
// floating-point input.
inline ComplexMatrix sign_canonical(ComplexMatrix x) {
  for (const auto& z : x.data()) {
    if (z.real() != 0.0) {
      if (z.real() < 0.0) x *= -1.0;
      return x;
    }
    if (z.imag() != 0.0) {
      if (z.imag() < 0.0) x *= -1.0;
      return x;
    }
  }
  return x;
}

}  // namespace detail

/// |ρ − σ| ≤ ρ + σ in the Loewner order.
inline bool satisfies_abs_condition(const DensityMatrix& rho, const DensityMatrix& sigma, double tol = 1e-9) {
  require_same_dim(rho, sigma, "satisfies_abs_condition");
  const ComplexMatrix diff_abs = abs_hermitian(detail::sign_canonical(rho.mat() - sigma.mat()));
  return loewner_geq(rho.mat() + sigma.mat(), diff_abs, tol);
}

}  // namespace qfdiv
