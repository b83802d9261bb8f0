#pragma once

#include <cmath>

#include "qfdiv/error.hpp"
#include "qfdiv/fgen.hpp"
#include "qfdiv/linalg.hpp"
#include "qfdiv/states.hpp"

// All logarithms are natural (nats).

namespace qfdiv {

/// Σ f(pᵢ/qᵢ) qᵢ. Every qᵢ must be strictly positive.
inline double classical_f_div(const ClassicalDistribution& p, const ClassicalDistribution& q, const FGenerator& f) {
  if (p.size() != q.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "classical_f_div: lengths " + std::to_string(p.size()) + " and " + std::to_string(q.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] <= 0.0) {
      throw Error(ErrorKind::ZeroReference, "classical_f_div: q[" + std::to_string(i) + "] = " + std::to_string(q[i]));
    }
    total += f(p[i] / q[i]) * q[i];
  }
  return total;
}

inline void require_invertible(const DensityMatrix& sigma, const char* where) {
  const double lmin = sigma.min_eigenvalue();
  if (lmin <= kSingularEps) {
    throw Error(ErrorKind::SingularState, std::string(where) + ": λ_min(σ) = " + std::to_string(lmin));
  }
}

/// σ^{−1/2} ρ σ^{−1/2}, Hermitized. Throws SingularState unless λ_min(σ) > 10⁻¹⁰.
inline ComplexMatrix relative_operator(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "relative_operator");
  const ComplexMatrix s = inv_sqrt_psd(sigma.mat());
  return (s * rho.mat() * s).hermitian_part();
}

/// Tr ρ(log ρ − log σ). log ρ acts on the support of ρ only (0·log 0 = 0).
inline double quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "quantum_relative_entropy");
  const HermitianEigen sig = hermitian_eig(sigma.mat());
  if (sig.min() <= kSingularEps) {
    throw Error(ErrorKind::SingularState, "quantum_relative_entropy: λ_min(σ) = " + std::to_string(sig.min()));
  }
  const HermitianEigen r = psd_eig(rho.mat(), "quantum_relative_entropy");
  double neg_entropy = 0.0;
  for (double x : r.values)
    if (x > 0.0) neg_entropy += x * std::log(x);

  const ComplexMatrix log_sigma = spectral_apply(sig, [](double x) { return std::log(x); });
  const double cross = (rho.mat() * log_sigma).trace().real();
  return neg_entropy - cross;
}

/// Tr((σ^{−1/2}ρσ^{−1/2})² σ) − 1 = Tr(ρσ⁻¹ρ) − 1.
inline double quantum_chi2(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const ComplexMatrix x = relative_operator(rho, sigma);
  return (x * x * sigma.mat()).trace().real() - 1.0;
}

/// ‖ρ − σ‖₁, in [0, 2].
inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "trace_distance");
  return trace_norm_hermitian((rho.mat() - sigma.mat()).hermitian_part());
}

/// log λ_max(σ^{−1/2}ρσ^{−1/2})
inline double max_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::log(hermitian_eig(relative_operator(rho, sigma)).max());
}

}  // namespace qfdiv
