#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qfdiv/divergence.hpp"
#include "qfdiv/error.hpp"
#include "qfdiv/fgen.hpp"
#include "qfdiv/linalg.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

inline constexpr double kWitnessTol = 1e-9;

/// Classical pair (r, s) and reconstruction channel V realizing the maximal
/// f-divergence of (ρ, σ).
///
/// With σ^{−1/2}ρσ^{−1/2} = Σ λᵢ|uᵢ⟩⟨uᵢ| (λ ascending):
///   sᵢ = ⟨uᵢ|σ|uᵢ⟩,  rᵢ = λᵢ sᵢ,  Aᵢ = σ^{1/2}|uᵢ⟩⟨uᵢ| / √sᵢ,
/// and V(τ) = Σ Aᵢ τ Aᵢ† maps Σ sᵢ|uᵢ⟩⟨uᵢ| to σ and Σ rᵢ|uᵢ⟩⟨uᵢ| to ρ.
/// Classical distributions enter V as states diagonal in the basis {|uᵢ⟩};
/// `embed` builds them.
struct Witness {
  std::vector<double> lambdas;
  ComplexMatrix basis;
  ClassicalDistribution r;
  ClassicalDistribution s;
  QuantumChannel channel;

  std::size_t dim() const noexcept { return lambdas.size(); }

  /// Σ pᵢ|uᵢ⟩⟨uᵢ|
  ComplexMatrix embed_matrix(const ClassicalDistribution& p) const {
    return (basis * ComplexMatrix::diagonal(p.probs()) * basis.adjoint()).hermitian_part();
  }
  DensityMatrix embed(const ClassicalDistribution& p) const { return DensityMatrix(embed_matrix(p), kWitnessTol); }
};

inline Witness build_witness(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "build_witness");
  const HermitianEigen sig = hermitian_eig(sigma.mat());
  if (sig.min() <= kSingularEps) {
    throw Error(ErrorKind::SingularState, "build_witness: λ_min(σ) = " + std::to_string(sig.min()));
  }
  const ComplexMatrix inv_half = spectral_apply(sig, [](double x) { return 1.0 / std::sqrt(x); });
  const ComplexMatrix half = spectral_apply(sig, [](double x) { return std::sqrt(x); });

  const HermitianEigen rel = psd_eig((inv_half * rho.mat() * inv_half).hermitian_part(), "build_witness");
  const std::size_t n = rel.size();

  std::vector<double> s(n);
  std::vector<double> r(n);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<Complex> u = rel.vector(i);
    Complex quad = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) quad += std::conj(u[a]) * sigma.mat()(a, b) * u[b];
    s[i] = quad.real();
    r[i] = rel.values[i] * s[i];
    kraus.push_back(half * ComplexMatrix::outer(u, u) * Complex(1.0 / std::sqrt(s[i])));
  }
  return Witness{rel.values, rel.vectors, ClassicalDistribution(std::move(r), kWitnessTol),
                 ClassicalDistribution(std::move(s), kWitnessTol), QuantumChannel(std::move(kraus), kWitnessTol)};
}

/// D_f^max(ρ‖σ), evaluated as the classical divergence D_f(r‖s) of the witness.
inline double maximal_f_div(const Witness& w, const FGenerator& f) { return classical_f_div(w.r, w.s, f); }

inline double maximal_f_div(const DensityMatrix& rho, const DensityMatrix& sigma, const FGenerator& f) {
  return maximal_f_div(build_witness(rho, sigma), f);
}

/// Tr(σ^{1/2} f(σ^{−1/2}ρσ^{−1/2}) σ^{1/2}) assembled from matrix functions.
/// Used to cross-check the witness route, never as the primary value.
inline double maximal_f_div_trace_form(const DensityMatrix& rho, const DensityMatrix& sigma, const FGenerator& f) {
  const ComplexMatrix half = sqrt_psd(sigma.mat());
  const ComplexMatrix fx = matrix_function_psd(relative_operator(rho, sigma), [&](double x) { return f(x); });
  return (half * fx * half).trace().real();
}

/// Smallest and largest eigenvalue of σ^{−1/2}ρσ^{−1/2}; 0 ≤ m ≤ 1 ≤ M.
struct Extremes {
  double m;
  double M;
};

inline Extremes extremes_mM(const Witness& w) {
  // Σ sᵢλᵢ = 1 forces m ≤ 1 ≤ M; the clamps only absorb rounding.
  return {std::min(w.lambdas.front(), 1.0), std::max(w.lambdas.back(), 1.0)};
}

inline Extremes extremes_mM(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return extremes_mM(build_witness(rho, sigma));
}

struct Residual {
  std::string name;
  double value;
};

struct WitnessReport {
  std::vector<Residual> residuals;
  double divergence = 0.0;

  double max_residual() const {
    double r = 0.0;
    for (const auto& x : residuals) r = std::max(r, x.value);
    return r;
  }
  bool ok(double tol) const { return max_residual() <= tol; }
};

/// Residuals of every identity the witness must satisfy:
/// normalization of r and s, V(diag r) = ρ and V(diag s) = σ in trace norm,
/// Kraus completeness, and D_f(r‖s) against the trace-form evaluation.
/// The last one is relative to max(1, |D|): divergences of badly conditioned
/// pairs reach 10⁵, where an absolute 10⁻⁹ is below double resolution.
inline WitnessReport verify_witness(const DensityMatrix& rho, const DensityMatrix& sigma, const FGenerator& f) {
  const Witness w = build_witness(rho, sigma);
  const std::size_t n = w.dim();

  double sum_r = 0.0;
  double sum_s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum_r += w.r[i];
    sum_s += w.s[i];
  }
  const ComplexMatrix v_r = w.channel.apply(w.embed_matrix(w.r));
  const ComplexMatrix v_s = w.channel.apply(w.embed_matrix(w.s));

  ComplexMatrix completeness(n);
  for (const auto& a : w.channel.kraus()) completeness += a.adjoint() * a;

  const double divergence = maximal_f_div(w, f);
  const double trace_form = maximal_f_div_trace_form(rho, sigma, f);

  WitnessReport report;
  report.divergence = divergence;
  report.residuals = {
      {"sum_r", std::abs(sum_r - 1.0)},
      {"sum_s", std::abs(sum_s - 1.0)},
      {"reconstruct_rho", trace_norm_hermitian((v_r - rho.mat()).hermitian_part())},
      {"reconstruct_sigma", trace_norm_hermitian((v_s - sigma.mat()).hermitian_part())},
      {"completeness", max_abs_diff(completeness, ComplexMatrix::identity(n))},
      {"witness_identity", std::abs(divergence - trace_form) / std::max(1.0, std::abs(trace_form))},
  };
  return report;
}

struct DpiResult {
  double before;
  double after;

  double excess() const { return after - before; }
};

/// D_f^max before and after the channel W. Requires an operator convex f.
inline DpiResult check_dpi_maximal(const DensityMatrix& rho, const DensityMatrix& sigma, const QuantumChannel& w,
                                   const FGenerator& f) {
  if (!f.operator_convex) {
    throw Error(ErrorKind::NotOperatorConvex, "check_dpi_maximal: generator '" + f.name + "' is not flagged operator convex");
  }
  const DensityMatrix rho_out = apply_channel(w, rho);
  const DensityMatrix sigma_out = apply_channel(w, sigma);
  const double before = maximal_f_div(rho, sigma, f);
  const double after = maximal_f_div(rho_out, sigma_out, f);
  return {before, after};
}

struct MaximalityEntry {
  std::string name;
  double standard;
  double maximal;
};

/// Relative entropy, χ² and trace distance next to their maximal counterparts
/// (kl, chi2, tv). Expected: relent ≤ D^max_kl, χ² = D^max_chi2, T ≤ D^max_tv.
struct MaximalityReport {
  MaximalityEntry relative_entropy;
  MaximalityEntry chi2;
  MaximalityEntry trace_distance;

  bool ok(double tol) const {
    return relative_entropy.standard <= relative_entropy.maximal + tol &&
           std::abs(chi2.standard - chi2.maximal) <= tol * std::max(1.0, std::abs(chi2.maximal)) &&
           trace_distance.standard <= trace_distance.maximal + tol;
  }
};

inline MaximalityReport check_maximality(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Witness w = build_witness(rho, sigma);
  return {
      {"relative_entropy", quantum_relative_entropy(rho, sigma), maximal_f_div(w, builtin_generator("kl"))},
      {"chi2", quantum_chi2(rho, sigma), maximal_f_div(w, builtin_generator("chi2"))},
      {"trace_distance", trace_distance(rho, sigma), maximal_f_div(w, builtin_generator("tv"))},
  };
}

}  // namespace qfdiv
