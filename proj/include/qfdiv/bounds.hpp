#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "qfdiv/divergence.hpp"
#include "qfdiv/error.hpp"
#include "qfdiv/fgen.hpp"
#include "qfdiv/maximal.hpp"
#include "qfdiv/quadrature.hpp"
#include "qfdiv/rng.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

/// One evaluated inequality. `slack` is oriented so that slack ≥ 0 means the
/// bound holds; `condition_met` is true for unconditional bounds.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool condition_met = true;

  bool holds(double tol) const { return !condition_met || slack >= -tol; }
};

inline constexpr double kBoundTol = 1e-8;

// ---------------------------------------------------------------------------
// χ² Pinsker

/// Lower bound on χ² in terms of the trace distance T ∈ [0, 2]:
/// T² on [0, 1], T/(2 − T) on (1, 2].
inline double pinsker_chi2_lower(double t) {
  if (!(t >= 0.0 && t <= 2.0)) {
    throw Error(ErrorKind::OutOfRange, "pinsker_chi2_lower: T = " + std::to_string(t) + " outside [0, 2]");
  }
  return t <= 1.0 ? t * t : t / (2.0 - t);
}

inline BoundReport check_quantum_pinsker_chi2(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double chi2 = quantum_chi2(rho, sigma);
  // T < 2 whenever σ is invertible; the clamp only absorbs rounding.
  const double t = std::min(trace_distance(rho, sigma), 2.0);
  const double lower = pinsker_chi2_lower(t);
  return {lower, chi2, chi2 - lower, true};
}

// ---------------------------------------------------------------------------
// Decoherence

struct DecoherenceBounds {
  double temme;
  double improved;
};

/// Upper bounds on ‖ρ_t − σ‖₁ given χ²(ρ₀‖σ), the spectral gap λ and time t.
/// temme = e^{−λt/2}·√χ²₀; improved switches to 2x/(1+x), x = e^{−λt}χ²₀,
/// while e^{λt} < χ²₀.
inline DecoherenceBounds decoherence_bounds(double chi2_0, double lambda, double t) {
  if (!(chi2_0 >= 0.0) || !(lambda > 0.0) || !(t >= 0.0) || !std::isfinite(chi2_0) || !std::isfinite(lambda) ||
      !std::isfinite(t)) {
    throw Error(ErrorKind::OutOfRange, "decoherence_bounds: need χ²₀ ≥ 0, λ > 0, t ≥ 0");
  }
  const double temme = std::exp(-0.5 * lambda * t) * std::sqrt(chi2_0);
  if (std::exp(lambda * t) < chi2_0) {
    const double x = std::exp(-lambda * t) * chi2_0;
    return {temme, 2.0 * x / (1.0 + x)};
  }
  return {temme, temme};
}

// ---------------------------------------------------------------------------
// Reverse Pinsker (Binette) and ζ₁

namespace detail {

inline void require_extremes(double m, double big_m, const char* where) {
  if (!(m >= 0.0) || !std::isfinite(big_m)) {
    throw Error(ErrorKind::OutOfRange, std::string(where) + ": need m ≥ 0 and finite M");
  }
  if (!(m < 1.0) || !(big_m > 1.0)) {
    throw Error(ErrorKind::DegenerateExtremes,
                std::string(where) + ": need m < 1 < M, got m = " + std::to_string(m) + ", M = " + std::to_string(big_m));
  }
}

}  // namespace detail

/// f(M)/(M − 1) + f(m)/(1 − m)
inline double zeta1_closed(double m, double big_m, const FGenerator& f) {
  detail::require_extremes(m, big_m, "zeta1_closed");
  return f(big_m) / (big_m - 1.0) + f(m) / (1.0 - m);
}

/// (T/2)·(f(m)/(1 − m) + f(M)/(M − 1))
inline double binette_rhs(double m, double big_m, double t, const FGenerator& f) {
  detail::require_extremes(m, big_m, "binette_rhs");
  if (!(t >= 0.0 && t <= 2.0)) {
    throw Error(ErrorKind::OutOfRange, "binette_rhs: T = " + std::to_string(t) + " outside [0, 2]");
  }
  return 0.5 * t * zeta1_closed(m, big_m, f);
}

inline constexpr double kDefaultQuadTol = 1e-8;

/// ∫₁^M (M−γ)/(M−1) f''(γ) dγ + ∫₁^{1/m} (1/m−γ)/(1/m−1) γ⁻³ f''(1/γ) dγ.
/// Integration by parts reduces it to zeta1_closed.
inline double zeta1_integral(double m, double big_m, const FGenerator& f, double quad_tol = kDefaultQuadTol) {
  if (!f.has_second_derivative()) {
    throw Error(ErrorKind::NoSecondDerivative, "zeta1_integral: generator '" + f.name + "' has no second derivative");
  }
  detail::require_extremes(m, big_m, "zeta1_integral");
  if (m == 0.0) {
    throw Error(ErrorKind::OutOfRange, "zeta1_integral: m = 0 puts the upper limit 1/m at infinity");
  }
  const auto& f2 = f.second_derivative;
  const double upper = 1.0 / m;
  const double first =
      adaptive_simpson([&](double g) { return (big_m - g) / (big_m - 1.0) * f2(g); }, 1.0, big_m, quad_tol);
  const double second = adaptive_simpson(
      [&](double g) { return (upper - g) / (upper - 1.0) * f2(1.0 / g) / (g * g * g); }, 1.0, upper, quad_tol);
  return first + second;
}

/// Reverse Pinsker for the maximal f-divergence, valid when |ρ − σ| ≤ ρ + σ.
/// lhs = D_f^max(ρ‖σ); rhs = binette_rhs(m, M, ‖ρ − σ‖₁, f). For ρ = σ both
/// sides are reported as 0.
inline BoundReport check_reverse_pinsker_quantum(const DensityMatrix& rho, const DensityMatrix& sigma,
                                                 const FGenerator& f) {
  const bool condition = satisfies_abs_condition(rho, sigma, 1e-9);
  const double t = trace_distance(rho, sigma);
  if (t < 1e-8) {
    require_invertible(sigma, "check_reverse_pinsker_quantum");
    return {0.0, 0.0, 0.0, condition};
  }
  const Witness w = build_witness(rho, sigma);
  const Extremes ext = extremes_mM(w);
  const double lhs = maximal_f_div(w, f);
  const double rhs = binette_rhs(ext.m, ext.M, std::min(t, 2.0), f);
  return {lhs, rhs, rhs - lhs, condition};
}

/// Classical reverse Pinsker right-hand side for a pair of distributions.
inline double classical_binette_rhs(const ClassicalDistribution& p, const ClassicalDistribution& q,
                                    const FGenerator& f) {
  double m = INFINITY;
  double big_m = 0.0;
  double t = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] <= 0.0) {
      throw Error(ErrorKind::ZeroReference, "classical_binette_rhs: q has a zero entry");
    }
    m = std::min(m, p[i] / q[i]);
    big_m = std::max(big_m, p[i] / q[i]);
    t += std::abs(p[i] - q[i]);
  }
  return binette_rhs(m, big_m, std::min(t, 2.0), f);
}

/// Best ratio D_f(p‖q) / binette_rhs found among seeded random ternary pairs
/// whose likelihood ratios are (m, x, M), x uniform in [m, M].
inline double binette_sharpness_search(double m, double big_m, const FGenerator& f, int samples, std::uint64_t seed) {
  detail::require_extremes(m, big_m, "binette_sharpness_search");
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    Rng rng = sample_stream(seed, static_cast<std::uint64_t>(k));
    const double x = m + (big_m - m) * rng.uniform();
    const double q1 = rng.uniform_open_low();
    // q2 + q3 = 1 − q1 and x q2 + M q3 = 1 − m q1.
    const double rest = 1.0 - q1;
    const double target = 1.0 - m * q1;
    if (big_m == x) continue;
    const double q3 = (target - x * rest) / (big_m - x);
    const double q2 = rest - q3;
    if (q2 < 0.0 || q3 <= 0.0) continue;
    const double total = q1 + q2 + q3;
    std::vector<double> q{q1 / total, q2 / total, q3 / total};
    std::vector<double> p{m * q[0], x * q[1], big_m * q[2]};
    const double psum = p[0] + p[1] + p[2];
    for (auto& v : p) v /= psum;
    const ClassicalDistribution pd(std::move(p));
    const ClassicalDistribution qd(std::move(q));
    const double rhs = classical_binette_rhs(pd, qd, f);
    if (rhs <= 0.0) continue;
    best = std::max(best, classical_f_div(pd, qd, f) / rhs);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Audenaert–Eisert

/// (β + T/2) ln(1 + T/(2β)) − α ln(1 + T/(2α)) with T = ‖ρ − σ‖₁,
/// α = λ_min(ρ), β = λ_min(σ); the α term is dropped when α < 10⁻¹².
inline double audenaert_eisert_bound(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "audenaert_eisert_bound");
  const double beta = sigma.min_eigenvalue();
  if (beta <= kSingularEps) {
    throw Error(ErrorKind::SingularState, "audenaert_eisert_bound: λ_min(σ) = " + std::to_string(beta));
  }
  const double alpha = std::max(rho.min_eigenvalue(), 0.0);
  const double half_t = 0.5 * trace_distance(rho, sigma);
  double value = (beta + half_t) * std::log1p(half_t / beta);
  if (alpha >= 1e-12) value -= alpha * std::log1p(half_t / alpha);
  return value;
}

}  // namespace qfdiv
