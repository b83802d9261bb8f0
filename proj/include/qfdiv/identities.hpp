#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "qfdiv/error.hpp"
#include "qfdiv/fgen.hpp"
#include "qfdiv/linalg.hpp"
#include "qfdiv/rng.hpp"
#include "qfdiv/states.hpp"

// Numerical checks of trace and operator identities that the maximal
// divergence construction relies on.

namespace qfdiv {

/// Σ cₖ Xᵏ for any square X (Horner's scheme, no Hermiticity required).
inline ComplexMatrix matrix_polynomial(const ComplexMatrix& x, std::span<const double> coeffs) {
  x.require_square("matrix_polynomial");
  const std::size_t n = x.rows();
  ComplexMatrix acc(n);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * x + ComplexMatrix::identity(n) * Complex(*it);
  }
  return acc;
}

inline double polynomial_value(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Relative gap |tr(A f(AB) A) − tr(A f(BA) A)| / max(1, |tr(A f(AB) A)|)
/// for polynomial f.
inline double trace_swap_residual(const ComplexMatrix& a, const ComplexMatrix& b, std::span<const double> coeffs) {
  const Complex lhs = (a * matrix_polynomial(a * b, coeffs) * a).trace();
  const Complex rhs = (a * matrix_polynomial(b * a, coeffs) * a).trace();
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

/// Relative gap |tr(A⁻¹ f(BA)) − tr(B g(AB))| / max(1, |tr(A⁻¹ f(BA))|) for
/// f(x) = x·g(x), g polynomial. A must be positive definite.
inline double trace_inverse_residual(const ComplexMatrix& a, const ComplexMatrix& b, std::span<const double> g_coeffs) {
  const HermitianEigen eig = hermitian_eig(a);
  if (eig.min() <= kSingularEps) {
    throw Error(ErrorKind::SingularState, "trace_inverse_residual: A is not invertible");
  }
  const ComplexMatrix a_inv = spectral_apply(eig, [](double v) { return 1.0 / v; });
  std::vector<double> f_coeffs(g_coeffs.size() + 1, 0.0);
  std::copy(g_coeffs.begin(), g_coeffs.end(), f_coeffs.begin() + 1);
  const Complex lhs = (a_inv * matrix_polynomial(b * a, f_coeffs)).trace();
  const Complex rhs = (b * matrix_polynomial(a * b, g_coeffs)).trace();
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

/// k positive operators Λᵢ with Σ Λᵢ = I: Λᵢ = T^{−1/2} GᵢGᵢ† T^{−1/2}, T = Σ GᵢGᵢ†.
inline std::vector<ComplexMatrix> random_resolution_of_identity(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<ComplexMatrix> parts;
  ComplexMatrix total(n);
  for (std::size_t i = 0; i < k; ++i) {
    ComplexMatrix g(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) g(r, c) = rng.complex_normal();
    ComplexMatrix p = (g * g.adjoint()).hermitian_part();
    total += p;
    parts.push_back(std::move(p));
  }
  const ComplexMatrix s = inv_sqrt_psd(total.hermitian_part());
  for (auto& p : parts) p = (s * p * s).hermitian_part();
  return parts;
}

/// λ_min(Σ f(xᵢ)Λᵢ − f(Σ xᵢΛᵢ)); nonnegative (up to rounding) whenever f is
/// operator convex and {Λᵢ} resolves the identity.
inline double operator_jensen_gap(const FGenerator& f, std::span<const double> xs, std::span<const ComplexMatrix> parts) {
  if (xs.size() != parts.size() || parts.empty()) {
    throw Error(ErrorKind::DimensionMismatch, "operator_jensen_gap: need one operator per scalar");
  }
  const std::size_t n = parts.front().rows();
  ComplexMatrix mixed(n);
  ComplexMatrix averaged(n);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mixed += parts[i] * Complex(xs[i]);
    averaged += parts[i] * Complex(f(xs[i]));
  }
  const ComplexMatrix f_mixed = matrix_function_psd(mixed.hermitian_part(), [&](double v) { return f(v); });
  return hermitian_eig((averaged - f_mixed).hermitian_part()).min();
}

}  // namespace qfdiv
