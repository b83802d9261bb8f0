#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "qfdiv/error.hpp"

namespace qfdiv {

/// Convex generator f with f(1) = 0.
///
/// `value` is only ever called on (0, ∞); the x → 0⁺ limit is supplied
/// separately as `value_at_zero` and used whenever an argument is exactly 0.
struct FGenerator {
  std::string name;
  std::function<double(double)> value;
  double value_at_zero = 0.0;
  std::function<double(double)> second_derivative;  // empty when f is not C²
  bool operator_convex = false;

  double operator()(double x) const { return x == 0.0 ? value_at_zero : value(x); }
  bool has_second_derivative() const noexcept { return static_cast<bool>(second_derivative); }
};

inline constexpr std::array<double, 5> kConvexityGrid{0.1, 0.5, 1.0, 2.0, 10.0};

/// Validates f(1) = 0, midpoint convexity on a fixed grid, and (when given)
/// agreement of f'' with a central finite difference.
inline FGenerator make_generator(std::string name, std::function<double(double)> value, double value_at_zero,
                                 std::function<double(double)> second_derivative = {},
                                 bool operator_convex = false) {
  if (!value) {
    throw Error(ErrorKind::InvalidGenerator, name + ": missing value function");
  }
  FGenerator f{std::move(name), std::move(value), value_at_zero, std::move(second_derivative), operator_convex};

  if (f.value(1.0) != 0.0) {
    throw Error(ErrorKind::InvalidGenerator, f.name + ": f(1) = " + std::to_string(f.value(1.0)) + ", expected 0");
  }
  if (!std::isfinite(f.value_at_zero)) {
    throw Error(ErrorKind::InvalidGenerator, f.name + ": f(0⁺) must be finite");
  }
  for (double x : kConvexityGrid)
    for (double y : kConvexityGrid) {
      const double mid = f((x + y) / 2.0);
      if (mid > (f(x) + f(y)) / 2.0 + 1e-12) {
        throw Error(ErrorKind::InvalidGenerator, f.name + ": midpoint convexity fails at (" + std::to_string(x) +
                                                     ", " + std::to_string(y) + ")");
      }
    }
  if (f.has_second_derivative()) {
    for (double x : kConvexityGrid) {
      const double h = 1e-4 * x;
      const double fd = (f.value(x + h) - 2.0 * f.value(x) + f.value(x - h)) / (h * h);
      const double exact = f.second_derivative(x);
      if (std::abs(fd - exact) > 1e-5 * std::max(1.0, std::abs(exact))) {
        throw Error(ErrorKind::InvalidGenerator,
                    f.name + ": second derivative disagrees with finite difference at " + std::to_string(x));
      }
    }
  }
  return f;
}

/// kl: x ln x. chi2: x² − 1. tv: |x − 1|.
inline FGenerator builtin_generator(const std::string& name) {
  if (name == "kl") {
    return make_generator(
        "kl", [](double x) { return x * std::log(x); }, 0.0, [](double x) { return 1.0 / x; }, true);
  }
  if (name == "chi2") {
    return make_generator(
        "chi2", [](double x) { return x * x - 1.0; }, -1.0, [](double) { return 2.0; }, true);
  }
  if (name == "tv") {
    return make_generator("tv", [](double x) { return std::abs(x - 1.0); }, 1.0);
  }
  throw Error(ErrorKind::UnknownGenerator, "'" + name + "' (expected kl, chi2 or tv)");
}

inline constexpr std::array<const char*, 3> kBuiltinGenerators{"kl", "chi2", "tv"};

}  // namespace qfdiv
