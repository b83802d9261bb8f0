#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qfdiv/error.hpp"

namespace qfdiv {

inline constexpr std::size_t kQuadratureIntervalCap = 100000;

/// Adaptive Simpson on [a, b] with an explicit interval stack.
///
/// An interval is accepted when |S_left + S_right − S_whole| ≤ 15·tol_local,
/// with the Richardson correction added; tol_local halves on each split.
/// Throws QuadratureFailure past kQuadratureIntervalCap subintervals.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::OutOfRange, "adaptive_simpson: tolerance must be positive");
  }
  if (a == b) return 0.0;

  struct Piece {
    double a, b, fa, fm, fb, whole, tol;
  };
  auto simpson = [](double a, double b, double fa, double fm, double fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); };

  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  std::vector<Piece> stack{{a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol}};

  double total = 0.0;
  std::size_t intervals = 0;
  while (!stack.empty()) {
    const Piece p = stack.back();
    stack.pop_back();
    if (++intervals > kQuadratureIntervalCap) {
      throw Error(ErrorKind::QuadratureFailure, "adaptive_simpson: subinterval cap reached");
    }
    const double m = 0.5 * (p.a + p.b);
    const double flm = f(0.5 * (p.a + m));
    const double frm = f(0.5 * (m + p.b));
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double delta = left + right - p.whole;
    if (!std::isfinite(delta)) {
      throw Error(ErrorKind::QuadratureFailure, "adaptive_simpson: non-finite integrand");
    }
    if (std::abs(delta) <= 15.0 * p.tol) {
      total += left + right + delta / 15.0;
    } else {
      stack.push_back({m, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol});
      stack.push_back({p.a, m, p.fa, flm, p.fm, left, 0.5 * p.tol});
    }
  }
  return total;
}

}  // namespace qfdiv
