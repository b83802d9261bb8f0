#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfdiv/error.hpp"

namespace qfdiv {

using Complex = std::complex<double>;

/// Default Hermiticity tolerance on ‖A − A†‖_max.
inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues of intended-PSD inputs in [−kClampTol, 0) are rounded to zero.
inline constexpr double kClampTol = 1e-8;

/// Dense row-major complex matrix. Square in almost every use; Kraus blocks and
/// isometries are the rectangular exceptions.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  explicit ComplexMatrix(std::size_t n) : ComplexMatrix(n, n) {}

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw Error(ErrorKind::DimensionMismatch, "ragged initializer list");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  /// |v⟩⟨w|
  static ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w) {
    ComplexMatrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t dim() const noexcept { return rows_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const noexcept { return data_; }

  std::vector<Complex> column(std::size_t j) const {
    std::vector<Complex> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  /// (A + A†)/2 with an exactly real diagonal.
  ComplexMatrix hermitian_part() const {
    require_square("hermitian_part");
    ComplexMatrix m(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      m(i, i) = (*this)(i, i).real();
      for (std::size_t j = i + 1; j < rows_; ++j) {
        const Complex v = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        m(i, j) = v;
        m(j, i) = std::conj(v);
      }
    }
    return m;
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& z : data_) r = std::max(r, std::abs(z));
    return r;
  }

  double frobenius() const {
    double r = 0.0;
    for (const auto& z : data_) r += std::norm(z);
    return std::sqrt(r);
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorKind::DimensionMismatch, "matrix product " + a.shape() + " * " + b.shape());
    }
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  void require_square(const char* where) const {
    if (!is_square() || rows_ == 0) {
      throw Error(ErrorKind::DimensionMismatch, std::string(where) + ": expected a non-empty square matrix, got " + shape());
    }
  }

 private:
  void require_same_shape(const ComplexMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorKind::DimensionMismatch, std::string(op) + " on " + shape() + " and " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline std::ostream& operator<<(std::ostream& os, const ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

inline double hermiticity_defect(const ComplexMatrix& a) {
  a.require_square("hermiticity_defect");
  double r = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) r = std::max(r, std::abs(a(i, j) - std::conj(a(j, i))));
  return r;
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol) {
  return a.is_square() && a.rows() > 0 && hermiticity_defect(a) <= tol;
}

inline void require_hermitian(const ComplexMatrix& a, const char* where, double tol = kHermitianTol) {
  a.require_square(where);
  const double defect = hermiticity_defect(a);
  if (defect > tol) {
    throw Error(ErrorKind::NotHermitian,
                std::string(where) + ": ‖A − A†‖_max = " + std::to_string(defect) + " exceeds tolerance");
  }
}

/// Eigenpairs of a Hermitian matrix. Eigenvalues ascend; column k of `vectors`
/// pairs with eigenvalue k.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;

  std::size_t size() const noexcept { return values.size(); }
  double min() const { return values.front(); }
  double max() const { return values.back(); }
  std::vector<Complex> vector(std::size_t k) const { return vectors.column(k); }
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) r += std::norm(a(i, j));
  return std::sqrt(r);
}

// Zero w(p,q) with the unitary J = diag(1, conj(phase)) · R(c, s) acting on
// coordinates (p, q); w ← J† w J and v ← v J.
inline void jacobi_rotate(ComplexMatrix& w, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = w(p, q);
  const double mag = std::abs(apq);
  // Near the subnormal range apq/|apq| is no longer unit modulus and J would
  // stop being unitary; such an entry is numerically zero anyway.
  if (mag < 1e16 * std::numeric_limits<double>::min()) {
    w(p, q) = 0.0;
    w(q, p) = 0.0;
    return;
  }
  Complex phase = apq / mag;
  phase /= std::abs(phase);
  const double app = w(p, p).real();
  const double aqq = w(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * std::conj(phase);
  const Complex jqq = c * std::conj(phase);

  const std::size_t n = w.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex wkp = w(k, p);
    const Complex wkq = w(k, q);
    w(k, p) = wkp * jpp + wkq * jqp;
    w(k, q) = wkp * jpq + wkq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex wpk = w(p, k);
    const Complex wqk = w(q, k);
    w(p, k) = std::conj(jpp) * wpk + std::conj(jqp) * wqk;
    w(q, k) = std::conj(jpq) * wpk + std::conj(jqq) * wqk;
  }
  w(p, q) = 0.0;
  w(q, p) = 0.0;
  w(p, p) = app - t * mag;
  w(q, q) = aqq + t * mag;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

}  // namespace detail

inline constexpr double kJacobiTol = 1e-12;
inline constexpr int kJacobiSweepCap = 100;

/// Cyclic complex Jacobi eigensolver.
///
/// Sweeps visit (p, q) pairs in row-major order. Iteration stops once the
/// off-diagonal Frobenius norm falls below kJacobiTol · max(1, ‖A‖_F).
/// Each returned eigenvector has its largest-modulus component (first one on
/// ties) made real and positive, so the output is reproducible bit for bit.
inline HermitianEigen hermitian_eig(const ComplexMatrix& a, double tol = kHermitianTol) {
  require_hermitian(a, "hermitian_eig", tol);
  if (!a.all_finite()) {
    throw Error(ErrorKind::DomainError, "hermitian_eig: non-finite entry");
  }
  const std::size_t n = a.rows();
  ComplexMatrix w = a.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto sweep_once = [&] {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(w, v, p, q);
  };
  const double threshold = kJacobiTol * std::max(1.0, a.frobenius());
  int sweep = 0;
  double off = detail::off_diagonal_norm(w);
  while (off > threshold) {
    if (sweep++ == kJacobiSweepCap) {
      throw Error(ErrorKind::NoConvergence, "hermitian_eig: off-diagonal norm above tolerance after sweep cap");
    }
    sweep_once();
    off = detail::off_diagonal_norm(w);
  }
  // The threshold scales with ‖A‖_F, which leaves small eigenvalues of badly
  // conditioned matrices inaccurate. Keep going while sweeps still pay off.
  while (off > 0.0 && sweep++ < kJacobiSweepCap) {
    sweep_once();
    const double next = detail::off_diagonal_norm(w);
    if (next > 0.5 * off) break;
    off = next;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return w(i, i).real() < w(j, j).real(); });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = w(src, src).real();
    std::size_t lead = 0;
    double lead_mag = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(v(i, src));
      if (mag > lead_mag) {
        lead_mag = mag;
        lead = i;
      }
    }
    const Complex fix = std::conj(v(lead, src)) / lead_mag;
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, src) * fix;
    out.vectors(lead, k) = lead_mag;
  }
  return out;
}

/// Σ f(λᵢ)|uᵢ⟩⟨uᵢ| over a precomputed eigendecomposition.
template <typename F>
ComplexMatrix spectral_apply(const HermitianEigen& eig, F&& f) {
  const std::size_t n = eig.size();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex ui = eig.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += ui * std::conj(eig.vectors(j, k));
    }
  }
  return out.hermitian_part();
}

/// Rounds small negative eigenvalues to zero; anything below −kClampTol is an error.
inline std::vector<double> clamp_psd_spectrum(std::vector<double> values, const char* where) {
  for (auto& x : values) {
    if (x < -kClampTol) {
      throw Error(ErrorKind::NegativeSpectrum, std::string(where) + ": eigenvalue " + std::to_string(x) + " is negative");
    }
    if (x < 0.0) x = 0.0;
  }
  return values;
}

/// Psd-clamped eigendecomposition: eigenvalues in [−kClampTol, 0) become 0.
inline HermitianEigen psd_eig(const ComplexMatrix& a, const char* where = "psd_eig") {
  HermitianEigen eig = hermitian_eig(a);
  eig.values = clamp_psd_spectrum(std::move(eig.values), where);
  return eig;
}

/// f(A) for Hermitian PSD A. `f` must be finite on the clamped spectrum.
template <typename F>
ComplexMatrix matrix_function_psd(const ComplexMatrix& a, F&& f) {
  const HermitianEigen eig = psd_eig(a, "matrix_function_psd");
  return spectral_apply(eig, [&](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
      throw Error(ErrorKind::DomainError, "matrix_function_psd: f undefined at eigenvalue " + std::to_string(x));
    }
    return y;
  });
}

inline ComplexMatrix sqrt_psd(const ComplexMatrix& a) {
  return matrix_function_psd(a, [](double x) { return std::sqrt(x); });
}

inline constexpr double kSingularEps = 1e-10;

/// A^{−1/2}; requires λ_min(A) > eps.
inline ComplexMatrix inv_sqrt_psd(const ComplexMatrix& a, double eps = kSingularEps) {
  const HermitianEigen eig = hermitian_eig(a);
  if (eig.min() <= eps) {
    throw Error(ErrorKind::SingularState,
                "inv_sqrt_psd: smallest eigenvalue " + std::to_string(eig.min()) + " is not above " + std::to_string(eps));
  }
  return spectral_apply(eig, [](double x) { return 1.0 / std::sqrt(x); });
}

/// |X| = Σ|λᵢ||uᵢ⟩⟨uᵢ|
inline ComplexMatrix abs_hermitian(const ComplexMatrix& x) {
  return spectral_apply(hermitian_eig(x), [](double v) { return std::abs(v); });
}

inline double trace_norm_hermitian(const ComplexMatrix& x) {
  const HermitianEigen eig = hermitian_eig(x);
  double s = 0.0;
  for (double v : eig.values) s += std::abs(v);
  return s;
}

/// X ≥ Y in the Loewner order, up to tol on λ_min(X − Y).
inline bool loewner_geq(const ComplexMatrix& x, const ComplexMatrix& y, double tol) {
  require_hermitian(x, "loewner_geq");
  require_hermitian(y, "loewner_geq");
  if (x.rows() != y.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "loewner_geq: " + x.shape() + " vs " + y.shape());
  }
  return hermitian_eig((x - y).hermitian_part()).min() >= -tol;
}

}  // namespace qfdiv
