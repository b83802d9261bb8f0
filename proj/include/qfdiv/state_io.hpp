#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "qfdiv/error.hpp"
#include "qfdiv/states.hpp"

// Plain-text state format:
//   line 1      dimension n
//   lines 2..n+1  n whitespace-separated entries, each "re,im"
// Entries are written with 17 significant digits, which round-trips doubles.

namespace qfdiv {

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_double(std::string_view text, std::size_t line, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ": bad " + what + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

inline void write_state(std::ostream& os, const DensityMatrix& rho) {
  const std::size_t n = rho.dim();
  os << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = rho.mat()(i, j);
      os << (j ? " " : "") << detail::format_double(z.real()) << ',' << detail::format_double(z.imag());
    }
    os << '\n';
  }
}

/// Parses and validates a state. ParseError messages carry the 1-based line
/// number; invariant failures surface as InvariantViolation naming the invariant.
inline DensityMatrix read_state(std::istream& is, double tol = kStateTol) {
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) {
    throw Error(ErrorKind::ParseError, "line 1: missing dimension");
  }
  std::istringstream header(line);
  long long n_signed = 0;
  std::string rest;
  if (!(header >> n_signed) || (header >> rest) || n_signed < 1) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected a positive dimension");
  }
  const auto n = static_cast<std::size_t>(n_signed);

  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_line()) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(lineno + 1) + ": expected " + std::to_string(n) + " matrix rows");
    }
    std::istringstream row(line);
    std::string token;
    std::size_t j = 0;
    while (row >> token) {
      if (j == n) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": more than " + std::to_string(n) + " entries");
      }
      const auto comma = token.find(',');
      if (comma == std::string::npos) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": entry '" + token + "' is not re,im");
      }
      const std::string_view tv(token);
      m(i, j++) = Complex(detail::parse_double(tv.substr(0, comma), lineno, "real part"),
                          detail::parse_double(tv.substr(comma + 1), lineno, "imaginary part"));
    }
    if (j != n) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected " + std::to_string(n) +
                                             " entries, got " + std::to_string(j));
    }
  }
  if (next_line()) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": trailing content");
  }
  return DensityMatrix(m, tol);
}

inline DensityMatrix parse_state_file(const std::string& path, double tol = kStateTol) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::ParseError, "cannot open state file '" + path + "'");
  }
  return read_state(in, tol);
}

inline void write_state_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::ParseError, "cannot write state file '" + path + "'");
  }
  write_state(out, rho);
}

}  // namespace qfdiv
