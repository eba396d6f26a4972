#pragma once

#include <complex>
#include <compare>
#include <string>

namespace branchcov {

using Complex = std::complex<double>;

/// Canonical planar order: increasing real part, ties by increasing imaginary part.
inline bool planar_less(const Complex &a, const Complex &b) {
  if (a.real() != b.real())
    return a.real() < b.real();
  return a.imag() < b.imag();
}

/// Shortest round-trip decimal representation of a double.
std::string format_double(double x);
std::string format_complex(const Complex &z);

} // namespace branchcov
