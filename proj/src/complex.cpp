#include "branchcov/complex.hpp"

#include <charconv>
#include <cmath>

namespace branchcov {

std::string format_double(double x) {
  if (x == 0.0)
    return "0"; // folds -0
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string format_complex(const Complex &z) {
  return "[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]";
}

} // namespace branchcov
