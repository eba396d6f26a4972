#pragma once

#include "complex.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace branchcov {

/// Generator for an infinite zero sequence w_1, w_2, ... with |w_l| -> inf.
struct ZeroRule {
  enum class Kind {
    SymmetricIntegers, // 1, -1, 2, -2, ...
    PositiveIntegers,  // 1, 2, 3, ...
    Arithmetic,        // start + l * step
  };
  Kind kind = Kind::SymmetricIntegers;
  Complex start{0.0, 0.0};
  Complex step{1.0, 0.0};

  /// 1-indexed.
  Complex zero(std::size_t l) const;
  /// Non-decreasing lower bound on |w_m| for every m >= l.
  double modulus_lower_bound(std::size_t l) const;
  /// alpha, beta with |w_l| >= alpha * l - beta.
  double growth_alpha() const;
  double growth_beta() const;

  friend bool operator==(const ZeroRule &, const ZeroRule &) = default;
};

/// Number of terms d(l) of the truncated logarithm in the l-th elementary factor.
struct DegreeSchedule {
  enum class Kind { Index, Constant }; // d(l) = l, or d(l) = value
  Kind kind = Kind::Index;
  int value = 0;

  int operator()(std::size_t l) const {
    return kind == Kind::Index ? static_cast<int>(l) : value;
  }

  friend bool operator==(const DegreeSchedule &, const DegreeSchedule &) = default;
};

/// z^m * prod_{l <= L} (1 - z / w_l) E_l(z), with the zero-free prefactor fixed to 1.
struct WeierstrassProductSpec {
  std::vector<Complex> zeros;   // explicit zeros; empty when `rule` is set
  std::optional<ZeroRule> rule; // infinite sequence, truncated at `truncation`
  bool include_zero_at_origin = false;
  DegreeSchedule schedule;
  std::size_t truncation = 500; // L, used with `rule`
  double target_tolerance = 1e-10;

  /// The retained zeros w_1..w_L.
  std::vector<Complex> truncated_zeros() const;

  friend bool operator==(const WeierstrassProductSpec &, const WeierstrassProductSpec &) = default;
};

struct EvalResult {
  Complex value;
  /// log of the value, imaginary part reduced to (-pi, pi]; -inf real part at a zero.
  Complex log_value;
  /// Bound on |P_L / P - 1|; +inf when not certified.
  double error_bound = 0.0;
  bool certified = true;
  std::size_t terms_used = 0;

  bool within_tolerance(double eps) const { return certified && error_bound <= eps; }
};

/// Throws SpecError for repeated zeros or an origin zero listed twice.
void validate(const WeierstrassProductSpec &spec);

/// exp(sum_{s=1}^{d} (1/s)(z/w)^s); 1 when d == 0.
Complex eval_elementary_factor(const Complex &w, int d, const Complex &z);

EvalResult eval_product(const WeierstrassProductSpec &spec, const Complex &z);

/// m/z + sum_l [1/(z - w_l) + sum_{s=1}^{d(l)} z^{s-1} / w_l^s].
/// Throws NumericalError("pole at a zero of the product").
Complex log_derivative(const WeierstrassProductSpec &spec, const Complex &z);

/// Tail estimate sum_{l > L} |z/w_l|^{d(l)+1} / (1 - |z/w_l|); nullopt outside
/// the regime |z| < |w_l| / 2 for every l > L.
std::optional<double> tail_log_bound(const WeierstrassProductSpec &spec, const Complex &z);

namespace kernels {

/// Sum of log[(1 - z/w_l) E_l(z)] over `zeros` (indices offset by `first_index`).
/// Returns nullopt when z hits a zero exactly.
std::optional<Complex> log_sum_serial(std::span<const Complex> zeros, std::size_t first_index,
                                      const DegreeSchedule &schedule, const Complex &z);

/// Same sum over fixed-size blocks reduced pairwise; bit-identical for any
/// thread count.
std::optional<Complex> log_sum_parallel(std::span<const Complex> zeros,
                                        std::size_t first_index,
                                        const DegreeSchedule &schedule, const Complex &z);

Complex log_derivative_sum_serial(std::span<const Complex> zeros, std::size_t first_index,
                                  const DegreeSchedule &schedule, const Complex &z);
Complex log_derivative_sum_parallel(std::span<const Complex> zeros,
                                    std::size_t first_index,
                                    const DegreeSchedule &schedule, const Complex &z);

inline constexpr std::size_t kBlock = 256;

} // namespace kernels

} // namespace branchcov
