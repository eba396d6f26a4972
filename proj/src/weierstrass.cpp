#include "branchcov/weierstrass.hpp"

#include "branchcov/error.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>

namespace branchcov {

Complex ZeroRule::zero(std::size_t l) const {
  switch (kind) {
  case Kind::SymmetricIntegers: {
    const double k = static_cast<double>((l + 1) / 2);
    return {l % 2 == 1 ? k : -k, 0.0};
  }
  case Kind::PositiveIntegers:
    return {static_cast<double>(l), 0.0};
  case Kind::Arithmetic:
    return start + static_cast<double>(l) * step;
  }
  return {};
}

double ZeroRule::growth_alpha() const {
  switch (kind) {
  case Kind::SymmetricIntegers:
    return 0.5;
  case Kind::PositiveIntegers:
    return 1.0;
  case Kind::Arithmetic:
    return std::abs(step);
  }
  return 0.0;
}

double ZeroRule::growth_beta() const {
  return kind == Kind::Arithmetic ? std::abs(start) : 0.0;
}

double ZeroRule::modulus_lower_bound(std::size_t l) const {
  if (kind == Kind::SymmetricIntegers)
    return static_cast<double>((l + 1) / 2);
  return std::max(0.0, growth_alpha() * static_cast<double>(l) - growth_beta());
}

std::vector<Complex> WeierstrassProductSpec::truncated_zeros() const {
  if (!rule)
    return zeros;
  std::vector<Complex> out;
  out.reserve(truncation);
  for (std::size_t l = 1; l <= truncation; ++l)
    out.push_back(rule->zero(l));
  return out;
}

void validate(const WeierstrassProductSpec &spec) {
  if (spec.rule && !spec.zeros.empty())
    throw SpecError("give either explicit zeros or a zero rule, not both");
  if (spec.schedule.kind == DegreeSchedule::Kind::Constant && spec.schedule.value < 0)
    throw SpecError("elementary factor degree must be non-negative");
  if (spec.rule && spec.rule->kind == ZeroRule::Kind::Arithmetic) {
    if (spec.rule->step == Complex(0.0, 0.0))
      throw SpecError("arithmetic zero rule needs a non-zero step");
    const Complex ratio = -spec.rule->start / spec.rule->step;
    if (ratio.imag() == 0.0 && ratio.real() >= 1.0 && std::floor(ratio.real()) == ratio.real())
      throw SpecError("arithmetic zero rule hits the origin at l = " +
                      format_double(ratio.real()));
  }
  auto zs = spec.truncated_zeros();
  for (std::size_t i = 0; i < zs.size(); ++i)
    if (zs[i] == Complex(0.0, 0.0))
      throw SpecError(spec.include_zero_at_origin
                          ? "origin listed as a zero while include_zero_at_origin is set"
                          : "zero at the origin must be given by include_zero_at_origin");
  std::vector<std::size_t> order(zs.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return planar_less(zs[a], zs[b]); });
  for (std::size_t k = 1; k < order.size(); ++k)
    if (zs[order[k]] == zs[order[k - 1]])
      throw SpecError("repeated zero " + format_complex(zs[order[k]]) + " at index " +
                      std::to_string(std::max(order[k], order[k - 1])));
}

Complex eval_elementary_factor(const Complex &w, int d, const Complex &z) {
  const Complex u = z / w;
  Complex acc(0.0, 0.0), power(1.0, 0.0);
  for (int s = 1; s <= d; ++s) {
    power *= u;
    acc += power / static_cast<double>(s);
  }
  return std::exp(acc);
}

namespace kernels {

namespace {

// log[(1 - z/w) E(z)] for one zero; nullopt when z == w.
std::optional<Complex> log_factor(const Complex &w, int d, const Complex &z) {
  const Complex ratio = (w - z) / w;
  if (ratio == Complex(0.0, 0.0))
    return std::nullopt;
  const Complex u = z / w;
  const double au = std::abs(u);
  Complex series(0.0, 0.0), power(1.0, 0.0);
  for (int s = 1; s <= d; ++s) {
    power *= u;
    const Complex term = power / static_cast<double>(s);
    series += term;
    if (au < 0.5 && std::abs(term) < 1e-18 * (1.0 + std::abs(series)))
      break;
  }
  return std::log(ratio) + series;
}

Complex log_derivative_term(const Complex &w, int d, const Complex &z) {
  const Complex u = z / w;
  const double au = std::abs(u);
  Complex series(0.0, 0.0), power = 1.0 / w;
  for (int s = 1; s <= d; ++s) {
    series += power;
    if (au < 0.5 && std::abs(power) < 1e-18 * (1.0 + std::abs(series)))
      break;
    power *= u;
  }
  return 1.0 / (z - w) + series;
}

Complex pairwise_reduce(std::vector<Complex> parts) {
  if (parts.empty())
    return {0.0, 0.0};
  while (parts.size() > 1) {
    std::vector<Complex> next((parts.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = 2 * i + 1 < parts.size() ? parts[2 * i] + parts[2 * i + 1] : parts[2 * i];
    parts = std::move(next);
  }
  return parts.front();
}

} // namespace

std::optional<Complex> log_sum_serial(std::span<const Complex> zeros, std::size_t first_index,
                                      const DegreeSchedule &schedule, const Complex &z) {
  Complex acc(0.0, 0.0);
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    auto term = log_factor(zeros[k], schedule(first_index + k), z);
    if (!term)
      return std::nullopt;
    acc += *term;
  }
  return acc;
}

std::optional<Complex> log_sum_parallel(std::span<const Complex> zeros,
                                        std::size_t first_index,
                                        const DegreeSchedule &schedule, const Complex &z) {
  const std::size_t blocks = (zeros.size() + kBlock - 1) / kBlock;
  std::vector<Complex> parts(blocks);
  std::vector<char> hit(blocks, 0);
#pragma omp parallel for schedule(static) if (blocks > 1)
  for (long b = 0; b < static_cast<long>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(zeros.size(), lo + kBlock);
    auto s = log_sum_serial(zeros.subspan(lo, hi - lo), first_index + lo, schedule, z);
    if (s)
      parts[b] = *s;
    else
      hit[b] = 1;
  }
  if (std::any_of(hit.begin(), hit.end(), [](char c) { return c != 0; }))
    return std::nullopt;
  return pairwise_reduce(std::move(parts));
}

Complex log_derivative_sum_serial(std::span<const Complex> zeros, std::size_t first_index,
                                  const DegreeSchedule &schedule, const Complex &z) {
  Complex acc(0.0, 0.0);
  for (std::size_t k = 0; k < zeros.size(); ++k)
    acc += log_derivative_term(zeros[k], schedule(first_index + k), z);
  return acc;
}

Complex log_derivative_sum_parallel(std::span<const Complex> zeros,
                                    std::size_t first_index,
                                    const DegreeSchedule &schedule, const Complex &z) {
  const std::size_t blocks = (zeros.size() + kBlock - 1) / kBlock;
  std::vector<Complex> parts(blocks);
#pragma omp parallel for schedule(static) if (blocks > 1)
  for (long b = 0; b < static_cast<long>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(zeros.size(), lo + kBlock);
    parts[b] = log_derivative_sum_serial(zeros.subspan(lo, hi - lo), first_index + lo,
                                         schedule, z);
  }
  return pairwise_reduce(std::move(parts));
}

} // namespace kernels

std::optional<double> tail_log_bound(const WeierstrassProductSpec &spec, const Complex &z) {
  if (!spec.rule)
    return 0.0;
  const ZeroRule &rule = *spec.rule;
  const double az = std::abs(z);
  constexpr std::size_t kExplicit = 4096;
  const std::size_t first = spec.truncation + 1;
  const std::size_t last = spec.truncation + kExplicit;

  double sum = 0.0;
  for (std::size_t l = first; l <= last; ++l) {
    const double aw = std::abs(rule.zero(l));
    if (!(az < aw / 2))
      return std::nullopt;
    const double r = az / aw;
    sum += std::pow(r, spec.schedule(l) + 1) / (1.0 - r);
  }

  // Remainder beyond `last`, against |w_l| >= alpha * l - beta.
  const double alpha = rule.growth_alpha(), beta = rule.growth_beta();
  const double base = alpha * static_cast<double>(last) - beta;
  if (!(base > 2 * az))
    return std::nullopt;
  const double r = az / base;
  if (spec.schedule.kind == DegreeSchedule::Kind::Index) {
    sum += std::pow(r, static_cast<double>(last) + 2) / ((1 - r) * (1 - r));
  } else {
    const int p = spec.schedule.value + 1;
    if (p < 2)
      return std::numeric_limits<double>::infinity();
    sum += std::pow(az, p) / ((1 - r) * (p - 1) * alpha * std::pow(base, p - 1));
  }
  return sum;
}

EvalResult eval_product(const WeierstrassProductSpec &spec, const Complex &z) {
  validate(spec);
  const auto zeros = spec.truncated_zeros();
  EvalResult r;
  r.terms_used = zeros.size() + (spec.include_zero_at_origin ? 1 : 0);

  if (auto bound = tail_log_bound(spec, z)) {
    r.error_bound = std::expm1(*bound);
    r.certified = std::isfinite(r.error_bound);
  } else {
    r.error_bound = std::numeric_limits<double>::infinity();
    r.certified = false;
  }

  const double neg_inf = -std::numeric_limits<double>::infinity();
  if (spec.include_zero_at_origin && z == Complex(0.0, 0.0)) {
    r.value = {0.0, 0.0};
    r.log_value = {neg_inf, 0.0};
    return r;
  }
  auto log_sum = kernels::log_sum_parallel(zeros, 1, spec.schedule, z);
  if (!log_sum) {
    r.value = {0.0, 0.0};
    r.log_value = {neg_inf, 0.0};
    return r;
  }
  Complex total = *log_sum;
  if (spec.include_zero_at_origin)
    total += std::log(z);
  if (total.real() > std::log(DBL_MAX))
    throw NumericalError("magnitude overflow (log|f| = " + format_double(total.real()) + ")");
  double arg = std::remainder(total.imag(), 2 * std::numbers::pi);
  if (arg <= -std::numbers::pi)
    arg = std::numbers::pi;
  r.log_value = {total.real(), arg};
  r.value = std::exp(total.real()) * Complex(std::cos(arg), std::sin(arg));
  return r;
}

Complex log_derivative(const WeierstrassProductSpec &spec, const Complex &z) {
  validate(spec);
  const auto zeros = spec.truncated_zeros();
  if ((spec.include_zero_at_origin && z == Complex(0.0, 0.0)) ||
      std::find(zeros.begin(), zeros.end(), z) != zeros.end())
    throw NumericalError("pole at a zero of the product");
  Complex acc = kernels::log_derivative_sum_parallel(zeros, 1, spec.schedule, z);
  if (spec.include_zero_at_origin)
    acc += 1.0 / z;
  return acc;
}

} // namespace branchcov
