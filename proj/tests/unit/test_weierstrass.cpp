#include "../oracles.hpp"

#include "branchcov/error.hpp"
#include "branchcov/weierstrass.hpp"

#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <numbers>

using namespace branchcov;

namespace {

WeierstrassProductSpec sine_spec(std::size_t pairs) {
  WeierstrassProductSpec s;
  s.rule = ZeroRule{};
  s.truncation = 2 * pairs;
  s.include_zero_at_origin = true;
  s.schedule = {DegreeSchedule::Kind::Constant, 1};
  return s;
}

WeierstrassProductSpec finite(std::vector<Complex> zeros, DegreeSchedule sched = {}) {
  WeierstrassProductSpec s;
  s.zeros = std::move(zeros);
  s.schedule = sched;
  return s;
}

} // namespace

TEST_CASE("zero rules") {
  const ZeroRule sym{};
  CHECK(sym.zero(1) == Complex{1, 0});
  CHECK(sym.zero(2) == Complex{-1, 0});
  CHECK(sym.zero(5) == Complex{3, 0});
  const ZeroRule ar{ZeroRule::Kind::Arithmetic, {0.5, 0}, {0, 2}};
  CHECK(ar.zero(2) == Complex{0.5, 4});
  CHECK(sine_spec(200).truncated_zeros().size() == 400);
}

TEST_CASE("elementary factors") {
  CHECK(eval_elementary_factor({3, 1}, 0, {0.7, -2}) == Complex{1, 0});
  CHECK(std::abs(eval_elementary_factor({1, 0}, 1, {0.5, 0}) - std::exp(0.5)) < 1e-15);
  CHECK(std::abs(eval_elementary_factor({2, 0}, 2, {1, 0}) - std::exp(0.625)) < 1e-15);
  CHECK(std::abs(std::exp(0.625) - 1.868246) < 1e-6);
}

TEST_CASE("sine product at z = 0.5") {
  const auto r = eval_product(sine_spec(200), {0.5, 0});
  CHECK(std::abs(r.value - 1.0 / std::numbers::pi) < 1e-3);
  CHECK(r.certified);
  const double observed = std::abs(r.value / oracle::sin_oracle({0.5, 0}) - 1.0);
  CHECK(observed <= r.error_bound);
}

TEST_CASE("exact zeros") {
  const auto s = sine_spec(200);
  CHECK(eval_product(s, {0, 0}).value == Complex{0, 0});
  CHECK(eval_product(s, {1, 0}).value == Complex{0, 0});
  CHECK(eval_product(s, {-37, 0}).value == Complex{0, 0});
  const auto f = finite({{1, 2}, {-0.5, 0.25}});
  CHECK(eval_product(f, {1, 2}).value == Complex{0, 0});
}

TEST_CASE("simple zeros wind once") {
  const auto f = finite({{1, 0}, {0, 1}, {-2, 0.5}}, {DegreeSchedule::Kind::Constant, 1});
  for (const Complex &w : f.zeros) {
    double winding = 0;
    Complex prev = eval_product(f, w + 1e-3).value;
    for (int k = 1; k <= 256; ++k) {
      const Complex cur =
          eval_product(f, w + std::polar(1e-3, 2 * std::numbers::pi * k / 256)).value;
      winding += std::arg(cur / prev);
      prev = cur;
    }
    CHECK(std::round(winding / (2 * std::numbers::pi)) == 1);
  }
}

TEST_CASE("error bound shrinks with truncation") {
  for (const Complex z : {Complex{0.5, 0}, Complex{1.5, 1}, Complex{-3, 2}}) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t pairs : {50, 100, 200, 400}) {
      const auto r = eval_product(sine_spec(pairs), z);
      REQUIRE(r.certified);
      CHECK(r.error_bound < prev);
      prev = r.error_bound;
    }
  }
}

TEST_CASE("sine product stays within ten times the certified bound on |z| <= 5") {
  const auto s = sine_spec(200);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const Complex z = std::polar(0.5 * (i + 1), 2 * std::numbers::pi * j / 10 + 0.1);
      const auto r = eval_product(s, z);
      REQUIRE(r.certified);
      const Complex exact = oracle::sin_oracle(z);
      const double scale = std::max(std::abs(exact), std::abs(r.value));
      CHECK(std::abs(r.value - exact) <= 10 * r.error_bound * scale + 1e-12);
    }
}

TEST_CASE("bound regime") {
  auto s = sine_spec(4);
  CHECK_FALSE(eval_product(s, {3, 0}).certified);
  CHECK(std::isinf(eval_product(s, {3, 0}).error_bound));
  CHECK(eval_product(s, {1.2, 0}).certified);
  CHECK(eval_product(finite({{1, 0}}), {50, 0}).error_bound == 0);
}

TEST_CASE("log derivative") {
  CHECK(std::abs(log_derivative(finite({{1, 0}}, {DegreeSchedule::Kind::Constant, 0}), {3, 0}) -
                 0.5) < 1e-15);
  CHECK_THROWS_AS(log_derivative(finite({{1, 0}}), {1, 0}), NumericalError);

  // Sine product: pi cot(pi z) minus the truncated tail, which is about
  // 2 z / L for L pairs; the tail estimate is asserted, the closed form is
  // only reached as L grows.
  const auto s = sine_spec(200);
  const Complex z{0.25, 0};
  const Complex d = log_derivative(s, z);
  double tail = 0;
  for (double l = 201; l < 2e6; ++l)
    tail += 2 * z.real() / (l * l - z.real() * z.real());
  CHECK(std::abs(d - (oracle::cot_oracle(z) + tail)) < 1e-6);
  CHECK(std::abs(d - std::numbers::pi) < 3e-3);
}

TEST_CASE("log derivative matches centered differences") {
  const auto f = finite({{1, 0}, {0, 1}, {-2, 0.5}, {3, -1}});
  const double h = 1e-6;
  for (const Complex z : {Complex{0.3, 0.2}, Complex{-1, -1}, Complex{2, 2}}) {
    const Complex fd =
        (eval_product(f, z + h).log_value - eval_product(f, z - h).log_value) / (2 * h);
    const Complex exact = log_derivative(f, z);
    CHECK(std::abs(fd - exact) <= 1e-5 * std::abs(exact));
  }
}

TEST_CASE("parallel kernels are thread-count stable") {
  auto zeros = sine_spec(3000).truncated_zeros();
  const DegreeSchedule sched{DegreeSchedule::Kind::Constant, 1};
  const Complex z{1.3, 0.4};
  const auto serial = kernels::log_sum_serial(zeros, 1, sched, z);
  omp_set_num_threads(1);
  const auto one = kernels::log_sum_parallel(zeros, 1, sched, z);
  const auto d1 = kernels::log_derivative_sum_parallel(zeros, 1, sched, z);
  omp_set_num_threads(4);
  const auto four = kernels::log_sum_parallel(zeros, 1, sched, z);
  const auto d4 = kernels::log_derivative_sum_parallel(zeros, 1, sched, z);
  REQUIRE(one);
  REQUIRE(four);
  CHECK(*one == *four);
  CHECK(d1 == d4);
  CHECK(std::abs(*serial - *one) < 1e-12);
  CHECK(std::abs(kernels::log_derivative_sum_serial(zeros, 1, sched, z) - d1) < 1e-12);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(finite({{1, 0}, {1, 0}})), SpecError);
  auto s = finite({{0, 0}});
  s.include_zero_at_origin = true;
  CHECK_THROWS_AS(validate(s), SpecError);
}
