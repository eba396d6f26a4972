#include "branchcov/continuation.hpp"
#include "branchcov/error.hpp"
#include "branchcov/random_models.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace branchcov;

using Zeros = std::vector<Complex>;

namespace {

std::vector<Complex> circle(Complex center, double radius, std::size_t n, double phase = 0) {
  std::vector<Complex> pts;
  for (std::size_t k = 0; k <= n; ++k)
    pts.push_back(center + std::polar(radius, phase + 2 * std::numbers::pi * double(k) / double(n)));
  return pts;
}

CurvePair hyperelliptic_pair(std::vector<Complex> f, std::vector<Complex> g) {
  return {make_curve(2, f), make_curve(2, g)};
}

} // namespace

TEST_CASE("ordered roots") {
  const auto r = ordered_roots({1, 0}, 4);
  REQUIRE(r.size() == 4);
  CHECK(std::abs(r[0] - Complex{0, -1}) < 1e-15);
  CHECK(std::abs(r[1] - Complex{1, 0}) < 1e-15);
  CHECK(std::abs(r[2] - Complex{0, 1}) < 1e-15);
  CHECK(std::abs(r[3] - Complex{-1, 0}) < 1e-15);
}

TEST_CASE("lift examples") {
  const auto sqrt_curve = make_curve(2, Zeros{{0, 0}});
  SUBCASE("constant path") {
    const auto l = lift_path(sqrt_curve, {{4, 0}}, {2, 0});
    CHECK(l.end_value() == Complex{2, 0});
  }
  SUBCASE("unit circle swaps the sheets") {
    const auto l = lift_path(sqrt_curve, circle(0, 1, 64), {1, 0});
    CHECK(std::abs(l.end_value() - Complex{-1, 0}) < 1e-10);
    CHECK(l.max_residual <= 1e-10);
    // Every sample agrees with sqrt(|z|) exp(i theta / 2), theta the unwrapped argument.
    double theta = 0;
    Complex prev = l.samples.front().z1;
    for (const auto &s : l.samples) {
      theta += std::arg(s.z1 / prev);
      prev = s.z1;
      CHECK(std::abs(s.z2 - std::polar(std::sqrt(std::abs(s.z1)), theta / 2)) < 1e-9);
    }
  }
  SUBCASE("circle around both zeros of z(z - 1) keeps the sheet") {
    const auto c = make_curve(2, Zeros{{0, 0}, {1, 0}});
    const auto path = circle({0.5, 0}, 2, 64);
    for (const Complex &start : ordered_roots(c.f(path.front()), 2)) {
      const auto l = lift_path(c, path, start);
      CHECK(std::abs(l.end_value() - start) < 1e-9);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_WITH_AS(lift_path(sqrt_curve, {{4, 0}, {5, 0}}, {3, 0}),
                         doctest::Contains("start not on curve"), SpecError);
    CHECK_THROWS_WITH_AS(lift_path(sqrt_curve, {{-1, 0}, {1, 0}}, {0, 1}),
                         doctest::Contains("step underflow"), NumericalError);
  }
}

TEST_CASE("numeric monodromy") {
  CHECK(numeric_monodromy(make_curve(2, Zeros{{0, 0}}), 0, 0.5, 0.5) == Permutation({1, 0}));
  CHECK(numeric_monodromy(make_curve(3, Zeros{{0, 0}}), 0, 0.5, 0.5) ==
        Permutation::standard_cycle(3));
  CHECK_THROWS_WITH(numeric_monodromy(make_curve(2, Zeros{{0, 0}, {1, 0}}), 0, 2, 2),
                    doctest::Contains("not isolating"));
}

TEST_CASE("cross validation") {
  const std::vector<Complex> four{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
  const auto cv = cross_validate_monodromy(make_curve(2, four), {2, four});
  CHECK(cv.passed);
  CHECK(cv.per_point.size() == 4);
  const std::vector<Complex> two{{0, 0}, {0, 2}};
  CHECK(cross_validate_monodromy(make_curve(3, two), {3, two}).passed);

  // Negative control: the numeric curve has one zero moved.
  const auto bad = cross_validate_monodromy(make_curve(2, Zeros{{0, 0}, {1, 0.5}}), {2, {{0, 0}, {1, 0}}});
  CHECK_FALSE(bad.passed);
  CHECK_FALSE(bad.reason.empty());
}

TEST_CASE("homotopy invariance and reversal") {
  const auto c = make_curve(3, Zeros{{0, 0}, {1, 0}, {0, 2}});
  const Complex a{-1, -1}, b{2, 1};
  // Both paths pass below the zero at 1 and to the right of 2i.
  const std::vector<Complex> p1{a, {1, -1}, b};
  const std::vector<Complex> p2{a, {0.5, -2}, {2.5, -1}, b};
  const Complex start = ordered_roots(c.f(a), 3)[1];
  const auto l1 = lift_path(c, p1, start), l2 = lift_path(c, p2, start);
  CHECK(std::abs(l1.end_value() - l2.end_value()) < 1e-8);
  const std::vector<Complex> back(p1.rbegin(), p1.rend());
  CHECK(std::abs(lift_path(c, back, l1.end_value()).end_value() - start) < 1e-8);
}

TEST_CASE("z2 x z2 action") {
  const auto pair = hyperelliptic_pair({{0, 0}, {1, 0}}, {{0, 0}, {2, 0}});
  Rng rng(4);
  const auto triples = random_triples(rng, pair, 50, 2.0);
  for (const auto &x : triples) {
    using enum Involution;
    CHECK(z2z2_action(z2z2_action(x, Alpha1), Alpha1) == x);
    CHECK(z2z2_action(z2z2_action(x, Alpha2), Alpha2) == x);
    CHECK(z2z2_action(z2z2_action(x, Alpha1), Alpha2) ==
          z2z2_action(z2z2_action(x, Alpha2), Alpha1));
    CHECK(on_curve(pair, z2z2_action(x, Alpha1), 1e-10));
  }
  const TriplePoint singular{{2, 0}, std::sqrt(Complex{2, 0}), {0, 0}};
  CHECK(z2z2_action(singular, Involution::Alpha1) == singular);
}

TEST_CASE("quotient and intersection checks") {
  const auto pair = hyperelliptic_pair({{0, 0}, {1, 0}}, {{0, 0}, {2, 0}});
  Rng rng(8);
  const auto triples = random_triples(rng, pair, 100, 2.0);
  const auto q = check_quotient_lemma(pair, triples);
  CHECK(q.passed);
  CHECK(q.max_discrepancy == 0);
  const auto ic = check_double_cover_intersection(pair, triples);
  CHECK(ic.passed);
  CHECK(ic.exactly_one == 100);
  const TriplePoint off{{0.5, 0}, {1, 0}, {1, 0}};
  CHECK_THROWS_AS(check_quotient_lemma(pair, {off}), SpecError);
}
