#include "branchcov/asymptotic.hpp"
#include "branchcov/error.hpp"

#include <doctest.h>

using namespace branchcov;

namespace {

const Permutation swap2({1, 0});

InfiniteCoverModel infinite_hyperelliptic() {
  InfiniteCoverModel m;
  m.degree = 2;
  m.prefix = {2, {{0, 0}}, {swap2}};
  m.tail = {swap2};
  return m;
}

} // namespace

TEST_CASE("infinite model validation") {
  InfiniteCoverModel m = infinite_hyperelliptic();
  m.tail.clear();
  CHECK_THROWS_WITH_AS(validate(m), doctest::Contains("empty tail"), SpecError);
}

TEST_CASE("truncations realize tail points past the prefix") {
  const auto m = infinite_hyperelliptic();
  CHECK(tail_start(m) == 1.0);
  const auto t = truncation(m, 3.5);
  CHECK(t.branch_points == std::vector<Complex>{{0, 0}, {1, 0}, {2, 0}, {3, 0}});
}

TEST_CASE("infinite hyperelliptic surface has one non-planar end") {
  const auto r = ends_of_infinite_cover(infinite_hyperelliptic());
  CHECK(r.ends_count == 1);
  CHECK(r.ends[0].non_planar);
  CHECK(r.connected);
  // Truncation at R + k + 1/2 has k + 2 branch points: genus floor((k + 1) / 2).
  for (std::size_t k = 0; k < r.genus_lower_bounds.size(); ++k)
    CHECK(r.genus_lower_bounds[k] == static_cast<long>((k + 1) / 2));
}

TEST_CASE("planar tail end") {
  // Degree 3 with prefix and tail (0 1): sheet 2 is a planar end.
  InfiniteCoverModel m;
  m.degree = 3;
  m.prefix = {3, {{0, 0}}, {Permutation({1, 0, 2})}};
  m.tail = {Permutation({1, 0, 2})};
  const auto r = ends_of_infinite_cover(m);
  CHECK(r.ends_count == 2);
  CHECK(r.ends[0].orbit == std::vector<Sheet>{0, 1});
  CHECK(r.ends[0].non_planar);
  CHECK(r.ends[1].orbit == std::vector<Sheet>{2});
  CHECK_FALSE(r.ends[1].non_planar);
}

TEST_CASE("fiber products with an infinite factor") {
  InfiniteFiberProductModel m;
  m.f = infinite_hyperelliptic();
  m.f.prefix = {2, {{0, 0}, {1, 0}}, {swap2, swap2}};
  SUBCASE("finite second branch set: q ends") {
    m.g = superelliptic_to_cover({2, {{0, 0}, {1, 0}}});
    const auto r = ends_of_infinite_fiber_product(m);
    CHECK(r.ends_count == 2);
    for (const auto &c : infinite_claim_checks(m))
      CHECK(c.verdict == Verdict::Confirmed);
  }
  SUBCASE("infinite second branch set: one end") {
    m.g = infinite_hyperelliptic();
    const auto r = ends_of_infinite_fiber_product(m);
    CHECK(r.ends_count == 1);
  }
}

TEST_CASE("finite exhaustion trace") {
  const auto c = superelliptic_to_cover({2, {{0, 0}, {1, 0}, {2, 0}, {3, 0}}});
  const auto steps = exhaustion_trace(c, default_radii(0, 5));
  REQUIRE(steps.size() == 5);
  CHECK(steps[0].interior_branch_points == 1);
  CHECK(steps[4].interior_branch_points == 4);
  CHECK(steps[4].exterior_components == 2);
  CHECK(steps[4].interior_genus == 1);
}

TEST_CASE("exhaustion of zeros at 1, 2, 3, ...") {
  InfiniteCoverModel m;
  m.degree = 2;
  m.prefix.degree = 2;
  m.tail = {swap2};
  const auto steps = exhaustion_trace(m, {2.5, 4.5, 6.5});
  REQUIRE(steps.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(steps[k].exterior_components == 1);
    CHECK(steps[k].interior_genus == static_cast<long>(k));
  }
  const auto r = ends_of_infinite_cover(m);
  CHECK(r.ends_count == 1);
  CHECK(r.ends[0].non_planar);
}

TEST_CASE("cubic tail") {
  InfiniteCoverModel m;
  m.degree = 3;
  m.prefix.degree = 3;
  m.tail = {Permutation::standard_cycle(3)};
  const auto r = ends_of_infinite_cover(m);
  CHECK(r.ends_count == 1);
  CHECK(r.ends[0].non_planar);
  long prev = -1;
  for (const auto &s : exhaustion_trace(m, default_radii(tail_start(m), 8))) {
    CHECK(s.interior_genus >= prev);
    prev = s.interior_genus;
  }
}

TEST_CASE("degenerate second factor") {
  InfiniteFiberProductModel m;
  m.f = infinite_hyperelliptic();
  m.g = BranchedCoverSpec{1, {}, {}};
  CHECK(ends_of_infinite_fiber_product(m).ends_count == 1);
}

TEST_CASE("finite traces end at the cover's ends") {
  const auto c = superelliptic_to_cover({3, {{0, 0}, {1, 0}, {0, 1}}});
  const auto steps = exhaustion_trace(c, default_radii(0, 3));
  CHECK(steps.back().exterior_components == cover_invariants(c).total_ends());
}

TEST_CASE("glued truncations of both hyperelliptic models are connected") {
  InfiniteFiberProductModel m;
  m.f = infinite_hyperelliptic();
  m.f.prefix = {2, {{0, 0}, {1, 0}}, {swap2, swap2}};
  for (int finite = 0; finite < 2; ++finite) {
    if (finite)
      m.g = superelliptic_to_cover({2, {{0, 0}, {1, 0}}});
    else
      m.g = m.f;
    for (const auto &s : exhaustion_trace(m, default_radii(tail_start(m), 5)))
      CHECK(s.interior_connected);
  }
}
