#include "../oracles.hpp"

#include "branchcov/covers.hpp"
#include "branchcov/error.hpp"
#include "branchcov/random_models.hpp"

#include <doctest.h>

#include <algorithm>

using namespace branchcov;

namespace {

Permutation P(std::vector<Sheet> images) { return Permutation(std::move(images)); }

std::vector<oracle::Images> images_of(const BranchedCoverSpec &c) {
  std::vector<oracle::Images> out;
  for (const auto &p : c.monodromy)
    out.push_back(p.images());
  return out;
}

BranchedCoverSpec hyperelliptic(std::vector<Complex> zeros) {
  return superelliptic_to_cover({2, std::move(zeros)});
}

} // namespace

TEST_CASE("permutation basics") {
  CHECK_THROWS_WITH_AS(P({0, 0, 1}), doctest::Contains("not a bijection"), SpecError);
  const Permutation a = P({1, 2, 0}), b = P({1, 0, 2});
  CHECK(a.then(b).images() == oracle::compose(a.images(), b.images()));
  CHECK(a.then(a.inverse()).is_identity());
  CHECK(a.to_string() == "(0 1 2)");
  CHECK(P({0, 2, 1, 3}).to_string() == "(0)(1 2)(3)");
  CHECK(Permutation::from_cycles(4, {{3, 1}}) == P({0, 3, 2, 1}));
  CHECK(P({2, 0, 1}).cycles() == std::vector<Cycle>{{0, 2, 1}});
}

TEST_CASE("orbits agree with breadth-first enumeration") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    std::vector<Permutation> gens;
    std::vector<oracle::Images> raw;
    for (std::size_t k = 0, g = rng() % 4; k < g; ++k) {
      gens.push_back(random_permutation(rng, n));
      raw.push_back(gens.back().images());
    }
    const auto got = orbits(gens, n);
    CHECK(got == oracle::bfs_orbits(raw, n));
    std::shuffle(gens.begin(), gens.end(), rng);
    CHECK(orbits(gens, n) == got);
  }
}

TEST_CASE("validate reports offending index") {
  BranchedCoverSpec c{2, {{0, 0}}, {P({1, 0})}};
  CHECK_NOTHROW(validate(c));
  c.monodromy[0] = Permutation::identity(2);
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("identity monodromy"), SpecError);
  CHECK_THROWS_WITH(validate(c), doctest::Contains("index 0"));
  BranchedCoverSpec dup{2, {{0, 0}, {1, 0}, {0, 0}}, {P({1, 0}), P({1, 0}), P({1, 0})}};
  CHECK_THROWS_WITH(validate(dup), doctest::Contains("duplicate branch point at index 2"));
  BranchedCoverSpec wrong{3, {{0, 0}}, {P({1, 0})}};
  CHECK_THROWS_AS(validate(wrong), SpecError);
}

TEST_CASE("infinity monodromy examples") {
  CHECK(infinity_monodromy({2, {{0, 0}, {1, 0}}, {P({1, 0}), P({1, 0})}}).is_identity());
  CHECK(infinity_monodromy({2, {{0, 0}}, {P({1, 0})}}) == P({1, 0}));
  // (0 1 2) twice is (0 2 1).
  CHECK(infinity_monodromy({3, {{0, 0}, {1, 0}}, {P({1, 2, 0}), P({1, 2, 0})}}) ==
        P({2, 0, 1}));
}

TEST_CASE("superelliptic invariants") {
  SUBCASE("q = 2, four zeros: torus with two ends") {
    const auto inv = cover_invariants(hyperelliptic({{0, 0}, {1, 0}, {2, 0}, {3, 0}}));
    REQUIRE(inv.component_count() == 1);
    CHECK(inv.components[0].ends == 2);
    CHECK(inv.components[0].genus == 1);
  }
  SUBCASE("q = 2, two zeros: cylinder") {
    const auto inv = cover_invariants(hyperelliptic({{0, 0}, {1, 0}}));
    CHECK(inv.components[0].ends == 2);
    CHECK(inv.components[0].genus == 0);
  }
  SUBCASE("q = 3, three zeros") {
    // chi = 3(2 - 4) + (1 + 1 + 1 + 3) = 0.
    const auto inv = cover_invariants(superelliptic_to_cover({3, {{0, 0}, {1, 0}, {2, 0}}}));
    CHECK(inv.components[0].euler_characteristic == 0);
    CHECK(inv.components[0].ends == 3);
    CHECK(inv.components[0].genus == 1);
  }
  SUBCASE("q = 2, 2k zeros for k = 1..10") {
    for (int k = 1; k <= 10; ++k) {
      std::vector<Complex> zeros;
      for (int i = 0; i < 2 * k; ++i)
        zeros.push_back({static_cast<double>(i), 0.0});
      const auto inv = cover_invariants(hyperelliptic(zeros));
      CHECK(inv.components[0].ends == 2);
      CHECK(inv.components[0].genus == k - 1);
    }
  }
  SUBCASE("general q reports the gcd, not q") {
    const auto c = superelliptic_to_cover({4, {{0, 0}, {1, 0}}});
    const auto inv = cover_invariants(c);
    CHECK(inv.total_ends() == std::gcd(4, 2));
    CHECK(superelliptic_claim_check({4, {{0, 0}, {1, 0}}}).verdict ==
          Verdict::PaperClaimMismatch);
    CHECK(superelliptic_claim_check({2, {{0, 0}, {1, 0}}}).verdict == Verdict::Confirmed);
    CHECK(superelliptic_claim_check({2, {{0, 0}}}).verdict == Verdict::HypothesesNotMet);
  }
}

TEST_CASE("superelliptic construction") {
  const auto c = superelliptic_to_cover({4, {{0, 1}, {1, 0}}});
  CHECK(c.degree == 4);
  CHECK(c.branch_points == std::vector<Complex>{{0, 1}, {1, 0}});
  CHECK(c.monodromy == std::vector<Permutation>(2, P({1, 2, 3, 0})));
  CHECK_THROWS_WITH(superelliptic_to_cover({2, {{0, 0}, {0, 0}}}),
                    doctest::Contains("duplicate"));
  CHECK_THROWS_AS(superelliptic_to_cover({1, {{0, 0}}}), SpecError);
}

TEST_CASE("cover invariants match the lifted cell complex") {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const std::size_t r = rng() % 5;
    BranchedCoverSpec c;
    c.degree = n;
    c.branch_points = random_distinct_points(rng, n == 1 ? 0 : r, 2.0);
    std::sort(c.branch_points.begin(), c.branch_points.end(), planar_less);
    for (std::size_t k = 0; k < c.branch_points.size(); ++k)
      c.monodromy.push_back(random_nonidentity_permutation(rng, n));
    const auto inv = cover_invariants(c);
    auto expected = oracle::cell_complex(n, images_of(c));
    REQUIRE(inv.component_count() == expected.size());
    // Both lists are ordered by smallest sheet.
    for (std::size_t k = 0; k < expected.size(); ++k) {
      CHECK(inv.components[k].degree == expected[k].degree);
      CHECK(inv.components[k].euler_characteristic == expected[k].chi);
      CHECK(inv.components[k].ends == expected[k].ends);
      CHECK(inv.components[k].genus == (2 - expected[k].chi) / 2);
    }
  }
}

TEST_CASE("ends are invariant under relabeling sheets") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    auto pts = random_distinct_points(rng, 1 + rng() % 4, 2.0);
    const auto c = random_connected_cover(rng, n, pts);
    const Permutation relabel = random_permutation(rng, n);
    BranchedCoverSpec d = c;
    for (auto &m : d.monodromy)
      m = m.conjugated_by(relabel);
    CHECK(cover_invariants(d).total_ends() == cover_invariants(c).total_ends());
    CHECK(cover_invariants(d).components[0].genus == cover_invariants(c).components[0].genus);
  }
}
