#pragma once

#include "claims.hpp"
#include "complex.hpp"
#include "permutation.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace branchcov {

/// A finite-degree branched cover of the plane: ordered branch points and one
/// monodromy permutation per point. The list order is the order used for the
/// loop around infinity; generated specs use the canonical planar order.
struct BranchedCoverSpec {
  std::size_t degree = 1;
  std::vector<Complex> branch_points;
  std::vector<Permutation> monodromy;

  friend bool operator==(const BranchedCoverSpec &, const BranchedCoverSpec &) = default;
};

/// The curve z2^q = prod (z1 - w) over the listed zeros.
struct SuperellipticSpec {
  int exponent = 2;
  std::vector<Complex> zeros;

  friend bool operator==(const SuperellipticSpec &, const SuperellipticSpec &) = default;
};

struct ComponentInvariants {
  std::vector<Sheet> sheets;
  std::size_t degree = 0;
  std::size_t ends = 0;
  /// Euler characteristic of the compactified component.
  long euler_characteristic = 0;
  /// Genus of the compactified component.
  long genus = 0;

  /// Euler characteristic of the affine surface (compactification minus its ends).
  long affine_euler_characteristic() const {
    return euler_characteristic - static_cast<long>(ends);
  }

  friend bool operator==(const ComponentInvariants &, const ComponentInvariants &) = default;
};

struct CoverInvariants {
  std::vector<ComponentInvariants> components;

  std::size_t component_count() const { return components.size(); }
  std::size_t total_ends() const;
};

/// Returns `spec` unchanged when it is valid; throws SpecError naming the
/// offending index otherwise.
const BranchedCoverSpec &validate(const BranchedCoverSpec &spec);

/// Product of the monodromy permutations in list order.
Permutation infinity_monodromy(const BranchedCoverSpec &spec);

CoverInvariants cover_invariants(const BranchedCoverSpec &spec);

/// Invariants of the cover whose local monodromies are `local` (identity
/// entries allowed) and whose loop around infinity is `infinity`, restricted
/// to each orbit of the group generated by `local`. Shared with the fiber
/// product code, where the action lives on the pair grid.
CoverInvariants invariants_of_action(std::span<const Permutation> local,
                                     const Permutation &infinity,
                                     std::size_t degree);

/// Invariants of one invariant sheet set.
ComponentInvariants component_invariants(std::span<const Permutation> local,
                                         const Permutation &infinity,
                                         std::span<const Sheet> sheets);

BranchedCoverSpec superelliptic_to_cover(const SuperellipticSpec &spec);

/// Sorts branch points (and their permutations) into canonical planar order.
BranchedCoverSpec canonicalized(BranchedCoverSpec spec);

bool is_connected(const BranchedCoverSpec &spec);

/// For z2^q = f(z1) with 2k zeros: q ends and genus k - 1. Asserted at q = 2;
/// for q > 2 a failure is reported as a paper-claim mismatch.
ClaimCheck superelliptic_claim_check(const SuperellipticSpec &spec);

inline constexpr const char *kSuperellipticEndsGenus = "superelliptic-ends-genus";

} // namespace branchcov
