#pragma once

#include "claims.hpp"
#include "covers.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace branchcov {

/// A cell of the sheet grid {0..n1-1} x {0..n2-1}, stored row-major as
/// `i * n2 + j`.
using Cell = Sheet;

/// Two covers over a common, merged branch list. A point that branches only
/// one cover carries the identity in the other.
struct FiberProductModel {
  BranchedCoverSpec cover1;
  BranchedCoverSpec cover2;
  std::vector<Complex> branch_points; // union, canonical planar order
  std::vector<Permutation> sigma;     // cover1 monodromy per merged point
  std::vector<Permutation> tau;       // cover2 monodromy per merged point
  std::vector<Permutation> diagonal;  // (i, j) -> (sigma(i), tau(j)) on cells

  std::size_t n1() const { return cover1.degree; }
  std::size_t n2() const { return cover2.degree; }
  std::size_t cells() const { return n1() * n2(); }
  Cell cell(Sheet i, Sheet j) const { return i * static_cast<Sheet>(n2()) + j; }
  std::pair<Sheet, Sheet> coords(Cell c) const {
    const auto n = static_cast<Sheet>(n2());
    return {c / n, c % n};
  }

  /// Loop around all merged branch points on the grid.
  Permutation infinity_action() const;
};

/// Diagonal action of a pair of sheet permutations on the n1 x n2 grid.
Permutation pair_action(const Permutation &sigma, const Permutation &tau);

/// Merges the branch lists without checking connectedness. Used where
/// truncations of infinite models may be disconnected.
FiberProductModel merge_covers(const BranchedCoverSpec &c1, const BranchedCoverSpec &c2);

/// Throws SpecError("disconnected cover") when either input is disconnected.
FiberProductModel build_fiber_product(const BranchedCoverSpec &c1,
                                      const BranchedCoverSpec &c2);

/// The local branches of V_{n,m}: orbits of the simultaneous rotation
/// (k1, k2) -> (k1 + 1 mod n, k2 + 1 mod m) on positions of a pair of
/// cycles. There are gcd(n, m) of them, each of size lcm(n, m); each branch
/// is listed in rotation order starting at its smallest position.
std::vector<std::vector<std::pair<int, int>>> local_branches(int n, int m);

struct LocalBranch {
  std::vector<Cell> cells;
  std::size_t component = 0; // index into the normalization components
};

struct SingularPoint {
  std::size_t point_index = 0; // into FiberProductModel::branch_points
  Complex base_point;
  Cycle cycle1;
  Cycle cycle2;
  std::size_t d = 0;
  std::vector<LocalBranch> local_branches;
};

struct NormalizationComponent {
  std::vector<Cell> orbit;
  ComponentInvariants invariants;
};

std::vector<NormalizationComponent> normalization_components(const FiberProductModel &fp);

/// Every singular point over every merged branch point, ordered by branch
/// point and then by the smallest elements of the two cycles.
std::vector<SingularPoint> singular_locus(const FiberProductModel &fp);

/// Reference single-threaded version of singular_locus.
std::vector<SingularPoint> singular_locus_serial(const FiberProductModel &fp);

struct GluingComponent {
  std::vector<std::size_t> components;     // normalization component indices
  std::vector<std::size_t> singular_points; // indices into singular_points
};

struct ConnectednessCheck {
  bool hypotheses_hold = false;
  bool connected = false;
  Verdict verdict = Verdict::HypothesesNotMet;
};

struct FiberTopologyReport {
  std::vector<NormalizationComponent> normalization;
  std::vector<SingularPoint> singular_points;
  std::vector<GluingComponent> gluing_components;
  bool connected = false;
  std::size_t ends_total = 0;
  /// Ends of the glued space counted directly as cycles of the loop around
  /// infinity on the whole grid.
  std::size_t exterior_ends = 0;
  std::vector<ClaimCheck> claim_checks;
};

FiberTopologyReport topology_report(const FiberProductModel &fp);

/// True when every branch point of cover2 is a branch point of cover1 and
/// every fiber-product point over those points is singular.
bool singular_over_second_branch_set(const FiberProductModel &fp);

ConnectednessCheck check_connectedness_theorem(const FiberProductModel &fp);

// Names of the claim checks attached to a FiberTopologyReport.
inline constexpr const char *kComponentBound = "component-bound";
inline constexpr const char *kEndCountIdentity = "end-count-identity";
inline constexpr const char *kConnectedness = "connectedness";
inline constexpr const char *kPuncturedComponents = "punctured-components";
inline constexpr const char *kEndsAsCopies = "ends-as-copies";

} // namespace branchcov
