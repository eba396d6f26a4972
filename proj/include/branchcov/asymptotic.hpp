#pragma once

#include "claims.hpp"
#include "covers.hpp"
#include "fiberprod.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace branchcov {

/// A cover with infinitely many branch points: an explicit prefix plus tail
/// generators that recur outside every disc. Tail points are realized on the
/// positive real axis at R, R+1, R+2, ... (R = tail_start()) cycling through
/// `tail` in order.
struct InfiniteCoverModel {
  std::size_t degree = 1;
  BranchedCoverSpec prefix;
  std::vector<Permutation> tail;

  friend bool operator==(const InfiniteCoverModel &, const InfiniteCoverModel &) = default;
};

/// Fiber product of an infinite cover with either another infinite cover
/// (branch set an infinite subsequence) or a finite cover.
struct InfiniteFiberProductModel {
  InfiniteCoverModel f;
  std::variant<InfiniteCoverModel, BranchedCoverSpec> g;
};

struct EndInfo {
  std::vector<Sheet> orbit; // sheets, or grid cells for fiber products
  bool non_planar = false;
};

struct EndsReport {
  std::size_t ends_count = 0;
  std::vector<EndInfo> ends;
  /// First realized radius index from which the exterior orbit partition
  /// equals its limit.
  std::size_t stabilization_radius = 0;
  bool connected = false;
  /// Interior genus at radii R + k + 1/2 for k = 0.. (filled when the model
  /// has one non-planar end).
  std::vector<long> genus_lower_bounds;
};

struct ExhaustionStep {
  double radius = 0;
  std::size_t interior_branch_points = 0;
  std::size_t exterior_components = 0;
  long interior_genus = 0;
  std::size_t interior_ends = 0;
  /// Fiber-product traces only: is the glued truncation connected.
  bool interior_connected = true;
};

void validate(const InfiniteCoverModel &m);
void validate(const InfiniteFiberProductModel &m);

/// Smallest integer radius strictly outside every prefix point (at least 1).
double tail_start(const InfiniteCoverModel &m);
double tail_start(const InfiniteFiberProductModel &m);

/// Finite cover realized by the branch points of `m` with modulus below `radius`.
BranchedCoverSpec truncation(const InfiniteCoverModel &m, double radius);

EndsReport ends_of_infinite_cover(const InfiniteCoverModel &m);
EndsReport ends_of_infinite_fiber_product(const InfiniteFiberProductModel &m);

std::vector<ExhaustionStep> exhaustion_trace(const InfiniteCoverModel &m,
                                             const std::vector<double> &radii);
/// A finite cover has an empty tail; beyond its last branch point the
/// exterior components are its ends.
std::vector<ExhaustionStep> exhaustion_trace(const BranchedCoverSpec &spec,
                                             const std::vector<double> &radii);
std::vector<ExhaustionStep> exhaustion_trace(const InfiniteFiberProductModel &m,
                                             const std::vector<double> &radii);
/// Exterior-orbit trace of a finite fiber product on its pair grid.
std::vector<ExhaustionStep> exhaustion_trace(const FiberProductModel &fp,
                                             const std::vector<double> &radii);

/// Radii R + k + 1/2 for k = 0..count-1.
std::vector<double> default_radii(double start, std::size_t count);

/// Checks for the infinite models: one non-planar end for an infinite
/// superelliptic cover, and one end (infinite second branch set) or q ends
/// (finite second branch set) for the fiber products.
std::vector<ClaimCheck> infinite_claim_checks(const InfiniteCoverModel &m);
std::vector<ClaimCheck> infinite_claim_checks(const InfiniteFiberProductModel &m);

inline constexpr const char *kLochNess = "loch-ness";
inline constexpr const char *kInfiniteOneEnd = "infinite-branch-set-one-end";
inline constexpr const char *kFiniteQEnds = "finite-branch-set-q-ends";
inline constexpr const char *kTruncationsConnected = "truncations-connected";

} // namespace branchcov
