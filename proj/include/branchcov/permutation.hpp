#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace branchcov {

using Sheet = int;
using Cycle = std::vector<Sheet>;

/// A bijection of {0..n-1}, stored as its image array.
///
/// Products compose left to right: `a.then(b)` applies `a` first, so
/// `(a.then(b))(i) == b(a(i))`. The same convention is used for every
/// monodromy product in the library and in the spec file format.
class Permutation {
public:
  Permutation() = default;

  /// Throws SpecError("not a bijection") when `images` is not a permutation.
  explicit Permutation(std::vector<Sheet> images);

  static Permutation identity(std::size_t n);
  /// The standard n-cycle (0 1 ... n-1).
  static Permutation standard_cycle(std::size_t n);
  /// Builds a permutation of {0..n-1} from disjoint cycles; unlisted points are fixed.
  static Permutation from_cycles(std::size_t n, const std::vector<Cycle> &cycles);

  static bool is_bijection(std::span<const Sheet> images);

  std::size_t degree() const noexcept { return images_.size(); }
  Sheet operator()(Sheet i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<Sheet> &images() const noexcept { return images_; }

  bool is_identity() const;
  Permutation then(const Permutation &next) const;
  Permutation inverse() const;
  Permutation conjugated_by(const Permutation &relabel) const;

  /// Cycles including fixed points, each starting at its smallest element,
  /// listed by increasing smallest element.
  std::vector<Cycle> cycles() const;
  std::size_t cycle_count() const;
  /// Cycles that lie inside `sheets` (which must be invariant).
  std::size_t cycle_count_on(std::span<const Sheet> sheets) const;

  /// Cycle notation, e.g. "(0 1)(2)"; the identity on n points prints its fixed points.
  std::string to_string() const;

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &, const Permutation &) = default;

private:
  std::vector<Sheet> images_;
};

/// Left-to-right product of `factors`; identity of degree `n` when empty.
Permutation product(std::span<const Permutation> factors, std::size_t n);

/// Orbits of the group generated by `generators` on {0..n-1}. Each orbit is
/// sorted ascending and orbits are ordered by their smallest element.
std::vector<std::vector<Sheet>> orbits(std::span<const Permutation> generators,
                                       std::size_t n);

bool is_transitive(std::span<const Permutation> generators, std::size_t n);

} // namespace branchcov
