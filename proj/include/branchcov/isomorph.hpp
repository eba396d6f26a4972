#pragma once

#include "complex.hpp"

#include <string>
#include <vector>

namespace branchcov {

/// t(z) = a z + c with a != 0. Biholomorphisms of the plane are exactly these.
struct AffineMap {
  Complex a{1.0, 0.0};
  Complex c{0.0, 0.0};

  Complex operator()(const Complex &z) const { return a * z + c; }
  /// (this.then(next))(z) == next(this(z)).
  AffineMap then(const AffineMap &next) const { return {next.a * a, next.a * c + next.c}; }
  AffineMap inverse() const { return {1.0 / a, -c / a}; }
  std::string to_string() const;

  friend bool operator==(const AffineMap &, const AffineMap &) = default;
};

/// Lexicographic by (Re a, Im a, Re c, Im c).
bool affine_less(const AffineMap &x, const AffineMap &y);
bool approx_equal(const AffineMap &x, const AffineMap &y, double tol);

/// W: zeros of f; A and B: zeros of g and h, both subsets of W.
struct ZeroConfiguration {
  std::vector<Complex> W;
  std::vector<Complex> A;
  std::vector<Complex> B;
};

struct IsomorphismOptions {
  /// Require t(w) == w for every w instead of t(W) == W as a set.
  bool strict_pointwise = false;
  double tolerance = 1e-9;
};

inline constexpr double kMaxCoordinate = 1e3;

/// Throws SpecError for duplicate points, A or B outside W, or coordinates
/// beyond kMaxCoordinate.
void validate(const ZeroConfiguration &cfg, double tol = 1e-9);

/// Does t carry `from` onto `to` bijectively, matching to `tol`.
bool maps_onto(const AffineMap &t, const std::vector<Complex> &from,
               const std::vector<Complex> &to, double tol);

/// Every affine t with t(W) = W and t(A) = B, sorted by affine_less.
/// Throws SpecError("underdetermined") when |W| < 2.
std::vector<AffineMap> find_affine_equivalences(const ZeroConfiguration &cfg,
                                                const IsomorphismOptions &opts = {});
/// Single-threaded reference for find_affine_equivalences.
std::vector<AffineMap> find_affine_equivalences_serial(const ZeroConfiguration &cfg,
                                                       const IsomorphismOptions &opts = {});

struct IsomorphismVerdict {
  bool isomorphic = false;
  std::vector<AffineMap> witnesses;
  std::string reason;
};

IsomorphismVerdict curves_isomorphic(const ZeroConfiguration &cfg,
                                     const IsomorphismOptions &opts = {});

/// Is there an affine map carrying W1 onto W2.
IsomorphismVerdict hyperelliptic_equivalence(const std::vector<Complex> &W1,
                                             const std::vector<Complex> &W2,
                                             double tol = 1e-9);

} // namespace branchcov
