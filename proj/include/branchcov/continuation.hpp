#pragma once

#include "covers.hpp"
#include "weierstrass.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace branchcov {

/// The curve z2^q = f(z1), f given as a Weierstrass product.
struct NumericCurve {
  int exponent = 2;
  WeierstrassProductSpec base;
  std::vector<Complex> branch_points; // zeros of f, used for proximity guards

  Complex f(const Complex &z1) const;
  double residual(const Complex &z1, const Complex &z2) const;
};

/// Curve with f(z) = z^m * prod (1 - z/w) over `zeros` (m = 1 when 0 is listed).
NumericCurve make_curve(int exponent, const std::vector<Complex> &zeros);
/// Curve over a (possibly infinite, truncated) Weierstrass product.
NumericCurve make_curve(int exponent, const WeierstrassProductSpec &base);

struct PathSample {
  double t = 0;
  Complex z1;
  Complex z2;
};

struct PathLift {
  std::vector<PathSample> samples;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  double smallest_step = 1.0;
  double min_branch_distance = 0;
  double max_residual = 0;
  double tolerance = 0;

  const Complex &end_value() const { return samples.back().z2; }
};

struct LiftOptions {
  double tolerance = 1e-10;
  /// Paths closer than this to a branch point are rejected.
  double margin = 1e-9;
  double min_step = 1e-12;
};

/// Continues z2 along the polyline `path` starting from `start_value`.
/// Throws SpecError("start not on curve") and NumericalError("step underflow").
PathLift lift_path(const NumericCurve &curve, const std::vector<Complex> &path,
                   const Complex &start_value, const LiftOptions &opts = {});

/// The q roots of w^q = c ordered by argument in (-pi, pi].
std::vector<Complex> ordered_roots(const Complex &c, int q);

/// Closed polyline: base -> circle around `center` (counterclockwise) -> base.
std::vector<Complex> loop_around(const Complex &center, double radius, const Complex &base,
                                 std::size_t vertices = 64);

/// Permutation of argument-ordered roots over `base` induced by one
/// counterclockwise turn around `point`.
Permutation numeric_monodromy(const NumericCurve &curve, const Complex &point, double radius,
                              const Complex &base, const LiftOptions &opts = {});

struct MonodromyComparison {
  Complex point;
  Permutation numeric;
  Permutation expected;
  bool match = false;
};

struct CrossValidation {
  bool passed = false;
  std::string reason;
  std::vector<MonodromyComparison> per_point;
};

CrossValidation cross_validate_monodromy(const NumericCurve &numeric,
                                         const SuperellipticSpec &combinatorial,
                                         const LiftOptions &opts = {});

/// A point of the fiber product {z2^p = f(z1), z3^q = g(z1)}.
struct TriplePoint {
  Complex z1, z2, z3;
  friend bool operator==(const TriplePoint &, const TriplePoint &) = default;
};

struct CurvePair {
  NumericCurve f; // exponent p, coordinate z2
  NumericCurve g; // exponent q, coordinate z3
};

enum class Involution { Alpha1, Alpha2 };

/// Alpha1 negates z3, Alpha2 negates z2.
TriplePoint z2z2_action(const TriplePoint &point, Involution which);

bool on_curve(const CurvePair &pair, const TriplePoint &x, double tol);

struct QuotientCheck {
  std::size_t samples = 0;
  double max_discrepancy = 0;
  bool passed = false;
};

/// Both points of every alpha1-orbit project to the same (z1, z2), and both
/// points of every alpha2-orbit to the same (z1, z3). Off-curve samples are
/// rejected with SpecError.
QuotientCheck check_quotient_lemma(const CurvePair &pair, const std::vector<TriplePoint> &samples,
                                   double tol = 1e-10);

struct IntersectionCheck {
  std::size_t samples = 0;
  std::size_t exactly_one = 0;
  std::size_t injective = 0;     // pi1 restricted to the alpha2-fiber is injective
  std::size_t image_is_fiber = 0; // pi1(alpha2-fiber) equals the beta1-fiber
  std::size_t non_empty = 0;
  bool passed = false;
};

IntersectionCheck check_double_cover_intersection(const CurvePair &pair,
                                                  const std::vector<TriplePoint> &samples,
                                                  double tol = 1e-10);

} // namespace branchcov
