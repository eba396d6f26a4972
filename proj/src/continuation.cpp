#include "branchcov/continuation.hpp"

#include "branchcov/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

namespace branchcov {

namespace {

double segment_distance(const Complex &a, const Complex &b, const Complex &p) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0)
    return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

Complex ipow(Complex w, int q) {
  Complex r(1.0, 0.0);
  for (int k = 0; k < q; ++k)
    r *= w;
  return r;
}

Complex polish(Complex w, const Complex &c, int q) {
  if (w == Complex(0.0, 0.0))
    return w;
  for (int it = 0; it < 3; ++it) {
    const Complex wq1 = ipow(w, q - 1);
    const Complex step = (wq1 * w - c) / (static_cast<double>(q) * wq1);
    w -= step;
    if (std::abs(step) <= 1e-17 * std::abs(w))
      break;
  }
  return w;
}

double residual_scale(const Complex &c) { return std::max(1.0, std::abs(c)); }

} // namespace

Complex NumericCurve::f(const Complex &z1) const { return eval_product(base, z1).value; }

double NumericCurve::residual(const Complex &z1, const Complex &z2) const {
  return std::abs(ipow(z2, exponent) - f(z1));
}

NumericCurve make_curve(int exponent, const std::vector<Complex> &zeros) {
  WeierstrassProductSpec base;
  base.schedule = {DegreeSchedule::Kind::Constant, 0};
  for (const Complex &z : zeros) {
    if (z == Complex(0.0, 0.0))
      base.include_zero_at_origin = true;
    else
      base.zeros.push_back(z);
  }
  return make_curve(exponent, base);
}

NumericCurve make_curve(int exponent, const WeierstrassProductSpec &base) {
  if (exponent < 2)
    throw SpecError("curve exponent must be >= 2, got " + std::to_string(exponent));
  validate(base);
  NumericCurve c;
  c.exponent = exponent;
  c.base = base;
  c.branch_points = base.truncated_zeros();
  if (base.include_zero_at_origin)
    c.branch_points.emplace_back(0.0, 0.0);
  std::sort(c.branch_points.begin(), c.branch_points.end(), planar_less);
  return c;
}

std::vector<Complex> ordered_roots(const Complex &c, int q) {
  std::vector<Complex> roots;
  const double r = std::pow(std::abs(c), 1.0 / q);
  const double theta = std::arg(c) / q;
  for (int k = 0; k < q; ++k)
    roots.push_back(std::polar(r, theta + 2 * std::numbers::pi * k / q));
  auto key = [](const Complex &z) {
    double a = std::arg(z);
    return a <= -std::numbers::pi ? std::numbers::pi : a;
  };
  std::sort(roots.begin(), roots.end(),
            [&](const Complex &a, const Complex &b) { return key(a) < key(b); });
  return roots;
}

PathLift lift_path(const NumericCurve &curve, const std::vector<Complex> &path,
                   const Complex &start_value, const LiftOptions &opts) {
  if (path.empty())
    throw SpecError("empty path");
  const int q = curve.exponent;
  PathLift lift;
  lift.tolerance = opts.tolerance;

  lift.min_branch_distance = std::numeric_limits<double>::infinity();
  for (const Complex &b : curve.branch_points) {
    if (path.size() == 1)
      lift.min_branch_distance = std::min(lift.min_branch_distance, std::abs(path[0] - b));
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
      lift.min_branch_distance =
          std::min(lift.min_branch_distance, segment_distance(path[k], path[k + 1], b));
  }
  if (lift.min_branch_distance < opts.margin)
    throw NumericalError("step underflow: path passes within " +
                         format_double(lift.min_branch_distance) + " of a branch point");

  const Complex f0 = curve.f(path[0]);
  const double r0 = std::abs(ipow(start_value, q) - f0);
  if (r0 > opts.tolerance * residual_scale(f0))
    throw SpecError("start not on curve (residual " + format_double(r0) + ")");

  Complex w = start_value;
  lift.samples.push_back({0.0, path[0], w});
  lift.max_residual = r0;
  const std::size_t segments = path.size() - 1;

  for (std::size_t k = 0; k < segments; ++k) {
    const Complex a = path[k], b = path[k + 1];
    double s = 0.0, h = 0.125;
    while (s < 1.0) {
      const double s_new = std::min(1.0, s + h);
      const Complex z = a + (b - a) * s_new;
      const Complex c = curve.f(z);
      const auto roots = ordered_roots(c, q);

      double nearest = std::numeric_limits<double>::infinity();
      double second = nearest;
      std::size_t pick = 0;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        const double dist = std::abs(roots[i] - w);
        if (dist < nearest) {
          second = nearest;
          nearest = dist;
          pick = i;
        } else if (dist < second) {
          second = dist;
        }
      }
      if (c == Complex(0.0, 0.0) || second - nearest < 3.0 * nearest) {
        ++lift.rejected_steps;
        h /= 2;
        if (h < opts.min_step)
          throw NumericalError("step underflow at t = " +
                               format_double((static_cast<double>(k) + s) /
                                             static_cast<double>(segments)));
        continue;
      }

      w = polish(roots[pick], c, q);
      const double res = std::abs(ipow(w, q) - c);
      if (res > opts.tolerance * residual_scale(c))
        throw NumericalError("residual " + format_double(res) + " above tolerance");
      lift.max_residual = std::max(lift.max_residual, res);
      lift.smallest_step = std::min(lift.smallest_step, s_new - s);
      ++lift.accepted_steps;
      s = s_new;
      lift.samples.push_back(
          {(static_cast<double>(k) + s) / static_cast<double>(segments), z, w});
      h = std::min(2 * h, 0.25);
    }
  }
  return lift;
}

std::vector<Complex> loop_around(const Complex &center, double radius, const Complex &base,
                                 std::size_t vertices) {
  if (base == center)
    throw SpecError("loop base point coincides with its center");
  const double theta0 = std::arg(base - center);
  const Complex on_circle = center + std::polar(radius, theta0);
  std::vector<Complex> path{base};
  if (on_circle != base)
    path.push_back(on_circle);
  for (std::size_t k = 1; k < vertices; ++k)
    path.push_back(center + std::polar(radius, theta0 + 2 * std::numbers::pi *
                                                            static_cast<double>(k) /
                                                            static_cast<double>(vertices)));
  path.push_back(on_circle);
  if (on_circle != base)
    path.push_back(base);
  return path;
}

Permutation numeric_monodromy(const NumericCurve &curve, const Complex &point, double radius,
                              const Complex &base, const LiftOptions &opts) {
  if (!(radius > 0))
    throw SpecError("loop radius must be positive");
  for (const Complex &b : curve.branch_points)
    if (b != point && std::abs(b - point) <= radius)
      throw SpecError("circle not isolating: branch point " + format_complex(b) +
                      " lies within radius " + format_double(radius) + " of " +
                      format_complex(point));

  const auto path = loop_around(point, radius, base);
  const auto roots = ordered_roots(curve.f(base), curve.exponent);
  const int q = curve.exponent;
  std::vector<Sheet> images(static_cast<std::size_t>(q), -1);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(q));

#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < q; ++k) {
    try {
      const Complex end = lift_path(curve, path, roots[k], opts).end_value();
      std::size_t best = 0;
      for (std::size_t j = 1; j < roots.size(); ++j)
        if (std::abs(roots[j] - end) < std::abs(roots[best] - end))
          best = j;
      images[k] = static_cast<Sheet>(best);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  if (!Permutation::is_bijection(images))
    throw NumericalError("lifted endpoints do not permute the roots");
  return Permutation(std::move(images));
}

CrossValidation cross_validate_monodromy(const NumericCurve &numeric,
                                         const SuperellipticSpec &combinatorial,
                                         const LiftOptions &opts) {
  CrossValidation out;
  if (numeric.exponent != combinatorial.exponent) {
    out.reason = "exponents differ: " + std::to_string(numeric.exponent) + " vs " +
                 std::to_string(combinatorial.exponent);
    return out;
  }
  const BranchedCoverSpec cover = superelliptic_to_cover(combinatorial);
  if (cover.branch_points != numeric.branch_points) {
    out.reason = "zero sets differ";
    return out;
  }

  const auto &pts = cover.branch_points;
  out.passed = true;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != k)
        gap = std::min(gap, std::abs(pts[j] - pts[k]));
    const double radius = std::min(0.4 * gap, 0.5);
    MonodromyComparison cmp;
    cmp.point = pts[k];
    cmp.expected = cover.monodromy[k];
    cmp.numeric = numeric_monodromy(numeric, pts[k], radius, pts[k] + radius, opts);
    cmp.match = cmp.numeric == cmp.expected;
    out.passed = out.passed && cmp.match;
    out.per_point.push_back(std::move(cmp));
  }
  if (!out.passed)
    out.reason = "monodromy mismatch";
  return out;
}

TriplePoint z2z2_action(const TriplePoint &point, Involution which) {
  TriplePoint r = point;
  if (which == Involution::Alpha1)
    r.z3 = -r.z3;
  else
    r.z2 = -r.z2;
  return r;
}

bool on_curve(const CurvePair &pair, const TriplePoint &x, double tol) {
  const Complex fv = pair.f.f(x.z1), gv = pair.g.f(x.z1);
  return std::abs(ipow(x.z2, pair.f.exponent) - fv) <= tol * residual_scale(fv) &&
         std::abs(ipow(x.z3, pair.g.exponent) - gv) <= tol * residual_scale(gv);
}

namespace {

void require_hyperelliptic_pair(const CurvePair &pair) {
  if (pair.f.exponent != 2 || pair.g.exponent != 2)
    throw SpecError("check requires p = q = 2");
}

void require_on_curve(const CurvePair &pair, const std::vector<TriplePoint> &samples,
                      double tol) {
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (!on_curve(pair, samples[i], tol))
      throw SpecError("off-curve sample " + std::to_string(i));
}

std::vector<TriplePoint> distinct(std::initializer_list<TriplePoint> pts) {
  std::vector<TriplePoint> out;
  for (const TriplePoint &p : pts)
    if (std::find(out.begin(), out.end(), p) == out.end())
      out.push_back(p);
  return out;
}

} // namespace

QuotientCheck check_quotient_lemma(const CurvePair &pair, const std::vector<TriplePoint> &samples,
                                   double tol) {
  require_hyperelliptic_pair(pair);
  require_on_curve(pair, samples, tol);
  QuotientCheck out;
  out.samples = samples.size();
  for (const TriplePoint &x : samples) {
    const TriplePoint y1 = z2z2_action(x, Involution::Alpha1);
    const TriplePoint y2 = z2z2_action(x, Involution::Alpha2);
    // pi1 = (z1, z2) on the alpha1-orbit, pi2 = (z1, z3) on the alpha2-orbit.
    out.max_discrepancy = std::max({out.max_discrepancy, std::abs(y1.z1 - x.z1),
                                    std::abs(y1.z2 - x.z2), std::abs(y2.z1 - x.z1),
                                    std::abs(y2.z3 - x.z3)});
  }
  out.passed = out.max_discrepancy == 0.0;
  return out;
}

IntersectionCheck check_double_cover_intersection(const CurvePair &pair,
                                                  const std::vector<TriplePoint> &samples,
                                                  double tol) {
  require_hyperelliptic_pair(pair);
  require_on_curve(pair, samples, tol);
  IntersectionCheck out;
  out.samples = samples.size();
  for (const TriplePoint &x : samples) {
    // Preimages of pi1(x) under the alpha1-quotient, and of pi2(x) under alpha2.
    const auto fiber1 = distinct({x, z2z2_action(x, Involution::Alpha1)});
    const auto fiber2 = distinct({x, z2z2_action(x, Involution::Alpha2)});

    std::vector<TriplePoint> both;
    for (const TriplePoint &p : fiber1)
      if (std::find(fiber2.begin(), fiber2.end(), p) != fiber2.end())
        both.push_back(p);
    if (both.size() == 1 && both.front() == x)
      ++out.exactly_one;
    if (!both.empty())
      ++out.non_empty;

    // pi1 on fiber2 is injective.
    bool injective = true;
    for (std::size_t i = 0; i < fiber2.size(); ++i)
      for (std::size_t j = i + 1; j < fiber2.size(); ++j)
        if (fiber2[i].z1 == fiber2[j].z1 && fiber2[i].z2 == fiber2[j].z2)
          injective = false;
    if (injective)
      ++out.injective;

    // pi1(fiber2) against the fiber of beta1 over z1, solved from the equation.
    const Complex fv = pair.f.f(x.z1);
    std::vector<Complex> beta_fiber;
    for (const Complex &w : ordered_roots(fv, 2))
      if (std::none_of(beta_fiber.begin(), beta_fiber.end(),
                       [&](const Complex &v) { return std::abs(v - w) <= tol; }))
        beta_fiber.push_back(w);
    bool equal = beta_fiber.size() == fiber2.size();
    for (const TriplePoint &p : fiber2)
      equal = equal && std::any_of(beta_fiber.begin(), beta_fiber.end(), [&](const Complex &w) {
                return std::abs(w - p.z2) <= std::sqrt(tol) * std::max(1.0, std::abs(w));
              });
    if (equal)
      ++out.image_is_fiber;
  }
  out.passed = out.exactly_one == out.samples && out.injective == out.samples &&
               out.image_is_fiber == out.samples && out.non_empty == out.samples;
  return out;
}

} // namespace branchcov
