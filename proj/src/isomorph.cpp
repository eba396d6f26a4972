#include "branchcov/isomorph.hpp"

#include "branchcov/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>
#include <utility>

namespace branchcov {

std::string AffineMap::to_string() const {
  return "t(z) = " + format_complex(a) + " * z + " + format_complex(c);
}

bool affine_less(const AffineMap &x, const AffineMap &y) {
  auto key = [](const AffineMap &m) {
    return std::make_tuple(m.a.real(), m.a.imag(), m.c.real(), m.c.imag());
  };
  return key(x) < key(y);
}

bool approx_equal(const AffineMap &x, const AffineMap &y, double tol) {
  return std::abs(x.a - y.a) <= tol && std::abs(x.c - y.c) <= tol;
}

namespace {

bool contains(const std::vector<Complex> &set, const Complex &z, double tol) {
  return std::any_of(set.begin(), set.end(),
                     [&](const Complex &w) { return std::abs(w - z) <= tol; });
}

void check_points(const std::vector<Complex> &pts, const char *name, double tol) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Complex &z = pts[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
        std::abs(z.real()) > kMaxCoordinate || std::abs(z.imag()) > kMaxCoordinate)
      throw SpecError(std::string(name) + "[" + std::to_string(i) +
                      "] outside the supported coordinate range");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(pts[j] - z) <= tol)
        throw SpecError(std::string("duplicate point in ") + name + " at index " +
                        std::to_string(i));
  }
}

// Maps are determined by the images of W[0] and W[1].
std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        out.emplace_back(i, j);
  return out;
}

std::optional<AffineMap> test_candidate(const ZeroConfiguration &cfg,
                                        const IsomorphismOptions &opts, std::size_t i,
                                        std::size_t j) {
  const Complex p0 = cfg.W[0], p1 = cfg.W[1];
  const Complex q0 = cfg.W[i], q1 = cfg.W[j];
  AffineMap t;
  t.a = (q1 - q0) / (p1 - p0);
  t.c = q0 - t.a * p0;
  const double tol = opts.tolerance;
  if (opts.strict_pointwise) {
    for (const Complex &w : cfg.W)
      if (std::abs(t(w) - w) > tol)
        return std::nullopt;
  } else if (!maps_onto(t, cfg.W, cfg.W, tol)) {
    return std::nullopt;
  }
  if (!maps_onto(t, cfg.A, cfg.B, tol))
    return std::nullopt;
  return t;
}

} // namespace

bool maps_onto(const AffineMap &t, const std::vector<Complex> &from,
               const std::vector<Complex> &to, double tol) {
  if (from.size() != to.size())
    return false;
  std::vector<char> used(to.size(), 0);
  for (const Complex &z : from) {
    const Complex image = t(z);
    bool found = false;
    for (std::size_t k = 0; k < to.size() && !found; ++k)
      if (!used[k] && std::abs(to[k] - image) <= tol) {
        used[k] = 1;
        found = true;
      }
    if (!found)
      return false;
  }
  return true;
}

void validate(const ZeroConfiguration &cfg, double tol) {
  check_points(cfg.W, "W", tol);
  check_points(cfg.A, "A", tol);
  check_points(cfg.B, "B", tol);
  for (std::size_t i = 0; i < cfg.A.size(); ++i)
    if (!contains(cfg.W, cfg.A[i], tol))
      throw SpecError("A[" + std::to_string(i) + "] is not a point of W");
  for (std::size_t i = 0; i < cfg.B.size(); ++i)
    if (!contains(cfg.W, cfg.B[i], tol))
      throw SpecError("B[" + std::to_string(i) + "] is not a point of W");
}

std::vector<AffineMap> find_affine_equivalences_serial(const ZeroConfiguration &cfg,
                                                       const IsomorphismOptions &opts) {
  validate(cfg, opts.tolerance);
  if (cfg.W.size() < 2)
    throw SpecError("underdetermined: |W| < 2");
  std::vector<AffineMap> out;
  for (auto [i, j] : candidate_pairs(cfg.W.size()))
    if (auto t = test_candidate(cfg, opts, i, j))
      out.push_back(*t);
  std::sort(out.begin(), out.end(), affine_less);
  return out;
}

std::vector<AffineMap> find_affine_equivalences(const ZeroConfiguration &cfg,
                                                const IsomorphismOptions &opts) {
  validate(cfg, opts.tolerance);
  if (cfg.W.size() < 2)
    throw SpecError("underdetermined: |W| < 2");
  const auto pairs = candidate_pairs(cfg.W.size());
  std::vector<std::optional<AffineMap>> hits(pairs.size());
#pragma omp parallel for schedule(static) if (pairs.size() > 64)
  for (long k = 0; k < static_cast<long>(pairs.size()); ++k)
    hits[k] = test_candidate(cfg, opts, pairs[k].first, pairs[k].second);
  std::vector<AffineMap> out;
  for (const auto &h : hits)
    if (h)
      out.push_back(*h);
  std::sort(out.begin(), out.end(), affine_less);
  return out;
}

IsomorphismVerdict curves_isomorphic(const ZeroConfiguration &cfg,
                                     const IsomorphismOptions &opts) {
  IsomorphismVerdict v;
  validate(cfg, opts.tolerance);
  if (cfg.A.size() != cfg.B.size()) {
    v.reason = "|A| != |B|";
    return v;
  }
  if (cfg.W.size() < 2) {
    // A and B are subsets of at most one point with equal size, so A == B.
    v.isomorphic = true;
    v.witnesses.push_back(AffineMap{});
    v.reason = "identity";
    return v;
  }
  v.witnesses = find_affine_equivalences(cfg, opts);
  v.isomorphic = !v.witnesses.empty();
  v.reason = v.isomorphic ? "affine equivalence found" : "no affine map preserves W with t(A) = B";
  return v;
}

IsomorphismVerdict hyperelliptic_equivalence(const std::vector<Complex> &W1,
                                             const std::vector<Complex> &W2, double tol) {
  check_points(W1, "W1", tol);
  check_points(W2, "W2", tol);
  IsomorphismVerdict v;
  if (W1.size() != W2.size()) {
    v.reason = "|W1| != |W2|";
    return v;
  }
  if (W1.empty()) {
    v.isomorphic = true;
    v.witnesses.push_back(AffineMap{});
    v.reason = "empty sets";
    return v;
  }
  if (W1.size() == 1) {
    v.isomorphic = true;
    v.witnesses.push_back(AffineMap{{1.0, 0.0}, W2[0] - W1[0]});
    v.reason = "translation";
    return v;
  }
  for (std::size_t i = 0; i < W2.size(); ++i)
    for (std::size_t j = 0; j < W2.size(); ++j) {
      if (i == j)
        continue;
      AffineMap t;
      t.a = (W2[j] - W2[i]) / (W1[1] - W1[0]);
      t.c = W2[i] - t.a * W1[0];
      if (maps_onto(t, W1, W2, tol))
        v.witnesses.push_back(t);
    }
  std::sort(v.witnesses.begin(), v.witnesses.end(), affine_less);
  v.isomorphic = !v.witnesses.empty();
  v.reason = v.isomorphic ? "affine map found" : "no affine map carries W1 onto W2";
  return v;
}

} // namespace branchcov
