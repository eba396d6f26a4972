#include "branchcov/covers.hpp"

#include "branchcov/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace branchcov {

std::size_t CoverInvariants::total_ends() const {
  std::size_t total = 0;
  for (const auto &c : components)
    total += c.ends;
  return total;
}

const BranchedCoverSpec &validate(const BranchedCoverSpec &spec) {
  if (spec.degree == 0)
    throw SpecError("degree must be positive");
  if (spec.branch_points.size() != spec.monodromy.size())
    throw SpecError("branch_points and monodromy differ in length (" +
                    std::to_string(spec.branch_points.size()) + " vs " +
                    std::to_string(spec.monodromy.size()) + ")");
  for (std::size_t i = 0; i < spec.branch_points.size(); ++i) {
    const Complex &z = spec.branch_points[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw SpecError("branch point " + std::to_string(i) + " is not finite");
    for (std::size_t j = 0; j < i; ++j)
      if (spec.branch_points[j] == z)
        throw SpecError("duplicate branch point at index " + std::to_string(i) +
                        " (same as index " + std::to_string(j) + ")");
  }
  for (std::size_t i = 0; i < spec.monodromy.size(); ++i) {
    const Permutation &p = spec.monodromy[i];
    if (p.degree() != spec.degree)
      throw SpecError("monodromy " + std::to_string(i) + " has degree " +
                      std::to_string(p.degree()) + ", expected " +
                      std::to_string(spec.degree));
    if (!Permutation::is_bijection(p.images()))
      throw SpecError("monodromy " + std::to_string(i) + " is not a bijection");
    if (p.is_identity())
      throw SpecError("identity monodromy at index " + std::to_string(i));
  }
  return spec;
}

Permutation infinity_monodromy(const BranchedCoverSpec &spec) {
  return product(spec.monodromy, spec.degree);
}

ComponentInvariants component_invariants(std::span<const Permutation> local,
                                         const Permutation &infinity,
                                         std::span<const Sheet> sheets) {
  ComponentInvariants c;
  c.sheets.assign(sheets.begin(), sheets.end());
  std::sort(c.sheets.begin(), c.sheets.end());
  c.degree = c.sheets.size();
  c.ends = infinity.cycle_count_on(c.sheets);

  // Riemann-Hurwitz over the sphere with the r points and infinity removed.
  const long n = static_cast<long>(c.degree);
  const long r = static_cast<long>(local.size());
  long chi = n * (2 - (r + 1));
  for (const Permutation &p : local)
    chi += static_cast<long>(p.cycle_count_on(c.sheets));
  chi += static_cast<long>(c.ends);
  c.euler_characteristic = chi;
  c.genus = (2 - chi) / 2;
  return c;
}

CoverInvariants invariants_of_action(std::span<const Permutation> local,
                                     const Permutation &infinity,
                                     std::size_t degree) {
  CoverInvariants inv;
  for (const auto &orbit : orbits(local, degree))
    inv.components.push_back(component_invariants(local, infinity, orbit));
  return inv;
}

CoverInvariants cover_invariants(const BranchedCoverSpec &spec) {
  validate(spec);
  return invariants_of_action(spec.monodromy, infinity_monodromy(spec), spec.degree);
}

BranchedCoverSpec superelliptic_to_cover(const SuperellipticSpec &spec) {
  if (spec.exponent < 2)
    throw SpecError("superelliptic exponent must be >= 2, got " +
                    std::to_string(spec.exponent));
  BranchedCoverSpec cover;
  cover.degree = static_cast<std::size_t>(spec.exponent);
  cover.branch_points = spec.zeros;
  std::sort(cover.branch_points.begin(), cover.branch_points.end(), planar_less);
  for (std::size_t i = 1; i < cover.branch_points.size(); ++i)
    if (cover.branch_points[i] == cover.branch_points[i - 1])
      throw SpecError("duplicate zero " + format_complex(cover.branch_points[i]));
  cover.monodromy.assign(cover.branch_points.size(),
                         Permutation::standard_cycle(cover.degree));
  return cover;
}

BranchedCoverSpec canonicalized(BranchedCoverSpec spec) {
  std::vector<std::size_t> order(spec.branch_points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return planar_less(spec.branch_points[a], spec.branch_points[b]);
  });
  BranchedCoverSpec out;
  out.degree = spec.degree;
  for (std::size_t i : order) {
    out.branch_points.push_back(spec.branch_points[i]);
    out.monodromy.push_back(spec.monodromy[i]);
  }
  return out;
}

bool is_connected(const BranchedCoverSpec &spec) {
  return is_transitive(spec.monodromy, spec.degree);
}

ClaimCheck superelliptic_claim_check(const SuperellipticSpec &spec) {
  ClaimCheck c{kSuperellipticEndsGenus, Verdict::HypothesesNotMet, {}};
  const std::size_t count = spec.zeros.size();
  if (count == 0 || count % 2 != 0) {
    c.detail = "needs an even, non-zero number of zeros (got " + std::to_string(count) + ")";
    return c;
  }
  const long k = static_cast<long>(count / 2);
  const auto inv = cover_invariants(superelliptic_to_cover(spec));
  std::ostringstream d;
  d << "q=" << spec.exponent << " k=" << k << ": expected 1 component, " << spec.exponent
    << " ends, genus " << k - 1 << "; computed " << inv.component_count() << " component(s)";
  bool holds = inv.component_count() == 1;
  if (holds) {
    const auto &comp = inv.components.front();
    d << ", " << comp.ends << " ends, genus " << comp.genus;
    holds = comp.ends == static_cast<std::size_t>(spec.exponent) && comp.genus == k - 1;
  }
  c.detail = d.str();
  if (holds)
    c.verdict = Verdict::Confirmed;
  else
    c.verdict = spec.exponent == 2 ? Verdict::CounterexampleCandidate
                                   : Verdict::PaperClaimMismatch;
  return c;
}

} // namespace branchcov
