#include "branchcov/asymptotic.hpp"

#include "branchcov/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace branchcov {

namespace {

struct PairGenerator {
  Permutation sigma;
  Permutation tau;
};

double max_modulus(const std::vector<Complex> &pts) {
  double r = 0;
  for (const Complex &z : pts)
    r = std::max(r, std::abs(z));
  return r;
}

const std::vector<Complex> &second_points(const InfiniteFiberProductModel &m) {
  if (auto *inf = std::get_if<InfiniteCoverModel>(&m.g))
    return inf->prefix.branch_points;
  return std::get<BranchedCoverSpec>(m.g).branch_points;
}

std::size_t second_degree(const InfiniteFiberProductModel &m) {
  if (auto *inf = std::get_if<InfiniteCoverModel>(&m.g))
    return inf->degree;
  return std::get<BranchedCoverSpec>(m.g).degree;
}

const BranchedCoverSpec &second_finite_part(const InfiniteFiberProductModel &m) {
  if (auto *inf = std::get_if<InfiniteCoverModel>(&m.g))
    return inf->prefix;
  return std::get<BranchedCoverSpec>(m.g);
}

// One period of the realized tail on the pair grid: every pair of tail
// generators at shared points, and every first-factor generator at points
// that branch only the first factor.
std::vector<PairGenerator> pair_tail_period(const InfiniteFiberProductModel &m) {
  std::vector<PairGenerator> out;
  const std::size_t n2 = second_degree(m);
  if (auto *inf = std::get_if<InfiniteCoverModel>(&m.g))
    for (const Permutation &s : m.f.tail)
      for (const Permutation &t : inf->tail)
        out.push_back({s, t});
  for (const Permutation &s : m.f.tail)
    out.push_back({s, Permutation::identity(n2)});
  return out;
}

std::vector<std::vector<Sheet>> partition_of(std::span<const Permutation> gens,
                                             std::size_t n) {
  return orbits(gens, n);
}

bool moves_some(const Permutation &p, const std::vector<Sheet> &orbit) {
  return std::any_of(orbit.begin(), orbit.end(), [&](Sheet s) { return p(s) != s; });
}

EndsReport ends_from_generators(const std::vector<Permutation> &tail,
                                const Permutation &boundary, std::size_t n) {
  std::vector<Permutation> gens = tail;
  gens.push_back(boundary);
  EndsReport r;
  for (auto &orbit : partition_of(gens, n)) {
    EndInfo e;
    e.non_planar = std::any_of(tail.begin(), tail.end(),
                               [&](const Permutation &t) { return moves_some(t, orbit); });
    e.orbit = std::move(orbit);
    r.ends.push_back(std::move(e));
  }
  r.ends_count = r.ends.size();
  return r;
}

long total_genus(const CoverInvariants &inv) {
  long g = 0;
  for (const auto &c : inv.components)
    g += c.genus;
  return g;
}

struct PairTruncation {
  BranchedCoverSpec first;
  BranchedCoverSpec second;
};

PairTruncation pair_truncation(const InfiniteFiberProductModel &m, double radius) {
  PairTruncation t;
  t.first.degree = m.f.degree;
  const BranchedCoverSpec &g0 = second_finite_part(m);
  t.second.degree = g0.degree;
  for (std::size_t k = 0; k < m.f.prefix.branch_points.size(); ++k)
    if (std::abs(m.f.prefix.branch_points[k]) < radius) {
      t.first.branch_points.push_back(m.f.prefix.branch_points[k]);
      t.first.monodromy.push_back(m.f.prefix.monodromy[k]);
    }
  for (std::size_t k = 0; k < g0.branch_points.size(); ++k)
    if (std::abs(g0.branch_points[k]) < radius) {
      t.second.branch_points.push_back(g0.branch_points[k]);
      t.second.monodromy.push_back(g0.monodromy[k]);
    }
  const auto period = pair_tail_period(m);
  const double start = tail_start(m);
  for (std::size_t k = 0; start + static_cast<double>(k) < radius; ++k) {
    const Complex z(start + static_cast<double>(k), 0.0);
    const PairGenerator &gen = period[k % period.size()];
    t.first.branch_points.push_back(z);
    t.first.monodromy.push_back(gen.sigma);
    if (!gen.tau.is_identity()) {
      t.second.branch_points.push_back(z);
      t.second.monodromy.push_back(gen.tau);
    }
  }
  return t;
}

// Exterior pair generators at `radius`: merged prefix points outside it, the
// whole pair tail, and the loop around the interior.
std::size_t pair_exterior_components(const InfiniteFiberProductModel &m, double radius) {
  const BranchedCoverSpec &g0 = second_finite_part(m);
  const FiberProductModel whole = merge_covers(m.f.prefix, g0);
  const PairTruncation trunc = pair_truncation(m, radius);
  const FiberProductModel inner = merge_covers(trunc.first, trunc.second);

  std::vector<Permutation> gens;
  for (std::size_t k = 0; k < whole.branch_points.size(); ++k)
    if (std::abs(whole.branch_points[k]) >= radius)
      gens.push_back(whole.diagonal[k]);
  for (const PairGenerator &p : pair_tail_period(m))
    gens.push_back(pair_action(p.sigma, p.tau));
  gens.push_back(inner.infinity_action());
  return partition_of(gens, whole.cells()).size();
}

std::size_t single_exterior_components(const BranchedCoverSpec &prefix,
                                       const std::vector<Permutation> &tail,
                                       const BranchedCoverSpec &interior, double radius) {
  std::vector<Permutation> gens = tail;
  for (std::size_t k = 0; k < prefix.branch_points.size(); ++k)
    if (std::abs(prefix.branch_points[k]) >= radius)
      gens.push_back(prefix.monodromy[k]);
  gens.push_back(infinity_monodromy(interior));
  return partition_of(gens, prefix.degree).size();
}

bool all_equal_to(const std::vector<Permutation> &perms, const Permutation &p) {
  return std::all_of(perms.begin(), perms.end(),
                     [&](const Permutation &x) { return x == p; });
}

bool is_superelliptic(const InfiniteCoverModel &m) {
  const Permutation c = Permutation::standard_cycle(m.degree);
  return m.degree >= 2 && all_equal_to(m.tail, c) && all_equal_to(m.prefix.monodromy, c);
}

bool is_superelliptic(const BranchedCoverSpec &s) {
  return s.degree >= 2 &&
         all_equal_to(s.monodromy, Permutation::standard_cycle(s.degree));
}

} // namespace

void validate(const InfiniteCoverModel &m) {
  if (m.prefix.degree != m.degree)
    throw SpecError("prefix degree " + std::to_string(m.prefix.degree) +
                    " differs from model degree " + std::to_string(m.degree));
  validate(m.prefix);
  if (m.tail.empty())
    throw SpecError("empty tail");
  for (std::size_t k = 0; k < m.tail.size(); ++k) {
    if (m.tail[k].degree() != m.degree)
      throw SpecError("tail generator " + std::to_string(k) + " has degree " +
                      std::to_string(m.tail[k].degree()) + ", expected " +
                      std::to_string(m.degree));
    if (m.tail[k].is_identity())
      throw SpecError("identity monodromy in tail generator " + std::to_string(k));
  }
}

void validate(const InfiniteFiberProductModel &m) {
  validate(m.f);
  if (auto *inf = std::get_if<InfiniteCoverModel>(&m.g))
    validate(*inf);
  else
    validate(std::get<BranchedCoverSpec>(m.g));
}

double tail_start(const InfiniteCoverModel &m) {
  return std::floor(max_modulus(m.prefix.branch_points)) + 1.0;
}

double tail_start(const InfiniteFiberProductModel &m) {
  return std::floor(std::max(max_modulus(m.f.prefix.branch_points),
                             max_modulus(second_points(m)))) +
         1.0;
}

std::vector<double> default_radii(double start, std::size_t count) {
  std::vector<double> r;
  for (std::size_t k = 0; k < count; ++k)
    r.push_back(start + static_cast<double>(k) + 0.5);
  return r;
}

BranchedCoverSpec truncation(const InfiniteCoverModel &m, double radius) {
  BranchedCoverSpec t;
  t.degree = m.degree;
  for (std::size_t k = 0; k < m.prefix.branch_points.size(); ++k)
    if (std::abs(m.prefix.branch_points[k]) < radius) {
      t.branch_points.push_back(m.prefix.branch_points[k]);
      t.monodromy.push_back(m.prefix.monodromy[k]);
    }
  const double start = tail_start(m);
  for (std::size_t k = 0; start + static_cast<double>(k) < radius; ++k) {
    t.branch_points.emplace_back(start + static_cast<double>(k), 0.0);
    t.monodromy.push_back(m.tail[k % m.tail.size()]);
  }
  return t;
}

EndsReport ends_of_infinite_cover(const InfiniteCoverModel &m) {
  validate(m);
  EndsReport r = ends_from_generators(m.tail, infinity_monodromy(m.prefix), m.degree);

  std::vector<Permutation> all = m.tail;
  all.insert(all.end(), m.prefix.monodromy.begin(), m.prefix.monodromy.end());
  r.connected = is_transitive(all, m.degree);

  // Stabilization over radii k + 1/2, k = 0.. well past the first tail period.
  const double start = tail_start(m);
  const std::size_t count = static_cast<std::size_t>(start) + 2 * m.tail.size() + 5;
  std::vector<std::vector<std::vector<Sheet>>> parts(count);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < static_cast<long>(count); ++k) {
    const double radius = static_cast<double>(k) + 0.5;
    std::vector<Permutation> gens = m.tail;
    for (std::size_t i = 0; i < m.prefix.branch_points.size(); ++i)
      if (std::abs(m.prefix.branch_points[i]) >= radius)
        gens.push_back(m.prefix.monodromy[i]);
    gens.push_back(infinity_monodromy(truncation(m, radius)));
    parts[k] = partition_of(gens, m.degree);
  }
  std::size_t first = count;
  while (first > 0 && parts[first - 1].size() == r.ends_count) {
    bool same = true;
    for (std::size_t e = 0; e < r.ends.size() && same; ++e)
      same = parts[first - 1][e] == r.ends[e].orbit;
    if (!same)
      break;
    --first;
  }
  r.stabilization_radius = first;

  if (r.ends_count == 1 && r.ends.front().non_planar)
    for (double radius : default_radii(start, 10))
      r.genus_lower_bounds.push_back(total_genus(invariants_of_action(
          truncation(m, radius).monodromy, infinity_monodromy(truncation(m, radius)),
          m.degree)));
  return r;
}

EndsReport ends_of_infinite_fiber_product(const InfiniteFiberProductModel &m) {
  validate(m);
  const BranchedCoverSpec &g0 = second_finite_part(m);
  const FiberProductModel prefix = merge_covers(m.f.prefix, g0);

  std::vector<Permutation> tail;
  for (const PairGenerator &p : pair_tail_period(m))
    tail.push_back(pair_action(p.sigma, p.tau));
  EndsReport r = ends_from_generators(tail, prefix.infinity_action(), prefix.cells());

  std::vector<Permutation> all = tail;
  all.insert(all.end(), prefix.diagonal.begin(), prefix.diagonal.end());
  r.connected = is_transitive(all, prefix.cells());

  const double start = tail_start(m);
  const std::size_t period = pair_tail_period(m).size();
  const std::size_t count = static_cast<std::size_t>(start) + 2 * period + 5;
  std::vector<std::size_t> comps(count);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < static_cast<long>(count); ++k)
    comps[k] = pair_exterior_components(m, static_cast<double>(k) + 0.5);
  std::size_t first = count;
  while (first > 0 && comps[first - 1] == r.ends_count)
    --first;
  r.stabilization_radius = first;
  return r;
}

std::vector<ExhaustionStep> exhaustion_trace(const InfiniteCoverModel &m,
                                             const std::vector<double> &radii) {
  validate(m);
  std::vector<ExhaustionStep> out(radii.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < static_cast<long>(radii.size()); ++k) {
    const double radius = radii[k];
    const BranchedCoverSpec interior = truncation(m, radius);
    const CoverInvariants inv = invariants_of_action(
        interior.monodromy, infinity_monodromy(interior), m.degree);
    ExhaustionStep &s = out[k];
    s.radius = radius;
    s.interior_branch_points = interior.branch_points.size();
    s.exterior_components = single_exterior_components(m.prefix, m.tail, interior, radius);
    s.interior_genus = total_genus(inv);
    s.interior_ends = inv.total_ends();
    s.interior_connected = inv.component_count() == 1;
  }
  return out;
}

std::vector<ExhaustionStep> exhaustion_trace(const BranchedCoverSpec &spec,
                                             const std::vector<double> &radii) {
  validate(spec);
  std::vector<ExhaustionStep> out;
  for (double radius : radii) {
    BranchedCoverSpec interior;
    interior.degree = spec.degree;
    for (std::size_t k = 0; k < spec.branch_points.size(); ++k)
      if (std::abs(spec.branch_points[k]) < radius) {
        interior.branch_points.push_back(spec.branch_points[k]);
        interior.monodromy.push_back(spec.monodromy[k]);
      }
    const CoverInvariants inv = invariants_of_action(
        interior.monodromy, infinity_monodromy(interior), spec.degree);
    ExhaustionStep s;
    s.radius = radius;
    s.interior_branch_points = interior.branch_points.size();
    s.exterior_components = single_exterior_components(spec, {}, interior, radius);
    s.interior_genus = total_genus(inv);
    s.interior_ends = inv.total_ends();
    s.interior_connected = inv.component_count() == 1;
    out.push_back(s);
  }
  return out;
}

std::vector<ExhaustionStep> exhaustion_trace(const InfiniteFiberProductModel &m,
                                             const std::vector<double> &radii) {
  validate(m);
  std::vector<ExhaustionStep> out(radii.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < static_cast<long>(radii.size()); ++k) {
    const double radius = radii[k];
    const PairTruncation t = pair_truncation(m, radius);
    const FiberProductModel fp = merge_covers(t.first, t.second);
    const FiberTopologyReport rep = topology_report(fp);
    ExhaustionStep &s = out[k];
    s.radius = radius;
    s.interior_branch_points = fp.branch_points.size();
    s.exterior_components = pair_exterior_components(m, radius);
    for (const auto &nc : rep.normalization)
      s.interior_genus += nc.invariants.genus;
    s.interior_ends = rep.ends_total;
    s.interior_connected = rep.connected;
  }
  return out;
}

std::vector<ExhaustionStep> exhaustion_trace(const FiberProductModel &fp,
                                             const std::vector<double> &radii) {
  std::vector<ExhaustionStep> out;
  for (double radius : radii) {
    BranchedCoverSpec c1, c2;
    c1.degree = fp.n1();
    c2.degree = fp.n2();
    std::vector<Permutation> gens;
    for (std::size_t k = 0; k < fp.branch_points.size(); ++k) {
      const Complex &z = fp.branch_points[k];
      if (std::abs(z) >= radius) {
        gens.push_back(fp.diagonal[k]);
        continue;
      }
      if (!fp.sigma[k].is_identity()) {
        c1.branch_points.push_back(z);
        c1.monodromy.push_back(fp.sigma[k]);
      }
      if (!fp.tau[k].is_identity()) {
        c2.branch_points.push_back(z);
        c2.monodromy.push_back(fp.tau[k]);
      }
    }
    const FiberProductModel inner = merge_covers(c1, c2);
    gens.push_back(inner.infinity_action());
    const FiberTopologyReport rep = topology_report(inner);
    ExhaustionStep s;
    s.radius = radius;
    s.interior_branch_points = inner.branch_points.size();
    s.exterior_components = partition_of(gens, fp.cells()).size();
    for (const auto &nc : rep.normalization)
      s.interior_genus += nc.invariants.genus;
    s.interior_ends = rep.ends_total;
    s.interior_connected = rep.connected;
    out.push_back(s);
  }
  return out;
}

std::vector<ClaimCheck> infinite_claim_checks(const InfiniteCoverModel &m) {
  const EndsReport r = ends_of_infinite_cover(m);
  ClaimCheck c{kLochNess, Verdict::HypothesesNotMet, {}};
  bool increasing = !r.genus_lower_bounds.empty();
  for (std::size_t k = 1; k < r.genus_lower_bounds.size(); ++k)
    increasing = increasing && r.genus_lower_bounds[k] >= r.genus_lower_bounds[k - 1];
  increasing = increasing && r.genus_lower_bounds.back() > r.genus_lower_bounds.front();
  std::ostringstream d;
  d << "ends " << r.ends_count << ", non-planar "
    << (r.ends_count == 1 && r.ends[0].non_planar ? "yes" : "no") << ", genus growing "
    << (increasing ? "yes" : "no");
  c.detail = d.str();
  if (is_superelliptic(m)) {
    const bool lnm = r.connected && r.ends_count == 1 && r.ends[0].non_planar && increasing;
    c.verdict = lnm ? Verdict::Confirmed : Verdict::CounterexampleCandidate;
  }
  return {c};
}

std::vector<ClaimCheck> infinite_claim_checks(const InfiniteFiberProductModel &m) {
  const EndsReport r = ends_of_infinite_fiber_product(m);
  std::vector<ClaimCheck> out;
  const bool infinite_g = std::holds_alternative<InfiniteCoverModel>(m.g);
  const BranchedCoverSpec &g0 = second_finite_part(m);

  bool hyp = is_superelliptic(m.f);
  if (infinite_g)
    hyp = hyp && is_superelliptic(std::get<InfiniteCoverModel>(m.g));
  else
    hyp = hyp && is_superelliptic(g0) && g0.branch_points.size() % 2 == 0 &&
          !g0.branch_points.empty();
  for (const Complex &a : g0.branch_points)
    hyp = hyp && std::find(m.f.prefix.branch_points.begin(),
                           m.f.prefix.branch_points.end(),
                           a) != m.f.prefix.branch_points.end();

  const std::size_t q = second_degree(m);
  {
    ClaimCheck c{infinite_g ? kInfiniteOneEnd : kFiniteQEnds, Verdict::HypothesesNotMet, {}};
    const std::size_t expected = infinite_g ? 1 : q;
    std::ostringstream d;
    d << "ends " << r.ends_count << ", expected " << expected;
    if (!infinite_g)
      d << " (gcd(q, |A|) = " << std::gcd(q, g0.branch_points.size()) << ")";
    c.detail = d.str();
    if (hyp) {
      if (r.ends_count == expected)
        c.verdict = Verdict::Confirmed;
      else
        c.verdict = (infinite_g || q == 2) ? Verdict::CounterexampleCandidate
                                           : Verdict::PaperClaimMismatch;
    }
    out.push_back(std::move(c));
  }
  {
    ClaimCheck c{kTruncationsConnected, Verdict::HypothesesNotMet, {}};
    const auto trace = exhaustion_trace(m, default_radii(tail_start(m), 5));
    const bool all = std::all_of(trace.begin(), trace.end(),
                                 [](const ExhaustionStep &s) { return s.interior_connected; });
    c.detail = std::string("glued truncations connected at 5 radii: ") + (all ? "yes" : "no");
    if (hyp)
      c.verdict = all ? Verdict::Confirmed : Verdict::CounterexampleCandidate;
    out.push_back(std::move(c));
  }
  return out;
}

} // namespace branchcov
