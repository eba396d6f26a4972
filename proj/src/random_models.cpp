#include "branchcov/random_models.hpp"

#include <algorithm>
#include <numeric>

namespace branchcov {

Complex random_grid_point(Rng &rng, double extent) {
  const auto steps = static_cast<long>(extent * 8);
  std::uniform_int_distribution<long> d(-steps, steps);
  return {static_cast<double>(d(rng)) / 8.0, static_cast<double>(d(rng)) / 8.0};
}

std::vector<Complex> random_distinct_points(Rng &rng, std::size_t count, double extent) {
  std::vector<Complex> pts;
  while (pts.size() < count) {
    const Complex z = random_grid_point(rng, extent);
    if (std::find(pts.begin(), pts.end(), z) == pts.end())
      pts.push_back(z);
  }
  std::sort(pts.begin(), pts.end(), planar_less);
  return pts;
}

Permutation random_permutation(Rng &rng, std::size_t n) {
  std::vector<Sheet> images(n);
  std::iota(images.begin(), images.end(), 0);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

Permutation random_nonidentity_permutation(Rng &rng, std::size_t n) {
  for (;;) {
    Permutation p = random_permutation(rng, n);
    if (!p.is_identity())
      return p;
  }
}

Permutation random_permutation_with_cycle_factor(Rng &rng, std::size_t n, std::size_t factor) {
  std::vector<Sheet> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Cycle> cycles;
  std::size_t pos = 0;
  while (pos < n) {
    const std::size_t blocks_left = (n - pos) / factor;
    std::uniform_int_distribution<std::size_t> d(1, blocks_left);
    const std::size_t len = d(rng) * factor;
    cycles.emplace_back(order.begin() + static_cast<long>(pos),
                        order.begin() + static_cast<long>(pos + len));
    pos += len;
  }
  return Permutation::from_cycles(n, cycles);
}

BranchedCoverSpec random_connected_cover(Rng &rng, std::size_t degree,
                                         const std::vector<Complex> &points) {
  BranchedCoverSpec spec;
  spec.degree = degree;
  if (degree == 1)
    return spec;
  spec.branch_points = points;
  std::sort(spec.branch_points.begin(), spec.branch_points.end(), planar_less);
  for (;;) {
    spec.monodromy.clear();
    for (std::size_t k = 0; k < spec.branch_points.size(); ++k)
      spec.monodromy.push_back(random_nonidentity_permutation(rng, degree));
    if (is_connected(spec))
      return spec;
  }
}

namespace {

std::vector<Complex> random_subset(Rng &rng, const std::vector<Complex> &pool,
                                   std::size_t min_size) {
  for (;;) {
    std::vector<Complex> out;
    std::bernoulli_distribution keep(0.6);
    for (const Complex &z : pool)
      if (keep(rng))
        out.push_back(z);
    if (out.size() >= min_size)
      return out;
  }
}

} // namespace

std::pair<BranchedCoverSpec, BranchedCoverSpec>
random_cover_pair(Rng &rng, std::size_t max_degree, std::size_t max_points) {
  std::uniform_int_distribution<std::size_t> deg(1, max_degree);
  std::uniform_int_distribution<std::size_t> npts(2, max_points);
  const auto pool = random_distinct_points(rng, npts(rng), 2.0);
  const std::size_t n1 = deg(rng), n2 = deg(rng);
  // A connected cover of degree >= 2 needs at least one branch point; two
  // keep the search for a transitive tuple short.
  auto c1 = random_connected_cover(rng, n1, random_subset(rng, pool, n1 > 1 ? 2 : 0));
  auto c2 = random_connected_cover(rng, n2, random_subset(rng, pool, n2 > 1 ? 2 : 0));
  return {std::move(c1), std::move(c2)};
}

std::pair<BranchedCoverSpec, BranchedCoverSpec>
random_singular_pair(Rng &rng, std::size_t max_degree, std::size_t max_points) {
  // Degrees share a prime factor p; over the second branch set both
  // monodromies have only cycle lengths divisible by p, so every gcd >= p.
  std::vector<std::size_t> primes;
  for (std::size_t p : {2u, 3u, 5u})
    if (p <= max_degree)
      primes.push_back(p);
  const std::size_t p = primes[std::uniform_int_distribution<std::size_t>(
      0, primes.size() - 1)(rng)];
  std::uniform_int_distribution<std::size_t> mult(1, max_degree / p);
  const std::size_t n1 = p * mult(rng), n2 = p * mult(rng);

  std::uniform_int_distribution<std::size_t> npts(2, std::max<std::size_t>(2, max_points));
  const auto pool = random_distinct_points(rng, npts(rng), 2.0);
  std::uniform_int_distribution<std::size_t> shared_count(1, pool.size());
  const std::size_t k2 = shared_count(rng);

  for (;;) {
    BranchedCoverSpec c1, c2;
    c1.degree = n1;
    c2.degree = n2;
    c1.branch_points = pool;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (k < k2) {
        c1.monodromy.push_back(random_permutation_with_cycle_factor(rng, n1, p));
        c2.branch_points.push_back(pool[k]);
        c2.monodromy.push_back(random_permutation_with_cycle_factor(rng, n2, p));
      } else {
        c1.monodromy.push_back(random_nonidentity_permutation(rng, n1));
      }
    }
    if (is_connected(c1) && is_connected(c2))
      return {std::move(c1), std::move(c2)};
  }
}

std::vector<TriplePoint> random_triples(Rng &rng, const CurvePair &pair, std::size_t count,
                                        double extent) {
  std::uniform_real_distribution<double> coord(-extent, extent);
  std::bernoulli_distribution sign(0.5), singular(0.2);
  std::vector<TriplePoint> out;
  const auto &g_zeros = pair.g.branch_points;
  while (out.size() < count) {
    TriplePoint x;
    if (!g_zeros.empty() && singular(rng)) {
      x.z1 = g_zeros[std::uniform_int_distribution<std::size_t>(0, g_zeros.size() - 1)(rng)];
    } else {
      x.z1 = {coord(rng), coord(rng)};
    }
    x.z2 = std::sqrt(pair.f.f(x.z1));
    x.z3 = std::sqrt(pair.g.f(x.z1));
    if (sign(rng))
      x.z2 = -x.z2;
    if (sign(rng))
      x.z3 = -x.z3;
    out.push_back(x);
  }
  return out;
}

} // namespace branchcov
