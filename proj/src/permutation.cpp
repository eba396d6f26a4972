#include "branchcov/permutation.hpp"

#include "branchcov/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace branchcov {

Permutation::Permutation(std::vector<Sheet> images) : images_(std::move(images)) {
  if (!is_bijection(images_))
    throw SpecError("not a bijection");
}

bool Permutation::is_bijection(std::span<const Sheet> images) {
  std::vector<char> seen(images.size(), 0);
  for (Sheet s : images) {
    if (s < 0 || static_cast<std::size_t>(s) >= images.size() || seen[s])
      return false;
    seen[s] = 1;
  }
  return true;
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Sheet> images(n);
  std::iota(images.begin(), images.end(), 0);
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::standard_cycle(std::size_t n) {
  std::vector<Sheet> images(n);
  for (std::size_t i = 0; i < n; ++i)
    images[i] = static_cast<Sheet>((i + 1) % n);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<Cycle> &cycles) {
  Permutation p = identity(n);
  std::vector<char> used(n, 0);
  for (const Cycle &c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      Sheet a = c[k];
      if (a < 0 || static_cast<std::size_t>(a) >= n || used[a])
        throw SpecError("not a bijection");
      used[a] = 1;
      p.images_[a] = c[(k + 1) % c.size()];
    }
  }
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<Sheet>(i))
      return false;
  return true;
}

Permutation Permutation::then(const Permutation &next) const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    r.images_[i] = next.images_[images_[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    r.images_[images_[i]] = static_cast<Sheet>(i);
  return r;
}

Permutation Permutation::conjugated_by(const Permutation &relabel) const {
  // relabel^-1 * this * relabel, so that relabel(i) -> relabel(this(i)).
  return relabel.inverse().then(*this).then(relabel);
}

std::vector<Cycle> Permutation::cycles() const {
  std::vector<Cycle> out;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start])
      continue;
    Cycle c;
    Sheet s = static_cast<Sheet>(start);
    while (!seen[s]) {
      seen[s] = 1;
      c.push_back(s);
      s = images_[s];
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t Permutation::cycle_count() const { return cycles().size(); }

std::size_t Permutation::cycle_count_on(std::span<const Sheet> sheets) const {
  std::vector<char> in(images_.size(), 0), seen(images_.size(), 0);
  for (Sheet s : sheets)
    in[s] = 1;
  std::size_t count = 0;
  for (Sheet start : sheets) {
    if (seen[start])
      continue;
    ++count;
    for (Sheet s = start; !seen[s]; s = images_[s])
      seen[s] = 1;
  }
  return count;
}

std::string Permutation::to_string() const {
  std::ostringstream out;
  for (const Cycle &c : cycles()) {
    out << '(';
    for (std::size_t k = 0; k < c.size(); ++k)
      out << (k ? " " : "") << c[k];
    out << ')';
  }
  return out.str();
}

Permutation product(std::span<const Permutation> factors, std::size_t n) {
  Permutation acc = Permutation::identity(n);
  for (const Permutation &p : factors)
    acc = acc.then(p);
  return acc;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return;
    if (a < b)
      parent[b] = a;
    else
      parent[a] = b;
  }
};

} // namespace

std::vector<std::vector<Sheet>> orbits(std::span<const Permutation> generators,
                                       std::size_t n) {
  DisjointSets sets(n);
  for (const Permutation &g : generators)
    for (std::size_t i = 0; i < n; ++i)
      sets.unite(i, static_cast<std::size_t>(g(static_cast<Sheet>(i))));

  std::vector<std::vector<Sheet>> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = sets.find(i);
    if (slot[root] == n) {
      slot[root] = out.size();
      out.emplace_back();
    }
    out[slot[root]].push_back(static_cast<Sheet>(i));
  }
  return out;
}

bool is_transitive(std::span<const Permutation> generators, std::size_t n) {
  return n <= 1 || orbits(generators, n).size() == 1;
}

} // namespace branchcov
