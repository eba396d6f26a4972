// Acceptance suite: one PASS/FAIL line per criterion. `acceptance N` runs a
// single criterion; no argument runs all of them.

#include "oracles.hpp"

#include "branchcov/asymptotic.hpp"
#include "branchcov/cli.hpp"
#include "branchcov/continuation.hpp"
#include "branchcov/fiberprod.hpp"
#include "branchcov/isomorph.hpp"
#include "branchcov/random_models.hpp"
#include "branchcov/spec_io.hpp"
#include "branchcov/weierstrass.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

using namespace branchcov;

using Zeros = std::vector<Complex>;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

std::string str(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---- 1 ------------------------------------------------------------------------
Result local_model() {
  std::size_t checked = 0;
  for (int n = 2; n <= 12; ++n)
    for (int m = 2; m <= 12; ++m) {
      const auto branches = local_branches(n, m);
      const auto expected = oracle::rotation_classes(n, m);
      if (branches.size() != static_cast<std::size_t>(std::gcd(n, m)) ||
          expected.size() != branches.size())
        return {false, "branch count wrong at n=" + std::to_string(n) + " m=" + std::to_string(m)};
      std::set<std::pair<int, int>> all;
      std::set<std::set<std::pair<int, int>>> got;
      for (const auto &b : branches) {
        if (b.size() != static_cast<std::size_t>(std::lcm(n, m)))
          return {false, "branch size wrong at n=" + std::to_string(n) + " m=" + std::to_string(m)};
        std::set<std::pair<int, int>> s(b.begin(), b.end());
        all.insert(s.begin(), s.end());
        got.insert(s);
      }
      if (all.size() != static_cast<std::size_t>(n * m) ||
          got != std::set<std::set<std::pair<int, int>>>(expected.begin(), expected.end()))
        return {false, "not a partition at n=" + std::to_string(n) + " m=" + std::to_string(m)};
      ++checked;
    }
  return {true, std::to_string(checked) + " (n, m) pairs"};
}

// ---- 2 ------------------------------------------------------------------------
Result component_bound() {
  Rng rng(2024);
  for (int k = 0; k < 1000; ++k) {
    auto [c1, c2] = random_cover_pair(rng, 6, 5);
    const auto fp = build_fiber_product(c1, c2);
    const auto comps = normalization_components(fp);
    if (comps.size() > std::gcd(fp.n1(), fp.n2()))
      return {false, "instance " + std::to_string(k) + " has " + std::to_string(comps.size()) +
                         " orbits"};
  }
  return {true, "1000 instances"};
}

// ---- 3 ------------------------------------------------------------------------
Result end_count() {
  Rng rng(3031);
  for (int k = 0; k < 100; ++k) {
    auto [c1, c2] = random_cover_pair(rng, 6, 5);
    const auto fp = build_fiber_product(c1, c2);
    const auto tr = topology_report(fp);
    // Exterior orbits: cycles of the loop around infinity on the grid,
    // composed independently here.
    oracle::Images inf(fp.cells());
    std::iota(inf.begin(), inf.end(), 0);
    for (const auto &d : fp.diagonal)
      inf = oracle::compose(inf, d.images());
    std::size_t normal = 0;
    for (const auto &nc : tr.normalization)
      normal += nc.invariants.ends;
    if (oracle::cycle_count(inf) != normal || tr.ends_total != normal)
      return {false, "instance " + std::to_string(k) + ": exterior " +
                         std::to_string(oracle::cycle_count(inf)) + " vs " +
                         std::to_string(normal)};
  }
  return {true, "100 instances"};
}

// ---- 4 ------------------------------------------------------------------------
Result connectedness() {
  Rng rng(4047);
  for (int k = 0; k < 1000; ++k) {
    auto [c1, c2] = random_singular_pair(rng, 6, 5);
    const auto fp = build_fiber_product(c1, c2);
    const auto cc = check_connectedness_theorem(fp);
    if (!cc.hypotheses_hold)
      return {false, "generator produced an instance outside the hypotheses"};
    if (cc.verdict == Verdict::CounterexampleCandidate)
      return {false, "counterexample-candidate at instance " + std::to_string(k)};
  }
  return {true, "1000 instances, gluing graph connected"};
}

// ---- 5 ------------------------------------------------------------------------
InfiniteCoverModel infinite_hyperelliptic(std::vector<Complex> prefix) {
  InfiniteCoverModel m;
  m.degree = 2;
  m.prefix.degree = 2;
  m.prefix.branch_points = std::move(prefix);
  m.prefix.monodromy.assign(m.prefix.branch_points.size(), Permutation({1, 0}));
  m.tail = {Permutation({1, 0})};
  return m;
}

Result stable_ends(const InfiniteFiberProductModel &m, std::size_t expected,
                   const std::string &label) {
  const auto e = ends_of_infinite_fiber_product(m);
  const auto trace = exhaustion_trace(m, default_radii(tail_start(m), 5));
  for (const auto &s : trace)
    if (s.exterior_components != expected)
      return {false, label + ": exterior components " + std::to_string(s.exterior_components) +
                         " at radius " + str(s.radius)};
  if (e.ends_count != expected)
    return {false, label + ": ends " + std::to_string(e.ends_count)};
  return {true, label + " " + std::to_string(expected)};
}

Result hyperelliptic_pair_ends() {
  InfiniteFiberProductModel inf;
  inf.f = infinite_hyperelliptic({{0, 0}, {1, 0}});
  inf.g = infinite_hyperelliptic({{0, 0}, {1, 0}});
  InfiniteFiberProductModel fin;
  fin.f = infinite_hyperelliptic({{0, 0}, {1, 0}});
  fin.g = superelliptic_to_cover({2, {{0, 0}, {1, 0}}});
  const Result a = stable_ends(inf, 1, "infinite A");
  const Result b = stable_ends(fin, 2, "finite A, q=2");
  return {a.pass && b.pass, a.detail + "; " + b.detail};
}

// ---- 6 ------------------------------------------------------------------------
Result loch_ness() {
  const auto m = infinite_hyperelliptic({{0, 0}});
  const auto e = ends_of_infinite_cover(m);
  if (e.ends_count != 1 || !e.ends[0].non_planar)
    return {false, "ends " + std::to_string(e.ends_count)};
  std::vector<double> radii;
  for (double r = 2.5; r <= 20.5; r += 2)
    radii.push_back(r);
  const auto trace = exhaustion_trace(m, radii);
  long prev = -1;
  for (const auto &s : trace) {
    const long L = static_cast<long>(s.interior_branch_points);
    const long b = static_cast<long>(s.interior_ends);
    long direct = 0;
    for (const auto &c : cover_invariants(truncation(m, s.radius)).components)
      direct += c.genus;
    if (s.interior_genus != (L - b) / 2 || s.interior_genus != direct)
      return {false, "genus mismatch at R=" + str(s.radius)};
    if (s.interior_genus <= prev)
      return {false, "genus not strictly increasing at R=" + str(s.radius)};
    prev = s.interior_genus;
  }
  return {true, "1 non-planar end, genus 1..." + std::to_string(prev) + " over R=2.5..20.5"};
}

// ---- 7 ------------------------------------------------------------------------
Result hyperelliptic_genus() {
  for (int k = 1; k <= 10; ++k) {
    SuperellipticSpec s{2, {}};
    for (int i = 0; i < 2 * k; ++i)
      s.zeros.push_back({static_cast<double>(i), 0.25 * (i % 3)});
    const auto inv = cover_invariants(superelliptic_to_cover(s));
    if (inv.component_count() != 1 || inv.components[0].ends != 2 ||
        inv.components[0].genus != k - 1)
      return {false, "k=" + std::to_string(k)};
  }
  return {true, "k=1..10: ends 2, genus k-1"};
}

// ---- 8 ------------------------------------------------------------------------
Result weierstrass_numerics() {
  WeierstrassProductSpec s;
  s.rule = ZeroRule{};
  s.truncation = 400; // zeros +-1 .. +-200
  s.include_zero_at_origin = true;
  s.schedule = {DegreeSchedule::Kind::Constant, 1};

  const auto t0 = std::chrono::steady_clock::now();
  double max_abs = 0, max_ratio = 0, max_dlog = 0;
  bool certified = true, bound_ok = true;
  for (int i = 1; i <= 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const Complex z = std::polar(0.2 * i, 2 * std::numbers::pi * j / 10);
      const auto r = eval_product(s, z);
      const Complex exact = oracle::sin_oracle(z);
      const double err = std::abs(r.value - exact);
      max_abs = std::max(max_abs, err);
      certified = certified && r.certified;
      const double scale = std::max(std::abs(exact), std::abs(r.value));
      bound_ok = bound_ok && err <= 10 * r.error_bound * scale + 1e-15;
      const double to_integer = std::abs(z - std::round(z.real()));
      if (to_integer > 1e-9)
        max_ratio = std::max(max_ratio, err / (r.error_bound * scale));
      if (to_integer > 1e-9)
        max_dlog = std::max(max_dlog, std::abs(log_derivative(s, z) - oracle::cot_oracle(z)));
    }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = max_abs <= 1e-3 && certified && bound_ok && max_dlog <= 1e-3 && seconds < 5;
  return {pass, "max |P-sin(pi z)/pi| " + str(max_abs) + " (limit 1e-3), error/bound " +
                    str(max_ratio) + " off the zeros (limit 10), max |dlog-pi cot| " + str(max_dlog) +
                    " (limit 1e-3), " + str(seconds) + " s"};
}

// ---- 9 ------------------------------------------------------------------------
double relative_residual(const NumericCurve &c, const PathLift &l) {
  double worst = 0;
  for (const auto &s : l.samples) {
    const Complex f = c.f(s.z1);
    Complex w = 1;
    for (int k = 0; k < c.exponent; ++k)
      w *= s.z2;
    worst = std::max(worst, std::abs(w - f) / std::max(1.0, std::abs(f)));
  }
  return worst;
}

Result monodromy_agreement() {
  Rng rng(9090);
  double worst_res = 0, worst_homotopy = 0, worst_reversal = 0;
  std::size_t curves = 0;
  for (int q = 2; q <= 5; ++q)
    for (int trial = 0; trial < 5; ++trial) {
      const auto zeros = random_distinct_points(rng, 1 + rng() % 8, 2.0);
      const auto curve = make_curve(q, zeros);
      const auto cv = cross_validate_monodromy(curve, {q, zeros});
      if (!cv.passed)
        return {false, "q=" + std::to_string(q) + ": " + cv.reason};
      for (const Complex &w : zeros) {
        double gap = 1.0;
        for (const Complex &v : zeros)
          if (v != w)
            gap = std::min(gap, std::abs(v - w));
        const double radius = std::min(0.4 * gap, 0.5);
        const auto path = loop_around(w, radius, w + radius);
        const auto l = lift_path(curve, path, ordered_roots(curve.f(path.front()), q)[0]);
        worst_res = std::max(worst_res, relative_residual(curve, l));
      }
      const Complex a{-3, -3}, b{3, 3};
      const std::vector<Complex> p1{a, {3, -3}, b};
      const std::vector<Complex> p2{a, {0, -4.5}, {4.5, 0}, b};
      const Complex start = ordered_roots(curve.f(a), q)[static_cast<std::size_t>(q - 1)];
      const auto l1 = lift_path(curve, p1, start);
      const auto l2 = lift_path(curve, p2, start);
      worst_homotopy = std::max(worst_homotopy, std::abs(l1.end_value() - l2.end_value()) /
                                                    std::max(1.0, std::abs(l1.end_value())));
      const std::vector<Complex> back(p1.rbegin(), p1.rend());
      const auto l3 = lift_path(curve, back, l1.end_value());
      worst_reversal = std::max(worst_reversal, std::abs(l3.end_value() - start) /
                                                    std::max(1.0, std::abs(start)));
      worst_res = std::max({worst_res, relative_residual(curve, l1),
                            relative_residual(curve, l2), relative_residual(curve, l3)});
      ++curves;
    }
  const bool pass = worst_res <= 1e-10 && worst_homotopy <= 1e-8 && worst_reversal <= 1e-8;
  return {pass, std::to_string(curves) + " curves; residual " + str(worst_res) +
                    ", homotopy " + str(worst_homotopy) + ", reversal " + str(worst_reversal)};
}

// ---- 10 -----------------------------------------------------------------------
Result quotient_and_intersection() {
  Rng rng(1010);
  const CurvePair pair{make_curve(2, Zeros{{0, 0}, {1, 0}, {0, 1}}), make_curve(2, Zeros{{0, 0}, {2, 0}})};
  const auto triples = random_triples(rng, pair, 100, 2.0);
  const auto q = check_quotient_lemma(pair, triples);
  const auto ic = check_double_cover_intersection(pair, triples);
  const bool pass = q.passed && q.max_discrepancy == 0 && ic.passed && ic.exactly_one == 100 &&
                    ic.injective == 100 && ic.image_is_fiber == 100 && ic.non_empty == 100;
  return {pass, "100 triples; discrepancy " + str(q.max_discrepancy) + ", exactly one " +
                    std::to_string(ic.exactly_one)};
}

// ---- 11 -----------------------------------------------------------------------
bool same_maps(const std::vector<AffineMap> &got, const std::vector<oracle::Affine> &expected) {
  if (got.size() != expected.size())
    return false;
  for (const auto &e : expected) {
    bool found = false;
    for (const auto &g : got)
      found = found || approx_equal(g, {e.a, e.c}, 1e-9);
    if (!found)
      return false;
  }
  return true;
}

Result isomorphism_criteria() {
  Rng rng(1111);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> W;
    const std::size_t n = 2 + rng() % 10;
    if (trial % 2 == 0) {
      const Complex c = random_grid_point(rng, 3), r = random_grid_point(rng, 2) + 0.25;
      for (std::size_t k = 0; k < n; ++k)
        W.push_back(c + r * std::polar(1.0, 2 * std::numbers::pi * double(k) / double(n)));
      if (rng() % 2)
        W.push_back(c);
    } else {
      W = random_distinct_points(rng, n, 3);
    }
    std::vector<Complex> A, B;
    for (std::size_t k = 0; k < W.size(); ++k)
      if (rng() % 3 == 0) {
        A.push_back(W[k]);
        B.push_back(W[(k + 1) % W.size()]);
      }
    const auto got = find_affine_equivalences({W, A, B});
    if (!same_maps(got, oracle::centroid_equivalences(W, A, B, 1e-9)))
      return {false, "oracle disagreement at configuration " + std::to_string(trial)};
  }
  const ZeroConfiguration reflect{{{0, 0}, {1, 0}, {2, 0}, {3, 0}}, {{0, 0}, {1, 0}}, {{2, 0}, {3, 0}}};
  const auto v1 = curves_isomorphic(reflect);
  bool reflect_ok = false;
  for (const auto &t : v1.witnesses)
    reflect_ok = reflect_ok || approx_equal(t, {{-1, 0}, {3, 0}}, 1e-9);
  const ZeroConfiguration same{{{0, 0}, {1, 0}, {0.3, 2.2}}, {{1, 0}}, {{1, 0}}};
  bool identity_ok = false;
  for (const auto &t : curves_isomorphic(same).witnesses)
    identity_ok = identity_ok || approx_equal(t, {}, 1e-9);
  const ZeroConfiguration generic{{{0, 0}, {1, 0}, {0.3, 1.7}, {-2.1, 0.4}}, {{0, 0}}, {{1, 0}}};
  const bool negative_ok = !curves_isomorphic(generic).isomorphic;
  const bool pass = v1.isomorphic && reflect_ok && identity_ok && negative_ok;
  return {pass, std::string("200 oracle configurations; 3 - z ") + (reflect_ok ? "ok" : "missing") +
                    ", identity " + (identity_ok ? "ok" : "missing") + ", negative " +
                    (negative_ok ? "ok" : "wrong")};
}

// ---- 12 -----------------------------------------------------------------------
struct GoldenCase {
  const char *command, *data, *golden;
};

const GoldenCase kGolden[] = {
    {"analyze-cover", "hyperelliptic_genus1.json", "analyze_cover.txt"},
    {"fiber-product", "hyperelliptic_pair.json", "fiber_product.txt"},
    {"ends", "loch_ness.json", "ends_loch_ness.txt"},
    {"weval", "sine_product.json", "weval_sine.txt"},
    {"monodromy", "cubic_monodromy.json", "monodromy_cubic.txt"},
    {"isom", "reflection_isomorphism.json", "isom_reflection.txt"},
};

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Result cli_golden() {
  const std::string data = BRANCHCOV_TEST_DATA, golden = BRANCHCOV_GOLDEN_DIR;
  for (const auto &g : kGolden) {
    cli::Options o;
    o.command = g.command;
    o.files = {data + "/" + g.data};
    o.no_timing = true;
    o.check_paper_claims = true;
    std::ostringstream out1, out2, err;
    const int c1 = cli::run(o, out1, err), c2 = cli::run(o, out2, err);
    if (c1 != 0 || c2 != 0)
      return {false, std::string(g.golden) + ": exit " + std::to_string(c1)};
    if (out1.str() != out2.str())
      return {false, std::string(g.golden) + ": runs differ"};
    if (out1.str() != slurp(golden + "/" + g.golden))
      return {false, std::string(g.golden) + ": differs from golden file"};
    const auto doc = io::load_document(o.files[0]);
    const std::string norm = io::normalized(doc);
    const auto again = io::parse_document(norm);
    if (io::normalized(again) != norm || again.index() != doc.index())
      return {false, std::string(g.data) + ": normalized re-emission changed"};
  }
  return {true, "6 golden reports byte-identical; normalized specs round-trip"};
}

struct Criterion {
  const char *name;
  std::function<Result()> run;
};

} // namespace

int main(int argc, char **argv) {
  const std::vector<Criterion> criteria{
      {"local model: gcd(n,m) branches of size lcm(n,m)", local_model},
      {"component bound: orbits <= gcd(n1,n2) on 1000 random products", component_bound},
      {"end count: exterior orbits equal normalization ends on 100 instances", end_count},
      {"connectedness under the singular-fiber hypotheses on 1000 instances", connectedness},
      {"hyperelliptic pair ends: 1 (infinite A), 2 (finite A, q=2)", hyperelliptic_pair_ends},
      {"infinite hyperelliptic surface: one non-planar end, growing genus", loch_ness},
      {"hyperelliptic q=2: ends 2, genus k-1 for k=1..10", hyperelliptic_genus},
      {"Weierstrass sine product, L=200", weierstrass_numerics},
      {"numeric and combinatorial monodromy agree", monodromy_agreement},
      {"quotient and double-cover intersection checks", quotient_and_intersection},
      {"affine equivalence criteria", isomorphism_criteria},
      {"CLI determinism, golden reports, round trip", cli_golden},
  };
  std::size_t first = 1, last = criteria.size();
  if (argc > 1) {
    first = last = std::stoul(argv[1]);
    if (first < 1 || first > criteria.size()) {
      std::cerr << "criterion must be 1.." << criteria.size() << '\n';
      return 2;
    }
  }
  int failures = 0;
  for (std::size_t i = first; i <= last; ++i) {
    Result r;
    try {
      r = criteria[i - 1].run();
    } catch (const std::exception &e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << i << ": " << (r.pass ? "PASS" : "FAIL") << " - "
              << criteria[i - 1].name << " - " << r.detail << std::endl;
    failures += r.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
