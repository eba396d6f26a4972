#include "branchcov/asymptotic.hpp"
#include "branchcov/cli.hpp"
#include "branchcov/continuation.hpp"
#include "branchcov/error.hpp"
#include "branchcov/fiberprod.hpp"
#include "branchcov/isomorph.hpp"
#include "branchcov/random_models.hpp"
#include "branchcov/spec_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

namespace branchcov::cli {

namespace {

using io::SpecDocument;

std::string fmt(double x) { return format_double(x); }
std::string fmt(const Complex &z) { return format_complex(z); }
std::string fmt(bool b) { return b ? "true" : "false"; }
std::string fmt(std::size_t n) { return std::to_string(n); }
std::string fmt(long n) { return std::to_string(n); }

std::string sheet_set(std::span<const Sheet> sheets) {
  std::string s = "{";
  for (std::size_t i = 0; i < sheets.size(); ++i)
    s += (i ? " " : "") + std::to_string(sheets[i]);
  return s + "}";
}

std::string cell_set(const FiberProductModel &fp, std::span<const Cell> cells) {
  std::string s = "{";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto [a, b] = fp.coords(cells[i]);
    s += (i ? " (" : "(") + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  return s + "}";
}

std::string cycle_text(const Cycle &c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i)
    s += (i ? " " : "") + std::to_string(c[i]);
  return s + ")";
}

/// Everything one spec file contributes to the run.
struct Outcome {
  Report report;
  std::optional<Sketch> sketch;
  std::string normalized;
  std::string diagnostic;
  int exit_code = kExitOk;
};

class Analysis {
public:
  Analysis(const Options &opts, Report &r, std::optional<Sketch> &sketch)
      : opts_(opts), r_(r), sketch_(sketch) {}

  bool claims_requested() const {
    return opts_.check_paper_claims || opts_.command == "check-claims";
  }

  void claims(const std::vector<ClaimCheck> &checks) {
    for (const ClaimCheck &c : checks) {
      claims_.push_back(c);
    }
  }

  void finish_claims() {
    if (!claims_requested())
      return;
    if (claims_.empty()) {
      r_.add("claims", "count", "0");
      return;
    }
    for (const ClaimCheck &c : claims_) {
      r_.add("claims", c.name, std::string(to_string(c.verdict)));
      r_.add("claims", c.name + ".detail", c.detail);
    }
  }

  bool counterexample() const { return claims_requested() && any_counterexample(claims_); }

  // ---- echo ---------------------------------------------------------------

  void echo_cover(const std::string &prefix, const BranchedCoverSpec &c,
                  const std::optional<SuperellipticSpec> &super) {
    if (super) {
      r_.add("input", prefix + "exponent", std::to_string(super->exponent));
      for (std::size_t i = 0; i < super->zeros.size(); ++i)
        r_.add("input", prefix + "zero", i, fmt(super->zeros[i]));
    }
    r_.add("input", prefix + "degree", fmt(c.degree));
    for (std::size_t i = 0; i < c.branch_points.size(); ++i)
      r_.add("input", prefix + "branch_point", i, fmt(c.branch_points[i]));
    for (std::size_t i = 0; i < c.monodromy.size(); ++i)
      r_.add("input", prefix + "monodromy", i, c.monodromy[i].to_string());
  }

  void echo_infinite(const std::string &prefix, const InfiniteCoverModel &m) {
    r_.add("input", prefix + "degree", fmt(m.degree));
    for (std::size_t i = 0; i < m.prefix.branch_points.size(); ++i)
      r_.add("input", prefix + "prefix_point", i, fmt(m.prefix.branch_points[i]));
    for (std::size_t i = 0; i < m.prefix.monodromy.size(); ++i)
      r_.add("input", prefix + "prefix_monodromy", i, m.prefix.monodromy[i].to_string());
    for (std::size_t i = 0; i < m.tail.size(); ++i)
      r_.add("input", prefix + "tail", i, m.tail[i].to_string());
    r_.add("input", prefix + "tail_start", fmt(tail_start(m)));
  }

  void sketch_points(std::string title, const std::vector<Complex> &pts,
                     std::vector<std::string> badges, bool show_order = true) {
    Sketch s;
    s.title = std::move(title);
    s.points = pts;
    for (std::size_t i = 0; i < pts.size(); ++i)
      s.labels.push_back(std::to_string(i));
    s.show_order = show_order;
    s.badges = std::move(badges);
    sketch_ = std::move(s);
  }

  // ---- covers ---------------------------------------------------------------

  void cover_section(const BranchedCoverSpec &c) {
    const CoverInvariants inv = cover_invariants(c);
    r_.add("cover", "infinity_monodromy", infinity_monodromy(c).to_string());
    r_.add("cover", "connected", fmt(inv.component_count() == 1));
    r_.add("cover", "component_count", fmt(inv.component_count()));
    r_.add("cover", "total_ends", fmt(inv.total_ends()));
    std::vector<std::string> badges;
    for (std::size_t k = 0; k < inv.components.size(); ++k) {
      const ComponentInvariants &comp = inv.components[k];
      r_.add("components", "sheets", k, sheet_set(comp.sheets));
      r_.add("components", "degree", k, fmt(comp.degree));
      r_.add("components", "ends", k, fmt(comp.ends));
      r_.add("components", "genus", k, fmt(comp.genus));
      r_.add("components", "euler_characteristic", k, fmt(comp.euler_characteristic));
      badges.push_back("component " + std::to_string(k) + ": degree " + fmt(comp.degree) +
                       ", ends " + fmt(comp.ends) + ", genus " + fmt(comp.genus));
    }
    sketch_points("cover of degree " + fmt(c.degree), c.branch_points, std::move(badges));
  }

  void analyze_cover(const io::CoverDoc &d) {
    echo_cover("", d.cover, d.super);
    cover_section(d.cover);
    if (claims_requested()) {
      if (d.super)
        claims({superelliptic_claim_check(*d.super)});
      else
        claims({{kSuperellipticEndsGenus, Verdict::HypothesesNotMet,
                 "not a superelliptic spec"}});
    }
  }

  // ---- fiber products ---------------------------------------------------------

  void fiber_product(const io::FiberProductDoc &d) {
    echo_cover("cover1.", d.cover1, d.super1);
    echo_cover("cover2.", d.cover2, d.super2);
    const FiberProductModel fp = build_fiber_product(d.cover1, d.cover2);
    const FiberTopologyReport tr = topology_report(fp);

    r_.add("model", "cells", fmt(fp.cells()));
    for (std::size_t i = 0; i < fp.branch_points.size(); ++i) {
      r_.add("model", "branch_point", i, fmt(fp.branch_points[i]));
      r_.add("model", "sigma", i, fp.sigma[i].to_string());
      r_.add("model", "tau", i, fp.tau[i].to_string());
    }

    const std::size_t bound = std::gcd(fp.n1(), fp.n2());
    r_.add("normalization", "component_count", fmt(tr.normalization.size()));
    r_.add("normalization", "gcd_bound", fmt(bound));
    r_.add("normalization", "bound_holds", fmt(tr.normalization.size() <= bound));
    for (std::size_t k = 0; k < tr.normalization.size(); ++k) {
      const NormalizationComponent &nc = tr.normalization[k];
      r_.add("normalization", "cells", k, cell_set(fp, nc.orbit));
      r_.add("normalization", "degree", k, fmt(nc.invariants.degree));
      r_.add("normalization", "ends", k, fmt(nc.invariants.ends));
      r_.add("normalization", "genus", k, fmt(nc.invariants.genus));
    }

    r_.add("singular", "count", fmt(tr.singular_points.size()));
    for (std::size_t s = 0; s < tr.singular_points.size(); ++s) {
      const SingularPoint &sp = tr.singular_points[s];
      r_.add("singular", "base_point", s, fmt(sp.base_point));
      r_.add("singular", "cycle1", s, cycle_text(sp.cycle1));
      r_.add("singular", "cycle2", s, cycle_text(sp.cycle2));
      r_.add("singular", "d", s, fmt(sp.d));
      std::string branches;
      for (std::size_t b = 0; b < sp.local_branches.size(); ++b)
        branches += (b ? "; " : "") + cell_set(fp, sp.local_branches[b].cells) + " -> " +
                    std::to_string(sp.local_branches[b].component);
      r_.add("singular", "local_branches", s, branches);
    }

    r_.add("topology", "gluing_components", fmt(tr.gluing_components.size()));
    r_.add("topology", "connected", fmt(tr.connected));
    r_.add("topology", "ends_total", fmt(tr.ends_total));
    r_.add("topology", "exterior_ends", fmt(tr.exterior_ends));

    std::vector<std::string> labels;
    std::vector<std::string> badges{
        "normalization components: " + fmt(tr.normalization.size()) + " (gcd bound " +
            fmt(bound) + ")",
        "singular points: " + fmt(tr.singular_points.size()),
        std::string("connected: ") + fmt(tr.connected) + ", ends: " + fmt(tr.ends_total)};
    sketch_points("fiber product " + fmt(fp.n1()) + " x " + fmt(fp.n2()), fp.branch_points,
                  std::move(badges));
    claims(tr.claim_checks);
  }

  // ---- ends and exhaustion ----------------------------------------------------

  void ends_report(const EndsReport &e) {
    r_.add("ends", "ends_count", fmt(e.ends_count));
    r_.add("ends", "connected", fmt(e.connected));
    r_.add("ends", "stabilization_radius", fmt(e.stabilization_radius));
    for (std::size_t k = 0; k < e.ends.size(); ++k) {
      r_.add("ends", "orbit", k, sheet_set(e.ends[k].orbit));
      r_.add("ends", "non_planar", k, fmt(e.ends[k].non_planar));
    }
    for (std::size_t k = 0; k < e.genus_lower_bounds.size(); ++k)
      r_.add("ends", "interior_genus", k, fmt(e.genus_lower_bounds[k]));
  }

  void finite_ends(const Permutation &infinity, std::size_t components) {
    const auto cycles = infinity.cycles();
    r_.add("ends", "ends_count", fmt(cycles.size()));
    r_.add("ends", "connected", fmt(components == 1));
    for (std::size_t k = 0; k < cycles.size(); ++k) {
      Cycle orbit = cycles[k];
      std::sort(orbit.begin(), orbit.end());
      r_.add("ends", "orbit", k, sheet_set(orbit));
      r_.add("ends", "non_planar", k, fmt(false));
    }
  }

  void ends(const SpecDocument &doc) {
    if (auto *d = std::get_if<io::CoverDoc>(&doc)) {
      echo_cover("", d->cover, d->super);
      finite_ends(infinity_monodromy(d->cover), cover_invariants(d->cover).component_count());
      sketch_points("ends of a finite cover", d->cover.branch_points, {});
      if (claims_requested() && d->super)
        claims({superelliptic_claim_check(*d->super)});
    } else if (auto *d = std::get_if<io::FiberProductDoc>(&doc)) {
      echo_cover("cover1.", d->cover1, d->super1);
      echo_cover("cover2.", d->cover2, d->super2);
      const FiberProductModel fp = build_fiber_product(d->cover1, d->cover2);
      const FiberTopologyReport tr = topology_report(fp);
      const auto cycles = fp.infinity_action().cycles();
      r_.add("ends", "ends_count", fmt(cycles.size()));
      r_.add("ends", "connected", fmt(tr.connected));
      for (std::size_t k = 0; k < cycles.size(); ++k) {
        Cycle orbit = cycles[k];
        std::sort(orbit.begin(), orbit.end());
        r_.add("ends", "cells", k, cell_set(fp, orbit));
      }
      r_.add("ends", "normalization_ends_total", fmt(tr.ends_total));
      sketch_points("ends of a fiber product", fp.branch_points, {});
      claims(tr.claim_checks);
    } else if (auto *d = std::get_if<io::InfiniteCoverDoc>(&doc)) {
      echo_infinite("", d->model);
      const EndsReport e = ends_of_infinite_cover(d->model);
      ends_report(e);
      infinite_sketch(d->model, e);
      claims(infinite_claim_checks(d->model));
    } else if (auto *d = std::get_if<io::InfiniteFiberProductDoc>(&doc)) {
      echo_infinite("f.", d->model.f);
      if (auto *g = std::get_if<InfiniteCoverModel>(&d->model.g))
        echo_infinite("g.", *g);
      else
        echo_cover("g.", std::get<BranchedCoverSpec>(d->model.g), d->g_super);
      const EndsReport e = ends_of_infinite_fiber_product(d->model);
      ends_report(e);
      infinite_sketch(d->model.f, e);
      claims(infinite_claim_checks(d->model));
    } else {
      wrong_kind(doc, "a cover, fiber-product or infinite model spec");
    }
  }

  void infinite_sketch(const InfiniteCoverModel &m, const EndsReport &e) {
    std::vector<Complex> pts = truncation(m, tail_start(m) + 4.5).branch_points;
    sketch_points("infinite model (prefix and first tail points)", pts,
                  {"ends: " + fmt(e.ends_count), "tail period: " + fmt(m.tail.size())});
  }

  static double finite_extent(const std::vector<Complex> &pts) {
    double r = 0;
    for (const Complex &z : pts)
      r = std::max(r, std::abs(z));
    return r;
  }

  std::vector<double> finite_radii(const std::optional<std::vector<double>> &given,
                                   const std::vector<Complex> &pts) {
    if (given)
      return *given;
    return default_radii(0.0, static_cast<std::size_t>(std::ceil(finite_extent(pts))) + 2);
  }

  void trace(const std::vector<ExhaustionStep> &steps, bool fiber) {
    r_.add("exhaustion", "radii", fmt(steps.size()));
    for (std::size_t k = 0; k < steps.size(); ++k) {
      const ExhaustionStep &s = steps[k];
      r_.add("exhaustion", "radius", k, fmt(s.radius));
      r_.add("exhaustion", "interior_branch_points", k, fmt(s.interior_branch_points));
      r_.add("exhaustion", "exterior_components", k, fmt(s.exterior_components));
      r_.add("exhaustion", "interior_genus", k, fmt(s.interior_genus));
      r_.add("exhaustion", "interior_ends", k, fmt(s.interior_ends));
      if (fiber)
        r_.add("exhaustion", "interior_connected", k, fmt(s.interior_connected));
    }
  }

  void exhaust(const SpecDocument &doc) {
    if (auto *d = std::get_if<io::CoverDoc>(&doc)) {
      echo_cover("", d->cover, d->super);
      trace(exhaustion_trace(d->cover, finite_radii(d->radii, d->cover.branch_points)), false);
      sketch_points("exhaustion of a finite cover", d->cover.branch_points, {});
    } else if (auto *d = std::get_if<io::FiberProductDoc>(&doc)) {
      echo_cover("cover1.", d->cover1, d->super1);
      echo_cover("cover2.", d->cover2, d->super2);
      const FiberProductModel fp = build_fiber_product(d->cover1, d->cover2);
      trace(exhaustion_trace(fp, finite_radii(std::nullopt, fp.branch_points)), true);
      sketch_points("exhaustion of a fiber product", fp.branch_points, {});
    } else if (auto *d = std::get_if<io::InfiniteCoverDoc>(&doc)) {
      echo_infinite("", d->model);
      const auto radii = d->radii ? *d->radii : default_radii(tail_start(d->model), 10);
      trace(exhaustion_trace(d->model, radii), false);
      infinite_sketch(d->model, ends_of_infinite_cover(d->model));
      claims(infinite_claim_checks(d->model));
    } else if (auto *d = std::get_if<io::InfiniteFiberProductDoc>(&doc)) {
      echo_infinite("f.", d->model.f);
      const auto radii = d->radii ? *d->radii : default_radii(tail_start(d->model), 10);
      trace(exhaustion_trace(d->model, radii), true);
      infinite_sketch(d->model.f, ends_of_infinite_fiber_product(d->model));
      claims(infinite_claim_checks(d->model));
    } else {
      wrong_kind(doc, "a cover, fiber-product or infinite model spec");
    }
  }

  // ---- numerics ---------------------------------------------------------------

  void echo_product(const std::string &prefix, const WeierstrassProductSpec &s) {
    if (s.rule) {
      static constexpr const char *names[] = {"symmetric-integers", "positive-integers",
                                              "arithmetic"};
      r_.add("input", prefix + "rule", names[static_cast<int>(s.rule->kind)]);
      if (s.rule->kind == ZeroRule::Kind::Arithmetic) {
        r_.add("input", prefix + "rule.start", fmt(s.rule->start));
        r_.add("input", prefix + "rule.step", fmt(s.rule->step));
      }
      r_.add("input", prefix + "truncation", fmt(s.truncation));
    } else {
      for (std::size_t i = 0; i < s.zeros.size(); ++i)
        r_.add("input", prefix + "zero", i, fmt(s.zeros[i]));
    }
    r_.add("input", prefix + "origin_zero", fmt(s.include_zero_at_origin));
    r_.add("input", prefix + "schedule",
           s.schedule.kind == DegreeSchedule::Kind::Index
               ? std::string("index")
               : "constant " + std::to_string(s.schedule.value));
  }

  double tolerance(double from_doc) const { return opts_.tol ? *opts_.tol : from_doc; }

  void weval(const io::WeierstrassDoc &d) {
    echo_product("", d.spec);
    const double tol = tolerance(d.spec.target_tolerance);
    r_.add("input", "tolerance", fmt(tol));
    for (std::size_t i = 0; i < d.points.size(); ++i) {
      const Complex z = d.points[i];
      const EvalResult e = eval_product(d.spec, z);
      r_.add("values", "z", i, fmt(z));
      r_.add("values", "value", i, fmt(e.value));
      r_.add("values", "error_bound", i, fmt(e.error_bound));
      r_.add("values", "certified", i, fmt(e.certified));
      r_.add("values", "within_tolerance", i, fmt(e.within_tolerance(tol)));
      r_.add("values", "terms_used", i, fmt(e.terms_used));
      std::string dlog;
      try {
        dlog = fmt(log_derivative(d.spec, z));
      } catch (const NumericalError &) {
        dlog = "pole";
      }
      r_.add("values", "log_derivative", i, dlog);
    }
    std::vector<Complex> zeros = d.spec.truncated_zeros();
    std::vector<Complex> shown;
    for (const Complex &w : zeros)
      if (std::abs(w) <= 4.0)
        shown.push_back(w);
    if (d.spec.include_zero_at_origin)
      shown.insert(shown.begin(), Complex{0.0, 0.0});
    std::sort(shown.begin(), shown.end(), planar_less);
    Sketch s;
    s.title = "Weierstrass product zeros (|w| <= 4) and probe points";
    s.points = shown;
    s.labels.assign(shown.size(), "");
    s.show_order = false;
    s.path = d.points;
    s.badges = {"zeros retained: " + fmt(zeros.size() + (d.spec.include_zero_at_origin ? 1 : 0)),
                "probe points: " + fmt(d.points.size())};
    sketch_ = std::move(s);
  }

  void lift(const io::LiftDoc &d) {
    r_.add("input", "exponent", std::to_string(d.exponent));
    echo_product("base.", d.base);
    for (std::size_t i = 0; i < d.path.size(); ++i)
      r_.add("input", "path", i, fmt(d.path[i]));
    const NumericCurve curve = make_curve(d.exponent, d.base);
    const auto roots0 = ordered_roots(curve.f(d.path.front()), d.exponent);
    const Complex start = d.start ? *d.start : roots0.front();
    r_.add("input", "start", fmt(start));

    LiftOptions lo;
    lo.tolerance = tolerance(kDefaultTolerance);
    const PathLift pl = lift_path(curve, d.path, start, lo);
    r_.add("lift", "samples", fmt(pl.samples.size()));
    r_.add("lift", "accepted_steps", fmt(pl.accepted_steps));
    r_.add("lift", "rejected_steps", fmt(pl.rejected_steps));
    r_.add("lift", "smallest_step", fmt(pl.smallest_step));
    r_.add("lift", "min_branch_distance", fmt(pl.min_branch_distance));
    r_.add("lift", "max_residual", fmt(pl.max_residual));
    r_.add("lift", "tolerance", fmt(pl.tolerance));
    const auto roots1 = ordered_roots(curve.f(d.path.back()), d.exponent);
    const std::size_t start_sheet = nearest(roots0, start);
    const std::size_t end_sheet = nearest(roots1, pl.end_value());
    r_.add("lift", "end_value", fmt(pl.end_value()));
    r_.add("lift", "start_sheet", fmt(start_sheet));
    r_.add("lift", "end_sheet", fmt(end_sheet));
    std::size_t vertex = 0;
    const double segments = static_cast<double>(d.path.size() - 1);
    for (const PathSample &s : pl.samples) {
      const bool at_vertex =
          d.path.size() == 1 || s.t * segments == static_cast<double>(vertex);
      if (!at_vertex)
        continue;
      r_.add("vertices", "z1", vertex, fmt(s.z1));
      r_.add("vertices", "z2", vertex, fmt(s.z2));
      ++vertex;
    }

    Sketch s;
    s.title = "path lift on z2^" + std::to_string(d.exponent) + " = f(z1)";
    for (const Complex &b : curve.branch_points)
      if (std::abs(b) <= 8.0)
        s.points.push_back(b);
    std::sort(s.points.begin(), s.points.end(), planar_less);
    s.labels.assign(s.points.size(), "");
    s.show_order = false;
    s.path = d.path;
    s.badges = {"sheet " + fmt(start_sheet) + " -> sheet " + fmt(end_sheet),
                "max residual " + fmt(pl.max_residual)};
    sketch_ = std::move(s);
  }

  static std::size_t nearest(const std::vector<Complex> &roots, const Complex &w) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < roots.size(); ++i)
      if (std::abs(roots[i] - w) < std::abs(roots[best] - w))
        best = i;
    return best;
  }

  bool monodromy(const io::MonodromyDoc &d) {
    r_.add("input", "exponent", std::to_string(d.exponent));
    for (std::size_t i = 0; i < d.zeros.size(); ++i)
      r_.add("input", "zero", i, fmt(d.zeros[i]));
    const NumericCurve curve = make_curve(d.exponent, d.zeros);
    LiftOptions lo;
    lo.tolerance = tolerance(kDefaultTolerance);
    std::vector<std::string> badges;
    bool passed = true;
    if (d.point) {
      double gap = std::numeric_limits<double>::infinity();
      for (const Complex &w : curve.branch_points)
        if (w != *d.point)
          gap = std::min(gap, std::abs(w - *d.point));
      const double radius = d.radius ? *d.radius : std::min(0.4 * gap, 0.5);
      const Complex base = d.base ? *d.base : *d.point + radius;
      const Permutation p = numeric_monodromy(curve, *d.point, radius, base, lo);
      const bool is_zero = std::find(curve.branch_points.begin(), curve.branch_points.end(),
                                     *d.point) != curve.branch_points.end();
      const Permutation expected =
          is_zero ? Permutation::standard_cycle(static_cast<std::size_t>(d.exponent))
                  : Permutation::identity(static_cast<std::size_t>(d.exponent));
      passed = p == expected;
      r_.add("monodromy", "point", fmt(*d.point));
      r_.add("monodromy", "radius", fmt(radius));
      r_.add("monodromy", "base", fmt(base));
      r_.add("monodromy", "numeric", p.to_string());
      r_.add("monodromy", "expected", expected.to_string());
      r_.add("monodromy", "match", fmt(passed));
      badges.push_back("numeric " + p.to_string() + " expected " + expected.to_string());
      Sketch s;
      s.title = "monodromy loop";
      s.points = curve.branch_points;
      s.labels.assign(s.points.size(), "");
      s.show_order = false;
      s.path = loop_around(*d.point, radius, base);
      s.badges = badges;
      sketch_ = std::move(s);
    } else {
      SuperellipticSpec spec{d.exponent, d.zeros};
      const CrossValidation cv = cross_validate_monodromy(curve, spec, lo);
      passed = cv.passed;
      for (std::size_t k = 0; k < cv.per_point.size(); ++k) {
        const MonodromyComparison &m = cv.per_point[k];
        r_.add("monodromy", "point", k, fmt(m.point));
        r_.add("monodromy", "numeric", k, m.numeric.to_string());
        r_.add("monodromy", "expected", k, m.expected.to_string());
        r_.add("monodromy", "match", k, fmt(m.match));
      }
      r_.add("monodromy", "passed", fmt(cv.passed));
      if (!cv.reason.empty())
        r_.add("monodromy", "reason", cv.reason);
      std::vector<Complex> pts;
      for (const auto &m : cv.per_point)
        pts.push_back(m.point);
      sketch_points("numeric monodromy cross-validation", pts,
                    {std::string("agreement: ") + fmt(cv.passed)});
    }
    return passed;
  }

  void isom(const io::IsomorphismDoc &d) {
    IsomorphismVerdict v;
    std::vector<Complex> pts;
    if (d.hyperelliptic) {
      for (std::size_t i = 0; i < d.W1.size(); ++i)
        r_.add("input", "W1", i, fmt(d.W1[i]));
      for (std::size_t i = 0; i < d.W2.size(); ++i)
        r_.add("input", "W2", i, fmt(d.W2[i]));
      v = hyperelliptic_equivalence(d.W1, d.W2);
      pts = d.W1;
      pts.insert(pts.end(), d.W2.begin(), d.W2.end());
    } else {
      for (std::size_t i = 0; i < d.config.W.size(); ++i)
        r_.add("input", "W", i, fmt(d.config.W[i]));
      for (std::size_t i = 0; i < d.config.A.size(); ++i)
        r_.add("input", "A", i, fmt(d.config.A[i]));
      for (std::size_t i = 0; i < d.config.B.size(); ++i)
        r_.add("input", "B", i, fmt(d.config.B[i]));
      r_.add("input", "mode", opts_.strict_pointwise ? "pointwise" : "setwise");
      IsomorphismOptions io;
      io.strict_pointwise = opts_.strict_pointwise;
      v = curves_isomorphic(d.config, io);
      pts = d.config.W;
    }
    r_.add("isomorphism", "isomorphic", fmt(v.isomorphic));
    r_.add("isomorphism", "witness_count", fmt(v.witnesses.size()));
    for (std::size_t k = 0; k < v.witnesses.size(); ++k)
      r_.add("isomorphism", "witness", k, v.witnesses[k].to_string());
    if (!v.reason.empty())
      r_.add("isomorphism", "reason", v.reason);
    std::sort(pts.begin(), pts.end(), planar_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    sketch_points("affine equivalence", pts,
                  {std::string("isomorphic: ") + fmt(v.isomorphic),
                   "witnesses: " + fmt(v.witnesses.size())},
                  false);
  }

  // ---- claims -------------------------------------------------------------------

  void check_claims(const SpecDocument &doc) {
    if (auto *d = std::get_if<io::CoverDoc>(&doc))
      analyze_cover(*d);
    else if (auto *d = std::get_if<io::FiberProductDoc>(&doc))
      fiber_product(*d);
    else if (std::holds_alternative<io::InfiniteCoverDoc>(doc) ||
             std::holds_alternative<io::InfiniteFiberProductDoc>(doc))
      ends(doc);
    else
      wrong_kind(doc, "a cover, fiber-product or infinite model spec");
  }

  [[noreturn]] void wrong_kind(const SpecDocument &doc, const std::string &expected) {
    throw SpecError(opts_.command + " expects " + expected + ", got \"" + io::kind_of(doc) +
                    "\"");
  }

private:
  const Options &opts_;
  Report &r_;
  std::optional<Sketch> &sketch_;
  std::vector<ClaimCheck> claims_;
};

int dispatch(const Options &opts, const SpecDocument &doc, Report &r,
             std::optional<Sketch> &sketch) {
  Analysis a(opts, r, sketch);
  const std::string &cmd = opts.command;
  int code = kExitOk;
  if (cmd == "analyze-cover") {
    auto *d = std::get_if<io::CoverDoc>(&doc);
    if (!d)
      a.wrong_kind(doc, "a cover or superelliptic spec");
    a.analyze_cover(*d);
  } else if (cmd == "fiber-product") {
    auto *d = std::get_if<io::FiberProductDoc>(&doc);
    if (!d)
      a.wrong_kind(doc, "a fiber-product spec");
    a.fiber_product(*d);
  } else if (cmd == "ends") {
    a.ends(doc);
  } else if (cmd == "exhaust") {
    a.exhaust(doc);
  } else if (cmd == "weval") {
    auto *d = std::get_if<io::WeierstrassDoc>(&doc);
    if (!d)
      a.wrong_kind(doc, "a weierstrass spec");
    a.weval(*d);
  } else if (cmd == "lift") {
    auto *d = std::get_if<io::LiftDoc>(&doc);
    if (!d)
      a.wrong_kind(doc, "a lift spec");
    a.lift(*d);
  } else if (cmd == "monodromy") {
    auto *d = std::get_if<io::MonodromyDoc>(&doc);
    if (!d)
      a.wrong_kind(doc, "a monodromy spec");
    if (!a.monodromy(*d))
      code = kExitNumerical;
  } else if (cmd == "isom") {
    auto *d = std::get_if<io::IsomorphismDoc>(&doc);
    if (!d)
      a.wrong_kind(doc, "an isomorphism spec");
    a.isom(*d);
  } else if (cmd == "check-claims") {
    a.check_claims(doc);
  }
  a.finish_claims();
  if (a.counterexample())
    code = kExitCounterexample;
  return code;
}

// ---- randomized sweep ---------------------------------------------------------

struct Tally {
  std::size_t counts[4] = {0, 0, 0, 0};
  std::string first_failure;

  void add(const ClaimCheck &c) {
    ++counts[static_cast<int>(c.verdict)];
    if (c.verdict == Verdict::CounterexampleCandidate && first_failure.empty())
      first_failure = c.detail;
  }
};

void report_tally(Report &r, const std::string &name, const Tally &t) {
  for (int v = 0; v < 4; ++v)
    r.add("sweep", name + "." + std::string(to_string(static_cast<Verdict>(v))),
          std::to_string(t.counts[v]));
  if (!t.first_failure.empty())
    r.add("sweep", name + ".first_counterexample", t.first_failure);
}

int random_sweep(const Options &opts, Report &r) {
  Rng rng(opts.seed);
  r.add("sweep", "seed", std::to_string(opts.seed));
  r.add("sweep", "instances", std::to_string(opts.count));

  std::map<std::string, Tally> tallies;
  for (std::size_t k = 0; k < opts.count; ++k) {
    auto [c1, c2] = random_cover_pair(rng, 6, 5);
    const FiberTopologyReport tr = topology_report(build_fiber_product(c1, c2));
    for (const ClaimCheck &c : tr.claim_checks)
      tallies[c.name].add(c);
  }
  for (std::size_t k = 0; k < opts.count; ++k) {
    auto [c1, c2] = random_singular_pair(rng, 6, 5);
    const ConnectednessCheck cc = check_connectedness_theorem(build_fiber_product(c1, c2));
    tallies[std::string(kConnectedness) + "-singular"].add(
        {kConnectedness, cc.verdict, "connected: " + fmt(cc.connected)});
  }
  for (std::size_t k = 1; k <= 10; ++k) {
    SuperellipticSpec s{2, {}};
    for (std::size_t i = 0; i < 2 * k; ++i)
      s.zeros.push_back({static_cast<double>(i), 0.0});
    tallies[kSuperellipticEndsGenus].add(superelliptic_claim_check(s));
  }
  bool counterexample = false;
  for (const auto &[name, t] : tallies) {
    report_tally(r, name, t);
    counterexample |= t.counts[static_cast<int>(Verdict::CounterexampleCandidate)] > 0;
  }
  return counterexample ? kExitCounterexample : kExitOk;
}

Outcome analyze_file(const Options &opts, const std::string &path) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  o.report.add("report", "command", opts.command);
  o.report.add("report", "file", std::filesystem::path(path).filename().string());
  try {
    io::ParseOptions po;
    po.default_truncation = opts.trunc;
    const SpecDocument doc = io::load_document(path, po);
    if (opts.emit_normalized) {
      o.normalized = io::normalized(doc);
      return o;
    }
    o.report.add("report", "kind", io::kind_of(doc));
    o.exit_code = dispatch(opts, doc, o.report, o.sketch);
  } catch (const SpecError &e) {
    o.diagnostic = path + ": invalid spec: " + e.what();
    o.exit_code = kExitInvalidSpec;
    return o;
  } catch (const NumericalError &e) {
    o.diagnostic = path + ": numerical failure: " + e.what();
    o.exit_code = kExitNumerical;
    return o;
  }
  if (!opts.no_timing) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    o.report.add("timing", "timing_ms", buf);
  }
  return o;
}

bool write_file(const std::string &path, const std::string &text, std::ostream &err) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    err << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

const std::vector<std::string> kCommands{"analyze-cover", "fiber-product", "ends",
                                         "exhaust",       "weval",         "lift",
                                         "monodromy",     "isom",          "check-claims"};

} // namespace

int run(const Options &opts, std::ostream &out, std::ostream &err) {
  if (std::find(kCommands.begin(), kCommands.end(), opts.command) == kCommands.end()) {
    err << "error: unknown command \"" << opts.command << "\"\n";
    return kExitInvalidSpec;
  }
  if (opts.tol && !(*opts.tol > 0)) {
    err << "error: --tol must be positive\n";
    return kExitInvalidSpec;
  }

  std::vector<Outcome> outcomes;
  if (opts.files.empty()) {
    if (opts.command != "check-claims") {
      err << "error: " << opts.command << " needs a spec file\n";
      return kExitInvalidSpec;
    }
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    o.report.add("report", "command", opts.command);
    o.exit_code = random_sweep(opts, o.report);
    if (!opts.no_timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f",
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              t0)
                        .count());
      o.report.add("timing", "timing_ms", buf);
    }
    outcomes.push_back(std::move(o));
  } else {
    outcomes.resize(opts.files.size());
    const auto n = static_cast<std::ptrdiff_t>(opts.files.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      outcomes[static_cast<std::size_t>(i)] =
          analyze_file(opts, opts.files[static_cast<std::size_t>(i)]);
  }

  int code = kExitOk;
  std::string csv = csv_header();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Outcome &o = outcomes[i];
    if (!o.diagnostic.empty())
      err << "error: " << o.diagnostic << '\n';
    if (opts.emit_normalized) {
      out << o.normalized;
    } else if (o.diagnostic.empty()) {
      if (i > 0)
        out << '\n';
      out << render_text(o.report);
      csv += render_csv_rows(o.report);
    }
    code = std::max(code, o.exit_code);
  }
  if (opts.emit_normalized)
    return code;

  if (opts.csv_path && !write_file(*opts.csv_path, csv, err))
    code = std::max(code, kExitInvalidSpec);
  if (opts.svg_path) {
    if (outcomes.size() != 1 || !outcomes.front().sketch) {
      err << "error: --svg needs exactly one spec file with a branch configuration\n";
      code = std::max(code, kExitInvalidSpec);
    } else if (!write_file(*opts.svg_path, render_svg(*outcomes.front().sketch), err)) {
      code = std::max(code, kExitInvalidSpec);
    }
  }
  return code;
}

int main(int argc, char **argv) {
  CLI::App app{"Branched covers, fiber products and Weierstrass products from spec files"};
  Options opts;
  app.add_option("command", opts.command, "one of: analyze-cover, fiber-product, ends, exhaust, "
                                           "weval, lift, monodromy, isom, check-claims")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("files", opts.files, "spec files (JSON)");
  app.add_option("--csv", opts.csv_path, "write the report as CSV (section,key,index,value)");
  app.add_option("--svg", opts.svg_path, "write an SVG sketch of the branch configuration");
  app.add_option("--tol", opts.tol, "numerical tolerance (default 1e-10)");
  app.add_option("--trunc", opts.trunc, "truncation for zero rules without one")
      ->capture_default_str();
  app.add_flag("--check-paper-claims", opts.check_paper_claims, "evaluate claim checks");
  app.add_flag("--strict-pointwise", opts.strict_pointwise,
               "isom: require the map to fix W pointwise");
  app.add_flag("--no-timing", opts.no_timing, "omit the timing line");
  app.add_flag("--emit-normalized", opts.emit_normalized,
               "print the normalized spec instead of a report");
  app.add_option("--seed", opts.seed, "seed for check-claims sweeps")->capture_default_str();
  app.add_option("--count", opts.count, "instances per check-claims sweep")
      ->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitInvalidSpec;
  }
  return run(opts, std::cout, std::cerr);
}

} // namespace branchcov::cli
