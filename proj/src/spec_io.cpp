#include "branchcov/spec_io.hpp"

#include "branchcov/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace branchcov::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &msg) {
  throw SpecError("field '" + path + "': " + msg);
}

std::string join(const std::string &path, const std::string &key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string &path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void allow_only(const json &obj, const std::string &path, std::set<std::string> allowed) {
  if (!obj.is_object())
    fail(path.empty() ? "<root>" : path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      fail(join(path, it.key()), "unknown field");
}

const json &require(const json &obj, const std::string &path, const std::string &key) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(join(path, key), "missing");
  return *it;
}

double read_double(const json &v, const std::string &path) {
  if (!v.is_number())
    fail(path, "expected a number");
  return v.get<double>();
}

long read_int(const json &v, const std::string &path) {
  if (!v.is_number_integer())
    fail(path, "expected an integer");
  return v.get<long>();
}

bool read_bool(const json &v, const std::string &path) {
  if (!v.is_boolean())
    fail(path, "expected true or false");
  return v.get<bool>();
}

Complex read_complex(const json &v, const std::string &path) {
  if (!v.is_array() || v.size() != 2)
    fail(path, "expected a complex number [re, im]");
  return {read_double(v[0], at(path, 0)), read_double(v[1], at(path, 1))};
}

std::vector<Complex> read_points(const json &v, const std::string &path) {
  if (!v.is_array())
    fail(path, "expected an array of [re, im] pairs");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(read_complex(v[i], at(path, i)));
  return out;
}

std::vector<double> read_doubles(const json &v, const std::string &path) {
  if (!v.is_array())
    fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(read_double(v[i], at(path, i)));
  return out;
}

Permutation read_permutation(const json &v, const std::string &path) {
  if (!v.is_array())
    fail(path, "expected an image array");
  std::vector<Sheet> images;
  for (std::size_t i = 0; i < v.size(); ++i)
    images.push_back(static_cast<Sheet>(read_int(v[i], at(path, i))));
  if (!Permutation::is_bijection(images))
    fail(path, "not a bijection");
  return Permutation(std::move(images));
}

std::vector<Permutation> read_permutations(const json &v, const std::string &path) {
  if (!v.is_array())
    fail(path, "expected an array of image arrays");
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(read_permutation(v[i], at(path, i)));
  return out;
}

template <class F> auto with_context(const std::string &path, F &&f) {
  try {
    return f();
  } catch (const SpecError &e) {
    const std::string what = e.what();
    if (what.rfind("field '", 0) == 0)
      throw;
    fail(path.empty() ? "<root>" : path, what);
  }
}

std::size_t read_degree(const json &obj, const std::string &path) {
  const long d = read_int(require(obj, path, "degree"), join(path, "degree"));
  if (d < 1)
    fail(join(path, "degree"), "must be positive");
  return static_cast<std::size_t>(d);
}

BranchedCoverSpec read_cover_body(const json &obj, const std::string &path, std::size_t degree) {
  BranchedCoverSpec c;
  c.degree = degree;
  c.branch_points = read_points(require(obj, path, "branch_points"), join(path, "branch_points"));
  c.monodromy = read_permutations(require(obj, path, "monodromy"), join(path, "monodromy"));
  with_context(path, [&] { return validate(c); });
  return c;
}

SuperellipticSpec read_superelliptic(const json &obj, const std::string &path) {
  SuperellipticSpec s;
  const long q = read_int(require(obj, path, "exponent"), join(path, "exponent"));
  if (q < 2)
    fail(join(path, "exponent"), "must be >= 2");
  s.exponent = static_cast<int>(q);
  s.zeros = read_points(require(obj, path, "zeros"), join(path, "zeros"));
  with_context(path, [&] { return superelliptic_to_cover(s); });
  return s;
}

std::string read_kind(const json &obj, const std::string &path) {
  const json &k = require(obj, path, "kind");
  if (!k.is_string())
    fail(join(path, "kind"), "expected a string");
  return k.get<std::string>();
}

// Nested "cover" or "superelliptic" object.
std::pair<BranchedCoverSpec, std::optional<SuperellipticSpec>>
read_finite_factor(const json &obj, const std::string &path) {
  const std::string kind = read_kind(obj, path);
  if (kind == "cover") {
    allow_only(obj, path, {"kind", "degree", "branch_points", "monodromy"});
    return {read_cover_body(obj, path, read_degree(obj, path)), std::nullopt};
  }
  if (kind == "superelliptic") {
    allow_only(obj, path, {"kind", "exponent", "zeros"});
    auto s = read_superelliptic(obj, path);
    return {superelliptic_to_cover(s), s};
  }
  fail(join(path, "kind"), "expected \"cover\" or \"superelliptic\", got \"" + kind + "\"");
}

InfiniteCoverModel read_infinite_cover(const json &obj, const std::string &path,
                                       std::set<std::string> extra = {}) {
  std::set<std::string> allowed{"kind", "version", "degree", "prefix", "tail"};
  allowed.insert(extra.begin(), extra.end());
  allow_only(obj, path, allowed);
  InfiniteCoverModel m;
  m.degree = read_degree(obj, path);
  m.prefix.degree = m.degree;
  if (auto it = obj.find("prefix"); it != obj.end()) {
    const std::string p = join(path, "prefix");
    allow_only(*it, p, {"branch_points", "monodromy"});
    m.prefix = read_cover_body(*it, p, m.degree);
  }
  m.tail = read_permutations(require(obj, path, "tail"), join(path, "tail"));
  with_context(path, [&] {
    validate(m);
    return 0;
  });
  return m;
}

DegreeSchedule read_schedule(const json &v, const std::string &path) {
  allow_only(v, path, {"type", "value"});
  const json &t = require(v, path, "type");
  if (!t.is_string())
    fail(join(path, "type"), "expected a string");
  DegreeSchedule s;
  if (t == "index") {
    if (v.contains("value"))
      fail(join(path, "value"), "not used by the index schedule");
    s.kind = DegreeSchedule::Kind::Index;
  } else if (t == "constant") {
    s.kind = DegreeSchedule::Kind::Constant;
    const long d = read_int(require(v, path, "value"), join(path, "value"));
    if (d < 0)
      fail(join(path, "value"), "must be non-negative");
    s.value = static_cast<int>(d);
  } else {
    fail(join(path, "type"), "expected \"index\" or \"constant\"");
  }
  return s;
}

ZeroRule read_rule(const json &v, const std::string &path) {
  allow_only(v, path, {"type", "start", "step"});
  const json &t = require(v, path, "type");
  ZeroRule r;
  if (t == "symmetric-integers")
    r.kind = ZeroRule::Kind::SymmetricIntegers;
  else if (t == "positive-integers")
    r.kind = ZeroRule::Kind::PositiveIntegers;
  else if (t == "arithmetic")
    r.kind = ZeroRule::Kind::Arithmetic;
  else
    fail(join(path, "type"),
         "expected \"symmetric-integers\", \"positive-integers\" or \"arithmetic\"");
  if (r.kind == ZeroRule::Kind::Arithmetic) {
    r.start = read_complex(require(v, path, "start"), join(path, "start"));
    r.step = read_complex(require(v, path, "step"), join(path, "step"));
  } else if (v.contains("start") || v.contains("step")) {
    fail(path, "start/step only apply to the arithmetic rule");
  }
  return r;
}

// Shared by "weierstrass" documents and the "base" of lift documents.
WeierstrassProductSpec read_product(const json &obj, const std::string &path,
                                    const ParseOptions &opts) {
  WeierstrassProductSpec s;
  const bool has_zeros = obj.contains("zeros"), has_rule = obj.contains("rule");
  if (has_zeros == has_rule)
    fail(path.empty() ? "<root>" : path, "give exactly one of \"zeros\" or \"rule\"");
  if (has_zeros)
    s.zeros = read_points(obj["zeros"], join(path, "zeros"));
  else
    s.rule = read_rule(obj["rule"], join(path, "rule"));
  if (auto it = obj.find("origin_zero"); it != obj.end())
    s.include_zero_at_origin = read_bool(*it, join(path, "origin_zero"));
  if (auto it = obj.find("schedule"); it != obj.end())
    s.schedule = read_schedule(*it, join(path, "schedule"));
  if (auto it = obj.find("truncation"); it != obj.end()) {
    if (!has_rule)
      fail(join(path, "truncation"), "only applies to a zero rule");
    const long L = read_int(*it, join(path, "truncation"));
    if (L < 0)
      fail(join(path, "truncation"), "must be non-negative");
    s.truncation = static_cast<std::size_t>(L);
  } else {
    s.truncation = has_rule ? opts.default_truncation : s.zeros.size();
  }
  if (!has_rule)
    s.truncation = s.zeros.size();
  if (auto it = obj.find("tolerance"); it != obj.end()) {
    s.target_tolerance = read_double(*it, join(path, "tolerance"));
    if (!(s.target_tolerance > 0))
      fail(join(path, "tolerance"), "must be positive");
  }
  with_context(path, [&] {
    validate(s);
    return 0;
  });
  return s;
}

const std::set<std::string> kProductFields{"zeros", "rule", "origin_zero", "schedule",
                                           "truncation", "tolerance"};

std::set<std::string> with(std::set<std::string> base, std::initializer_list<const char *> more) {
  for (const char *m : more)
    base.insert(m);
  return base;
}

std::optional<std::vector<double>> read_radii(const json &obj) {
  if (auto it = obj.find("radii"); it != obj.end()) {
    auto r = read_doubles(*it, "radii");
    for (std::size_t i = 0; i < r.size(); ++i)
      if (!(r[i] > 0))
        fail(at("radii", i), "must be positive");
    return r;
  }
  return std::nullopt;
}

// ---- emission -------------------------------------------------------------

ojson emit_complex(const Complex &z) { return ojson::array({z.real(), z.imag()}); }

ojson emit_points(const std::vector<Complex> &pts) {
  ojson a = ojson::array();
  for (const Complex &z : pts)
    a.push_back(emit_complex(z));
  return a;
}

ojson emit_perms(const std::vector<Permutation> &ps) {
  ojson a = ojson::array();
  for (const Permutation &p : ps)
    a.push_back(p.images());
  return a;
}

ojson emit_cover_object(const BranchedCoverSpec &c) {
  ojson o;
  o["kind"] = "cover";
  o["degree"] = c.degree;
  o["branch_points"] = emit_points(c.branch_points);
  o["monodromy"] = emit_perms(c.monodromy);
  return o;
}

ojson emit_superelliptic_object(const SuperellipticSpec &s) {
  ojson o;
  o["kind"] = "superelliptic";
  o["exponent"] = s.exponent;
  o["zeros"] = emit_points(s.zeros);
  return o;
}

ojson emit_factor(const BranchedCoverSpec &c, const std::optional<SuperellipticSpec> &s) {
  return s ? emit_superelliptic_object(*s) : emit_cover_object(c);
}

ojson emit_infinite(const InfiniteCoverModel &m, bool top) {
  ojson o;
  o["kind"] = "infinite-cover";
  if (top)
    o["version"] = kFormatVersion;
  o["degree"] = m.degree;
  ojson prefix;
  prefix["branch_points"] = emit_points(m.prefix.branch_points);
  prefix["monodromy"] = emit_perms(m.prefix.monodromy);
  o["prefix"] = prefix;
  o["tail"] = emit_perms(m.tail);
  return o;
}

void emit_product_fields(ojson &o, const WeierstrassProductSpec &s) {
  if (s.rule) {
    ojson r;
    switch (s.rule->kind) {
    case ZeroRule::Kind::SymmetricIntegers:
      r["type"] = "symmetric-integers";
      break;
    case ZeroRule::Kind::PositiveIntegers:
      r["type"] = "positive-integers";
      break;
    case ZeroRule::Kind::Arithmetic:
      r["type"] = "arithmetic";
      r["start"] = emit_complex(s.rule->start);
      r["step"] = emit_complex(s.rule->step);
      break;
    }
    o["rule"] = r;
    o["truncation"] = s.truncation;
  } else {
    o["zeros"] = emit_points(s.zeros);
  }
  o["origin_zero"] = s.include_zero_at_origin;
  ojson sched;
  if (s.schedule.kind == DegreeSchedule::Kind::Index) {
    sched["type"] = "index";
  } else {
    sched["type"] = "constant";
    sched["value"] = s.schedule.value;
  }
  o["schedule"] = sched;
  o["tolerance"] = s.target_tolerance;
}

ojson header(const char *kind) {
  ojson o;
  o["kind"] = kind;
  o["version"] = kFormatVersion;
  return o;
}

} // namespace

SpecDocument parse_document(const std::string &text, const ParseOptions &opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw SpecError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object())
    fail("<root>", "expected an object");
  const std::string kind = read_kind(doc, "");
  const long version = read_int(require(doc, "", "version"), "version");
  if (version != kFormatVersion)
    fail("version", "unsupported version " + std::to_string(version));

  if (kind == "cover") {
    allow_only(doc, "", {"kind", "version", "degree", "branch_points", "monodromy", "radii"});
    CoverDoc d;
    d.cover = read_cover_body(doc, "", read_degree(doc, ""));
    d.radii = read_radii(doc);
    return d;
  }
  if (kind == "superelliptic") {
    allow_only(doc, "", {"kind", "version", "exponent", "zeros", "radii"});
    CoverDoc d;
    d.super = read_superelliptic(doc, "");
    d.cover = superelliptic_to_cover(*d.super);
    d.radii = read_radii(doc);
    return d;
  }
  if (kind == "fiber-product") {
    allow_only(doc, "", {"kind", "version", "cover1", "cover2"});
    FiberProductDoc d;
    std::tie(d.cover1, d.super1) = read_finite_factor(require(doc, "", "cover1"), "cover1");
    std::tie(d.cover2, d.super2) = read_finite_factor(require(doc, "", "cover2"), "cover2");
    return d;
  }
  if (kind == "infinite-cover") {
    InfiniteCoverDoc d;
    d.model = read_infinite_cover(doc, "", {"radii"});
    d.radii = read_radii(doc);
    return d;
  }
  if (kind == "infinite-fiber-product") {
    allow_only(doc, "", {"kind", "version", "f", "g", "radii"});
    InfiniteFiberProductDoc d;
    const json &f = require(doc, "", "f");
    if (read_kind(f, "f") != "infinite-cover")
      fail("f.kind", "expected \"infinite-cover\"");
    d.model.f = read_infinite_cover(f, "f");
    const json &g = require(doc, "", "g");
    if (read_kind(g, "g") == "infinite-cover") {
      d.model.g = read_infinite_cover(g, "g");
    } else {
      auto [cover, super] = read_finite_factor(g, "g");
      d.model.g = cover;
      d.g_super = super;
    }
    with_context("", [&] {
      validate(d.model);
      return 0;
    });
    d.radii = read_radii(doc);
    return d;
  }
  if (kind == "weierstrass") {
    allow_only(doc, "", with(kProductFields, {"kind", "version", "points"}));
    WeierstrassDoc d;
    d.spec = read_product(doc, "", opts);
    if (doc.contains("points"))
      d.points = read_points(doc["points"], "points");
    return d;
  }
  if (kind == "lift") {
    allow_only(doc, "", {"kind", "version", "exponent", "zeros", "base", "path", "start"});
    LiftDoc d;
    const long q = read_int(require(doc, "", "exponent"), "exponent");
    if (q < 2)
      fail("exponent", "must be >= 2");
    d.exponent = static_cast<int>(q);
    if (doc.contains("zeros") == doc.contains("base"))
      fail("<root>", "give exactly one of \"zeros\" or \"base\"");
    if (doc.contains("zeros")) {
      d.base = make_curve(d.exponent, read_points(doc["zeros"], "zeros")).base;
    } else {
      allow_only(doc["base"], "base", kProductFields);
      d.base = read_product(doc["base"], "base", opts);
    }
    d.path = read_points(require(doc, "", "path"), "path");
    if (d.path.empty())
      fail("path", "must contain at least one point");
    if (doc.contains("start"))
      d.start = read_complex(doc["start"], "start");
    return d;
  }
  if (kind == "monodromy") {
    allow_only(doc, "", {"kind", "version", "exponent", "zeros", "point", "radius", "base"});
    MonodromyDoc d;
    const long q = read_int(require(doc, "", "exponent"), "exponent");
    if (q < 2)
      fail("exponent", "must be >= 2");
    d.exponent = static_cast<int>(q);
    d.zeros = read_points(require(doc, "", "zeros"), "zeros");
    with_context("zeros", [&] { return make_curve(d.exponent, d.zeros); });
    if (doc.contains("point"))
      d.point = read_complex(doc["point"], "point");
    if (doc.contains("radius")) {
      d.radius = read_double(doc["radius"], "radius");
      if (!(*d.radius > 0))
        fail("radius", "must be positive");
    }
    if (doc.contains("base"))
      d.base = read_complex(doc["base"], "base");
    if (!d.point && (d.radius || d.base))
      fail("point", "required when radius or base is given");
    return d;
  }
  if (kind == "isomorphism") {
    allow_only(doc, "", {"kind", "version", "W", "A", "B", "W1", "W2"});
    IsomorphismDoc d;
    const bool config = doc.contains("W"), pair = doc.contains("W1") || doc.contains("W2");
    if (config == pair)
      fail("<root>", "give either W, A, B or W1, W2");
    if (config) {
      d.config.W = read_points(doc["W"], "W");
      d.config.A = read_points(require(doc, "", "A"), "A");
      d.config.B = read_points(require(doc, "", "B"), "B");
      with_context("", [&] {
        validate(d.config);
        return 0;
      });
    } else {
      d.hyperelliptic = true;
      d.W1 = read_points(require(doc, "", "W1"), "W1");
      d.W2 = read_points(require(doc, "", "W2"), "W2");
    }
    return d;
  }
  fail("kind", "unknown kind \"" + kind + "\"");
}

SpecDocument load_document(const std::string &path, const ParseOptions &opts) {
  std::ifstream in(path);
  if (!in)
    throw SpecError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), opts);
}

std::string kind_of(const SpecDocument &doc) {
  struct V {
    std::string operator()(const CoverDoc &d) const { return d.super ? "superelliptic" : "cover"; }
    std::string operator()(const FiberProductDoc &) const { return "fiber-product"; }
    std::string operator()(const InfiniteCoverDoc &) const { return "infinite-cover"; }
    std::string operator()(const InfiniteFiberProductDoc &) const {
      return "infinite-fiber-product";
    }
    std::string operator()(const WeierstrassDoc &) const { return "weierstrass"; }
    std::string operator()(const LiftDoc &) const { return "lift"; }
    std::string operator()(const MonodromyDoc &) const { return "monodromy"; }
    std::string operator()(const IsomorphismDoc &) const { return "isomorphism"; }
  };
  return std::visit(V{}, doc);
}

std::string normalized(const SpecDocument &doc) {
  struct V {
    ojson operator()(const CoverDoc &d) const {
      ojson o;
      if (d.super) {
        o = header("superelliptic");
        o["exponent"] = d.super->exponent;
        o["zeros"] = emit_points(d.super->zeros);
      } else {
        o = header("cover");
        o["degree"] = d.cover.degree;
        o["branch_points"] = emit_points(d.cover.branch_points);
        o["monodromy"] = emit_perms(d.cover.monodromy);
      }
      if (d.radii)
        o["radii"] = *d.radii;
      return o;
    }
    ojson operator()(const FiberProductDoc &d) const {
      ojson o = header("fiber-product");
      o["cover1"] = emit_factor(d.cover1, d.super1);
      o["cover2"] = emit_factor(d.cover2, d.super2);
      return o;
    }
    ojson operator()(const InfiniteCoverDoc &d) const {
      ojson o = emit_infinite(d.model, true);
      if (d.radii)
        o["radii"] = *d.radii;
      return o;
    }
    ojson operator()(const InfiniteFiberProductDoc &d) const {
      ojson o = header("infinite-fiber-product");
      o["f"] = emit_infinite(d.model.f, false);
      if (auto *inf = std::get_if<InfiniteCoverModel>(&d.model.g))
        o["g"] = emit_infinite(*inf, false);
      else
        o["g"] = emit_factor(std::get<BranchedCoverSpec>(d.model.g), d.g_super);
      if (d.radii)
        o["radii"] = *d.radii;
      return o;
    }
    ojson operator()(const WeierstrassDoc &d) const {
      ojson o = header("weierstrass");
      emit_product_fields(o, d.spec);
      o["points"] = emit_points(d.points);
      return o;
    }
    ojson operator()(const LiftDoc &d) const {
      ojson o = header("lift");
      o["exponent"] = d.exponent;
      ojson base;
      emit_product_fields(base, d.base);
      o["base"] = base;
      o["path"] = emit_points(d.path);
      if (d.start)
        o["start"] = emit_complex(*d.start);
      return o;
    }
    ojson operator()(const MonodromyDoc &d) const {
      ojson o = header("monodromy");
      o["exponent"] = d.exponent;
      o["zeros"] = emit_points(d.zeros);
      if (d.point)
        o["point"] = emit_complex(*d.point);
      if (d.radius)
        o["radius"] = *d.radius;
      if (d.base)
        o["base"] = emit_complex(*d.base);
      return o;
    }
    ojson operator()(const IsomorphismDoc &d) const {
      ojson o = header("isomorphism");
      if (d.hyperelliptic) {
        o["W1"] = emit_points(d.W1);
        o["W2"] = emit_points(d.W2);
      } else {
        o["W"] = emit_points(d.config.W);
        o["A"] = emit_points(d.config.A);
        o["B"] = emit_points(d.config.B);
      }
      return o;
    }
  };
  return std::visit(V{}, doc).dump(2) + "\n";
}

} // namespace branchcov::io
