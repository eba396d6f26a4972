#pragma once

#include "asymptotic.hpp"
#include "continuation.hpp"
#include "covers.hpp"
#include "isomorph.hpp"
#include "weierstrass.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace branchcov::io {

inline constexpr int kFormatVersion = 1;

struct FiberProductDoc {
  BranchedCoverSpec cover1;
  BranchedCoverSpec cover2;
  // Superelliptic factors are kept so that normalization re-emits them as given.
  std::optional<SuperellipticSpec> super1, super2;
};

struct WeierstrassDoc {
  WeierstrassProductSpec spec;
  std::vector<Complex> points;
};

struct LiftDoc {
  int exponent = 2;
  WeierstrassProductSpec base;
  std::vector<Complex> path;
  std::optional<Complex> start;
};

struct MonodromyDoc {
  int exponent = 2;
  std::vector<Complex> zeros;
  std::optional<Complex> point;
  std::optional<double> radius;
  std::optional<Complex> base;
};

struct IsomorphismDoc {
  ZeroConfiguration config; // used when `hyperelliptic` is false
  std::vector<Complex> W1, W2;
  bool hyperelliptic = false;
};

struct InfiniteCoverDoc {
  InfiniteCoverModel model;
  std::optional<std::vector<double>> radii;
};

struct InfiniteFiberProductDoc {
  InfiniteFiberProductModel model;
  std::optional<SuperellipticSpec> g_super;
  std::optional<std::vector<double>> radii;
};

struct CoverDoc {
  BranchedCoverSpec cover;
  std::optional<SuperellipticSpec> super;
  std::optional<std::vector<double>> radii;
};

using SpecDocument = std::variant<CoverDoc, FiberProductDoc, InfiniteCoverDoc,
                                  InfiniteFiberProductDoc, WeierstrassDoc, LiftDoc,
                                  MonodromyDoc, IsomorphismDoc>;

struct ParseOptions {
  /// Truncation used for Weierstrass zero rules that do not state one.
  std::size_t default_truncation = 500;
};

/// Parses a spec document. Throws SpecError with a field path or the parser's
/// line and column on failure. Unknown fields are rejected.
SpecDocument parse_document(const std::string &text, const ParseOptions &opts = {});
SpecDocument load_document(const std::string &path, const ParseOptions &opts = {});

/// Canonical re-emission: fixed key order, defaults filled in, 2-space indent.
std::string normalized(const SpecDocument &doc);

std::string kind_of(const SpecDocument &doc);

} // namespace branchcov::io
