#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace branchcov {

enum class Verdict {
  Confirmed,
  HypothesesNotMet,
  PaperClaimMismatch,
  CounterexampleCandidate,
};

std::string_view to_string(Verdict v);

/// Outcome of checking one published statement against computed ground truth.
/// A mismatch is a finding, not an exception; computation always completes.
struct ClaimCheck {
  std::string name;
  Verdict verdict = Verdict::HypothesesNotMet;
  std::string detail;
};

bool any_counterexample(const std::vector<ClaimCheck> &checks);

} // namespace branchcov
