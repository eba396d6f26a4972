#include "branchcov/claims.hpp"

#include <algorithm>

namespace branchcov {

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::Confirmed:
    return "confirmed";
  case Verdict::HypothesesNotMet:
    return "hypotheses_not_met";
  case Verdict::PaperClaimMismatch:
    return "paper-claim mismatch";
  case Verdict::CounterexampleCandidate:
    return "counterexample-candidate";
  }
  return "?";
}

bool any_counterexample(const std::vector<ClaimCheck> &checks) {
  return std::any_of(checks.begin(), checks.end(), [](const ClaimCheck &c) {
    return c.verdict == Verdict::CounterexampleCandidate;
  });
}

} // namespace branchcov
