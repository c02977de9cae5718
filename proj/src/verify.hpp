// The group-90 regression verifier: one entry per acceptance check, with
// pass/fail, residuals, and wall time.

#ifndef CDUAL_VERIFY_HPP_
#define CDUAL_VERIFY_HPP_

#include <string>
#include <vector>

#include "report.hpp"

namespace cdual {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;      // residuals, counts, discrepancy notes
  double seconds = 0.0;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  bool all_pass() const;
};

// Runs the complete criteria suite against the given (group-90) datum.
VerifyReport verify_group90(const CrystalGroup& g, std::uint64_t seed);

// Same suite starting from raw datum text: load-time validation failures are
// reported as a failed first criterion instead of aborting, so fault-injected
// files surface as verification failures.
VerifyReport verify_group90_text(const std::string& datum_text, std::uint64_t seed);

std::string verify_report_json(const CrystalGroup& g, const VerifyReport& rep,
                               std::uint64_t seed);

}  // namespace cdual

#endif
