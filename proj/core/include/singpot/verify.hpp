#ifndef SINGPOT_VERIFY_HPP
#define SINGPOT_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace singpot {

// One acceptance criterion: `measured` is the worst observed check value
// normalized by its limit (so passing means measured <= 1), `note` carries
// the raw residuals.
struct CriterionResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;  // worst residual / limit
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string note;
};

// Runs the full acceptance suite (deterministic: fixed seeds, fixed
// summation orders).  If `progress` is non-null a pass/fail line is printed
// per criterion as it completes.
std::vector<CriterionResult> run_acceptance(std::ostream* progress = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace singpot

#endif  // SINGPOT_VERIFY_HPP
