#pragma once

// Acceptance checks shared by `qslcorr selftest` and the acceptance test.

#include <iosfwd>
#include <string>
#include <vector>

namespace qslcorr::selftest {

struct Check {
  std::string label;
  bool passed = false;
  std::string detail;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
};

CriterionReport bell_reference_values();        // 1
CriterionReport oun_closed_form();               // 2
CriterionReport collective_closed_forms();       // 3
CriterionReport bound_ordering_and_validity();   // 4
CriterionReport shape_checks();                  // 5
CriterionReport property_suites();               // 6
CriterionReport convergence();                   // 7

/// "PASS|FAIL <id> <title> (<seconds> s)" followed by one indented line per
/// check.
void print(std::ostream& os, const CriterionReport& report);

/// Runs all criteria in order, printing each as it finishes. Returns the
/// number of failed criteria.
int run_all(std::ostream& os);

}  // namespace qslcorr::selftest
