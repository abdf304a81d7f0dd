#pragma once

// The acceptance gate: one check per headline claim of the workbench, each
// reported as a single pass/fail line. Checks stream their lines as they
// finish so the slow sweeps show progress, and every line carries a short
// factual detail (counts, witnesses, elapsed time) so a log is auditable
// without rerunning.

#include <iosfwd>
#include <string>
#include <vector>

namespace seqpi {

struct CriterionResult {
  int number = 0;
  std::string label;
  bool pass = false;
  std::string detail;  // one line: counts, witnesses, first failure
  long long ms = 0;
};

struct AcceptanceOptions {
  std::string corpus_dir = "corpus";
  std::vector<int> only;  // criterion numbers to run; empty runs all
};

// Runs the selected criteria in numeric order, streaming one line per
// criterion plus a final tally to out. Returns the structured results;
// callers map failures to an exit status.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out);

}  // namespace seqpi
