#pragma once

// Bounded operational semantics: single reduction steps up to structural
// congruence, strong and weak barbs, and a depth/budget-bounded barbed
// simulation check. Replication is handled by materializing at most
// repl_budget copies of each replicated subterm per step.

#include <set>
#include <string>
#include <vector>

#include "seqpi/pi_syntax.hpp"

namespace seqpi {

// All one-step successors up to struct_eq, deterministically ordered.
// Results are in canonical form.
std::vector<PiPtr> pi_step(const PiPtr& p, int repl_budget = 2);

struct PiStepOut {
  std::string what;  // e.g. "sync a", "under b: sync a"
  PiPtr result;
};
std::vector<PiStepOut> pi_step_described(const PiPtr& p, int repl_budget = 2);

// Free names with an unguarded output, up to congruence.
std::set<PiName> barbs(const PiPtr& p);

// True iff some state reachable in at most depth steps (including p
// itself at depth 0) has a strong barb on n.
bool weak_barb(const PiPtr& p, const PiName& n, int depth, int repl_budget = 2);

// Bounded barbed simulation: at every level, each strong barb of the left
// process must be weakly observable on the right within the remaining
// depth, and each left step must be matched by some right state reachable
// in 0..depth steps, recursively with depth - 1.
bool bounded_simulates(const PiPtr& p, const PiPtr& q, int depth, int repl_budget = 2);

}  // namespace seqpi
