#pragma once

// Cut elimination. Rule tags follow the shape of the system: five logical
// rules (the export/import interaction splits into a left and a right
// grouping), two activation rules, six left and six right propagation
// rules, and four admissible shortcuts (garbage collection and renaming)
// that the ordinary redex search never reports.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqpi/x_syntax.hpp"

namespace seqpi {

enum class XRule {
  // logical, at a plain cut
  Ax, ExpRen, ImpRen, ExpImpLeft, ExpImpRight,
  // activation, at a plain cut
  ActL, ActR,
  // left propagation, at an activated-left cut
  PropDL, PropCapL, PropExpOutsL, PropExpInsL, PropImpL, PropCutL,
  // right propagation, at an activated-right cut
  PropDR, PropCapR, PropExpR, PropImpOutsR, PropImpInsR, PropCutR,
  // admissible shortcuts, reported only by find_admissible
  GcL, GcR, RenL, RenR,
};

const char* rule_name(XRule r);          // "ax", "exp-ren", ...
bool rule_is_admissible(XRule r);

struct Redex {
  std::vector<int> path;  // child indices from the root, 0 = left, 1 = right
  XRule rule;

  bool operator==(const Redex& o) const { return rule == o.rule && path == o.path; }
};

std::string print_path(const std::vector<int>& path);  // "[0,1]", "[]"

enum class Strategy { Full, CBN, CBV };

// All enabled redexes, deterministically ordered: pre-order on paths, and
// at one node logical rules before activation before propagation.
// Admissible shortcuts are never included.
std::vector<Redex> find_redexes(const XPtr& p, Strategy strategy = Strategy::Full);

// The four admissible shortcut redexes (gc-l, gc-r, ren-l, ren-r), same order.
std::vector<Redex> find_admissible(const XPtr& p);

struct RedexMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Applies one redex. The net is refreshed first so duplicating rules can
// never capture; the output therefore has machine-fresh binders throughout.
// Throws RedexMismatch if the path or the rule does not match.
XPtr apply_redex(const XPtr& p, const Redex& r, FreshSupply& supply);

// Every one-step successor under find_redexes, deduplicated up to alpha.
std::vector<XPtr> step_all(const XPtr& p, FreshSupply& supply);

struct TraceStep {
  Redex chosen;
  std::vector<Redex> alternatives;  // remaining enabled redexes at this state
  XPtr result;
};

struct Trace {
  XPtr initial;
  std::vector<TraceStep> steps;
  bool budget_exceeded = false;
};

// First-redex reduction under the given strategy, at most max_steps steps.
// On budget exhaustion the partial trace is returned with the flag set.
Trace reduce(const XPtr& p, Strategy strategy, std::size_t max_steps, FreshSupply& supply);

// One line per step: "<path> <rule> => <net>", preceded by the initial net.
std::string serialize_trace(const Trace& t);

// Applies admissible shortcuts to a fixpoint (they all shrink the net).
XPtr gc_renaming(const XPtr& p, FreshSupply& supply);

}  // namespace seqpi
