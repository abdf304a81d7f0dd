#pragma once

// Interface typing for processes: input capabilities on the left of the
// sequent, output capabilities on the right. Checking is syntax-directed
// with metavariables and unification; weakening is folded into the rules
// (context entries are looked up, never consumed).

#include <map>
#include <optional>
#include <string>

#include "seqpi/pi_syntax.hpp"
#include "seqpi/simple_type.hpp"

namespace seqpi {

struct PiContextPair {
  std::map<PiName, TypePtr> gamma;  // input capabilities
  std::map<PiName, TypePtr> delta;  // output capabilities
};

bool pi_check(const PiPtr& p, const PiContextPair& ctx);

// nullopt when the process checks; otherwise the first failing constraint.
std::optional<std::string> pi_check_explain(const PiPtr& p, const PiContextPair& ctx);

// Direct rule for pair input a(<x,y>).body: a : A -> B on the left, the
// body checked with y : B added on the left and x : A added on the right.
// Agrees with pi_check on the desugared form.
bool derive_pair_in(const PiName& subj, const PiName& x, const PiName& y, const PiPtr& body,
                    const PiContextPair& ctx);

// One entry per line: "in n : T" or "out n : T".
PiContextPair parse_pi_context(const std::string& text);
std::string print_pi_context(const PiContextPair& ctx);

}  // namespace seqpi
