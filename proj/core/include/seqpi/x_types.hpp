#pragma once

// Curry-style simple types for term nets. infer_x computes the principal
// context pair (sockets on the left of the sequent, plugs on the right);
// check_x asks whether a given context pair is an instance of it, modulo
// weakening.

#include <map>
#include <optional>
#include <string>

#include "seqpi/simple_type.hpp"
#include "seqpi/x_syntax.hpp"

namespace seqpi {

struct ContextPair {
  std::map<std::string, TypePtr> gamma;  // socket : type
  std::map<std::string, TypePtr> delta;  // plug : type
};

struct XTypeResult {
  bool ok = false;
  ContextPair ctx;       // principal, with ?-metavariables
  std::string error;     // set when !ok
};

XTypeResult infer_x(const XPtr& p);

// True iff given is an instance of the principal context pair of p:
// every principal entry must appear in given at a matching type (given
// constants are rigid, principal metavariables bind one type each), and
// given may carry extra entries (weakening).
bool check_x(const XPtr& p, const ContextPair& given);

// "x : A, y : B |- a : A -> B"; metavariables renamed A, B, C, ... in
// first-appearance order (gamma by name, then delta by name).
std::string print_context(const ContextPair& ctx);

// Same renaming, but returning the context: metavariables become rigid
// constants A, B, C, ... so the result can be used as a given context.
ContextPair ground_context(const ContextPair& ctx);

// One entry per line: "sock x : T" or "plug a : T". Blank lines ignored.
ContextPair parse_x_context(const std::string& text);

}  // namespace seqpi
